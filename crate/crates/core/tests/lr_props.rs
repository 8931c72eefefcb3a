mod support;

use hallkoorn::hall_littlewood::schur;
use hallkoorn::lr_hall::{hall_polynomial, lr_coefficient};
use hallkoorn::partitions::Partition;
use hallkoorn::{LaurentPoly, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;
use support::subgroups::hall_number;

fn partition(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::from_unsorted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lr_symmetric_and_sized(l in partition(4, 3), m in partition(3, 3), n in partition(3, 3)) {
        let c = lr_coefficient(&l, &m, &n);
        prop_assert_eq!(c, lr_coefficient(&l, &n, &m));
        if l.size() != m.size() + n.size() {
            prop_assert_eq!(c, 0);
        }
    }

    /// `s_μ s_ν = Σ c^λ_{μν} s_λ` in enough variables to see every λ.
    #[test]
    fn lr_expands_schur_products(m in partition(2, 3), n in partition(2, 2)) {
        let vars = m.len() + n.len();
        let w = m.size() + n.size();
        let product = &schur(&m, vars).unwrap() * &schur(&n, vars).unwrap();
        let mut sum = LaurentPoly::zero(vars);
        for l in hallkoorn::partitions::partitions_of(w, vars, w) {
            let c = lr_coefficient(&l, &m, &n);
            if c > 0 {
                sum = &sum + &schur(&l, vars).unwrap().scale(&Scalar::from_int(c as i64));
            }
        }
        prop_assert_eq!(product, sum);
    }

    /// `g^λ_{μν}(p)` counts subgroups of type ν and cotype μ.
    #[test]
    fn hall_polynomial_counts_subgroups(l in partition(3, 2), a in 0u32..=6, p in prop::sample::select(vec![2u64, 3])) {
        prop_assume!(p.pow(l.size()) <= 128);
        let a = a.min(l.size());
        let mus = hallkoorn::partitions::partitions_of(a, 3, 2);
        let nus = hallkoorn::partitions::partitions_of(l.size() - a, 3, 2);
        for mu in &mus {
            for nu in &nus {
                let g = hall_polynomial(&l, mu, nu).unwrap();
                let count = hall_number(p, l.parts(), mu.parts(), nu.parts());
                prop_assert_eq!(g.eval(p as i64), BigInt::from(count));
            }
        }
    }
}
