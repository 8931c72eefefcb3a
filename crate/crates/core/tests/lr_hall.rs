mod support;

use hallkoorn::lr_hall::{hall_polynomial, lr_coefficient};
use hallkoorn::partitions::{partitions_of, partitions_up_to, Partition};
use num_bigint::BigInt;
use support::subgroups::{hall_number, hall_numbers};

#[test]
fn pieri_hall_numbers_by_counting() {
    for p in [2u64, 3] {
        assert_eq!(hall_number(p, &[1, 1], &[1], &[1]), p + 1);
        assert_eq!(hall_number(p, &[2], &[1], &[1]), 1);
        let g = hall_polynomial(&Partition::new(vec![1, 1]), &Partition::new(vec![1]), &Partition::new(vec![1])).unwrap();
        assert_eq!(g.eval(p as i64), BigInt::from(p + 1));
    }
}

/// Every Hall polynomial with |λ| ≤ 4 at p = 2 and |λ| ≤ 3 at p = 3 matches subgroup counts.
#[test]
fn hall_polynomials_match_subgroup_counts() {
    for (p, w) in [(2u64, 4u32), (3, 3)] {
        for lambda in partitions_up_to(w, w as usize) {
            let counts = hall_numbers(p, lambda.parts());
            for a in 0..=lambda.size() {
                for mu in partitions_of(a, 4, a) {
                    let b = lambda.size() - a;
                    for nu in partitions_of(b, 4, b) {
                        let want = counts.get(&(mu.parts().to_vec(), nu.parts().to_vec())).copied().unwrap_or(0);
                        let g = hall_polynomial(&lambda, &mu, &nu).unwrap();
                        assert_eq!(g.eval(p as i64), BigInt::from(want), "p={p} {lambda} {mu} {nu}");
                    }
                }
            }
        }
    }
}

#[test]
fn lr_vanishing_is_symmetric() {
    for lambda in partitions_up_to(6, 6) {
        for a in 0..=lambda.size() {
            for mu in partitions_of(a, 6, a) {
                let b = lambda.size() - a;
                for nu in partitions_of(b, 6, b) {
                    assert_eq!(lr_coefficient(&lambda, &mu, &nu), lr_coefficient(&lambda, &nu, &mu));
                }
            }
        }
    }
}
