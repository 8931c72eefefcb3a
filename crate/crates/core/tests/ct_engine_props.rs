use hallkoorn::algebra::{monomial_symmetric, GroupElement, SymmetryType};
use hallkoorn::ct_engine::{case_density, series_oracle, torus_integral, torus_integral_ordered, TruncatedSeries};
use hallkoorn::{LaurentPoly, Scalar};
use num_traits::One;
use proptest::prelude::*;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 0i64..=2).prop_map(|(c, k)| Scalar::s_pow(k) * &Scalar::from_int(c))
}

fn laurent(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, nvars), small_scalar()), 0..4)
        .prop_map(move |terms| LaurentPoly::from_terms(nvars, terms))
}

fn signed_perm(n: usize) -> impl Strategy<Value = GroupElement> {
    let all = GroupElement::hyperoctahedral_group(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn integral(case: u8, f: &LaurentPoly) -> Scalar {
    torus_integral(&case_density(case, f.nvars()).unwrap().times(f)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linear(f in laurent(2), g in laurent(2), a in small_scalar(), b in small_scalar(), case in prop::sample::select(vec![1u8, 2, 4])) {
        let combo = &f.scale(&a) + &g.scale(&b);
        prop_assert_eq!(integral(case, &combo), a * &integral(case, &f) + &(b * &integral(case, &g)));
    }

    #[test]
    fn hyperoctahedral_invariance(f in laurent(2), w in signed_perm(2), case in prop::sample::select(vec![1u8, 2, 4])) {
        prop_assert_eq!(integral(case, &f.act(&w)), integral(case, &f));
    }

    #[test]
    fn variable_order_is_irrelevant(f in laurent(2), case in prop::sample::select(vec![1u8, 2, 4])) {
        let dens = case_density(case, 2).unwrap().times(&f);
        prop_assert_eq!(torus_integral_ordered(&dens, &[1, 0]).unwrap(), torus_integral_ordered(&dens, &[0, 1]).unwrap());
    }

    #[test]
    fn residues_match_series(f in laurent(2), case in prop::sample::select(vec![1u8, 2, 3, 4])) {
        let dens = case_density(case, 2).unwrap().times(&f);
        let exact = torus_integral(&dens).unwrap();
        prop_assert_eq!(series_oracle(&dens, 10).unwrap(), TruncatedSeries::from_scalar(&exact, 10));
    }
}

#[test]
fn rank_three_order_independence() {
    let f = LaurentPoly::from_terms(3, [(vec![1, 0, -1], Scalar::one()), (vec![0, 2, -1], Scalar::s_pow(1))]);
    let dens = case_density(3, 3).unwrap().times(&f);
    let base = torus_integral_ordered(&dens, &[0, 1, 2]).unwrap();
    for order in [[2, 1, 0], [1, 2, 0], [0, 2, 1]] {
        assert_eq!(torus_integral_ordered(&dens, &order).unwrap(), base);
    }
}

#[test]
fn bc_monomials_match_series_to_order_12() {
    for parts in [vec![], vec![1], vec![1, 1], vec![2, 1], vec![2, 2]] {
        let m: LaurentPoly = monomial_symmetric(&parts, 2, SymmetryType::BC);
        for case in [1, 2, 4] {
            let dens = case_density(case, 2).unwrap().times(&m);
            let exact = torus_integral(&dens).unwrap();
            assert_eq!(series_oracle(&dens, 12).unwrap(), TruncatedSeries::from_scalar(&exact, 12), "{parts:?} case {case}");
        }
    }
}
