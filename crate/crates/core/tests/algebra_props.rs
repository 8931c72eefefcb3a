use hallkoorn::algebra::{GroupElement, UniPoly};
use hallkoorn::{LaurentPoly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn q(a: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 0i64..=2, 0i64..=2).prop_map(|(c, k, d)| {
        // c·s^k / (1 − s^d) when d > 0
        let x = Scalar::s_pow(k) * &Scalar::from_int(c);
        if d == 0 {
            x
        } else {
            x / &(Scalar::one() - &Scalar::s_pow(d))
        }
    })
}

fn laurent(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, nvars), scalar()), 0..5)
        .prop_map(move |terms| LaurentPoly::from_terms(nvars, terms))
}

fn signed_perm(n: usize) -> impl Strategy<Value = GroupElement> {
    let all = GroupElement::hyperoctahedral_group(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in laurent(2), g in laurent(2), h in laurent(2)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(f in laurent(2), g in laurent(2)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn action_is_a_homomorphism(f in laurent(3), a in signed_perm(3), b in signed_perm(3)) {
        prop_assert_eq!(f.act(&a.compose(&b)), f.act(&b).act(&a));
    }

    #[test]
    fn scalar_form_is_canonical(a in -5i64..=5, b in 1i64..=5, c in -4i64..=4, k in 0i64..=3) {
        prop_assume!(c != 0);
        // (a + b s^k)/(c) built directly and through a common factor (1 + s)
        let num = &UniPoly::from_coeffs(vec![q(a)]) + &UniPoly::monomial(q(b), k as usize);
        let den = UniPoly::constant(q(c));
        let direct = Scalar::new(num.clone(), den.clone());
        let extra = UniPoly::from_coeffs(vec![q(1), q(1)]);
        let padded = Scalar::new(&num * &extra, &den * &extra);
        prop_assert_eq!(direct.to_string(), padded.to_string());
        prop_assert_eq!(direct.numer(), padded.numer());
        prop_assert_eq!(direct.denom(), padded.denom());
    }
}
