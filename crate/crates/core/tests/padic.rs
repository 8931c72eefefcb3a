mod support;

use hallkoorn::padic::{evaluate_at_prime, gl_double_coset_measure, lemma33};
use hallkoorn::partitions::{partitions_up_to, signed_weights, HalfWeight, Partition, SignedWeight};
use num_traits::Zero;
use support::subgroups::hall_numbers;

/// `|K p^λ K / K|` counts lattices `M ⊂ Z_p^n` with `Z_p^n / M` of type `λ`.
/// For `λ_1 ≤ k` these are the subgroups of `(Z/p^k)^n` of cotype `λ`.
fn lattice_count(p: u64, n: usize, k: u32, lambda: &Partition) -> u64 {
    hall_numbers(p, &vec![k; n])
        .into_iter()
        .filter(|((cotype, _), _)| cotype.as_slice() == lambda.parts())
        .map(|(_, c)| c)
        .sum()
}

#[test]
fn gl_measure_counts_lattices() {
    for (p, n, k) in [(2u64, 2usize, 2u32), (3, 2, 2), (2, 3, 2), (3, 3, 1), (5, 2, 1)] {
        for lambda in partitions_up_to(k * n as u32, n).into_iter().filter(|l| l.parts().iter().all(|&a| a <= k)) {
            let w = SignedWeight::from_partition(&lambda, n);
            // p^{-1} = s² reads off as case 1 at a prime
            let m = gl_double_coset_measure(&w, n, 2).unwrap();
            let v = evaluate_at_prime(&m, 1, p).unwrap();
            assert_eq!(v.to_string(), lattice_count(p, n, k, &lambda).to_string(), "p={p} n={n} {lambda}");
        }
    }
}

#[test]
fn case_two_is_the_gl_measure_in_rank_2n() {
    for n in 1..=2 {
        for w in signed_weights(2 * n, -2, 2) {
            let ours = lemma33(2, &HalfWeight::integral(w.clone()), n).unwrap();
            assert_eq!(ours, gl_double_coset_measure(&w, 2 * n, 1).unwrap(), "{w}");
        }
    }
}

#[test]
fn measures_positive_at_small_s() {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let third = BigRational::new(BigInt::from(1), BigInt::from(3));
    for case in 1..=4u8 {
        for n in 1..=2usize {
            let weights: Vec<HalfWeight> = if case == 3 {
                signed_weights(2 * n, -2, 2).into_iter().map(HalfWeight::integral).collect()
            } else {
                partitions_up_to(4, 2 * n)
                    .iter()
                    .map(|l| HalfWeight::integral(SignedWeight::from_partition(l, 2 * n)))
                    .collect()
            };
            for w in weights {
                let m = lemma33(case, &w, n).unwrap();
                if m.is_zero() {
                    continue;
                }
                for s in [&half, &third] {
                    assert!(m.eval(s).unwrap() > BigRational::zero(), "case {case} {w}");
                }
            }
        }
    }
}
