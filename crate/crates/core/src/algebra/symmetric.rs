use std::collections::BTreeSet;

use super::{Exponent, Laurent, Ring};

/// Which Weyl group acts: permutations only, or permutations and inversions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SymmetryType {
    A,
    BC,
}

/// Distinct images of the exponent `parts` (padded with zeros to `n`).
pub fn orbit(parts: &[i32], n: usize, ty: SymmetryType) -> BTreeSet<Exponent> {
    assert!(parts.len() <= n, "more parts than variables");
    let mut base: Vec<i32> = parts.to_vec();
    base.resize(n, 0);
    if ty == SymmetryType::BC {
        for a in base.iter_mut() {
            *a = a.abs();
        }
    }
    base.sort_unstable();
    let mut out = BTreeSet::new();
    loop {
        match ty {
            SymmetryType::A => {
                out.insert(base.clone());
            }
            SymmetryType::BC => {
                let nz: Vec<usize> = (0..n).filter(|&i| base[i] != 0).collect();
                for mask in 0u64..(1 << nz.len()) {
                    let mut e = base.clone();
                    for (k, &i) in nz.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            e[i] = -e[i];
                        }
                    }
                    out.insert(e);
                }
            }
        }
        if !next_permutation(&mut base) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [i32]) -> bool {
    let n = p.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Orbit sum of `x^parts` with every orbit monomial at coefficient 1.
pub fn monomial_symmetric<R: Ring>(parts: &[i32], n: usize, ty: SymmetryType) -> Laurent<R> {
    Laurent::from_terms(n, orbit(parts, n, ty).into_iter().map(|e| (e, R::one())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&[1], 2, SymmetryType::A).len(), 2);
        assert_eq!(orbit(&[1], 2, SymmetryType::BC).len(), 4);
        assert_eq!(orbit(&[2, 1], 2, SymmetryType::A).len(), 2);
        assert_eq!(orbit(&[2, 1], 3, SymmetryType::BC).len(), 24);
        assert_eq!(orbit(&[], 3, SymmetryType::BC).len(), 1);
    }
}
