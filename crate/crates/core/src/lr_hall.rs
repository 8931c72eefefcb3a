//! Littlewood-Richardson coefficients and Hall polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::hall_littlewood::{structure_constants, ExpansionTable};
use crate::partitions::{partitions_of, Partition};
use crate::{Error, Result, Scalar};

/// `c^λ_{μν}`: skew tableaux of shape `λ/μ` and content `ν` whose reverse
/// reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !mu.contained_in(lambda) || !nu.contained_in(lambda) {
        return 0;
    }
    let rows = lambda.len();
    let lam: Vec<usize> = lambda.parts().iter().map(|&a| a as usize).collect();
    let inner: Vec<usize> = (0..rows).map(|i| mu.part(i) as usize).collect();
    let content: Vec<usize> = nu.parts().iter().map(|&a| a as usize).collect();
    // Cells in reading order: rows top to bottom, each right to left.
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (inner[i]..lam[i]).rev().map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = lam.iter().map(|&l| vec![0; l]).collect();
    let mut used = vec![0usize; content.len()];

    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        inner: &[usize],
        content: &[usize],
        grid: &mut Vec<Vec<usize>>,
        used: &mut Vec<usize>,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (i, j) = cells[k];
        // entries are 1-based; 0 marks an empty cell
        let hi = if j + 1 < grid[i].len() { grid[i][j + 1] } else { content.len() };
        let lo = if i > 0 && j >= inner[i - 1] { grid[i - 1][j] + 1 } else { 1 };
        let mut total = 0;
        for e in lo..=hi.min(content.len()) {
            let v = e - 1;
            if used[v] >= content[v] || (v > 0 && used[v] >= used[v - 1]) {
                continue;
            }
            used[v] += 1;
            grid[i][j] = e;
            total += rec(k + 1, cells, inner, content, grid, used);
            grid[i][j] = 0;
            used[v] -= 1;
        }
        total
    }
    rec(0, &cells, &inner, &content, &mut grid, &mut used)
}

/// `g^λ_{μν}(q)` with integer coefficients, stored in ascending degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HallPolynomial {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub coeffs: Vec<BigInt>,
}

impl HallPolynomial {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &q + c)
    }
}

impl fmt::Display for HallPolynomial {
    /// Ascending degree, e.g. `1 + q`, `2 + 3*q - q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

type FKey = (Partition, Partition);

fn f_cache() -> &'static RwLock<HashMap<FKey, Arc<ExpansionTable<Partition>>>> {
    static C: OnceLock<RwLock<HashMap<FKey, Arc<ExpansionTable<Partition>>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Stable `f^λ_{μν}(t)` for all `λ`, at `t = s²`.
fn f_table(mu: &Partition, nu: &Partition) -> Result<Arc<ExpansionTable<Partition>>> {
    let key = (mu.clone(), nu.clone());
    if let Some(v) = f_cache().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let n = ((mu.size() + nu.size()) as usize).max(1);
    let v = Arc::new(structure_constants(mu, nu, n, &Scalar::s_pow(2))?);
    Ok(f_cache().write().unwrap().entry(key).or_insert(v).clone())
}

/// Integer coefficients of `f` as a polynomial in `t = s²`.
fn t_coefficients(f: &Scalar) -> Option<Vec<BigInt>> {
    if !f.is_polynomial() {
        return None;
    }
    let mut out = Vec::new();
    for (k, c) in f.numer().coeffs().iter().enumerate() {
        if k % 2 == 1 {
            if !c.is_zero() {
                return None;
            }
            continue;
        }
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}

/// `g^λ_{μν}(q) = q^{n(λ)−n(μ)−n(ν)} f^λ_{μν}(1/q)`.
pub fn hall_polynomial(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<HallPolynomial> {
    let mut out = HallPolynomial {
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu: nu.clone(),
        coeffs: Vec::new(),
    };
    if lambda.size() != mu.size() + nu.size() {
        return Ok(out);
    }
    let f = f_table(mu, nu)?.get(lambda);
    if f.is_zero() {
        return Ok(out);
    }
    let bad = || Error::NotIntegerPolynomial(format!("f^{lambda}_{{{mu},{nu}}} = {f}"));
    let tc = t_coefficients(&f).ok_or_else(bad)?;
    let d = lambda.n_stat() as i64 - mu.n_stat() as i64 - nu.n_stat() as i64;
    if d < 0 || tc.len() as i64 > d + 1 {
        return Err(bad());
    }
    let mut g = vec![BigInt::zero(); d as usize + 1];
    for (k, c) in tc.into_iter().enumerate() {
        g[d as usize - k] = c;
    }
    while g.last().is_some_and(|c| c.is_zero()) {
        g.pop();
    }
    out.coeffs = g;
    Ok(out)
}

/// The two combinatorial vanishing conditions attached to `(λ, μ)`, taken
/// over `β = ν²` with `l(β) ≤ 2n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VanishingLegs {
    pub lr_vanishes: bool,
    pub hall_vanishes: bool,
}

pub fn vanishing_legs(lambda: &Partition, mu: &Partition, n: usize) -> Result<VanishingLegs> {
    if lambda.len() > 2 * n || mu.len() > n {
        return Err(Error::TooLong {
            len: lambda.len().max(mu.len()),
            n,
        });
    }
    let mut legs = VanishingLegs {
        lr_vanishes: true,
        hall_vanishes: true,
    };
    if lambda.size() < mu.size() || (lambda.size() - mu.size()) % 2 == 1 {
        return Ok(legs);
    }
    let half = (lambda.size() - mu.size()) / 2;
    for nu in partitions_of(half, n, half) {
        let beta = nu.doubled();
        if lr_coefficient(lambda, mu, &beta) != 0 {
            legs.lr_vanishes = false;
        }
        if !hall_polynomial(lambda, mu, &beta)?.is_zero() {
            legs.hall_vanishes = false;
        }
    }
    Ok(legs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_up_to;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    /// Skew Schur expansion oracle: `c^λ_{μν}` as the coefficient of `s_λ`
    /// in `s_μ s_ν`, read off through the t = 0 structure constants.
    #[test]
    fn lr_matches_schur_products() {
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for mu in partitions_of(a, 3, a) {
                    for nu in partitions_of(b, 3, b) {
                        let n = (a + b).max(1) as usize;
                        let table = structure_constants(&mu, &nu, n, &Scalar::zero()).unwrap();
                        for lambda in partitions_of(a + b, n, a + b) {
                            let want = table.get(&lambda);
                            let got = lr_coefficient(&lambda, &mu, &nu);
                            assert_eq!(Scalar::from_int(got as i64), want, "{lambda} {mu} {nu}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[1, 1]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[3]), &p(&[1]), &p(&[1])), 0);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[]), &p(&[2])), 1);
    }

    #[test]
    fn hall_examples() {
        let g = hall_polynomial(&p(&[2]), &p(&[1]), &p(&[1])).unwrap();
        assert_eq!(g.coeffs, vec![BigInt::from(1)]);
        let g = hall_polynomial(&p(&[1, 1]), &p(&[1]), &p(&[1])).unwrap();
        assert_eq!(g.to_string(), "1 + q");
        assert!(hall_polynomial(&p(&[3]), &p(&[1]), &p(&[1])).unwrap().is_zero());
    }

    #[test]
    fn facts_small_grid() {
        for lambda in partitions_up_to(5, 5) {
            for a in 0..=lambda.size() {
                for mu in partitions_of(a, 5, a) {
                    let b = lambda.size() - a;
                    for nu in partitions_of(b, 5, b) {
                        let c = lr_coefficient(&lambda, &mu, &nu);
                        let g = hall_polynomial(&lambda, &mu, &nu).unwrap();
                        if c == 0 {
                            assert!(g.is_zero());
                        } else {
                            let d = lambda.n_stat() - mu.n_stat() - nu.n_stat();
                            assert_eq!(g.degree(), Some(d as usize));
                            assert_eq!(g.leading_coefficient(), BigInt::from(c));
                        }
                        assert_eq!(g.coeffs, hall_polynomial(&lambda, &nu, &mu).unwrap().coeffs);
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_examples() {
        let legs = vanishing_legs(&p(&[2, 2]), &p(&[]), 2).unwrap();
        assert!(!legs.lr_vanishes && !legs.hall_vanishes);
        let legs = vanishing_legs(&p(&[1, 1]), &p(&[1]), 1).unwrap();
        assert!(legs.lr_vanishes && legs.hall_vanishes);
        let legs = vanishing_legs(&p(&[1]), &p(&[]), 1).unwrap();
        assert!(legs.lr_vanishes && legs.hall_vanishes);
        // Horizontal strip: (3,1)/(1,1) is a horizontal 2-strip.
        let legs = vanishing_legs(&p(&[3, 1]), &p(&[2]), 2).unwrap();
        assert!(!legs.lr_vanishes && !legs.hall_vanishes);
    }

    #[test]
    fn display_forms() {
        let h = HallPolynomial {
            lambda: p(&[]),
            mu: p(&[]),
            nu: p(&[]),
            coeffs: vec![BigInt::from(2), BigInt::from(-1), BigInt::from(3)],
        };
        assert_eq!(h.to_string(), "2 - q + 3*q^2");
        assert_eq!(h.eval(2), BigInt::from(12));
    }
}
