//! Partitions, signed weights and the statistics `φ_m`, `v_m`, `v_λ`,
//! `b_λ`, `n(λ)` and the pairings with the three half-sum vectors.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::Ring;
use crate::{Error, Result, Scalar};

/// Weakly decreasing sequence of positive integers (trailing zeros dropped).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Panics unless `parts` is weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Self {
        Self::try_new(parts).expect("parts must be weakly decreasing")
    }

    pub fn try_new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (zero-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `n`, as signed integers.
    pub fn padded(&self, n: usize) -> Vec<i32> {
        assert!(self.len() <= n, "partition {self} longer than {n}");
        let mut v: Vec<i32> = self.0.iter().map(|&a| a as i32).collect();
        v.resize(n, 0);
        v
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.part(0) as usize;
        Partition(
            (1..=m as u32)
                .map(|j| self.0.iter().filter(|&&a| a >= j).count() as u32)
                .collect(),
        )
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Self::from_unsorted(parts)
    }

    /// `μ²`: every part repeated twice.
    pub fn doubled(&self) -> Partition {
        Partition(self.0.iter().flat_map(|&a| [a, a]).collect())
    }

    /// `μ` with `self = μ²`, if every multiplicity is even.
    pub fn even_multiplicity_root(&self) -> Option<Partition> {
        if self.0.len() % 2 == 1 {
            return None;
        }
        let mut root = Vec::with_capacity(self.0.len() / 2);
        for pair in self.0.chunks(2) {
            if pair[0] != pair[1] {
                return None;
            }
            root.push(pair[0]);
        }
        Some(Partition(root))
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &a)| i as u32 * a).sum()
    }

    /// Multiplicities `m_1, m_2, …, m_{λ_1}` (index `i-1` holds `m_i`).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) as usize];
        for &a in &self.0 {
            m[a as usize - 1] += 1;
        }
        m
    }

    /// Multiplicity of zero relative to ambient length `n`.
    pub fn zero_multiplicity(&self, n: usize) -> Result<usize> {
        n.checked_sub(self.len())
            .ok_or(Error::TooLong { len: self.len(), n })
    }

    /// `μ ⊆ λ` as Young diagrams.
    pub fn contained_in(&self, lambda: &Partition) -> bool {
        self.len() <= lambda.len() && self.0.iter().zip(&lambda.0).all(|(a, b)| a <= b)
    }

    /// Dominance `self ≥ other` by partial sums (sizes need not agree).
    pub fn dominates(&self, other: &Partition) -> bool {
        let l = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..l {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Is `self / mu` a horizontal strip (at most one box per column)?
    pub fn is_horizontal_strip_over(&self, mu: &Partition) -> bool {
        mu.contained_in(self) && (0..self.len()).all(|i| mu.part(i) >= self.part(i + 1))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

fn split_parts(s: &str) -> Vec<&str> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if s.is_empty() {
        return Vec::new();
    }
    s.split(',').map(str::trim).collect()
}

/// Accepts `"3,2,1,1"`, `"(3,2)"`, `""` and `"0"`.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = split_parts(s)
            .into_iter()
            .map(|p| p.parse::<u32>().map_err(|e| Error::Invalid(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::try_new(parts)
    }
}

/// Weakly decreasing integer vector; negative parts allowed and the length
/// is significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedWeight(Vec<i32>);

impl SignedWeight {
    pub fn new(parts: Vec<i32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(SignedWeight(parts))
    }

    pub fn from_partition(p: &Partition, n: usize) -> Self {
        SignedWeight(p.padded(n))
    }

    pub fn parts(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `μμ̄ = (μ_1,…,μ_n,−μ_n,…,−μ_1)` for `μ` padded to length `n`.
    pub fn mu_mubar(mu: &Partition, n: usize) -> Self {
        let p = mu.padded(n);
        let mut v = p.clone();
        v.extend(p.iter().rev().map(|a| -a));
        SignedWeight(v)
    }

    /// Inverse of [`SignedWeight::mu_mubar`].
    pub fn mu_mubar_root(&self) -> Option<Partition> {
        let l = self.0.len();
        if l % 2 == 1 {
            return None;
        }
        let n = l / 2;
        let (a, b) = self.0.split_at(n);
        if a.iter().any(|&x| x < 0) || a.iter().zip(b.iter().rev()).any(|(x, y)| *x != -*y) {
            return None;
        }
        Some(Partition::new(a.iter().map(|&x| x as u32).collect()))
    }

    /// Shift by `k` in every coordinate.
    pub fn shifted(&self, k: i32) -> SignedWeight {
        SignedWeight(self.0.iter().map(|a| a + k).collect())
    }

    pub fn min_part(&self) -> i32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// As a partition, when every part is nonnegative.
    pub fn to_partition(&self) -> Option<Partition> {
        (self.min_part() >= 0).then(|| Partition::new(self.0.iter().map(|&a| a as u32).collect()))
    }
}

impl fmt::Display for SignedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SignedWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = split_parts(s)
            .into_iter()
            .map(|p| p.parse::<i32>().map_err(|e| Error::Invalid(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        SignedWeight::new(parts)
    }
}

/// Weight of the double cover of `GL_m`: an integral weight, optionally
/// shifted by `½` in every coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HalfWeight {
    pub base: SignedWeight,
    pub half: bool,
}

impl HalfWeight {
    pub fn integral(base: SignedWeight) -> Self {
        HalfWeight { base, half: false }
    }

    /// `base + ½·(1,…,1)`.
    pub fn half_shifted(base: SignedWeight) -> Self {
        HalfWeight { base, half: true }
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Entries of `2λ`.
    pub fn doubled(&self) -> Vec<i64> {
        self.base
            .parts()
            .iter()
            .map(|&a| 2 * a as i64 + self.half as i64)
            .collect()
    }

    /// `λ = μμ̄` for a (possibly half-integral) `μ` with nonnegative parts;
    /// returns `2μ`.
    pub fn mu_mubar_root_doubled(&self) -> Option<Vec<i64>> {
        let d = self.doubled();
        if d.len() % 2 == 1 {
            return None;
        }
        let n = d.len() / 2;
        let (a, b) = d.split_at(n);
        if a.iter().any(|&x| x < 0) || a.iter().zip(b.iter().rev()).any(|(x, y)| *x != -*y) {
            return None;
        }
        Some(a.to_vec())
    }
}

impl fmt::Display for HalfWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.half {
            return self.base.fmt(f);
        }
        write!(f, "(")?;
        for (i, a) in self.doubled().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", Half(*a))?;
        }
        write!(f, ")")
    }
}

/// Accepts integral parts (`"1,0,-1"`) or all-half-integral parts (`"3/2,1/2"`).
impl FromStr for HalfWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = split_parts(s);
        if parts.iter().any(|p| p.contains('/')) {
            let mut base = Vec::with_capacity(parts.len());
            for p in parts {
                let bad = || Error::Invalid(format!("{p:?} is not a half-integer"));
                let (num, den) = p.split_once('/').ok_or_else(bad)?;
                let num: i32 = num.trim().parse().map_err(|_| bad())?;
                if den.trim() != "2" || num % 2 == 0 {
                    return Err(bad());
                }
                base.push((num - 1).div_euclid(2));
            }
            return Ok(HalfWeight::half_shifted(SignedWeight::new(base)?));
        }
        Ok(HalfWeight::integral(s.parse()?))
    }
}

/// Exact half-integer, stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Half(pub i64);

impl Half {
    pub fn doubled(self) -> i64 {
        self.0
    }

    /// `t^self` with `t = s^2`, i.e. `s^{2·self}`.
    pub fn t_power(self) -> Scalar {
        Scalar::s_pow(self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// The three half-sum vectors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rho {
    /// `(n−½, …, ½)`, length `n`.
    One,
    /// `(n−½, …, ½−n)`, length `2n`.
    Two,
    /// `(n−1, n−3, …, 1−n)`, length `n`.
    Three,
}

impl Rho {
    /// Entries doubled, so all are integers.
    pub fn doubled(self, n: usize) -> Vec<i64> {
        let n = n as i64;
        match self {
            Rho::One => (0..n).map(|i| 2 * (n - i) - 1).collect(),
            Rho::Two => (0..2 * n).map(|i| 2 * n - 1 - 2 * i).collect(),
            Rho::Three => (0..n).map(|i| 2 * (n - 1 - 2 * i)).collect(),
        }
    }

    pub fn dim(self, n: usize) -> usize {
        match self {
            Rho::Two => 2 * n,
            _ => n,
        }
    }
}

/// `⟨λ, ρ⟩` as an exact half-integer.
pub fn rho_pairing(lambda: &[i32], rho: Rho, n: usize) -> Result<Half> {
    if lambda.len() != rho.dim(n) {
        return Err(Error::Invalid(format!(
            "weight of length {} paired with rho of length {}",
            lambda.len(),
            rho.dim(n)
        )));
    }
    let r = rho.doubled(n);
    Ok(Half(lambda.iter().zip(&r).map(|(&a, b)| a as i64 * b).sum()))
}

/// `⟨λ, ρ⟩` for a weight given doubled (entries of `2λ`); must be a half-integer.
pub fn rho_pairing_doubled(lambda2: &[i64], rho: Rho, n: usize) -> Result<Half> {
    if lambda2.len() != rho.dim(n) {
        return Err(Error::Invalid("dimension mismatch".into()));
    }
    let r = rho.doubled(n);
    let quad: i64 = lambda2.iter().zip(&r).map(|(a, b)| a * b).sum();
    if quad % 2 != 0 {
        return Err(Error::Invalid("pairing is not a half-integer".into()));
    }
    Ok(Half(quad / 2))
}

/// `φ_m(t) = Π_{i=1}^m (1 − t^i)`.
pub fn phi(m: usize, t: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut tp = Scalar::one();
    for _ in 0..m {
        tp = tp * t;
        acc = acc * &(Scalar::one() - &tp);
    }
    acc
}

/// `v_m(t) = Π_{i=1}^m (1 − t^i)/(1 − t)`, computed as a product of
/// `1 + t + … + t^{i-1}` so it stays defined at `t = 1`.
pub fn v_m(m: usize, t: &Scalar) -> Scalar {
    let mut acc = Scalar::one();
    let mut geo = Scalar::zero();
    let mut tp = Scalar::one();
    for _ in 0..m {
        geo = geo + &tp;
        tp = tp * t;
        acc = acc * &geo;
    }
    acc
}

/// Multiplicities of the distinct values in an integer vector.
pub fn value_multiplicities(w: &[i32]) -> Vec<usize> {
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&x| x == sorted[i]).count();
        out.push(j);
        i += j;
    }
    out
}

/// `v_w(t) = Π v_{m}(t)` over the multiplicities of all distinct entries of `w`
/// (zeros included, so the length of `w` is the ambient rank).
pub fn v_weight(w: &[i32], t: &Scalar) -> Scalar {
    value_multiplicities(w)
        .into_iter()
        .fold(Scalar::one(), |acc, m| acc * &v_m(m, t))
}

/// `v_λ(t)` with `m_0 = n − l(λ)`.
pub fn v_lambda(lambda: &Partition, n: usize, t: &Scalar) -> Result<Scalar> {
    lambda.zero_multiplicity(n)?;
    Ok(v_weight(&lambda.padded(n), t))
}

/// `b_λ(t) = Π_{i≥1} φ_{m_i}(t)`.
pub fn b_lambda(lambda: &Partition, t: &Scalar) -> Scalar {
    lambda
        .multiplicities()
        .into_iter()
        .fold(Scalar::one(), |acc, m| acc * &phi(m, t))
}

/// Bundle of the statistics of one partition in an ambient rank.
#[derive(Clone, Debug)]
pub struct Statistics {
    pub multiplicities: Vec<usize>,
    pub m0: usize,
    pub n_stat: u32,
    pub v_lambda: Scalar,
    pub b_lambda: Scalar,
}

pub fn statistics(lambda: &Partition, n: usize, t: &Scalar) -> Result<Statistics> {
    let m0 = lambda.zero_multiplicity(n)?;
    Ok(Statistics {
        multiplicities: lambda.multiplicities(),
        m0,
        n_stat: lambda.n_stat(),
        v_lambda: v_lambda(lambda, n, t)?,
        b_lambda: b_lambda(lambda, t),
    })
}

/// Partitions of `k` with at most `max_len` parts, each at most `max_part`,
/// in reverse lexicographic order.
pub fn partitions_of(k: u32, max_len: usize, max_part: u32) -> Vec<Partition> {
    fn rec(k: u32, max_len: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if k == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if max_len == 0 {
            return;
        }
        for p in (1..=max_part.min(k)).rev() {
            cur.push(p);
            rec(k - p, max_len - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions with `|λ| ≤ w` and at most `max_len` parts, by size then
/// reverse lexicographic order.
pub fn partitions_up_to(w: u32, max_len: usize) -> Vec<Partition> {
    (0..=w).flat_map(|k| partitions_of(k, max_len, k)).collect()
}

/// Integer weakly decreasing vectors of length `len` with entries in `[lo, hi]`.
pub fn signed_weights(len: usize, lo: i32, hi: i32) -> Vec<SignedWeight> {
    fn rec(len: usize, lo: i32, hi: i32, cur: &mut Vec<i32>, out: &mut Vec<SignedWeight>) {
        if cur.len() == len {
            out.push(SignedWeight(cur.clone()));
            return;
        }
        let top = cur.last().copied().unwrap_or(hi);
        for a in (lo..=top).rev() {
            cur.push(a);
            rec(len, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// `n!` as a scalar.
pub fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| acc * &Scalar::from_i64(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn t() -> Scalar {
        Scalar::s_pow(2)
    }

    #[test]
    fn conjugate_and_even_multiplicity() {
        let l = p(&[3, 3, 2, 2, 1, 1, 1, 1]);
        assert_eq!(l.conjugate(), p(&[8, 4, 2]));
        assert_eq!(l.even_multiplicity_root(), Some(p(&[3, 2, 1, 1])));
        assert_eq!(p(&[4, 1]).conjugate(), p(&[2, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[1]).even_multiplicity_root(), None);
        assert_eq!(p(&[2, 2, 2, 2]).even_multiplicity_root(), Some(p(&[2, 2])));
    }

    #[test]
    fn union_examples() {
        assert_eq!(p(&[3, 2, 1]).union(&p(&[2, 2])), p(&[3, 2, 2, 2, 1]));
        assert_eq!(p(&[1]).union(&p(&[1])), p(&[1, 1]));
    }

    #[test]
    fn v_and_b() {
        assert_eq!(v_m(1, &t()), Scalar::one());
        assert_eq!(v_m(2, &t()), Scalar::one() + t());
        let l = p(&[1]);
        assert_eq!(v_lambda(&l, 2, &t()).unwrap(), Scalar::one());
        assert_eq!(b_lambda(&l, &t()), Scalar::one() - t());
        assert!(v_lambda(&p(&[1, 1, 1]), 2, &t()).is_err());
    }

    #[test]
    fn rho_pairings() {
        assert_eq!(rho_pairing(&[1, 1], Rho::Two, 1).unwrap(), Half(0));
        assert_eq!(rho_pairing(&[1, 0], Rho::Two, 1).unwrap(), Half(1));
        assert_eq!(rho_pairing(&[1], Rho::Three, 1).unwrap(), Half(0));
        assert!(rho_pairing(&[1], Rho::Two, 1).is_err());
        assert_eq!(Rho::Three.doubled(3), vec![4, 0, -4]);
    }

    #[test]
    fn parsing() {
        assert_eq!("3,2,1,1".parse::<Partition>().unwrap(), p(&[3, 2, 1, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("1,-1".parse::<SignedWeight>().unwrap().parts(), &[1, -1]);
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(partitions_of(6, 10, 6).len(), 11);
        assert_eq!(partitions_of(6, 2, 6).len(), 4);
        assert_eq!(partitions_up_to(3, 3).len(), 7);
        assert_eq!(signed_weights(2, -1, 1).len(), 6);
    }

    #[test]
    fn mu_mubar_roundtrip() {
        let w = SignedWeight::mu_mubar(&p(&[2]), 2);
        assert_eq!(w.parts(), &[2, 0, 0, -2]);
        assert_eq!(w.mu_mubar_root(), Some(p(&[2])));
    }
}
