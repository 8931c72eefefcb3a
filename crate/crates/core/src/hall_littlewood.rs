//! Hall-Littlewood polynomials `P_λ(x;t)` and related expansions.
//!
//! `P_λ` is built from its monomial expansion, `P_λ = Σ_T ψ_T(t) x^T` over
//! semistandard tableaux, which is much cheaper than symmetrizing over `S_n`
//! once `n` exceeds 4. The symmetrization formula is kept in the tests as an
//! independent oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::algebra::{monomial_symmetric, MonomialImage, SymmetryType};
use crate::partitions::{b_lambda, partitions_of, HalfWeight, Partition, SignedWeight};
use crate::{Error, LaurentPoly, Result, Scalar};

/// Finitely supported table `label -> coefficient`; zero entries are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpansionTable<K: Ord> {
    entries: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for ExpansionTable<K> {
    fn default() -> Self {
        ExpansionTable {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> ExpansionTable<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry(k.clone()).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.entries.remove(&k);
        }
    }

    /// Coefficient of `k` (zero if absent).
    pub fn get(&self, k: &K) -> Scalar {
        self.entries.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_map(self) -> BTreeMap<K, Scalar> {
        self.entries
    }
}

impl<K: Ord + fmt::Display> fmt::Display for ExpansionTable<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {c}")?;
        }
        write!(f, "}}")
    }
}

/// `P_λ` in `n` variables.
#[derive(Clone, Debug)]
pub struct HLPolynomial {
    pub lambda: SignedWeight,
    pub n: usize,
    pub t: Scalar,
    pub value: LaurentPoly,
}

/// `ψ_{ρ/ν}(t)` for a horizontal strip `ρ/ν`.
fn psi(rho: &[u32], nu: &[u32], t: &Scalar) -> Scalar {
    let top = rho.first().copied().unwrap_or(0) as usize;
    let col = |p: &[u32], j: usize| p.iter().filter(|&&a| a as usize >= j).count();
    let mut acc = Scalar::one();
    for j in 1..=top {
        let th_j = col(rho, j) - col(nu, j);
        let th_next = col(rho, j + 1) - col(nu, j + 1);
        if th_j == 0 && th_next == 1 {
            // m_j(ν) = ν'_j − ν'_{j+1}
            let m = col(nu, j) - col(nu, j + 1);
            acc = acc * &(Scalar::one() - &crate::algebra::Ring::pow(t, m as u32));
        }
    }
    acc
}

/// Every `ρ ⊆ λ` with `ρ/ν` a horizontal strip of size `k`.
fn horizontal_strips(nu: &[u32], lambda: &[u32], k: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, nu: &[u32], lambda: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lambda.len() {
            if left == 0 {
                let mut r = cur.clone();
                while r.last() == Some(&0) {
                    r.pop();
                }
                out.push(r);
            }
            return;
        }
        let lo = nu.get(i).copied().unwrap_or(0);
        let mut hi = lambda[i];
        if i > 0 {
            hi = hi.min(nu.get(i - 1).copied().unwrap_or(0));
        }
        if hi < lo {
            return;
        }
        for r in lo..=hi.min(lo + left) {
            cur.push(r);
            rec(i + 1, left - (r - lo), nu, lambda, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, nu, lambda, &mut Vec::with_capacity(lambda.len()), &mut out);
    out
}

/// `[x^κ] P_λ` for a partition `κ`, as a sum over tableaux of shape `λ`
/// and content `κ`.
fn tableau_coefficient(lambda: &Partition, kappa: &Partition, t: &Scalar) -> Scalar {
    let mut states: HashMap<Vec<u32>, Scalar> = HashMap::new();
    states.insert(Vec::new(), Scalar::one());
    for &k in kappa.parts() {
        let mut next: HashMap<Vec<u32>, Scalar> = HashMap::new();
        for (nu, c) in &states {
            for rho in horizontal_strips(nu, lambda.parts(), k) {
                let w = c * &psi(&rho, nu, t);
                let e = next.entry(rho).or_insert_with(Scalar::zero);
                *e = &*e + &w;
            }
        }
        states = next;
    }
    states.remove(lambda.parts()).unwrap_or_else(Scalar::zero)
}

type CoeffKey = (Partition, Scalar, usize);
type CoeffTable = Arc<BTreeMap<Partition, Scalar>>;

fn coeff_cache() -> &'static RwLock<HashMap<CoeffKey, CoeffTable>> {
    static C: OnceLock<RwLock<HashMap<CoeffKey, CoeffTable>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `P_λ` on the monomial symmetric functions `m_κ` with
/// `l(κ) ≤ max_len` (these do not depend on the number of variables).
pub fn monomial_coefficients(lambda: &Partition, t: &Scalar, max_len: usize) -> CoeffTable {
    let key = (lambda.clone(), t.clone(), max_len);
    if let Some(v) = coeff_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let mut out = BTreeMap::new();
    for kappa in partitions_of(lambda.size(), max_len, lambda.size()) {
        if !lambda.dominates(&kappa) {
            continue;
        }
        let c = tableau_coefficient(lambda, &kappa, t);
        if !c.is_zero() {
            out.insert(kappa, c);
        }
    }
    let v = Arc::new(out);
    coeff_cache().write().unwrap().entry(key).or_insert(v).clone()
}

type PolyKey = (Vec<i32>, usize, Scalar);

fn poly_cache() -> &'static RwLock<HashMap<PolyKey, Arc<LaurentPoly>>> {
    static C: OnceLock<RwLock<HashMap<PolyKey, Arc<LaurentPoly>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Pads `λ` with zeros to length `n`; negative weights must already have length `n`.
fn pad_weight(lambda: &SignedWeight, n: usize) -> Result<Vec<i32>> {
    if lambda.len() > n {
        return Err(Error::TooLong { len: lambda.len(), n });
    }
    if lambda.len() < n && lambda.min_part() < 0 {
        return Err(Error::Invalid(format!("weight {lambda} with negative parts must have length {n}")));
    }
    let mut v = lambda.parts().to_vec();
    v.resize(n, 0);
    Ok(v)
}

/// `P_λ(x_1,…,x_n; t)` as a Laurent polynomial (cached). Negative parts use
/// `P_λ = (x_1⋯x_n)^{-k} P_{λ+k·1^n}`.
pub fn hl_poly(lambda: &SignedWeight, n: usize, t: &Scalar) -> Result<Arc<LaurentPoly>> {
    let w = pad_weight(lambda, n)?;
    let key = (w.clone(), n, t.clone());
    if let Some(v) = poly_cache().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let k = (-w.last().copied().unwrap_or(0)).max(0);
    let part = Partition::new(w.iter().map(|&a| (a + k) as u32).collect());
    let mut p = LaurentPoly::zero(n);
    for (kappa, c) in monomial_coefficients(&part, t, n).iter() {
        let m: LaurentPoly = monomial_symmetric(&kappa.padded(n), n, SymmetryType::A);
        p.add_scaled(&m, c, None);
    }
    if k != 0 {
        p = p.mul_monomial(&vec![-k; n], &Scalar::one());
    }
    let v = Arc::new(p);
    Ok(poly_cache().write().unwrap().entry(key).or_insert(v).clone())
}

/// `P_λ(x;t)` with its metadata.
pub fn hl_p(lambda: &SignedWeight, n: usize, t: &Scalar) -> Result<HLPolynomial> {
    Ok(HLPolynomial {
        lambda: lambda.clone(),
        n,
        t: t.clone(),
        value: (*hl_poly(lambda, n, t)?).clone(),
    })
}

/// `Q_λ = b_λ(t) P_λ`.
pub fn hl_q(lambda: &Partition, n: usize, t: &Scalar) -> Result<LaurentPoly> {
    let p = hl_poly(&SignedWeight::from_partition(lambda, lambda.len()), n, t)?;
    Ok(p.scale(&b_lambda(lambda, t)))
}

/// Schur polynomial `s_λ = P_λ(x;0)`.
pub fn schur(lambda: &Partition, n: usize) -> Result<LaurentPoly> {
    Ok((*hl_poly(&SignedWeight::from_partition(lambda, lambda.len()), n, &Scalar::zero())?).clone())
}

/// Symplectic character `sp_μ`: `K_μ` at `t = 0`, `(a,b,c,d) = 0`.
pub fn symplectic_character(mu: &Partition, n: usize) -> Result<LaurentPoly> {
    if mu.len() > n {
        return Err(Error::TooLong { len: mu.len(), n });
    }
    let basis = crate::koornwinder::build_basis(n, crate::koornwinder::symplectic_params(), mu.size())?;
    Ok(basis.polynomials[mu].clone())
}

/// How the `2n` arguments of `P^{(2n)}` are specialized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Restriction {
    /// `(x_1, x_1^{-1}, …, x_n, x_n^{-1})`.
    PlainPm,
    /// `(c·x_1, c^{-1}·x_1, …, c·x_n, c^{-1}·x_n)`.
    ShiftedPm(Scalar),
}

/// `P^{(2n)}_λ` at the arguments given by `mode`, as a Laurent polynomial in
/// `x_1, …, x_n`. Half-integral weights are only meaningful for
/// [`Restriction::ShiftedPm`], where the square root of the product of the
/// arguments is `x_1⋯x_n`.
pub fn hl_restricted(lambda: &HalfWeight, n: usize, mode: &Restriction, t: &Scalar) -> Result<LaurentPoly> {
    let p = hl_poly(&lambda.base, 2 * n, t)?;
    let unit = |k: usize| {
        let mut e = vec![0; n];
        e[k] = 1;
        e
    };
    let images: Vec<MonomialImage<Scalar>> = match mode {
        Restriction::PlainPm => {
            if lambda.half {
                return Err(Error::Invalid("half-integral weight needs shifted arguments".into()));
            }
            (0..2 * n)
                .map(|i| {
                    let mut e = unit(i % n);
                    if i >= n {
                        e[i - n] = -1;
                    }
                    MonomialImage::new(Scalar::one(), Scalar::one(), e)
                })
                .collect()
        }
        Restriction::ShiftedPm(c) => (0..2 * n)
            .map(|i| {
                let c = if i % 2 == 0 { c.clone() } else { c.inv() };
                MonomialImage::scaled(c, unit(i / 2))
            })
            .collect(),
    };
    let mut out = p.substitute(&images, n)?;
    if lambda.half {
        out = out.mul_monomial(&vec![1; n], &Scalar::one());
    }
    Ok(out)
}

/// Expansion of a symmetric Laurent polynomial in the `P_λ(x;t)` basis.
/// Labels are weights of length `n` (negative parts appear when `f` has
/// negative exponents).
pub fn expand_in_p_basis(f: &LaurentPoly, t: &Scalar) -> Result<ExpansionTable<SignedWeight>> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = f.nvars();
    let k = f.terms().flat_map(|(e, _)| e.iter().copied()).min().unwrap_or(0).min(0);
    let mut g = if k < 0 { f.mul_monomial(&vec![-k; n], &Scalar::one()) } else { f.clone() };
    let mut table = ExpansionTable::new();
    loop {
        let top = g
            .terms()
            .rev()
            .find(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .map(|(e, c)| (e.clone(), c.clone()));
        let Some((e, c)) = top else {
            break;
        };
        let label = SignedWeight::new(e.iter().map(|a| a + k).collect())?;
        let p = hl_poly(&SignedWeight::new(e)?, n, t)?;
        g.add_scaled(&p, &-c.clone(), None);
        table.add(label, c);
    }
    if !g.is_zero() {
        return Err(Error::NotSymmetric);
    }
    Ok(table)
}

/// `Σ_{α ≤ λ, |α| = a} f[α] g[λ − α]` where `f`, `g` are symmetric and given
/// by their monomial coefficients.
fn product_coefficient(lambda: &[u32], a: u32, f: &BTreeMap<Partition, Scalar>, g: &BTreeMap<Partition, Scalar>) -> Scalar {
    fn rec(
        i: usize,
        left: u32,
        lambda: &[u32],
        cur: &mut Vec<u32>,
        f: &BTreeMap<Partition, Scalar>,
        g: &BTreeMap<Partition, Scalar>,
        acc: &mut Scalar,
    ) {
        if i == lambda.len() {
            if left > 0 {
                return;
            }
            let alpha = Partition::from_unsorted(cur.clone());
            let beta = Partition::from_unsorted(lambda.iter().zip(cur.iter()).map(|(l, a)| l - a).collect());
            if let (Some(x), Some(y)) = (f.get(&alpha), g.get(&beta)) {
                *acc = &*acc + &(x * y);
            }
            return;
        }
        let rest: u32 = lambda[i + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for ai in lo..=lambda[i].min(left) {
            cur.push(ai);
            rec(i + 1, left - ai, lambda, cur, f, g, acc);
            cur.pop();
        }
    }
    let mut acc = Scalar::zero();
    rec(0, a, lambda, &mut Vec::with_capacity(lambda.len()), f, g, &mut acc);
    acc
}

/// The structure constants `f^λ_{μν}(t)` of `P_μ P_ν = Σ_λ f^λ_{μν} P_λ`
/// in `n` variables (`n ≥ |μ| + |ν|` gives the stable values).
pub fn structure_constants(mu: &Partition, nu: &Partition, n: usize, t: &Scalar) -> Result<ExpansionTable<Partition>> {
    if mu.len() > n || nu.len() > n {
        return Err(Error::TooLong {
            len: mu.len().max(nu.len()),
            n,
        });
    }
    let size = mu.size() + nu.size();
    let cm = monomial_coefficients(mu, t, n);
    let cn = monomial_coefficients(nu, t, n);
    // Monomial coordinates of the product, dominant exponents only.
    let mut prod: BTreeMap<Partition, Scalar> = BTreeMap::new();
    for lambda in partitions_of(size, n, size) {
        let c = product_coefficient(lambda.parts(), mu.size(), &cm, &cn);
        if !c.is_zero() {
            prod.insert(lambda, c);
        }
    }
    // Triangular elimination from the top of the lexicographic order.
    let mut table = ExpansionTable::new();
    while let Some((lambda, c)) = prod.pop_last() {
        for (kappa, a) in monomial_coefficients(&lambda, t, n).iter() {
            if *kappa == lambda {
                continue;
            }
            let e = prod.entry(kappa.clone()).or_insert_with(Scalar::zero);
            *e = &*e - &(&c * a);
            if e.is_zero() {
                prod.remove(kappa);
            }
        }
        table.add(lambda, c);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupElement;
    use crate::partitions::{partitions_up_to, v_lambda};

    fn t() -> Scalar {
        Scalar::s_pow(2)
    }

    fn sw(v: &[i32]) -> SignedWeight {
        SignedWeight::new(v.to_vec()).unwrap()
    }

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    /// `(1/v_λ) Σ_w w(x^λ Π_{i<j} (x_i − t x_j)/(x_i − x_j))`, evaluated as
    /// an antisymmetrization divided by the Vandermonde.
    fn symmetrization_oracle(lambda: &Partition, n: usize, t: &Scalar) -> LaurentPoly {
        let mut f = LaurentPoly::monomial(lambda.padded(n), Scalar::one());
        let mut vdm = LaurentPoly::one(n);
        for i in 0..n {
            for j in i + 1..n {
                let xi = LaurentPoly::var(n, i);
                let xj = LaurentPoly::var(n, j);
                f = &f * &(&xi - &xj.scale(t));
                vdm = &vdm * &(&xi - &xj);
            }
        }
        let mut alt = LaurentPoly::zero(n);
        for w in GroupElement::symmetric_group(n) {
            let s = Scalar::from_int(w.perm_sign());
            alt.add_scaled(&f.act(&w), &s, None);
        }
        let q = alt.exact_divide(&vdm).unwrap();
        q.scale(&v_lambda(lambda, n, t).unwrap().inv())
    }

    #[test]
    fn small_examples() {
        let one_var_sum = &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1);
        assert_eq!(*hl_poly(&sw(&[1]), 2, &t()).unwrap(), one_var_sum);
        assert_eq!(
            *hl_poly(&sw(&[1, 1]), 2, &t()).unwrap(),
            LaurentPoly::monomial(vec![1, 1], Scalar::one())
        );
        let want = LaurentPoly::from_terms(
            2,
            [
                (vec![2, 0], Scalar::one()),
                (vec![0, 2], Scalar::one()),
                (vec![1, 1], Scalar::one() - &t()),
            ],
        );
        assert_eq!(*hl_poly(&sw(&[2]), 2, &t()).unwrap(), want);
        assert!(hl_poly(&sw(&[1, 1, 1]), 2, &t()).is_err());
    }

    #[test]
    fn matches_symmetrization() {
        for n in 1..=3 {
            for lambda in partitions_up_to(5, n) {
                for tt in [t(), Scalar::s_pow(4), Scalar::zero()] {
                    let got = hl_poly(&SignedWeight::from_partition(&lambda, n), n, &tt).unwrap();
                    assert_eq!(*got, symmetrization_oracle(&lambda, n, &tt), "{lambda} n={n}");
                }
            }
        }
    }

    #[test]
    fn negative_weights_shift() {
        let got = hl_poly(&sw(&[1, -1]), 2, &t()).unwrap();
        let base = hl_poly(&sw(&[2, 0]), 2, &t()).unwrap();
        assert_eq!(*got, base.mul_monomial(&[-1, -1], &Scalar::one()));
    }

    #[test]
    fn restrictions() {
        let h = |v: &[i32]| HalfWeight::integral(sw(v));
        let r = hl_restricted(&h(&[1, 1]), 1, &Restriction::PlainPm, &t()).unwrap();
        assert_eq!(r, LaurentPoly::one(1));
        let r = hl_restricted(&h(&[1, 0]), 1, &Restriction::PlainPm, &t()).unwrap();
        assert_eq!(r, &LaurentPoly::var(1, 0) + &LaurentPoly::var(1, 0).invert());
        let s = Scalar::s_pow(1);
        let r = hl_restricted(&h(&[1, 0]), 1, &Restriction::ShiftedPm(s.clone()), &t()).unwrap();
        assert_eq!(r, LaurentPoly::monomial(vec![1], &s + &s.inv()));
        let half = HalfWeight::half_shifted(sw(&[0, -1]));
        let r = hl_restricted(&half, 1, &Restriction::ShiftedPm(s.clone()), &t()).unwrap();
        // P_{(1/2,-1/2)} = (y1 y2)^{-1/2} P_{(1,0)}(y), with y = (s x, x/s).
        let want = LaurentPoly::monomial(vec![0], &s + &s.inv());
        assert_eq!(r, want);
        assert!(hl_restricted(&half, 1, &Restriction::PlainPm, &t()).is_err());
    }

    #[test]
    fn p_basis_expansion() {
        let p1 = hl_poly(&sw(&[1]), 2, &t()).unwrap();
        let sq = &*p1 * &*p1;
        let table = expand_in_p_basis(&sq, &t()).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table.get(&sw(&[2, 0])), Scalar::one());
        assert_eq!(table.get(&sw(&[1, 1])), Scalar::one() + &t());
        let m11: LaurentPoly = monomial_symmetric(&[1, 1], 2, SymmetryType::A);
        assert_eq!(expand_in_p_basis(&m11, &t()).unwrap().get(&sw(&[1, 1])), Scalar::one());
        let skew = LaurentPoly::var(2, 0);
        assert!(matches!(expand_in_p_basis(&skew, &t()), Err(Error::NotSymmetric)));
        // negative exponents
        let f = &LaurentPoly::var(2, 0).invert() + &LaurentPoly::var(2, 1).invert();
        let table = expand_in_p_basis(&f, &t()).unwrap();
        assert_eq!(table.get(&sw(&[0, -1])), Scalar::one());
    }

    #[test]
    fn structure_constants_small() {
        let f = structure_constants(&p(&[1]), &p(&[1]), 2, &t()).unwrap();
        assert_eq!(f.get(&p(&[2])), Scalar::one());
        assert_eq!(f.get(&p(&[1, 1])), Scalar::one() + &t());
        let f = structure_constants(&p(&[1]), &p(&[]), 1, &t()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.get(&p(&[1])), Scalar::one());
    }

    #[test]
    fn structure_constants_reconstruct_product() {
        let n = 3;
        for (mu, nu) in [(p(&[2]), p(&[1])), (p(&[1, 1]), p(&[1])), (p(&[2, 1]), p(&[1]))] {
            let table = structure_constants(&mu, &nu, n, &t()).unwrap();
            let mut recon = LaurentPoly::zero(n);
            for (lambda, c) in table.iter() {
                let pl = hl_poly(&SignedWeight::from_partition(lambda, lambda.len()), n, &t()).unwrap();
                recon.add_scaled(&pl, c, None);
            }
            let a = hl_poly(&SignedWeight::from_partition(&mu, mu.len()), n, &t()).unwrap();
            let b = hl_poly(&SignedWeight::from_partition(&nu, nu.len()), n, &t()).unwrap();
            assert_eq!(recon, &*a * &*b);
        }
    }

    /// Bialternant `a_{λ+δ}/a_δ`.
    fn bialternant(lambda: &Partition, n: usize) -> LaurentPoly {
        let mut num = LaurentPoly::zero(n);
        let mut den = LaurentPoly::zero(n);
        let ld: Vec<i32> = lambda.padded(n).iter().enumerate().map(|(i, a)| a + (n - 1 - i) as i32).collect();
        let d: Vec<i32> = (0..n).map(|i| (n - 1 - i) as i32).collect();
        for w in GroupElement::symmetric_group(n) {
            let s = Scalar::from_int(w.perm_sign());
            num.add_term(w.act_exponent(&ld), s.clone());
            den.add_term(w.act_exponent(&d), s);
        }
        num.exact_divide(&den).unwrap()
    }

    #[test]
    fn schur_is_t_zero() {
        for n in 1..=3 {
            for lambda in partitions_up_to(5, n) {
                assert_eq!(schur(&lambda, n).unwrap(), bialternant(&lambda, n), "{lambda}");
            }
        }
    }

    #[test]
    fn monic_and_triangular() {
        for lambda in partitions_up_to(6, 3) {
            let pl = hl_poly(&SignedWeight::from_partition(&lambda, 3), 3, &t()).unwrap();
            assert_eq!(pl.coeff(&lambda.padded(3)), Scalar::one());
            for (e, _) in pl.terms() {
                let k = Partition::from_unsorted(e.iter().map(|&a| a as u32).collect());
                assert!(lambda.dominates(&k) && k.size() == lambda.size());
            }
        }
    }

    /// `Σ_λ P_λ(x) Q_λ(y) = Π (1 − t x_i y_j)/(1 − x_i y_j)` through total degree 6 in 2+2 variables.
    #[test]
    fn cauchy_identity_truncated() {
        let d: i32 = 6;
        let nv = 4;
        let lift = |f: &LaurentPoly, off: usize| {
            let images: Vec<MonomialImage<Scalar>> = (0..2).map(|i| MonomialImage::var(nv, i + off)).collect();
            f.substitute(&images, nv).unwrap()
        };
        let mut lhs = LaurentPoly::zero(nv);
        for k in 0..=(d as u32 / 2) {
            for lambda in partitions_of(k, 2, k) {
                let pl = hl_poly(&SignedWeight::from_partition(&lambda, 2), 2, &t()).unwrap();
                let ql = hl_q(&lambda, 2, &t()).unwrap();
                lhs.add_assign_ref(&(&lift(&pl, 0) * &lift(&ql, 2)));
            }
        }
        let mut rhs = LaurentPoly::one(nv);
        for i in 0..2 {
            for j in 2..4 {
                let mut e = vec![0; nv];
                e[i] = 1;
                e[j] = 1;
                let xy = LaurentPoly::monomial(e, Scalar::one());
                // (1 − t u)/(1 − u) = 1 + (1 − t) Σ_{r≥1} u^r
                let mut factor = LaurentPoly::one(nv);
                let mut up = LaurentPoly::one(nv);
                for _ in 1..=d / 2 {
                    up = &up * &xy;
                    factor.add_scaled(&up, &(Scalar::one() - &t()), None);
                }
                rhs = rhs.mul_truncated(&factor, d);
            }
        }
        assert_eq!(lhs.truncate_degree(d), rhs);
    }
}
