use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, GroupElement, Ring};
use crate::Error;

/// Integer exponent vector of a Laurent monomial.
pub type Exponent = Vec<i32>;

/// Sparse Laurent polynomial in a fixed number of variables `x1..xn`.
///
/// Terms are kept in a sorted map without zero coefficients, so iteration
/// order (and the text form) is deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent<R> {
    nvars: usize,
    terms: BTreeMap<Exponent, R>,
}

pub(crate) fn add_exp(a: &[i32], b: &[i32]) -> Exponent {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

pub(crate) fn sub_exp(a: &[i32], b: &[i32]) -> Exponent {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y).expect("exponent overflow"))
        .collect()
}

impl<R: Ring> Laurent<R> {
    pub fn zero(nvars: usize) -> Self {
        Laurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, R::one())
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, c: R) -> Self {
        let mut terms = BTreeMap::new();
        let nvars = exp.len();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Laurent { nvars, terms }
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, R::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, R)>) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            out.add_term(e, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &R)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, R> {
        self.terms
    }

    pub fn coeff(&self, e: &[i32]) -> R {
        self.terms.get(e).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&vec![0; self.nvars])
    }

    /// Returns the scalar if the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&a| a == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: Exponent, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = std::mem::replace(o.get_mut(), R::zero()) + &c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// Adds `c * x^shift * other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &R, shift: Option<&[i32]>) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (e, a) in &other.terms {
            let e = match shift {
                Some(s) => add_exp(e, s),
                None => e.clone(),
            };
            self.add_term(e, a.clone() * c);
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a.clone() * c))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    /// Multiplies by `c * x^e`.
    pub fn mul_monomial(&self, e: &[i32], c: &R) -> Self {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (add_exp(a, e), v.clone() * c))
                .collect(),
        }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Laurent<S> {
        Laurent::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_vars(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_vars(other)?;
        Ok(self.mul_impl(other))
    }

    fn check_vars(&self, other: &Self) -> Result<(), Error> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn mul_impl(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if a.terms.len() == 1 {
            let (e, c) = a.terms.iter().next().unwrap();
            let mut out = b.mul_monomial(e, c);
            out.terms.retain(|_, v| !v.is_zero());
            return out;
        }
        let mut acc: HashMap<Exponent, R> = HashMap::with_capacity(a.len() * b.len());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = add_exp(ea, eb);
                let p = ca.clone() * cb;
                match acc.get_mut(&e) {
                    Some(v) => {
                        let old = std::mem::replace(v, R::zero());
                        *v = old + &p;
                    }
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        Laurent {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Substitutes `x_i -> c_i * y^{w_i}` for every variable, producing a
    /// polynomial in `target_nvars` variables. Monomial images must be
    /// invertible, so their coefficients must be units of `R`; negative
    /// powers use `inv_coeffs[i]`.
    pub fn substitute(&self, images: &[MonomialImage<R>], target_nvars: usize) -> Result<Self, Error> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, images.len()));
        }
        for im in images {
            if im.exp.len() != target_nvars {
                return Err(Error::VariableMismatch(target_nvars, im.exp.len()));
            }
        }
        let mut out = Self::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut exp = vec![0i32; target_nvars];
            let mut coeff = c.clone();
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let im = &images[i];
                for (k, w) in im.exp.iter().enumerate() {
                    exp[k] = exp[k]
                        .checked_add(w.checked_mul(a).expect("exponent overflow"))
                        .expect("exponent overflow");
                }
                coeff = coeff * &im.coeff_pow(a);
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }

    /// `f(x) -> f(x^{-1})` in every variable.
    pub fn invert(&self) -> Self {
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|a| -a).collect(), c.clone()))
                .collect(),
        }
    }

    /// `f -> f` with `x_i` replaced by `x_i^{-1}`.
    pub fn invert_var(&self, i: usize) -> Self {
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] = -e[i];
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Signed-permutation action: `x_i^a -> x_{perm(i)}^{sign(i) a}`.
    pub fn act(&self, g: &GroupElement) -> Self {
        assert_eq!(g.len(), self.nvars, "group element acts on wrong number of variables");
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (g.act_exponent(e), c.clone()))
                .collect(),
        }
    }

    /// Embeds into more variables (new ones appended, exponent 0).
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        Laurent {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Keeps only terms whose exponents satisfy `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&[i32]) -> bool) -> Self {
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops terms of total degree above `d`.
    pub fn truncate_degree(&self, d: i32) -> Self {
        self.filter_terms(|e| e.iter().sum::<i32>() <= d)
    }

    /// Product truncated to total degree `d` (for nonnegative exponents).
    pub fn mul_truncated(&self, other: &Self, d: i32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            let da: i32 = ea.iter().sum();
            if da > d {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<i32>() <= d {
                    out.add_term(add_exp(ea, eb), ca.clone() * cb);
                }
            }
        }
        out
    }

    /// Per-variable `(min, max)` exponent; `None` for zero.
    pub fn exponent_box(&self) -> Option<Vec<(i32, i32)>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut bx: Vec<(i32, i32)> = first.iter().map(|&a| (a, a)).collect();
        for e in it {
            for (b, &a) in bx.iter_mut().zip(e) {
                b.0 = b.0.min(a);
                b.1 = b.1.max(a);
            }
        }
        Some(bx)
    }

    pub fn total_degree_range(&self) -> Option<(i32, i32)> {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for e in self.terms.keys() {
            let d: i32 = e.iter().sum();
            lo = lo.min(d);
            hi = hi.max(d);
        }
        (!self.terms.is_empty()).then_some((lo, hi))
    }

    /// Invariance under all permutations of the variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut f = e.clone();
                f.swap(i, i + 1);
                self.terms.get(&f) == Some(c)
            })
        })
    }

    /// Invariance under permutations and inversions of the variables.
    pub fn is_bc_invariant(&self) -> bool {
        self.is_symmetric()
            && (self.nvars == 0
                || self.terms.iter().all(|(e, c)| {
                    let mut f = e.clone();
                    f[0] = -f[0];
                    self.terms.get(&f) == Some(c)
                }))
    }
}

/// Image `coeff * y^exp` of one variable under substitution, with the
/// coefficient's inverse supplied so negative powers stay exact.
#[derive(Clone, Debug)]
pub struct MonomialImage<R> {
    pub coeff: R,
    pub coeff_inv: R,
    pub exp: Exponent,
}

impl<R: Ring> MonomialImage<R> {
    pub fn new(coeff: R, coeff_inv: R, exp: Exponent) -> Self {
        MonomialImage { coeff, coeff_inv, exp }
    }

    /// `y_k` with coefficient 1.
    pub fn var(target_nvars: usize, k: usize) -> Self {
        let mut exp = vec![0; target_nvars];
        exp[k] = 1;
        MonomialImage {
            coeff: R::one(),
            coeff_inv: R::one(),
            exp,
        }
    }

    fn coeff_pow(&self, a: i32) -> R {
        if a >= 0 {
            self.coeff.pow(a as u32)
        } else {
            self.coeff_inv.pow(a.unsigned_abs())
        }
    }
}

impl<R: Field> MonomialImage<R> {
    pub fn scaled(coeff: R, exp: Exponent) -> Self {
        let coeff_inv = coeff.inv();
        MonomialImage { coeff, coeff_inv, exp }
    }
}

impl<R: Field> Laurent<R> {
    /// Exact quotient `self / g` in the Laurent ring.
    ///
    /// Uses lexicographic leading-term division; every quotient exponent is
    /// confined to the box `box(self) - box(g)`, which bounds the loop and
    /// detects non-exact division.
    pub fn exact_divide(&self, g: &Self) -> Result<Self, Error> {
        self.check_vars(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if g.len() == 1 {
            let (e, c) = g.terms.iter().next().unwrap();
            let neg: Vec<i32> = e.iter().map(|a| -a).collect();
            return Ok(self.mul_monomial(&neg, &c.inv()));
        }
        let fb = self.exponent_box().unwrap();
        let gb = g.exponent_box().unwrap();
        let qbox: Vec<(i32, i32)> = fb
            .iter()
            .zip(&gb)
            .map(|(f, g)| (f.0 - g.0, f.1 - g.1))
            .collect();
        let (glead_e, glead_c) = g.terms.iter().next_back().unwrap();
        let glead_inv = glead_c.inv();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let qe = sub_exp(e, glead_e);
            if qe.iter().zip(&qbox).any(|(a, b)| *a < b.0 || *a > b.1) {
                return Err(Error::NotExact);
            }
            let qc = c.clone() * &glead_inv;
            rem.add_scaled(g, &-qc.clone(), Some(&qe));
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Exact quotient by the binomial `1 - c x^v`, or `None` if it does not divide.
    pub fn div_binomial(&self, c: &R, v: &[i32]) -> Option<Self> {
        assert_eq!(v.len(), self.nvars);
        let Some(i0) = v.iter().position(|&a| a != 0) else {
            let d = R::one() - c;
            return (!d.is_zero()).then(|| self.scale(&d.inv()));
        };
        if c.is_zero() {
            return Some(self.clone());
        }
        // 1 - c x^v = -c x^v (1 - c^{-1} x^{-v}); orient so that v[i0] > 0.
        if v[i0] < 0 {
            let vneg: Vec<i32> = v.iter().map(|a| -a).collect();
            let cinv = c.inv();
            let q = self.div_binomial(&cinv, &vneg)?;
            // self = (1 - c^{-1} x^{-v}) q = -c^{-1} x^{-v} (1 - c x^v) q
            return Some(q.mul_monomial(&vneg, &-cinv));
        }
        let step = v[i0];
        let mut lines: BTreeMap<Exponent, Vec<(i32, &R)>> = BTreeMap::new();
        for (e, a) in &self.terms {
            let k = e[i0].div_euclid(step);
            let base: Exponent = e.iter().zip(v).map(|(x, y)| x - k * y).collect();
            lines.entry(base).or_default().push((k, a));
        }
        let mut out = Self::zero(self.nvars);
        for (base, mut pts) in lines {
            pts.sort_by_key(|p| p.0);
            let kmin = pts[0].0;
            let kmax = pts.last().unwrap().0;
            let mut idx = 0;
            let mut q = R::zero();
            for k in kmin..=kmax {
                let mut nk = R::zero();
                if idx < pts.len() && pts[idx].0 == k {
                    nk = pts[idx].1.clone();
                    idx += 1;
                }
                q = nk + &(c.clone() * &q);
                if k == kmax {
                    if !q.is_zero() {
                        return None;
                    }
                } else if !q.is_zero() {
                    let e: Exponent = base.iter().zip(v).map(|(b, y)| b + k * y).collect();
                    out.terms.insert(e, q.clone());
                }
            }
        }
        Some(out)
    }
}

impl<R: Ring> Add for &Laurent<R> {
    type Output = Laurent<R>;
    fn add(self, o: &Laurent<R>) -> Laurent<R> {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl<R: Ring> Sub for &Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, o: &Laurent<R>) -> Laurent<R> {
        let mut out = self.clone();
        out.add_assign_ref(&-o);
        out
    }
}

impl<R: Ring> Mul for &Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, o: &Laurent<R>) -> Laurent<R> {
        self.mul_impl(o)
    }
}

impl<R: Ring> Neg for &Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<R: Ring> Add for Laurent<R> {
    type Output = Laurent<R>;
    fn add(mut self, o: Laurent<R>) -> Laurent<R> {
        self.add_assign_ref(&o);
        self
    }
}

impl<R: Ring> Sub for Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, o: Laurent<R>) -> Laurent<R> {
        &self - &o
    }
}

impl<R: Ring> Mul for Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, o: Laurent<R>) -> Laurent<R> {
        self.mul_impl(&o)
    }
}

/// Canonical text: `(c) * x1^a x2^b + ...` in ascending exponent order,
/// zero exponents omitted, `(c)` alone for the constant term.
impl<R: Ring> fmt::Display for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            let mut first = true;
            for (i, a) in e.iter().enumerate() {
                if *a == 0 {
                    continue;
                }
                write!(f, "{}x{}^{}", if first { " * " } else { " " }, i + 1, a)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = Laurent<BigRational>;

    fn q(v: i64) -> BigRational {
        BigRational::from_i64(v)
    }

    fn poly(n: usize, t: &[(&[i32], i64)]) -> L {
        L::from_terms(n, t.iter().map(|(e, c)| (e.to_vec(), q(*c))))
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(&a * &b, poly(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn exact_divide_laurent() {
        let f = poly(1, &[(&[2], -1), (&[0], 2), (&[-2], -1)]); // (1-x^2)(1-x^-2)
        let g = poly(1, &[(&[0], 1), (&[-1], -1)]);
        let q = f.exact_divide(&g).unwrap();
        assert_eq!(&q * &g, f);
        let h = poly(1, &[(&[0], 1), (&[1], 1), (&[2], 1)]);
        assert!(matches!(f.exact_divide(&h), Err(Error::NotExact)));
    }

    #[test]
    fn binomial_division() {
        let g = poly(2, &[(&[0, 0], 1), (&[1, -1], -3)]);
        let f = poly(2, &[(&[3, 1], 2), (&[0, 0], 1), (&[-1, 4], 5)]);
        let fg = &f * &g;
        assert_eq!(fg.div_binomial(&q(3), &[1, -1]), Some(f.clone()));
        // Same factor written as 1 - (1/3) x^{-v}, up to a unit.
        let alt = fg.div_binomial(&BigRational::new(1.into(), 3.into()), &[-1, 1]).unwrap();
        assert_eq!(alt, f.mul_monomial(&[1, -1], &q(-3)));
        assert!(f.div_binomial(&q(3), &[1, -1]).is_none());
    }

    #[test]
    fn inversion_and_substitution() {
        let f = poly(1, &[(&[1], 1), (&[-1], 1)]);
        assert_eq!(f.invert(), f);
        let g = poly(1, &[(&[0], 1), (&[2], 1)]);
        let im = [MonomialImage::scaled(q(3), vec![1])];
        assert_eq!(g.substitute(&im, 1).unwrap(), poly(1, &[(&[0], 1), (&[2], 9)]));
    }

    #[test]
    fn text_form() {
        let f = poly(2, &[(&[0, 0], 3), (&[1, -2], -1)]);
        assert_eq!(f.to_string(), "(3) + (-1) * x1^1 x2^-2");
    }
}
