use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Ring};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> UniPoly<C> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `true` when the polynomial is `c * x^k` for a single `k`.
    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Divides by `x^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Replaces `x` by `x^k`.
    pub fn stretch(&self, k: usize) -> Self {
        assert!(k >= 1);
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        UniPoly { coeffs }
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at an element of any ring `R` into which `C` maps.
    pub fn eval_with<R: Ring>(&self, x: &R, embed: impl Fn(&C) -> R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + &embed(c);
        }
        acc
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    fn add_impl(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.clone() + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.clone() * b;
                let slot = std::mem::replace(&mut out[i + j], C::zero());
                out[i + j] = slot + &prod;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<C: Field> UniPoly<C> {
    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = std::mem::replace(&mut rem[k + j], C::zero());
                rem[k + j] = v - &(c.clone() * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Quotient when `d` divides `self`, otherwise `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        if self.is_monomial() || other.is_monomial() {
            let k = self.valuation().unwrap().min(other.valuation().unwrap());
            return Self::monomial(C::one(), k);
        }
        let (mut a, mut b) = if self.coeffs.len() >= other.coeffs.len() {
            (self.monic(), other.monic())
        } else {
            (other.monic(), self.monic())
        };
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &C::from_i64(i as i64))
                .collect(),
        )
    }
}

impl<C: Ring + Ord> PartialOrd for UniPoly<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Ring + Ord> Ord for UniPoly<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<C: Ring> Add for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, o: &UniPoly<C>) -> UniPoly<C> {
        self.add_impl(o)
    }
}

impl<C: Ring> Sub for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, o: &UniPoly<C>) -> UniPoly<C> {
        self.add_impl(&-o)
    }
}

impl<C: Ring> Mul for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, o: &UniPoly<C>) -> UniPoly<C> {
        self.mul_impl(o)
    }
}

impl<C: Ring> Neg for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<C: Ring> UniPoly<C> {
    /// Writes the polynomial in ascending degree with the given variable name.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "q")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn p(c: &[i64]) -> UniPoly<BigRational> {
        UniPoly::from_coeffs(c.iter().map(|&v| BigRational::from_i64(v)).collect())
    }

    #[test]
    fn div_rem_and_gcd() {
        // (1 - x^2) = (1 - x)(1 + x)
        let a = p(&[1, 0, -1]);
        let b = p(&[1, -1]);
        assert_eq!(a.div_exact(&b), Some(p(&[1, 1])));
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert!(p(&[1, 0, 1]).div_exact(&b).is_none());
        assert_eq!(p(&[0, 0, 3]).gcd(&p(&[0, 2, 1])), p(&[0, 1]));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[1, -2, 0, 3]).to_string(), "1 - 2*q + 3*q^3");
        assert_eq!(p(&[]).to_string(), "0");
    }
}
