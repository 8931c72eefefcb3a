use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Ring, UniPoly};

/// Element of the rational function field `C(s)`.
///
/// Always stored reduced: the denominator is monic and coprime to the
/// numerator, and zero is `0/1`. Structural equality is therefore field
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<C> {
    num: UniPoly<C>,
    den: UniPoly<C>,
}

impl<C: Field> RatFunc<C> {
    /// Builds `num/den` and reduces it. Panics when `den` is zero.
    pub fn new(num: UniPoly<C>, den: UniPoly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lead = den.lead().unwrap().clone();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.inv();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(num: UniPoly<C>) -> Self {
        RatFunc {
            num,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        Self::mono(C::one(), k)
    }

    /// `c * s^k`.
    pub fn mono(c: C, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            Self::from_poly(UniPoly::monomial(c, k as usize))
        } else {
            RatFunc {
                num: UniPoly::constant(c),
                den: UniPoly::monomial(C::one(), (-k) as usize),
            }
        }
    }

    pub fn numer(&self) -> &UniPoly<C> {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly<C> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Order of vanishing at `s = 0` (negative for poles); `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        Some(vn - self.den.valuation().unwrap() as i64)
    }

    /// If the value is `c * s^k`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(C, i64)> {
        if !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let vn = self.num.valuation().unwrap();
        let vd = self.den.valuation().unwrap();
        Some((self.num.coeff(vn), vn as i64 - vd as i64))
    }

    /// Multiplies by `s^k` without a gcd computation.
    pub fn mul_s_power(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let dv = self.den.valuation().unwrap();
        if k > 0 {
            let k = k as usize;
            let cancel = k.min(dv);
            RatFunc {
                num: self.num.shift_up(k - cancel),
                den: self.den.shift_down(cancel),
            }
        } else {
            let k = (-k) as usize;
            let nv = self.num.valuation().unwrap();
            let cancel = k.min(nv);
            RatFunc {
                num: self.num.shift_down(cancel),
                den: self.den.shift_up(k - cancel),
            }
        }
    }

    /// Replaces `s` by `s^k` for `k >= 1`.
    pub fn stretch(&self, k: usize) -> Self {
        RatFunc {
            num: self.num.stretch(k),
            den: self.den.stretch(k),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, crate::Error> {
        if other.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        Ok(self.mul_impl_inv(other))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let lead = self.num.lead().unwrap().inv();
        RatFunc {
            num: self.den.scale(&lead),
            den: self.num.scale(&lead),
        }
    }

    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        Ring::pow(&base, e.unsigned_abs() as u32)
    }

    /// Value at `s = x`, or `None` if `x` is a pole.
    pub fn eval(&self, x: &C) -> Option<C> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / &d)
    }

    /// Evaluates at an element of another field through a coefficient embedding.
    pub fn eval_with<F: Field>(&self, x: &F, embed: impl Fn(&C) -> F) -> Option<F> {
        let d = self.den.eval_with(x, &embed);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_with(x, &embed) / &d)
    }

    /// Laurent expansion around `s = 0`: returns `(v, c)` with
    /// `self = sum_i c[i] s^(v+i)` through the term `s^order` inclusive.
    pub fn series(&self, order: i64) -> (i64, Vec<C>) {
        let Some(v) = self.valuation() else {
            return (0, Vec::new());
        };
        if order < v {
            return (v, Vec::new());
        }
        let len = (order - v + 1) as usize;
        let nv = self.num.valuation().unwrap();
        let dv = self.den.valuation().unwrap();
        let n = &self.num.coeffs()[nv..];
        let d = &self.den.coeffs()[dv..];
        let d0_inv = d[0].inv();
        let mut out: Vec<C> = Vec::with_capacity(len);
        for i in 0..len {
            let mut acc = n.get(i).cloned().unwrap_or_else(C::zero);
            for j in 1..d.len().min(i + 1) {
                if !d[j].is_zero() {
                    acc = acc - &(d[j].clone() * &out[i - j]);
                }
            }
            out.push(acc * &d0_inv);
        }
        (v, out)
    }

    /// Coefficients of the expansion for exponents `lo..=hi`.
    pub fn series_window(&self, lo: i64, hi: i64) -> Vec<C> {
        let (v, c) = self.series(hi);
        (lo..=hi)
            .map(|e| {
                if e < v {
                    C::zero()
                } else {
                    c.get((e - v) as usize).cloned().unwrap_or_else(C::zero)
                }
            })
            .collect()
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: &(&self.num * &other.den) + &other.num,
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            return RatFunc {
                num: &self.num + &(&other.num * &self.den),
                den: self.den.clone(),
            };
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            // Coprime denominators: the sum cannot cancel against either.
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            if num.is_zero() {
                return Self::zero();
            }
            return RatFunc {
                num,
                den: &self.den * &other.den,
            };
        }
        let a = self.den.div_exact(&g).unwrap();
        let b = other.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&other.num * &a);
        let den = &a * &other.den;
        Self::new(num, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.div_exact(&g1).unwrap() };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.div_exact(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lead = den.lead().unwrap().clone();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.inv();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    fn mul_impl_inv(&self, other: &Self) -> Self {
        self.mul_impl(&other.inv())
    }

    /// Writes the value with the given name for the indeterminate.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_with(f, var);
        }
        let wrap = |p: &UniPoly<C>| p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if wrap(&self.num) {
            write!(f, "(")?;
            self.num.fmt_with(f, var)?;
            write!(f, ")")?;
        } else {
            self.num.fmt_with(f, var)?;
        }
        write!(f, "/")?;
        if wrap(&self.den) {
            write!(f, "(")?;
            self.den.fmt_with(f, var)?;
            write!(f, ")")
        } else {
            self.den.fmt_with(f, var)
        }
    }
}

impl<C: Field> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "s")
    }
}

impl<C: Field> Zero for RatFunc<C> {
    fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Field> One for RatFunc<C> {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, C: Field> $tr<&'a RatFunc<C>> for &'a RatFunc<C> {
            type Output = RatFunc<C>;
            fn $m(self, o: &'a RatFunc<C>) -> RatFunc<C> {
                $body(self, o)
            }
        }
        impl<'a, C: Field> $tr<&'a RatFunc<C>> for RatFunc<C> {
            type Output = RatFunc<C>;
            fn $m(self, o: &'a RatFunc<C>) -> RatFunc<C> {
                $body(&self, o)
            }
        }
        impl<C: Field> $tr<RatFunc<C>> for RatFunc<C> {
            type Output = RatFunc<C>;
            fn $m(self, o: RatFunc<C>) -> RatFunc<C> {
                $body(&self, &o)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatFunc<C>, b: &RatFunc<C>| a.add_impl(b));
forward_binop!(Sub, sub, |a: &RatFunc<C>, b: &RatFunc<C>| a.add_impl(&-b));
forward_binop!(Mul, mul, |a: &RatFunc<C>, b: &RatFunc<C>| a.mul_impl(b));
forward_binop!(Div, div, |a: &RatFunc<C>, b: &RatFunc<C>| {
    assert!(!b.is_zero(), "division by zero");
    a.mul_impl_inv(b)
});

impl<C: Field> Neg for RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        RatFunc {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl<C: Field> Neg for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Field> Ring for RatFunc<C> {
    fn from_i64(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl<C: Field> Field for RatFunc<C> {
    fn inv(&self) -> Self {
        RatFunc::inv(self)
    }
}
