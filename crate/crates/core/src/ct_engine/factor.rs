use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::Ring;
use crate::{Error, LaurentPoly, Result, Scalar};

/// Signed power of `s`: `±s^exp`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SMono {
    pub neg: bool,
    pub exp: i64,
}

impl SMono {
    pub const ONE: SMono = SMono { neg: false, exp: 0 };

    pub fn s_pow(exp: i64) -> Self {
        SMono { neg: false, exp }
    }

    pub fn neg_s_pow(exp: i64) -> Self {
        SMono { neg: true, exp }
    }

    pub fn mul(self, o: SMono) -> SMono {
        SMono {
            neg: self.neg ^ o.neg,
            exp: self.exp + o.exp,
        }
    }

    pub fn inv(self) -> SMono {
        SMono {
            neg: self.neg,
            exp: -self.exp,
        }
    }

    pub fn negate(self) -> SMono {
        SMono {
            neg: !self.neg,
            exp: self.exp,
        }
    }

    pub fn pow(self, k: i64) -> SMono {
        SMono {
            neg: self.neg && k % 2 != 0,
            exp: self.exp * k,
        }
    }

    /// Square root inside `±s^Z`, when one exists with positive sign.
    pub fn sqrt(self) -> Option<SMono> {
        (!self.neg && self.exp % 2 == 0).then_some(SMono::s_pow(self.exp / 2))
    }

    pub fn to_scalar(self) -> Scalar {
        let v = Scalar::s_pow(self.exp);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// `self * x` without a general multiplication.
    pub fn apply(self, x: &Scalar) -> Scalar {
        let v = x.mul_s_power(self.exp);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// Recognizes `±s^k` among scalars.
    pub fn from_scalar(x: &Scalar) -> Option<SMono> {
        let (c, k) = x.as_monomial()?;
        if c.is_one() {
            Some(SMono::s_pow(k))
        } else if (-c).is_one() {
            Some(SMono::neg_s_pow(k))
        } else {
            None
        }
    }
}

impl fmt::Display for SMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.neg { "-" } else { "" };
        match self.exp {
            0 => write!(f, "{sign}1"),
            1 => write!(f, "{sign}s"),
            e => write!(f, "{sign}s^{e}"),
        }
    }
}

/// A Laurent monomial with a signed `s`-power coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub coeff: SMono,
    pub exp: Vec<i32>,
}

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono {
            coeff: SMono::ONE,
            exp: vec![0; nvars],
        }
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono {
            coeff: self.coeff.mul(o.coeff),
            exp: self.exp.iter().zip(&o.exp).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inv(&self) -> Mono {
        Mono {
            coeff: self.coeff.inv(),
            exp: self.exp.iter().map(|a| -a).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Mono {
        Mono {
            coeff: self.coeff.pow(k),
            exp: self
                .exp
                .iter()
                .map(|a| (*a as i64 * k).try_into().expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.exp.iter().all(|&a| a == 0)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.exp.clone(), self.coeff.to_scalar())
    }
}

/// Multiplies a Laurent polynomial by a [`Mono`] using only `s`-shifts.
pub fn mul_mono(p: &LaurentPoly, m: &Mono) -> LaurentPoly {
    if m.is_scalar() && m.coeff == SMono::ONE {
        return p.clone();
    }
    LaurentPoly::from_terms(
        p.nvars(),
        p.terms().map(|(e, c)| {
            (
                e.iter().zip(&m.exp).map(|(a, b)| a + b).collect(),
                m.coeff.apply(c),
            )
        }),
    )
}

/// The factor `1 − coeff·x^exp`, stored with the first nonzero entry of
/// `exp` positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BinomialFactor {
    pub exp: Vec<i32>,
    pub coeff: SMono,
}

impl BinomialFactor {
    pub fn to_laurent(&self) -> LaurentPoly {
        let n = self.exp.len();
        let mut p = LaurentPoly::one(n);
        p.add_term(self.exp.clone(), -self.coeff.to_scalar());
        p
    }

    /// Signed `s`-valuation of the coefficient.
    pub fn valuation(&self) -> i64 {
        self.coeff.exp
    }

    pub fn involves(&self, j: usize) -> bool {
        self.exp[j] != 0
    }
}

impl fmt::Display for BinomialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1 - ({})", self.coeff)?;
        for (i, a) in self.exp.iter().enumerate() {
            if *a != 0 {
                write!(f, " x{}^{}", i + 1, a)?;
            }
        }
        write!(f, ")")
    }
}

/// `1 − c·x^v` written as `unit · Π factors` (or a plain scalar when `v = 0`).
#[derive(Clone, Debug)]
pub enum Decomposed {
    Scalar(Scalar),
    Factors { unit: Mono, factors: Vec<BinomialFactor> },
}

/// Orients and splits `1 − c·x^v` as far as possible over `Q(s)`.
pub fn decompose(c: SMono, v: &[i32]) -> Decomposed {
    let Some(first) = v.iter().find(|&&a| a != 0) else {
        return Decomposed::Scalar(Scalar::one() - &c.to_scalar());
    };
    let mut unit = Mono::one(v.len());
    let (c, v) = if *first < 0 {
        // 1 − c x^v = −c x^v (1 − c^{-1} x^{-v})
        unit = Mono {
            coeff: c.negate(),
            exp: v.to_vec(),
        };
        (c.inv(), v.iter().map(|a| -a).collect::<Vec<_>>())
    } else {
        (c, v.to_vec())
    };
    let mut factors = Vec::new();
    split_into(c, v, &mut factors);
    Decomposed::Factors { unit, factors }
}

fn split_into(c: SMono, v: Vec<i32>, out: &mut Vec<BinomialFactor>) {
    if v.iter().all(|a| a % 2 == 0) {
        if let Some(r) = c.sqrt() {
            let half: Vec<i32> = v.iter().map(|a| a / 2).collect();
            split_into(r, half.clone(), out);
            split_into(r.negate(), half, out);
            return;
        }
    }
    out.push(BinomialFactor { exp: v, coeff: c });
}

/// `prefactor · numerator / Π (1 − c·x^v)^m`.
#[derive(Clone, PartialEq, Debug)]
pub struct FactoredRational {
    pub(crate) nvars: usize,
    pub(crate) prefactor: Scalar,
    pub(crate) numerator: LaurentPoly,
    pub(crate) denominators: BTreeMap<BinomialFactor, u32>,
}

impl FactoredRational {
    pub fn one(nvars: usize) -> Self {
        Self::from_laurent(LaurentPoly::one(nvars))
    }

    pub fn from_laurent(numerator: LaurentPoly) -> Self {
        FactoredRational {
            nvars: numerator.nvars(),
            prefactor: Scalar::one(),
            numerator,
            denominators: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn prefactor(&self) -> &Scalar {
        &self.prefactor
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominators(&self) -> &BTreeMap<BinomialFactor, u32> {
        &self.denominators
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero() || self.numerator.is_zero()
    }

    pub fn scale(&mut self, c: &Scalar) {
        self.prefactor = &self.prefactor * c;
    }

    pub fn mul_laurent(&mut self, p: &LaurentPoly) {
        assert_eq!(p.nvars(), self.nvars);
        self.numerator = &self.numerator * p;
    }

    /// Copy with the numerator multiplied by `p`.
    pub fn times(&self, p: &LaurentPoly) -> Self {
        let mut out = self.clone();
        out.mul_laurent(p);
        out
    }

    /// Multiplies the numerator by `1 − c·x^v`.
    pub fn mul_binomial(&mut self, c: SMono, v: &[i32]) {
        let mut p = LaurentPoly::one(self.nvars);
        p.add_term(v.to_vec(), -c.to_scalar());
        self.mul_laurent(&p);
    }

    /// Divides by `(1 − c·x^v)^m`; errors only if it is the zero scalar.
    pub fn div_binomial(&mut self, c: SMono, v: &[i32], m: u32) -> Result<()> {
        match decompose(c, v) {
            Decomposed::Scalar(d) => {
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.prefactor = &self.prefactor / &Ring::pow(&d, m);
            }
            Decomposed::Factors { unit, factors } => {
                self.numerator = mul_mono(&self.numerator, &unit.inv().pow(m as i64));
                for f in factors {
                    *self.denominators.entry(f).or_insert(0) += m;
                }
            }
        }
        Ok(())
    }

    /// Variables that occur in the numerator or in some denominator factor.
    pub fn active_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&j| {
                self.denominators.keys().any(|f| f.involves(j))
                    || self.numerator.terms().any(|(e, _)| e[j] != 0)
            })
            .collect()
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn normalize(&mut self) {
        if self.is_zero() {
            self.numerator = LaurentPoly::zero(self.nvars);
            self.prefactor = Scalar::one();
            self.denominators.clear();
            return;
        }
        let keys: Vec<BinomialFactor> = self.denominators.keys().cloned().collect();
        for f in keys {
            let c = f.coeff.to_scalar();
            loop {
                let m = self.denominators[&f];
                if m == 0 {
                    break;
                }
                match self.numerator.div_binomial(&c, &f.exp) {
                    Some(q) => {
                        self.numerator = q;
                        *self.denominators.get_mut(&f).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.denominators.retain(|_, m| *m > 0);
    }

    /// Absorbs the prefactor into the numerator.
    pub fn absorb_prefactor(&mut self) {
        if !self.prefactor.is_one() {
            self.numerator = self.numerator.scale(&self.prefactor);
            self.prefactor = Scalar::one();
        }
    }

    /// Expands to a single (numerator, denominator) pair of Laurent polynomials.
    pub fn expand(&self) -> (LaurentPoly, LaurentPoly) {
        let mut den = LaurentPoly::one(self.nvars);
        for (f, m) in &self.denominators {
            den = &den * &f.to_laurent().pow(*m);
        }
        (self.numerator.scale(&self.prefactor), den)
    }
}

/// Debug dump: `pre * [numerator] / (1 - (c) x1^a ...)^m ...`.
impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * [{}]", self.prefactor, self.numerator)?;
        if !self.denominators.is_empty() {
            write!(f, " /")?;
            for (b, m) in &self.denominators {
                if *m == 1 {
                    write!(f, " {b}")?;
                } else {
                    write!(f, " {b}^{m}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_orients_and_splits() {
        match decompose(SMono::s_pow(4), &[-2, 0]) {
            Decomposed::Factors { unit, factors } => {
                assert_eq!(unit.coeff, SMono::neg_s_pow(4));
                assert_eq!(unit.exp, vec![-2, 0]);
                assert_eq!(factors.len(), 2);
                assert!(factors.iter().all(|f| f.exp == vec![1, 0]));
                assert!(factors.iter().any(|f| f.coeff == SMono::s_pow(-2)));
                assert!(factors.iter().any(|f| f.coeff == SMono::neg_s_pow(-2)));
            }
            Decomposed::Scalar(_) => panic!("expected factors"),
        }
        assert!(matches!(decompose(SMono::s_pow(3), &[2]), Decomposed::Factors { factors, .. } if factors.len() == 1));
    }

    #[test]
    fn decomposition_multiplies_back() {
        for (c, v) in [
            (SMono::s_pow(4), vec![-2, 2]),
            (SMono::neg_s_pow(1), vec![0, -1]),
            (SMono::s_pow(0), vec![4, 0]),
        ] {
            let Decomposed::Factors { unit, factors } = decompose(c, &v) else {
                panic!()
            };
            let mut prod = unit.to_laurent();
            for f in &factors {
                prod = &prod * &f.to_laurent();
            }
            let want = BinomialFactor { exp: v.clone(), coeff: c }.to_laurent();
            assert_eq!(prod, want);
        }
    }

    #[test]
    fn normalize_cancels() {
        let mut f = FactoredRational::one(1);
        f.mul_binomial(SMono::ONE, &[2]);
        f.div_binomial(SMono::ONE, &[-1], 1).unwrap();
        f.normalize();
        assert!(f.denominators().is_empty());
        // (1 - x^2)/(1 - x^-1) = -x (1 + x)
        let want = LaurentPoly::from_terms(
            1,
            [(vec![1], -Scalar::one()), (vec![2], -Scalar::one())],
        );
        assert_eq!(f.numerator(), &want);
    }
}
