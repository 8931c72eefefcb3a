//! Exact arithmetic: coefficient rings, univariate polynomials, the rational
//! function field in `s`, sparse Laurent polynomials and the signed
//! permutation actions on them.

mod group;
mod laurent;
mod poly;
mod ratfunc;
mod symmetric;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

pub use group::GroupElement;
pub use laurent::{Exponent, Laurent, MonomialImage};
pub use poly::UniPoly;
pub use ratfunc::RatFunc;
pub use symmetric::{monomial_symmetric, orbit, SymmetryType};

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + for<'a> Div<&'a Self, Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().pow((-e) as u32)
        }
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}
impl Field for BigRational {}

impl Ring for Rational64 {
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }
}
impl Field for Rational64 {}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Generalized binomial coefficient `binom(k, j)` for any integer `k`.
pub fn binomial<C: Field>(k: i64, j: usize) -> C {
    let mut acc = C::one();
    for i in 0..j {
        acc = acc * &C::from_i64(k - i as i64) / &C::from_i64(i as i64 + 1);
    }
    acc
}
