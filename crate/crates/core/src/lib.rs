//! Exact computer algebra for Hall-Littlewood and q=0 Koornwinder
//! polynomials, torus integrals by iterated residues, Littlewood-Richardson
//! coefficients, Hall polynomials and p-adic double-coset measures.
//!
//! Everything is computed over the field `Q(s)`, where `s` is a square root
//! of the Hall-Littlewood parameter `t`.

pub mod algebra;
pub mod ct_engine;
pub mod hall_littlewood;
pub mod koornwinder;
pub mod lr_hall;
pub mod padic;
pub mod partitions;
pub mod verify;
mod error;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Exact element of `Q(s)`.
pub type Scalar = algebra::RatFunc<BigRational>;

/// Sparse Laurent polynomial over [`Scalar`].
pub type LaurentPoly = algebra::Laurent<Scalar>;
