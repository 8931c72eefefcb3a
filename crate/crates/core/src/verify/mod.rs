//! Grid verification of the integral identities, with one report row per
//! grid point.

mod integrals;
mod littlewood;
mod orthogonality;
mod report;
mod theorems;
mod vanishing;

pub use integrals::{case_integrator, hl_t, integral_lhs, restricted_hl, IntegralOptions, LhsValue};
pub use littlewood::{littlewood_coefficient, littlewood_lhs, littlewood_rhs, verify_littlewood, LittlewoodOptions};
pub use orthogonality::{verify_orthogonality, OrthogonalityOptions};
pub use report::{ReportSet, Status, VerificationReport};
pub use vanishing::{genvan_grid, verify_genvan, verify_schur};
pub use theorems::{lambda_grid, verify_theorem, Identity, VerifyOptions};
