//! Torus integration of rational functions whose denominators are products
//! of binomials `1 − c·x^v`, with `c` a signed power of `s`.

mod density;
mod factor;
mod moments;
mod residue;
mod series;

pub use density::{build_density, case_density, case_params, symplectic_density, DensityKind, DensityParams};
pub use factor::{decompose, mul_mono, BinomialFactor, Decomposed, FactoredRational, Mono, SMono};
pub use moments::{DensityIntegrator, MomentSymmetry};
pub use residue::{torus_integral, torus_integral_ordered};
pub use series::{series_oracle, DenominatorSeries, TruncatedSeries};

use crate::{LaurentPoly, Result, Scalar};

/// `⟨f, g⟩_Δ = ∫ f(x) g(x^{-1}) Δ dT`, integrating the full product directly.
pub fn inner_product(f: &LaurentPoly, g: &LaurentPoly, density: &FactoredRational) -> Result<Scalar> {
    torus_integral(&density.times(&(f * &g.invert())))
}
