//! The normalized torus integrals of the general identity, each computed
//! twice: by direct residue integration and through a basis expansion.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::ct_engine::{case_density, case_params, DensityIntegrator, MomentSymmetry};
use crate::hall_littlewood::{expand_in_p_basis, hl_poly, hl_restricted, Restriction};
use crate::koornwinder::{build_basis, expand_in_k_basis, integrator, pairing_from_expansion};
use crate::partitions::{HalfWeight, Partition, SignedWeight};
use crate::{Error, LaurentPoly, Result, Scalar};

/// Hall-Littlewood parameter of the integrand (all cases).
pub fn hl_t() -> Scalar {
    Scalar::s_pow(2)
}

/// Parameter of the type-A density and of `P_μ` in case 3.
fn case3_t() -> Scalar {
    Scalar::s_pow(4)
}

fn type_a_integrators() -> &'static RwLock<HashMap<usize, Arc<DensityIntegrator>>> {
    static C: OnceLock<RwLock<HashMap<usize, Arc<DensityIntegrator>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The moment cache for a case density.
pub fn case_integrator(case: u8, n: usize) -> Result<Arc<DensityIntegrator>> {
    if case == 3 {
        if let Some(v) = type_a_integrators().read().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let ig = Arc::new(DensityIntegrator::new(case_density(3, n)?, MomentSymmetry::TypeA));
        return Ok(type_a_integrators().write().unwrap().entry(n).or_insert(ig).clone());
    }
    let params = case_params(case).ok_or_else(|| Error::Invalid(format!("unknown case {case}")))?;
    integrator(n, params)
}

/// The restricted `P_λ^{(2n)}` of the given case.
pub fn restricted_hl(case: u8, lambda: &HalfWeight, n: usize) -> Result<LaurentPoly> {
    let mode = if case == 3 {
        Restriction::ShiftedPm(Scalar::s_pow(1))
    } else {
        Restriction::PlainPm
    };
    hl_restricted(lambda, n, &mode, &hl_t())
}

/// Largest `Σ|e_i|` over the exponents of `f`.
fn bc_weight(f: &LaurentPoly) -> u32 {
    f.terms().map(|(e, _)| e.iter().map(|a| a.unsigned_abs()).sum::<u32>()).max().unwrap_or(0)
}

/// One evaluated integral.
#[derive(Clone, Debug)]
pub struct LhsValue {
    /// Direct residue value divided by `Z`.
    pub value: Scalar,
    /// The same quantity from the basis expansion.
    pub dual: Scalar,
    /// Whether the residue value agrees with the series oracle (when run).
    pub oracle: Option<bool>,
}

/// Options shared by the integral evaluations.
#[derive(Clone, Copy, Debug)]
pub struct IntegralOptions {
    /// Series-oracle depth; `None` skips the oracle.
    pub series_order: Option<i64>,
    /// Koornwinder bases are built at least to this weight so one basis
    /// serves a whole grid.
    pub basis_weight: u32,
}

impl IntegralOptions {
    pub fn without_oracle(self) -> Self {
        IntegralOptions {
            series_order: None,
            ..self
        }
    }
}

impl Default for IntegralOptions {
    fn default() -> Self {
        IntegralOptions {
            series_order: Some(12),
            basis_weight: 0,
        }
    }
}

fn norms_a() -> &'static RwLock<HashMap<(usize, Partition), Scalar>> {
    static C: OnceLock<RwLock<HashMap<(usize, Partition), Scalar>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `∫ P_μ(x) P_μ(x^{-1}) Δ_S dT` at parameter `s^4`.
fn type_a_norm(mu: &Partition, n: usize) -> Result<Scalar> {
    let key = (n, mu.clone());
    if let Some(v) = norms_a().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let p = hl_poly(&SignedWeight::from_partition(mu, n), n, &case3_t())?;
    let v = case_integrator(3, n)?.inner(&p, &p)?;
    Ok(norms_a().write().unwrap().entry(key).or_insert(v).clone())
}

/// `(1/Z) ∫ P_λ^{(2n)}(…) · B_μ · Δ dT`, where `B_μ` is `K_μ` (cases 1, 2, 4)
/// or `P_μ(x^{-1}; s^4)` (case 3) and `Z` is the value at `λ = μ = 0`.
pub fn integral_lhs(case: u8, lambda: &HalfWeight, mu: &Partition, n: usize, opts: &IntegralOptions) -> Result<LhsValue> {
    if lambda.len() > 2 * n {
        return Err(Error::TooLong { len: lambda.len(), n: 2 * n });
    }
    if mu.len() > n {
        return Err(Error::TooLong { len: mu.len(), n });
    }
    let ig = case_integrator(case, n)?;
    let z = ig.total_mass()?;
    let f = restricted_hl(case, lambda, n)?;
    let (integrand, dual) = if case == 3 {
        let pm = hl_poly(&SignedWeight::from_partition(mu, n), n, &case3_t())?;
        let table = expand_in_p_basis(&f, &case3_t())?;
        let c = table.get(&SignedWeight::from_partition(mu, n));
        let dual = c * &type_a_norm(mu, n)? / &z;
        (&f * &pm.invert(), dual)
    } else {
        let params = case_params(case).ok_or_else(|| Error::Invalid(format!("unknown case {case}")))?;
        let w = bc_weight(&f).max(mu.size()).max(opts.basis_weight);
        let basis = build_basis(n, params, w)?;
        let table = expand_in_k_basis(&f, &basis)?;
        let dual = pairing_from_expansion(&table, &basis, mu) / &z;
        (&f * &basis.polynomials[mu], dual)
    };
    let value = ig.integrate(&integrand)? / &z;
    let oracle = match opts.series_order {
        Some(order) => Some(ig.oracle_agrees(&integrand, order)?),
        None => None,
    };
    Ok(LhsValue { value, dual, oracle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn hw(v: &[i32]) -> HalfWeight {
        HalfWeight::integral(SignedWeight::new(v.to_vec()).unwrap())
    }

    #[test]
    fn examples() {
        let o = IntegralOptions::default();
        let e = Partition::empty();
        let r = integral_lhs(1, &hw(&[0, 0]), &e, 1, &o).unwrap();
        assert!(r.value.is_one() && r.dual.is_one() && r.oracle == Some(true));
        assert!(integral_lhs(1, &hw(&[1, 0]), &e, 1, &o).unwrap().value.is_zero());
        let r = integral_lhs(2, &hw(&[1, 0]), &e, 1, &o).unwrap();
        assert_eq!(r.value, Scalar::one() + Scalar::s_pow(1));
        assert_eq!(r.dual, r.value);
        let r = integral_lhs(4, &hw(&[1, 0]), &e, 1, &o).unwrap();
        assert_eq!(r.value, Scalar::from_int(2) * Scalar::s_pow(1));
        let r = integral_lhs(3, &hw(&[1, -1]), &e, 1, &o).unwrap();
        assert_eq!(r.value, Scalar::one() + Scalar::s_pow(-2));
        assert_eq!(r.dual, r.value);
    }
}
