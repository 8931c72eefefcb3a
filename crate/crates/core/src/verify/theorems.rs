//! The four `μ = 0` evaluations, plus `μ ≠ 0` rows that only carry the
//! dual-path and oracle checks.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::integrals::{integral_lhs, IntegralOptions};
use super::report::{ReportSet, VerificationReport};
use crate::padic::{chain_rhs_mu0, theorem_rhs_mu0};
use crate::partitions::{partitions_up_to, signed_weights, HalfWeight, Partition, SignedWeight};
use crate::{Result, Scalar};

/// The integral identities, keyed by their command-line names.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Identity {
    /// Case 1: vanishing unless `λ = μ²`.
    Thm34,
    /// Case 2: the finite Kawanaka identity.
    Thm35,
    /// Case 3: vanishing unless `λ = μμ̄`, signed and half-integral weights.
    Thm36,
    /// Case 4: the sum over `μ ∪ ν = λ`.
    Thm37,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::Thm34, Identity::Thm35, Identity::Thm36, Identity::Thm37];

    pub fn case(self) -> u8 {
        match self {
            Identity::Thm34 => 1,
            Identity::Thm35 => 2,
            Identity::Thm36 => 3,
            Identity::Thm37 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Identity::Thm34 => "thm34",
            Identity::Thm35 => "thm35",
            Identity::Thm36 => "thm36",
            Identity::Thm37 => "thm37",
        }
    }
}

/// Grid and oracle settings shared by the suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub n: usize,
    pub max_weight: u32,
    /// Series-oracle depth; `None` skips the oracle.
    pub series_order: Option<i64>,
    /// Largest `|μ|` for the informational `μ ≠ 0` rows (0 disables them).
    pub mu_weight: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: 2,
            max_weight: 6,
            series_order: Some(12),
            mu_weight: 2,
        }
    }
}

impl VerifyOptions {
    pub(crate) fn integral(&self, basis_weight: u32) -> IntegralOptions {
        IntegralOptions {
            series_order: self.series_order,
            basis_weight,
        }
    }
}

/// The `λ` grid of an identity. Case 3 takes every dominant signed weight with
/// `|λ_i| ≤ max_weight/2` and the half-integral family `base + 1/2` inside the
/// same box; the other cases take partitions with `|λ| ≤ max_weight`.
pub fn lambda_grid(id: Identity, n: usize, max_weight: u32) -> Vec<HalfWeight> {
    if id == Identity::Thm36 {
        let b = (max_weight / 2) as i32;
        let mut out: Vec<HalfWeight> = signed_weights(2 * n, -b, b).into_iter().map(HalfWeight::integral).collect();
        if b > 0 {
            out.extend(signed_weights(2 * n, -b, b - 1).into_iter().map(HalfWeight::half_shifted));
        }
        return out;
    }
    partitions_up_to(max_weight, 2 * n)
        .iter()
        .map(|p| HalfWeight::integral(SignedWeight::from_partition(p, 2 * n)))
        .collect()
}

fn sort_key(lambda: &HalfWeight, mu: &Partition, tag: &str) -> (Vec<i64>, Vec<i64>, String) {
    let d = lambda.doubled();
    let mut k = vec![d.iter().map(|a| a.abs()).sum::<i64>()];
    k.extend(d.iter().map(|a| -a));
    let mut m = vec![mu.size() as i64];
    m.extend(mu.parts().iter().map(|&a| -(a as i64)));
    (k, m, tag.to_string())
}

fn mu0_row(id: Identity, lambda: &HalfWeight, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let case = id.case();
    let mu = Partition::empty();
    let v = integral_lhs(case, lambda, &mu, n, &opts.integral(opts.max_weight))?;
    let rhs = theorem_rhs_mu0(case, lambda, n)?;
    let chain = chain_rhs_mu0(case, lambda, n)?;
    let mut r = VerificationReport::new(id.name(), n, lambda.to_string(), mu.to_string());
    r.case = Some(case);
    r.lhs = v.value.to_string();
    r.rhs = Some(rhs.to_string());
    r.check("lhs_eq_rhs", v.value == rhs);
    r.check("dual_path", v.dual == v.value);
    r.check("lemma_chain", chain == rhs);
    if let Some(ok) = v.oracle {
        r.check("series_oracle", ok);
        r.oracle_order = opts.series_order;
    }
    if v.value != rhs && !rhs.is_zero() {
        r.value("lhs_over_rhs", &v.value / &rhs);
    }
    r.elapsed = start.elapsed();
    r.sort_key = sort_key(lambda, &mu, "");
    r.finish(true);
    Ok(r)
}

/// The `t = 0` reading of case 4: the value at `s = 0` is 1 when every part
/// of `λ` has even multiplicity and 0 otherwise.
fn t0_row(lambda: &HalfWeight, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mu = Partition::empty();
    let v = integral_lhs(4, lambda, &mu, n, &opts.integral(opts.max_weight).without_oracle())?;
    let rhs = theorem_rhs_mu0(4, lambda, n)?;
    let at0 = |x: &Scalar| x.eval(&BigRational::zero()).map(Scalar::constant);
    let even = lambda
        .base
        .to_partition()
        .and_then(|p| p.even_multiplicity_root())
        .is_some();
    let expected = if even { Scalar::one() } else { Scalar::zero() };
    let mut r = VerificationReport::new("thm37-t0", n, lambda.to_string(), mu.to_string());
    r.case = Some(4);
    let lhs0 = at0(&v.value);
    r.lhs = lhs0.as_ref().map_or("pole".to_string(), |x| x.to_string());
    r.rhs = Some(expected.to_string());
    r.check("lhs_eq_rhs", lhs0.as_ref() == Some(&expected));
    r.check("rhs_at_zero", at0(&rhs).as_ref() == Some(&expected));
    r.elapsed = start.elapsed();
    r.sort_key = sort_key(lambda, &mu, "t0");
    r.finish(true);
    Ok(r)
}

/// `μ ≠ 0` rows: no closed right-hand side, so only the two evaluation paths
/// and the oracle are compared.
fn mu_row(id: Identity, lambda: &HalfWeight, mu: &Partition, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let case = id.case();
    let v = integral_lhs(case, lambda, mu, n, &opts.integral(opts.max_weight.max(mu.size())))?;
    let mut r = VerificationReport::new(id.name(), n, lambda.to_string(), mu.to_string());
    r.case = Some(case);
    r.lhs = v.value.to_string();
    r.check("dual_path", v.dual == v.value);
    if let Some(ok) = v.oracle {
        r.check("series_oracle", ok);
        r.oracle_order = opts.series_order;
    }
    r.elapsed = start.elapsed();
    r.sort_key = sort_key(lambda, mu, "");
    r.finish(false);
    Ok(r)
}

/// Runs one identity over its grid.
pub fn verify_theorem(id: Identity, opts: &VerifyOptions) -> Result<ReportSet> {
    let n = opts.n;
    let grid = lambda_grid(id, n, opts.max_weight);
    let mut rows: Vec<VerificationReport> = grid
        .par_iter()
        .map(|l| mu0_row(id, l, n, opts))
        .collect::<Result<_>>()?;
    if id == Identity::Thm37 {
        let t0: Vec<VerificationReport> = grid.par_iter().map(|l| t0_row(l, n, opts)).collect::<Result<_>>()?;
        rows.extend(t0);
    }
    if opts.mu_weight > 0 {
        // a smaller λ box keeps the informational rows cheap
        let small = lambda_grid(id, n, opts.max_weight.min(4));
        let mus: Vec<Partition> = partitions_up_to(opts.mu_weight, n).into_iter().filter(|m| !m.is_empty()).collect();
        let pairs: Vec<(&HalfWeight, &Partition)> = small.iter().flat_map(|l| mus.iter().map(move |m| (l, m))).collect();
        let extra: Vec<VerificationReport> = pairs
            .par_iter()
            .map(|(l, m)| mu_row(id, l, m, n, opts))
            .collect::<Result<_>>()?;
        rows.extend(extra);
    }
    Ok(ReportSet::new(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids() {
        let opts = VerifyOptions {
            n: 1,
            max_weight: 2,
            series_order: Some(8),
            mu_weight: 1,
        };
        for id in [Identity::Thm34, Identity::Thm35, Identity::Thm37] {
            let set = verify_theorem(id, &opts).unwrap();
            assert!(!set.any_mismatch(), "{}", set.summary());
        }
        let set = verify_theorem(Identity::Thm37, &opts).unwrap();
        let r = set.reports.iter().find(|r| r.theorem == "thm37" && r.lambda == "(1,0)" && r.mu == "()").unwrap();
        assert_eq!(r.lhs, "2*s");
    }

    #[test]
    fn case3_grid_shape() {
        // six dominant pairs in [-1, 1] and three shifted pairs in [-1, 0]
        let g = lambda_grid(Identity::Thm36, 1, 2);
        assert_eq!(g.len(), 9);
    }
}
