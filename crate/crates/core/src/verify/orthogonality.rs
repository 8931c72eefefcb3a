//! Orthogonality of the Hall-Littlewood and Koornwinder bases under the case
//! densities, each integral also run through the series oracle.

use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;

use super::integrals::case_integrator;
use super::report::{ReportSet, VerificationReport};
use crate::ct_engine::{build_density, case_params, DensityIntegrator, DensityKind, DensityParams, MomentSymmetry, SMono};
use crate::hall_littlewood::hl_poly;
use crate::koornwinder::build_basis;
use crate::partitions::{partitions_up_to, v_lambda, v_m, Partition, SignedWeight};
use crate::{LaurentPoly, Result, Scalar};

/// Settings of the orthogonality suite.
#[derive(Clone, Copy, Debug)]
pub struct OrthogonalityOptions {
    pub max_n: usize,
    pub max_weight: u32,
    pub series_order: i64,
}

impl Default for OrthogonalityOptions {
    fn default() -> Self {
        OrthogonalityOptions {
            max_n: 2,
            max_weight: 4,
            series_order: 12,
        }
    }
}

type NormFn = Box<dyn Fn(&Partition) -> Result<Scalar> + Send + Sync>;

struct Family {
    name: &'static str,
    case: Option<u8>,
    n: usize,
    integrator: Arc<DensityIntegrator>,
    polys: Vec<(Partition, LaurentPoly)>,
    /// Expected `⟨f_λ, f_λ⟩ / Z`, when known in closed form.
    norm: Option<NormFn>,
}

fn hl_family(n: usize, w: u32, s_exp: i64, case: Option<u8>) -> Result<Family> {
    let t = Scalar::s_pow(s_exp);
    let integrator = match case {
        Some(c) => case_integrator(c, n)?,
        None => Arc::new(DensityIntegrator::new(
            build_density(DensityKind::S, n, DensityParams::type_a(Some(SMono::s_pow(s_exp))))?,
            MomentSymmetry::TypeA,
        )),
    };
    let polys = partitions_up_to(w, n)
        .into_iter()
        .map(|l| Ok((l.clone(), (*hl_poly(&SignedWeight::from_partition(&l, n), n, &t)?).clone())))
        .collect::<Result<_>>()?;
    let tt = t.clone();
    Ok(Family {
        name: "orth-hl",
        case,
        n,
        integrator,
        polys,
        norm: Some(Box::new(move |l: &Partition| Ok(v_m(n, &tt) / &v_lambda(l, n, &tt)?))),
    })
}

fn k_family(n: usize, w: u32, case: u8) -> Result<Family> {
    let params = case_params(case).expect("BC case");
    let basis = build_basis(n, params, w)?;
    let polys = basis.order.iter().map(|l| (l.clone(), basis.polynomials[l].clone())).collect();
    Ok(Family {
        name: "orth-k",
        case: Some(case),
        n,
        integrator: case_integrator(case, n)?,
        polys,
        norm: None,
    })
}

fn pair_row(f: &Family, i: usize, j: usize, order: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let (la, pa) = &f.polys[i];
    let (lb, pb) = &f.polys[j];
    let integrand = pa * &pb.invert();
    let z = f.integrator.total_mass()?;
    let v = f.integrator.integrate(&integrand)? / &z;
    let mut r = VerificationReport::new(f.name, f.n, la.to_string(), lb.to_string());
    r.case = f.case;
    r.lhs = v.to_string();
    if i != j {
        r.rhs = Some("0".into());
        r.check("orthogonal", v.is_zero());
    } else if let Some(norm) = &f.norm {
        let e = norm(la)?;
        r.rhs = Some(e.to_string());
        r.check("norm", v == e);
    } else {
        r.check("nonzero_norm", !v.is_zero());
    }
    r.check("series_oracle", f.integrator.oracle_agrees(&integrand, order)?);
    r.oracle_order = Some(order);
    r.elapsed = start.elapsed();
    let enc = |p: &Partition| {
        let mut k = vec![p.size() as i64];
        k.extend(p.parts().iter().map(|&a| -(a as i64)));
        k
    };
    let tag = format!("{}-{}", f.case.map_or(0, |c| c), if f.name == "orth-hl" { "p" } else { "k" });
    r.sort_key = (enc(la), enc(lb), tag);
    r.finish(true);
    Ok(r)
}

/// Hall-Littlewood bases over the type-A density at `t = s²` and at `s⁴`
/// (case 3), Koornwinder bases over the case 1, 2 and 4 densities.
pub fn verify_orthogonality(o: &OrthogonalityOptions) -> Result<ReportSet> {
    let mut families = Vec::new();
    for n in 1..=o.max_n {
        families.push(hl_family(n, o.max_weight, 2, None)?);
        families.push(hl_family(n, o.max_weight, 4, Some(3))?);
        for case in [1, 2, 4] {
            families.push(k_family(n, o.max_weight, case)?);
        }
    }
    let jobs: Vec<(usize, usize, usize)> = families
        .iter()
        .enumerate()
        .flat_map(|(k, f)| (0..f.polys.len()).flat_map(move |i| (i..f.polys.len()).map(move |j| (k, i, j))))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(k, i, j)| pair_row(&families[k], i, j, o.series_order))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReportSet::new(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one() {
        let o = OrthogonalityOptions {
            max_n: 1,
            max_weight: 2,
            series_order: 8,
        };
        let set = verify_orthogonality(&o).unwrap();
        assert!(!set.any_mismatch(), "{}", set.summary());
        // 2 HL families of 3 polynomials, 3 K families of 3: 5 · 6 pairs
        assert_eq!(set.reports.len(), 30);
    }
}
