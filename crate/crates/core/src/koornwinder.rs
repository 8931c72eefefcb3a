//! Koornwinder polynomials at `q = 0`, built by Gram-Schmidt against the
//! BC density.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{monomial_symmetric, SymmetryType};
use crate::ct_engine::{build_density, case_density, DensityIntegrator, DensityKind, DensityParams, FactoredRational, MomentSymmetry};
use crate::hall_littlewood::ExpansionTable;
use crate::partitions::{partitions_up_to, Partition};
use crate::{Error, LaurentPoly, Result, Scalar};

/// Total order on partitions used to run Gram-Schmidt; both refine dominance.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum BasisOrder {
    /// By size, then lexicographically.
    #[default]
    SizeLex,
    /// Lexicographic on the vector of partial sums.
    PartialSums,
}

impl BasisOrder {
    fn sort(self, parts: &mut [Partition], n: usize) {
        match self {
            BasisOrder::SizeLex => parts.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b))),
            BasisOrder::PartialSums => parts.sort_by_cached_key(|p| {
                p.padded(n)
                    .iter()
                    .scan(0, |acc, &x| {
                        *acc += x;
                        Some(*acc)
                    })
                    .collect::<Vec<i32>>()
            }),
        }
    }
}

/// `K_μ` for all `l(μ) ≤ n`, `|μ| ≤ up_to_weight`, with their norms `⟨K_μ, K_μ⟩`.
pub struct KoornwinderBasis {
    pub n: usize,
    pub params: DensityParams,
    pub up_to_weight: u32,
    pub order: Vec<Partition>,
    pub polynomials: BTreeMap<Partition, LaurentPoly>,
    pub norms: BTreeMap<Partition, Scalar>,
    integrator: Arc<DensityIntegrator>,
}

impl KoornwinderBasis {
    pub fn get(&self, mu: &Partition) -> Option<&LaurentPoly> {
        self.polynomials.get(mu)
    }

    pub fn norm(&self, mu: &Partition) -> Option<&Scalar> {
        self.norms.get(mu)
    }

    pub fn integrator(&self) -> &DensityIntegrator {
        &self.integrator
    }
}

type IntegratorKey = (usize, DensityParams);

fn integrators() -> &'static RwLock<HashMap<IntegratorKey, Arc<DensityIntegrator>>> {
    static C: OnceLock<RwLock<HashMap<IntegratorKey, Arc<DensityIntegrator>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared moment cache for the BC density with these parameters.
pub fn integrator(n: usize, params: DensityParams) -> Result<Arc<DensityIntegrator>> {
    let key = (n, params);
    if let Some(v) = integrators().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let d = build_density(DensityKind::K, n, params)?;
    let v = Arc::new(DensityIntegrator::new(d, MomentSymmetry::BC));
    Ok(integrators().write().unwrap().entry(key).or_insert(v).clone())
}

/// The specialized density of one of the four cases.
pub fn density(case: u8, n: usize) -> Result<FactoredRational> {
    case_density(case, n)
}

pub fn build_basis(n: usize, params: DensityParams, up_to_weight: u32) -> Result<Arc<KoornwinderBasis>> {
    build_basis_with_order(n, params, up_to_weight, BasisOrder::default())
}

type BasisKey = (usize, DensityParams, u32, BasisOrder);

fn bases() -> &'static RwLock<HashMap<BasisKey, Arc<KoornwinderBasis>>> {
    static C: OnceLock<RwLock<HashMap<BasisKey, Arc<KoornwinderBasis>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

pub fn build_basis_with_order(
    n: usize,
    params: DensityParams,
    up_to_weight: u32,
    order: BasisOrder,
) -> Result<Arc<KoornwinderBasis>> {
    let key = (n, params, up_to_weight, order);
    if let Some(b) = bases().read().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let ig = integrator(n, params)?;
    let mut labels = partitions_up_to(up_to_weight, n);
    order.sort(&mut labels, n);
    let mut polys: BTreeMap<Partition, LaurentPoly> = BTreeMap::new();
    let mut norms: BTreeMap<Partition, Scalar> = BTreeMap::new();
    for mu in &labels {
        let m: LaurentPoly = monomial_symmetric(&mu.padded(n), n, SymmetryType::BC);
        let below: Vec<&Partition> = labels
            .iter()
            .take_while(|nu| *nu != mu)
            .filter(|nu| mu.dominates(nu))
            .collect();
        let coeffs: Vec<Scalar> = below
            .par_iter()
            .map(|nu| ig.inner(&m, &polys[*nu]).map(|c| c / &norms[*nu]))
            .collect::<Result<_>>()?;
        let mut k = m.clone();
        for (nu, c) in below.iter().zip(&coeffs) {
            k.add_scaled(&polys[*nu], &-c.clone(), None);
        }
        let norm = ig.inner(&m, &k)?;
        if norm.is_zero() {
            return Err(Error::ZeroNorm(mu.to_string()));
        }
        polys.insert(mu.clone(), k);
        norms.insert(mu.clone(), norm);
    }
    let basis = Arc::new(KoornwinderBasis {
        n,
        params,
        up_to_weight,
        order: labels,
        polynomials: polys,
        norms,
        integrator: ig,
    });
    Ok(bases().write().unwrap().entry(key).or_insert(basis).clone())
}

/// Exponent `e` as a partition when it is dominant (weakly decreasing, nonnegative).
fn dominant(e: &[i32]) -> Option<Partition> {
    if e.iter().all(|&a| a >= 0) && e.windows(2).all(|w| w[0] >= w[1]) {
        Some(Partition::from_unsorted(e.iter().map(|&a| a as u32).collect()))
    } else {
        None
    }
}

/// Coefficients of a BC-invariant `f` on the basis `K_μ`.
pub fn expand_in_k_basis(f: &LaurentPoly, basis: &KoornwinderBasis) -> Result<ExpansionTable<Partition>> {
    if f.nvars() != basis.n {
        return Err(Error::VariableMismatch(f.nvars(), basis.n));
    }
    if !f.is_bc_invariant() {
        return Err(Error::NotSymmetric);
    }
    let rank: HashMap<&Partition, usize> = basis.order.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut g = f.clone();
    let mut table = ExpansionTable::new();
    loop {
        let mut top: Option<(usize, Partition, Scalar)> = None;
        for (e, c) in g.terms() {
            let Some(mu) = dominant(e) else {
                continue;
            };
            let Some(&r) = rank.get(&mu) else {
                return Err(Error::InsufficientBasis {
                    built: basis.up_to_weight as usize,
                    needed: mu.size() as usize,
                });
            };
            if top.as_ref().is_none_or(|t| r > t.0) {
                top = Some((r, mu, c.clone()));
            }
        }
        let Some((_, mu, c)) = top else {
            break;
        };
        g.add_scaled(&basis.polynomials[&mu], &-c.clone(), None);
        table.add(mu, c);
    }
    if !g.is_zero() {
        return Err(Error::NotSymmetric);
    }
    Ok(table)
}

/// `∫ f K_μ Δ dT` read off an expansion: the `K_μ` coefficient times its norm.
pub fn pairing_from_expansion(table: &ExpansionTable<Partition>, basis: &KoornwinderBasis, mu: &Partition) -> Scalar {
    match basis.norm(mu) {
        Some(nm) => table.get(mu) * nm,
        None => Scalar::zero(),
    }
}

/// Parameters of the symplectic specialization `t = 0`, `(a,b,c,d) = 0`.
pub fn symplectic_params() -> DensityParams {
    DensityParams::bc(None, [None; 4])
}

/// Unit-norm check helper: `K_0 = 1`.
pub fn is_unit(p: &LaurentPoly) -> bool {
    p.as_constant().is_some_and(|c| c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ct_engine::{case_params, SMono};
    use crate::partitions::partitions_of;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    /// Weyl character `det(x_j^{μ_i+n−i+1} − x_j^{−(…)}) / det(x_j^{n−i+1} − x_j^{−(…)})`.
    fn weyl_symplectic(mu: &Partition, n: usize) -> LaurentPoly {
        let alt = |shift: &[i32]| {
            let mut acc = LaurentPoly::zero(n);
            for g in crate::algebra::GroupElement::hyperoctahedral_group(n) {
                let sign = g.perm_sign() * g.signs().iter().map(|&s| s as i64).product::<i64>();
                acc.add_term(g.act_exponent(shift), Scalar::from_int(sign));
            }
            acc
        };
        let rho: Vec<i32> = (0..n).map(|i| (n - i) as i32).collect();
        let top: Vec<i32> = mu.padded(n).iter().zip(&rho).map(|(a, r)| a + r).collect();
        alt(&top).exact_divide(&alt(&rho)).unwrap()
    }

    #[test]
    fn symplectic_characters() {
        for n in 1..=2 {
            let b = build_basis(n, symplectic_params(), 3).unwrap();
            for mu in partitions_up_to(3, n) {
                assert_eq!(b.get(&mu).unwrap(), &weyl_symplectic(&mu, n), "{mu}");
            }
        }
        let b = build_basis(1, symplectic_params(), 1).unwrap();
        let x = LaurentPoly::var(1, 0);
        assert_eq!(b.get(&p(&[1])).unwrap(), &(&x + &x.invert()));
    }

    #[test]
    fn orthogonal_and_order_independent() {
        for case in [1u8, 2, 4] {
            let params = case_params(case).unwrap();
            for n in 1..=2 {
                let a = build_basis_with_order(n, params, 3, BasisOrder::SizeLex).unwrap();
                let b = build_basis_with_order(n, params, 3, BasisOrder::PartialSums).unwrap();
                assert_eq!(a.polynomials, b.polynomials);
                assert!(is_unit(a.get(&p(&[])).unwrap()));
                let labels: Vec<&Partition> = a.order.iter().collect();
                for (i, mu) in labels.iter().enumerate() {
                    for nu in &labels[..i] {
                        let ip = a.integrator().inner(&a.polynomials[*mu], &a.polynomials[*nu]).unwrap();
                        assert!(ip.is_zero(), "case {case} n {n} {mu} {nu}");
                    }
                }
                assert_eq!(a.norm(&p(&[])).unwrap(), &a.integrator().total_mass().unwrap());
            }
        }
    }

    #[test]
    fn one_step_gram_schmidt() {
        let params = case_params(1).unwrap();
        let b = build_basis(1, params, 1).unwrap();
        let k1 = b.get(&p(&[1])).unwrap();
        let e = k1.constant_term();
        let x = LaurentPoly::var(1, 0);
        let m1 = &x + &x.invert();
        assert_eq!(k1, &(&m1 + &LaurentPoly::constant(1, e.clone())));
        let table = expand_in_k_basis(&m1, &b).unwrap();
        assert_eq!(table.get(&p(&[1])), Scalar::one());
        assert_eq!(table.get(&p(&[])), -e);
    }

    #[test]
    fn expansion_round_trip_and_errors() {
        let params = DensityParams::bc(Some(SMono::s_pow(2)), [Some(SMono::s_pow(1)), None, None, None]);
        let b = build_basis(2, params, 3).unwrap();
        let mut f = LaurentPoly::zero(2);
        for (i, mu) in partitions_of(3, 2, 3).iter().chain(partitions_of(1, 2, 1).iter()).enumerate() {
            let m: LaurentPoly = monomial_symmetric(&mu.padded(2), 2, SymmetryType::BC);
            f.add_scaled(&m, &Scalar::from_int(i as i64 + 2), None);
        }
        let table = expand_in_k_basis(&f, &b).unwrap();
        let mut recon = LaurentPoly::zero(2);
        for (mu, c) in table.iter() {
            recon.add_scaled(&b.polynomials[mu], c, None);
        }
        assert_eq!(recon, f);
        let big: LaurentPoly = monomial_symmetric(&[4], 2, SymmetryType::BC);
        assert!(matches!(expand_in_k_basis(&big, &b), Err(Error::InsufficientBasis { .. })));
        assert!(matches!(expand_in_k_basis(&LaurentPoly::var(2, 0), &b), Err(Error::NotSymmetric)));
    }
}
