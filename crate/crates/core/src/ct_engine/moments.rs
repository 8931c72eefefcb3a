use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rayon::prelude::*;

use super::factor::FactoredRational;
use super::residue::torus_integral;
use super::series::{DenominatorSeries, TruncatedSeries};
use crate::{LaurentPoly, Result, Scalar};

/// Symmetry of a density, used to share moments between exponents.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MomentSymmetry {
    None,
    /// Invariant under permutations, inversion of all variables, and
    /// rescaling by a common unimodular factor.
    TypeA,
    /// Invariant under signed permutations.
    BC,
}

/// Integrates Laurent polynomials against a fixed density through cached
/// moments `M(α) = ∫ x^α Δ dT`.
pub struct DensityIntegrator {
    density: FactoredRational,
    symmetry: MomentSymmetry,
    cache: RwLock<HashMap<Vec<i32>, Scalar>>,
    series: RwLock<Option<Arc<DenominatorSeries>>>,
}

impl DensityIntegrator {
    pub fn new(density: FactoredRational, symmetry: MomentSymmetry) -> Self {
        DensityIntegrator {
            density,
            symmetry,
            cache: RwLock::new(HashMap::new()),
            series: RwLock::new(None),
        }
    }

    pub fn density(&self) -> &FactoredRational {
        &self.density
    }

    pub fn nvars(&self) -> usize {
        self.density.nvars()
    }

    /// Canonical representative of the moment class, or `None` when the
    /// moment vanishes by symmetry.
    fn key(&self, alpha: &[i32]) -> Option<Vec<i32>> {
        match self.symmetry {
            MomentSymmetry::None => Some(alpha.to_vec()),
            MomentSymmetry::TypeA => {
                if alpha.iter().sum::<i32>() != 0 {
                    return None;
                }
                let mut a = alpha.to_vec();
                a.sort_unstable_by(|x, y| y.cmp(x));
                let mut b: Vec<i32> = alpha.iter().map(|x| -x).collect();
                b.sort_unstable_by(|x, y| y.cmp(x));
                Some(a.min(b))
            }
            MomentSymmetry::BC => {
                let mut a: Vec<i32> = alpha.iter().map(|x| x.abs()).collect();
                a.sort_unstable_by(|x, y| y.cmp(x));
                Some(a)
            }
        }
    }

    fn compute(&self, key: &[i32]) -> Result<Scalar> {
        let mono = LaurentPoly::monomial(key.to_vec(), Scalar::from_int(1));
        torus_integral(&self.density.times(&mono))
    }

    /// Fills the cache for every listed key not yet present, in parallel.
    fn prefetch(&self, keys: HashSet<Vec<i32>>) -> Result<()> {
        let missing: Vec<Vec<i32>> = {
            let cache = self.cache.read().unwrap();
            let mut m: Vec<Vec<i32>> = keys.into_iter().filter(|k| !cache.contains_key(k)).collect();
            m.sort();
            m
        };
        if missing.is_empty() {
            return Ok(());
        }
        let values: Vec<(Vec<i32>, Scalar)> = missing
            .into_par_iter()
            .map(|k| self.compute(&k).map(|v| (k, v)))
            .collect::<Result<_>>()?;
        let mut cache = self.cache.write().unwrap();
        for (k, v) in values {
            cache.entry(k).or_insert(v);
        }
        Ok(())
    }

    pub fn moment(&self, alpha: &[i32]) -> Result<Scalar> {
        let Some(k) = self.key(alpha) else {
            return Ok(Scalar::zero());
        };
        if let Some(v) = self.cache.read().unwrap().get(&k) {
            return Ok(v.clone());
        }
        let v = self.compute(&k)?;
        self.cache.write().unwrap().entry(k).or_insert(v.clone());
        Ok(v)
    }

    /// `∫ f Δ dT`.
    pub fn integrate(&self, f: &LaurentPoly) -> Result<Scalar> {
        let keys: HashSet<Vec<i32>> = f.terms().filter_map(|(e, _)| self.key(e)).collect();
        self.prefetch(keys)?;
        let cache = self.cache.read().unwrap();
        let mut acc = Scalar::zero();
        for (e, c) in f.terms() {
            if let Some(k) = self.key(e) {
                acc = acc + &(c * &cache[&k]);
            }
        }
        Ok(acc)
    }

    /// `⟨f, g⟩ = ∫ f(x) g(x^{-1}) Δ dT`.
    pub fn inner(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<Scalar> {
        self.integrate(&(f * &g.invert()))
    }

    /// `∫ Δ dT`.
    pub fn total_mass(&self) -> Result<Scalar> {
        self.moment(&vec![0; self.nvars()])
    }

    /// Series-oracle value of `∫ f Δ dT` through `s^order`.
    pub fn series(&self, f: &LaurentPoly, order: i64) -> Result<TruncatedSeries> {
        let num = &self.density.numerator * f;
        let pre = &self.density.prefactor;
        let need = {
            let cur = self.series.read().unwrap().clone();
            let probe = match &cur {
                Some(ds) => ds.clone(),
                None => Arc::new(DenominatorSeries::new(&self.density.denominators, self.nvars(), 0)?),
            };
            let vmin = probe.min_valuation(pre, &num).unwrap_or(0);
            let need = (order - vmin).max(0);
            match cur {
                Some(ds) if ds.depth() >= need => return ds.constant_term(pre, &num, order),
                _ => need,
            }
        };
        let ds = Arc::new(DenominatorSeries::new(&self.density.denominators, self.nvars(), need)?);
        *self.series.write().unwrap() = Some(ds.clone());
        ds.constant_term(pre, &num, order)
    }

    /// Whether the residue value of `∫ f Δ dT` agrees with the series oracle.
    pub fn oracle_agrees(&self, f: &LaurentPoly, order: i64) -> Result<bool> {
        let exact = self.integrate(f)?;
        Ok(TruncatedSeries::from_scalar(&exact, order) == self.series(f, order)?)
    }

    pub fn cached_moments(&self) -> usize {
        self.cache.read().unwrap().len()
    }
}
