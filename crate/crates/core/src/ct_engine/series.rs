use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::factor::{BinomialFactor, FactoredRational, Mono};
use crate::{Error, LaurentPoly, Result, Scalar};

/// Power series in `s` truncated after `s^order`; only nonzero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    pub order: i64,
    pub terms: BTreeMap<i64, BigRational>,
}

impl TruncatedSeries {
    pub fn from_scalar(x: &Scalar, order: i64) -> Self {
        let (v, c) = x.series(order);
        let terms = c
            .into_iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (v + i as i64, a))
            .collect();
        TruncatedSeries { order, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*s^{e}")?;
        }
        write!(f, " + O(s^{})", self.order + 1)
    }
}

/// Expansion of `1 / Π (1 − c·x^v)^m` as `U · Σ_e s^e D_e(x)`, with every
/// factor oriented so that its coefficient has positive `s`-valuation.
#[derive(Clone, Debug)]
pub struct DenominatorSeries {
    nvars: usize,
    depth: i64,
    unit: Mono,
    layers: Vec<HashMap<Vec<i32>, BigRational>>,
}

impl DenominatorSeries {
    pub fn new(dens: &BTreeMap<BinomialFactor, u32>, nvars: usize, depth: i64) -> Result<Self> {
        if depth < 0 {
            return Err(Error::Invalid("negative series depth".into()));
        }
        let mut unit = Mono::one(nvars);
        let mut oriented = Vec::new();
        for (b, m) in dens {
            let val = b.valuation();
            if val == 0 {
                return Err(Error::IllPosed(format!("factor {b} has a pole on the torus")));
            }
            if val > 0 {
                oriented.push((b.coeff.neg, val, b.exp.clone(), *m));
            } else {
                // 1/(1 − c x^v) = (−c x^v)^{-1} / (1 − c^{-1} x^{-v})
                let u = Mono {
                    coeff: b.coeff.negate(),
                    exp: b.exp.clone(),
                }
                .inv();
                unit = unit.mul(&u.pow(*m as i64));
                let ci = b.coeff.inv();
                oriented.push((ci.neg, ci.exp, b.exp.iter().map(|a| -a).collect(), *m));
            }
        }
        let d = depth as usize;
        let mut layers: Vec<HashMap<Vec<i32>, BigRational>> = vec![HashMap::new(); d + 1];
        layers[0].insert(vec![0; nvars], BigRational::from_integer(1.into()));
        for (neg, val, v, m) in oriented {
            let step = val as usize;
            for _ in 0..m {
                for e in step..=d {
                    let (lo, hi) = layers.split_at_mut(e);
                    let src = &lo[e - step];
                    let dst = &mut hi[0];
                    for (x, c) in src {
                        let y: Vec<i32> = x.iter().zip(&v).map(|(a, b)| a + b).collect();
                        let add = if neg { -c.clone() } else { c.clone() };
                        let slot = dst.entry(y).or_insert_with(BigRational::zero);
                        *slot += add;
                    }
                    dst.retain(|_, c| !c.is_zero());
                }
            }
        }
        Ok(DenominatorSeries {
            nvars,
            depth,
            unit,
            layers,
        })
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    /// Lowest `s`-exponent that `pre · num · unit` can contribute.
    pub fn min_valuation(&self, pre: &Scalar, num: &LaurentPoly) -> Option<i64> {
        let vp = pre.valuation()?;
        num.terms()
            .filter_map(|(_, c)| c.valuation())
            .min()
            .map(|v| v + vp + self.unit.coeff.exp)
    }

    /// Constant term in `x` of `pre · num / Π dens`, through `s^order`.
    pub fn constant_term(&self, pre: &Scalar, num: &LaurentPoly, order: i64) -> Result<TruncatedSeries> {
        if order < 0 {
            return Err(Error::Invalid("negative series order".into()));
        }
        assert_eq!(num.nvars(), self.nvars);
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        let Some(vmin) = self.min_valuation(pre, num) else {
            return Ok(TruncatedSeries { order, terms });
        };
        if order - vmin > self.depth {
            return Err(Error::Invalid(format!(
                "series depth {} too small for order {order}",
                self.depth
            )));
        }
        for (beta, c) in num.terms() {
            // need D_e at exponent −β − w
            let target: Vec<i32> = beta
                .iter()
                .zip(&self.unit.exp)
                .map(|(b, w)| -b - w)
                .collect();
            let a = self.unit.coeff.apply(&(pre * c));
            let (va, ac) = a.series(order);
            for (i, ai) in ac.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                let ea = va + i as i64;
                for e in 0..=(order - ea) {
                    if let Some(d) = self.layers[e as usize].get(&target) {
                        *terms.entry(ea + e).or_insert_with(BigRational::zero) += ai * d;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries { order, terms })
    }
}

/// Independent cross-check of [`super::torus_integral`]: expands every
/// denominator geometrically in `s` and reads off the constant term.
pub fn series_oracle(f: &FactoredRational, order: i64) -> Result<TruncatedSeries> {
    if order < 0 {
        return Err(Error::Invalid("negative series order".into()));
    }
    let probe = DenominatorSeries::new(&f.denominators, f.nvars, 0)?;
    let vmin = probe.min_valuation(&f.prefactor, &f.numerator).unwrap_or(0);
    let depth = (order - vmin).max(0);
    let ds = DenominatorSeries::new(&f.denominators, f.nvars, depth)?;
    ds.constant_term(&f.prefactor, &f.numerator, order)
}

#[cfg(test)]
mod tests {
    use super::super::density::{build_density, DensityKind, DensityParams};
    use super::super::factor::SMono;
    use super::*;
    use num_traits::One;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn type_a_density_series() {
        let d = build_density(DensityKind::S, 2, DensityParams::type_a(Some(SMono::s_pow(2)))).unwrap();
        let got = series_oracle(&d, 6).unwrap();
        let want: BTreeMap<i64, BigRational> = [(0, q(1)), (2, q(-1)), (4, q(1)), (6, q(-1))].into_iter().collect();
        assert_eq!(got.terms, want);
    }

    #[test]
    fn constant_one_and_monomial() {
        let one = FactoredRational::one(1);
        let got = series_oracle(&one, 8).unwrap();
        assert_eq!(got.terms.len(), 1);
        assert_eq!(got.terms[&0], q(1));
        let x = FactoredRational::from_laurent(LaurentPoly::var(1, 0));
        assert!(series_oracle(&x, 8).unwrap().is_zero());
        assert!(series_oracle(&x, -1).is_err());
    }

    #[test]
    fn matches_scalar_expansion() {
        let r = Scalar::one() / (Scalar::one() + Scalar::s_pow(2));
        let ts = TruncatedSeries::from_scalar(&r, 6);
        let want: BTreeMap<i64, BigRational> = [(0, q(1)), (2, q(-1)), (4, q(1)), (6, q(-1))].into_iter().collect();
        assert_eq!(ts.terms, want);
    }
}
