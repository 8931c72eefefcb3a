use std::collections::BTreeMap;

use super::factor::{decompose, mul_mono, BinomialFactor, Decomposed, FactoredRational, Mono, SMono};
use crate::partitions::factorial;
use crate::{Error, LaurentPoly, Result, Scalar};

/// Which density family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DensityKind {
    /// `(1/n!) Π_{i≠j} (1 − x_i/x_j)/(1 − t x_i/x_j)`.
    S,
    /// The BC-symmetric density with parameters `(a, b, c, d)`.
    K,
}

/// Parameters of a density; `None` stands for the value 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DensityParams {
    pub t: Option<SMono>,
    pub abcd: [Option<SMono>; 4],
}

impl DensityParams {
    pub fn type_a(t: Option<SMono>) -> Self {
        DensityParams { t, abcd: [None; 4] }
    }

    pub fn bc(t: Option<SMono>, abcd: [Option<SMono>; 4]) -> Self {
        DensityParams { t, abcd }
    }
}

/// Builds the density as a [`FactoredRational`], cancelling numerator
/// factors against coinciding denominator factors.
pub fn build_density(kind: DensityKind, n: usize, params: DensityParams) -> Result<FactoredRational> {
    let mut num_factors: Vec<(SMono, Vec<i32>)> = Vec::new();
    let mut den_factors: Vec<(SMono, Vec<i32>)> = Vec::new();
    let unit_vec = |pairs: &[(usize, i32)]| {
        let mut v = vec![0; n];
        for &(i, a) in pairs {
            v[i] += a;
        }
        v
    };
    let prefactor = match kind {
        DensityKind::S => {
            if params.abcd.iter().any(|p| p.is_some()) {
                return Err(Error::Invalid("type-A density takes no (a,b,c,d)".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let v = unit_vec(&[(i, 1), (j, -1)]);
                    num_factors.push((SMono::ONE, v.clone()));
                    if let Some(t) = params.t {
                        den_factors.push((t, v));
                    }
                }
            }
            factorial(n).inv()
        }
        DensityKind::K => {
            for i in 0..n {
                for e in [2, -2] {
                    num_factors.push((SMono::ONE, unit_vec(&[(i, e)])));
                }
                for a in params.abcd.iter().flatten() {
                    for e in [1, -1] {
                        den_factors.push((*a, unit_vec(&[(i, e)])));
                    }
                }
                for j in i + 1..n {
                    for ei in [1, -1] {
                        for ej in [1, -1] {
                            let v = unit_vec(&[(i, ei), (j, ej)]);
                            num_factors.push((SMono::ONE, v.clone()));
                            if let Some(t) = params.t {
                                den_factors.push((t, v));
                            }
                        }
                    }
                }
            }
            let two_n = Scalar::from_int(1i64 << n);
            (&two_n * &factorial(n)).inv()
        }
    };

    let mut pre = prefactor;
    let mut unit = Mono::one(n);
    let mut nums: BTreeMap<BinomialFactor, u32> = BTreeMap::new();
    let mut dens: BTreeMap<BinomialFactor, u32> = BTreeMap::new();
    for (c, v) in num_factors {
        match decompose(c, &v) {
            Decomposed::Scalar(d) => pre = &pre * &d,
            Decomposed::Factors { unit: u, factors } => {
                unit = unit.mul(&u);
                for f in factors {
                    *nums.entry(f).or_insert(0) += 1;
                }
            }
        }
    }
    for (c, v) in den_factors {
        match decompose(c, &v) {
            Decomposed::Scalar(d) => pre = &pre / &d,
            Decomposed::Factors { unit: u, factors } => {
                unit = unit.mul(&u.inv());
                for f in factors {
                    *dens.entry(f).or_insert(0) += 1;
                }
            }
        }
    }
    for (f, m) in dens.iter_mut() {
        if let Some(k) = nums.get_mut(f) {
            let c = (*k).min(*m);
            *k -= c;
            *m -= c;
        }
    }
    dens.retain(|_, m| *m > 0);
    if let Some(bad) = dens.keys().find(|f| f.valuation() == 0) {
        return Err(Error::IllPosed(format!("denominator factor {bad} has a pole on the torus")));
    }
    let mut numerator = LaurentPoly::one(n);
    for (f, m) in &nums {
        for _ in 0..*m {
            numerator = &numerator * &f.to_laurent();
        }
    }
    numerator = mul_mono(&numerator, &unit);
    Ok(FactoredRational {
        nvars: n,
        prefactor: pre,
        numerator,
        denominators: dens,
    })
}

/// The four specialized densities, in the `s`-dictionary where the
/// Hall-Littlewood parameter of the density is `s^2` (cases 1, 2, 4) or `s^4`
/// (case 3).
pub fn case_density(case: u8, n: usize) -> Result<FactoredRational> {
    let s = SMono::s_pow(1);
    let t = Some(SMono::s_pow(2));
    match case {
        1 => build_density(DensityKind::K, n, DensityParams::bc(t, [Some(s), Some(s.negate()), None, None])),
        2 => build_density(DensityKind::K, n, DensityParams::bc(t, [Some(SMono::ONE), Some(s), None, None])),
        3 => build_density(DensityKind::S, n, DensityParams::type_a(Some(SMono::s_pow(4)))),
        4 => build_density(DensityKind::K, n, DensityParams::bc(t, [Some(s), Some(s), None, None])),
        _ => Err(Error::Invalid(format!("unknown case {case}"))),
    }
}

/// Parameters of [`case_density`] for the BC cases.
pub fn case_params(case: u8) -> Option<DensityParams> {
    let s = SMono::s_pow(1);
    let t = Some(SMono::s_pow(2));
    match case {
        1 => Some(DensityParams::bc(t, [Some(s), Some(s.negate()), None, None])),
        2 => Some(DensityParams::bc(t, [Some(SMono::ONE), Some(s), None, None])),
        4 => Some(DensityParams::bc(t, [Some(s), Some(s), None, None])),
        _ => None,
    }
}

/// The `t = 0`, `(a,b,c,d) = 0` density (symplectic Weyl weight).
pub fn symplectic_density(n: usize) -> Result<FactoredRational> {
    build_density(DensityKind::K, n, DensityParams::bc(None, [None; 4]))
}
