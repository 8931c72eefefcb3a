//! The `t`-Littlewood summation in finitely many variables, checked as a
//! truncated power series in `x`, together with the finite-rank kernel
//! identity it is derived from.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::integrals::{case_integrator, hl_t, integral_lhs, IntegralOptions};
use super::report::{ReportSet, VerificationReport};
use crate::hall_littlewood::hl_poly;
use crate::padic::{theorem_rhs_mu0, unions};
use crate::partitions::{b_lambda, partitions_up_to, HalfWeight, Partition, SignedWeight};
use crate::{Error, LaurentPoly, Result, Scalar};

/// Settings of the Littlewood suite.
#[derive(Clone, Copy, Debug)]
pub struct LittlewoodOptions {
    pub vars: usize,
    pub degree: u32,
    /// x-truncation of the kernel check.
    pub kernel_degree: u32,
    /// Ranks of the kernel check.
    pub kernel_ranks: [usize; 2],
    /// Depth in `s` of the large-rank limit comparison.
    pub series_order: i64,
}

impl Default for LittlewoodOptions {
    fn default() -> Self {
        LittlewoodOptions {
            vars: 3,
            degree: 6,
            kernel_degree: 4,
            kernel_ranks: [1, 2],
            series_order: 12,
        }
    }
}

/// `Σ_k ρ_k a_k` with `ρ = (1, 3, 5, …)`.
fn odd_pairing(a: &[i32]) -> i64 {
    a.iter().enumerate().map(|(k, &x)| (2 * k as i64 + 1) * x as i64).sum()
}

fn to_partition(v: &[i32]) -> Partition {
    Partition::from_unsorted(v.iter().filter(|&&a| a > 0).map(|&a| a as u32).collect())
}

/// Coefficient of `P_λ` on the left of the summation identity:
/// `Σ_{μ∪ν=λ} t^{⟨μ+ν,ρ⟩ − ½⟨λ,ρ⟩} b_λ/(b_μ b_ν)`, over ordered pairs.
pub fn littlewood_coefficient(lambda: &Partition) -> Scalar {
    let t = hl_t();
    let l = lambda.len();
    let mut padded = lambda.padded(2 * l);
    padded.sort_unstable_by(|a, b| b.cmp(a));
    let bl = b_lambda(lambda, &t);
    let lr = odd_pairing(&lambda.padded(l));
    let mut acc = Scalar::zero();
    for (mu, nu) in unions(&padded, l) {
        let sum: Vec<i32> = mu.iter().zip(&nu).map(|(a, b)| a + b).collect();
        // t^x = s^{2x}, 2x = 2⟨μ+ν,ρ⟩ − ⟨λ,ρ⟩
        let e = 2 * odd_pairing(&sum) - lr;
        let den = b_lambda(&to_partition(&mu), &t) * &b_lambda(&to_partition(&nu), &t);
        acc = acc + &(Scalar::s_pow(e) * &bl / &den);
    }
    acc
}

/// `1/(1 − c·m)` truncated, for a monomial `m` of positive degree `deg`.
fn geometric(m: &LaurentPoly, deg: u32, c: &Scalar, max: u32) -> LaurentPoly {
    let nv = m.nvars();
    let mut out = LaurentPoly::one(nv);
    let mut term = LaurentPoly::one(nv);
    for _ in 0..(max / deg) {
        term = term.mul_truncated(&m.scale(c), max as i32);
        out = &out + &term;
    }
    out
}

fn monomial(nv: usize, idx: &[usize]) -> LaurentPoly {
    let mut e = vec![0; nv];
    for &i in idx {
        e[i] += 1;
    }
    LaurentPoly::monomial(e, Scalar::one())
}

/// `Π_{j<k} (1 − t x_j x_k)/(1 − x_j x_k)` truncated to degree `d`.
fn pair_product(m: usize, d: u32, t: &Scalar) -> LaurentPoly {
    let mut out = LaurentPoly::one(m);
    for j in 0..m {
        for k in j + 1..m {
            let xx = monomial(m, &[j, k]);
            let num = &LaurentPoly::one(m) - &xx.scale(t);
            out = out.mul_truncated(&num, d as i32).mul_truncated(&geometric(&xx, 2, &Scalar::one(), d), d as i32);
        }
    }
    out
}

/// Right side of the summation identity, truncated to degree `d`.
pub fn littlewood_rhs(m: usize, d: u32, t: &Scalar, sqrt_t: &Scalar) -> LaurentPoly {
    let mut out = pair_product(m, d, t);
    for j in 0..m {
        let x = monomial(m, &[j]);
        let num = &LaurentPoly::one(m) + &x.scale(sqrt_t);
        out = out.mul_truncated(&num, d as i32).mul_truncated(&geometric(&x, 1, sqrt_t, d), d as i32);
    }
    out
}

/// Left side: `Σ_λ P_λ(x;t) · littlewood_coefficient(λ)` over `|λ| ≤ d`.
pub fn littlewood_lhs(m: usize, d: u32) -> Result<LaurentPoly> {
    let t = hl_t();
    let mut out = LaurentPoly::zero(m);
    for lambda in partitions_up_to(d, m) {
        let p = hl_poly(&SignedWeight::from_partition(&lambda, m), m, &t)?;
        out = &out + &p.scale(&littlewood_coefficient(&lambda));
    }
    Ok(out)
}

fn at_zero(f: &LaurentPoly) -> Option<LaurentPoly> {
    let z = BigRational::zero();
    let mut out = LaurentPoly::zero(f.nvars());
    for (e, c) in f.terms() {
        out.add_term(e.clone(), Scalar::constant(c.eval(&z)?));
    }
    Some(out)
}

fn row(theorem: &str, n: usize, lambda: String, mu: String) -> VerificationReport {
    let mut r = VerificationReport::new(theorem, n, lambda, mu);
    r.sort_key = (Vec::new(), Vec::new(), String::new());
    r
}

fn main_rows(o: &LittlewoodOptions) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    let (m, d) = (o.vars, o.degree);
    let lhs = littlewood_lhs(m, d)?;
    let rhs = littlewood_rhs(m, d, &hl_t(), &Scalar::s_pow(1));
    let mut r = row("littlewood", m, format!("vars={m}"), format!("degree={d}"));
    r.lhs = format!("{} terms", lhs.len());
    r.rhs = Some(format!("{} terms", rhs.len()));
    r.check("lhs_eq_rhs", lhs == rhs);
    r.elapsed = start.elapsed();
    r.finish(true);

    // t = 0: Σ_{λ' even} s_λ = Π_{j<k} 1/(1 − x_j x_k)
    let start = Instant::now();
    let mut classical = LaurentPoly::zero(m);
    for lambda in partitions_up_to(d, m) {
        if lambda.conjugate().parts().iter().all(|a| a % 2 == 0) {
            let s = hl_poly(&SignedWeight::from_partition(&lambda, m), m, &Scalar::zero())?;
            classical = &classical + &*s;
        }
    }
    let prod0 = littlewood_rhs(m, d, &Scalar::zero(), &Scalar::zero());
    let lhs0 = at_zero(&lhs);
    let mut r0 = row("littlewood-t0", m, format!("vars={m}"), format!("degree={d}"));
    r0.lhs = format!("{} terms", classical.len());
    r0.rhs = Some(format!("{} terms", prod0.len()));
    r0.check("lhs_eq_rhs", classical == prod0);
    r0.check("specialization", lhs0.as_ref() == Some(&classical));
    r0.elapsed = start.elapsed();
    r0.finish(true);
    Ok(vec![r, r0])
}

/// Coefficient of `x_j^a` in `Π_k (1 − t x y_k^{±1})/(1 − x y_k^{±1})`, as
/// Laurent polynomials in `y`, for `a ≤ d`.
fn single_kernel(n: usize, d: u32, t: &Scalar) -> Vec<LaurentPoly> {
    // (1 − t x u)/(1 − x u) = 1 + (1 − t) Σ_{a≥1} x^a u^a
    let mut series = vec![LaurentPoly::one(n)];
    series.resize(d as usize + 1, LaurentPoly::zero(n));
    let one_minus_t = Scalar::one() - t;
    for k in 0..n {
        for sign in [1, -1] {
            let mut factor = vec![LaurentPoly::one(n)];
            for a in 1..=d as i32 {
                let mut e = vec![0; n];
                e[k] = sign * a;
                factor.push(LaurentPoly::monomial(e, one_minus_t.clone()));
            }
            let mut next = vec![LaurentPoly::zero(n); d as usize + 1];
            for (i, f) in series.iter().enumerate() {
                for (j, g) in factor.iter().enumerate() {
                    if i + j <= d as usize {
                        next[i + j] = &next[i + j] + &(f * g);
                    }
                }
            }
            series = next;
        }
    }
    series
}

/// The kernel integrated against the case-4 density, coefficientwise in `x`.
fn kernel_integral(m: usize, n: usize, d: u32) -> Result<LaurentPoly> {
    let t = hl_t();
    let single = single_kernel(n, d, &t);
    let mut acc: BTreeMap<Vec<i32>, LaurentPoly> = BTreeMap::from([(vec![0; m], LaurentPoly::one(n))]);
    for j in 0..m {
        let mut next: BTreeMap<Vec<i32>, LaurentPoly> = BTreeMap::new();
        for (e, c) in &acc {
            let deg: i32 = e.iter().sum();
            for (a, s) in single.iter().enumerate() {
                if deg + a as i32 > d as i32 {
                    break;
                }
                let mut e2 = e.clone();
                e2[j] = a as i32;
                let v = c * s;
                let slot = next.entry(e2).or_insert_with(|| LaurentPoly::zero(n));
                *slot = &*slot + &v;
            }
        }
        acc = next;
    }
    let ig = case_integrator(4, n)?;
    let z = ig.total_mass()?;
    let entries: Vec<(Vec<i32>, LaurentPoly)> = acc.into_iter().collect();
    let vals = entries
        .par_iter()
        .map(|(e, c)| Ok((e.clone(), ig.integrate(c)? / &z)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(m, vals))
}

/// Right side of the kernel identity: `Π_{j<k}(…) Π_j (1 − t x_j²)/(1 − √t x_j)²`.
fn kernel_rhs(m: usize, d: u32) -> LaurentPoly {
    let t = hl_t();
    let s = Scalar::s_pow(1);
    let mut out = pair_product(m, d, &t);
    for j in 0..m {
        let x = monomial(m, &[j]);
        let x2 = monomial(m, &[j, j]);
        let g = geometric(&x, 1, &s, d);
        out = out
            .mul_truncated(&(&LaurentPoly::one(m) - &x2.scale(&t)), d as i32)
            .mul_truncated(&g, d as i32)
            .mul_truncated(&g, d as i32);
    }
    out
}

/// `Σ_λ P_λ(x) b_λ ⟨P_λ^{(2n)}(y^{±1})⟩` from the case-4 integrals.
fn cauchy_side(m: usize, n: usize, d: u32) -> Result<LaurentPoly> {
    let t = hl_t();
    let opts = IntegralOptions {
        series_order: None,
        basis_weight: d,
    };
    let mut out = LaurentPoly::zero(m);
    for lambda in partitions_up_to(d, m.min(2 * n)) {
        let w = HalfWeight::integral(SignedWeight::from_partition(&lambda, 2 * n));
        let v = integral_lhs(4, &w, &Partition::empty(), n, &opts)?.value;
        let p = hl_poly(&SignedWeight::from_partition(&lambda, m), m, &t)?;
        out = &out + &p.scale(&(v * &b_lambda(&lambda, &t)));
    }
    Ok(out)
}

/// Lowest-degree part of `f`, as text.
fn lowest(f: &LaurentPoly) -> String {
    let Some((lo, _)) = f.total_degree_range() else {
        return "0".into();
    };
    f.filter_terms(|e| e.iter().sum::<i32>() == lo).to_string()
}

fn kernel_rows(o: &LittlewoodOptions, n: usize) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    let (m, d) = (o.vars, o.kernel_degree);
    let direct = kernel_integral(m, n, d)?;
    let rhs = kernel_rhs(m, d);
    let cauchy = cauchy_side(m, n, d)?;
    let el = start.elapsed() / 2;
    let mut a = row("littlewood-kernel", n, format!("vars={m}"), format!("degree={d}"));
    a.lhs = format!("{} terms", direct.len());
    a.rhs = Some(format!("{} terms", rhs.len()));
    a.check("lhs_eq_rhs", direct == rhs);
    if direct != rhs {
        a.value("lowest_difference", lowest(&(&direct - &rhs)));
    }
    a.elapsed = el;
    a.finish(true);
    let mut b = row("littlewood-cauchy", n, format!("vars={m}"), format!("degree={d}"));
    b.lhs = format!("{} terms", direct.len());
    b.rhs = Some(format!("{} terms", cauchy.len()));
    b.check("lhs_eq_rhs", direct == cauchy);
    b.elapsed = el;
    b.finish(true);
    Ok(vec![a, b])
}

/// The finite-rank case-4 sum times `b_λ` against the summation coefficient,
/// as power series in `s`, at rank `l(λ) + 7`.
fn limit_row(lambda: &Partition, order: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let rank = lambda.len() + 7;
    let w = HalfWeight::integral(SignedWeight::from_partition(lambda, 2 * rank));
    let finite = theorem_rhs_mu0(4, &w, rank)? * &b_lambda(lambda, &hl_t());
    let limit = littlewood_coefficient(lambda);
    let diff = &finite - &limit;
    let mut r = VerificationReport::new("littlewood-limit", rank, lambda.to_string(), String::new());
    r.lhs = finite.to_string();
    r.rhs = Some(limit.to_string());
    let agree = diff.is_zero() || diff.valuation().ok_or(Error::DivisionByZero)? > order;
    r.check("series_agree", agree);
    r.oracle_order = Some(order);
    r.elapsed = start.elapsed();
    let mut k = vec![lambda.size() as i64];
    k.extend(lambda.parts().iter().map(|&a| -(a as i64)));
    r.sort_key = (k, Vec::new(), String::new());
    r.finish(true);
    Ok(r)
}

/// Runs the summation identity, its `t = 0` case, the kernel identity at the
/// configured ranks and the large-rank limit of the case-4 sums.
pub fn verify_littlewood(o: &LittlewoodOptions) -> Result<ReportSet> {
    let mut rows = main_rows(o)?;
    let kernels: Vec<Vec<VerificationReport>> = o.kernel_ranks.par_iter().map(|&n| kernel_rows(o, n)).collect::<Result<_>>()?;
    rows.extend(kernels.into_iter().flatten());
    let lams = partitions_up_to(o.degree, o.degree as usize);
    let lim: Vec<VerificationReport> = lams.par_iter().map(|l| limit_row(l, o.series_order)).collect::<Result<_>>()?;
    rows.extend(lim);
    Ok(ReportSet::new(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_variables_degree_two() {
        assert_eq!(littlewood_lhs(2, 2).unwrap(), littlewood_rhs(2, 2, &hl_t(), &Scalar::s_pow(1)));
    }

    #[test]
    fn single_box_coefficient() {
        // λ = (1): (μ,ν) = ((1),0) and (0,(1)), each t^{1 − 1/2}
        assert_eq!(littlewood_coefficient(&Partition::new(vec![1])), Scalar::from_int(2) * Scalar::s_pow(1));
        assert!(littlewood_coefficient(&Partition::empty()).is_one());
    }

    #[test]
    fn kernel_rank_one_linear_term() {
        // coefficient of x is 2s(1 − t), not 2s
        let k = kernel_integral(1, 1, 1).unwrap();
        let expect = Scalar::from_int(2) * Scalar::s_pow(1) * (Scalar::one() - hl_t());
        assert_eq!(k.coeff(&[1]), expect);
        assert_eq!(kernel_rhs(1, 1).coeff(&[1]), Scalar::from_int(2) * Scalar::s_pow(1));
    }
}
