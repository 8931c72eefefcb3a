//! Closed-form p-adic measures and the right-hand sides of the `μ = 0`
//! integral identities.
//!
//! Every value lives in `Q(s)` under a per-case dictionary: `p^{-1} = s^2` for
//! cases 1, 3, 4 and `p^{-1} = s` for case 2. In all cases the
//! Hall-Littlewood parameter of the corresponding identity is `t = s^2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Field, Ring, UniPoly};
use crate::partitions::{
    phi, rho_pairing, rho_pairing_doubled, v_m, v_weight, HalfWeight, Rho, SignedWeight,
};
use crate::{Error, Result, Scalar};

/// Exponent `e` of the dictionary `p^{-1} = s^e`.
pub fn p_inverse_exponent(case: u8) -> Result<i64> {
    match case {
        1 | 3 | 4 => Ok(2),
        2 => Ok(1),
        _ => Err(Error::Invalid(format!("unknown case {case}"))),
    }
}

/// `p^{k/2}` as `s^{-e·k/2}`.
fn p_half_pow(k: i64, e: i64) -> Result<Scalar> {
    if (e * k) % 2 != 0 {
        return Err(Error::Invalid(format!("p^({k}/2) is not a power of s when p^-1 = s^{e}")));
    }
    Ok(Scalar::s_pow(-e * k / 2))
}

fn t() -> Scalar {
    Scalar::s_pow(2)
}

/// A case-tagged measure value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeasureValue {
    pub case: u8,
    pub lambda: HalfWeight,
    pub value: Scalar,
}

fn integral_weight(lambda: &HalfWeight) -> Result<&SignedWeight> {
    if lambda.half {
        return Err(Error::Invalid(format!("{lambda} must be integral here")));
    }
    Ok(&lambda.base)
}

fn padded(lambda: &SignedWeight, len: usize) -> Result<Vec<i32>> {
    if lambda.len() > len {
        return Err(Error::TooLong { len: lambda.len(), n: len });
    }
    if lambda.len() < len && lambda.min_part() < 0 {
        return Err(Error::Invalid(format!("{lambda} must have length {len}")));
    }
    let mut v = lambda.parts().to_vec();
    v.resize(len, 0);
    Ok(v)
}

/// Measure of `K p^λ K` in `GL_n` with `K = GL_n(Z_p)`:
/// `p^{2⟨λ,ρ⟩} v_n(p^{-1}) / v_λ(p^{-1})`, where `2ρ = (n−1, n−3, …, 1−n)`.
pub fn gl_double_coset_measure(lambda: &SignedWeight, n: usize, e: i64) -> Result<Scalar> {
    let w = padded(lambda, n)?;
    let two_rho = rho_pairing(&w, Rho::Three, n)?;
    let pinv = Scalar::s_pow(e);
    // rho_pairing against ρ₃ = 2ρ returns 2⟨λ,ρ⟩ stored doubled.
    let pw = p_half_pow(two_rho.doubled(), e)?;
    Ok(pw * &v_m(n, &pinv) / &v_weight(&w, &pinv))
}

/// All ordered pairs `(μ, ν)` of weakly decreasing `n`-vectors whose
/// multiset union is `λ` (`2n` entries, zeros included).
pub fn unions(lambda: &[i32], n: usize) -> Vec<(Vec<i32>, Vec<i32>)> {
    let mut values: Vec<(i32, usize)> = Vec::new();
    for &a in lambda {
        match values.last_mut() {
            Some((v, m)) if *v == a => *m += 1,
            _ => values.push((a, 1)),
        }
    }
    let mut out = Vec::new();
    fn rec(i: usize, left: usize, values: &[(i32, usize)], cur: &mut Vec<usize>, out: &mut Vec<(Vec<i32>, Vec<i32>)>) {
        if i == values.len() {
            if left == 0 {
                let mut mu = Vec::new();
                let mut nu = Vec::new();
                for (&(v, m), &k) in values.iter().zip(cur.iter()) {
                    mu.extend(std::iter::repeat_n(v, k));
                    nu.extend(std::iter::repeat_n(v, m - k));
                }
                out.push((mu, nu));
            }
            return;
        }
        for k in 0..=values[i].1.min(left) {
            cur.push(k);
            rec(i + 1, left - k, values, cur, out);
            cur.pop();
        }
    }
    rec(0, n, &values, &mut Vec::new(), &mut out);
    out
}

/// `∫_H c_λ(h) dh` in the given case.
pub fn lemma33(case: u8, lambda: &HalfWeight, n: usize) -> Result<Scalar> {
    let e = p_inverse_exponent(case)?;
    let pinv = Scalar::s_pow(e);
    let pinv2 = Scalar::s_pow(2 * e);
    match case {
        1 => {
            let w = padded(integral_weight(lambda)?, 2 * n)?;
            let Some(mu) = double_root(&w) else {
                return Ok(Scalar::zero());
            };
            let h = rho_pairing(&mu, Rho::Three, n)?;
            Ok(p_half_pow(2 * h.doubled(), e)? * &v_m(n, &pinv2) / &v_weight(&mu, &pinv2))
        }
        2 => {
            let w = padded(integral_weight(lambda)?, 2 * n)?;
            let h = rho_pairing(&w, Rho::Two, n)?;
            Ok(p_half_pow(2 * h.doubled(), e)? * &v_m(2 * n, &pinv) / &v_weight(&w, &pinv))
        }
        3 => {
            if lambda.len() != 2 * n {
                return Err(Error::Invalid(format!("{lambda} must have length {}", 2 * n)));
            }
            let Some(mu2) = lambda.mu_mubar_root_doubled() else {
                return Ok(Scalar::zero());
            };
            // 4⟨μ,ρ₁⟩; a quarter-integer pairing is fine since only p^{2⟨μ,ρ₁⟩} is needed
            let quad: i64 = mu2.iter().zip(Rho::One.doubled(n)).map(|(a, b)| a * b).sum();
            let l = mu2.iter().filter(|&&a| a > 0).count();
            let pos: Vec<i32> = mu2.iter().filter(|&&a| a > 0).map(|&a| a as i32).collect();
            let den = phi(n - l, &pinv2) * &(Scalar::one() - &pinv).pow(l as u32) * &v_weight(&pos, &pinv);
            Ok(p_half_pow(quad, e)? * &phi(n, &pinv2) / &den)
        }
        4 => {
            let w = padded(integral_weight(lambda)?, 2 * n)?;
            if w.iter().any(|&a| a < 0) {
                return Err(Error::Invalid(format!("{lambda} must be a partition")));
            }
            let mut acc = Scalar::zero();
            let vn2 = v_m(n, &pinv).pow(2);
            for (mu, nu) in unions(&w, n) {
                let h = rho_pairing(&mu, Rho::Three, n)?.doubled() + rho_pairing(&nu, Rho::Three, n)?.doubled();
                let term = p_half_pow(h, e)? * &vn2 / &(v_weight(&mu, &pinv) * &v_weight(&nu, &pinv));
                acc = acc + &term;
            }
            Ok(acc)
        }
        _ => unreachable!(),
    }
}

/// `μ` with `λ = μ²` (every part repeated twice), as an `n`-vector.
fn double_root(w: &[i32]) -> Option<Vec<i32>> {
    if w.len() % 2 == 1 || w.chunks(2).any(|c| c[0] != c[1]) {
        return None;
    }
    Some(w.chunks(2).map(|c| c[0]).collect())
}

pub fn measure(case: u8, lambda: &HalfWeight, n: usize) -> Result<MeasureValue> {
    Ok(MeasureValue {
        case,
        lambda: lambda.clone(),
        value: lemma33(case, lambda, n)?,
    })
}

/// The closed-form `μ = 0` value of each case, with `t = s^2`.
pub fn theorem_rhs_mu0(case: u8, lambda: &HalfWeight, n: usize) -> Result<Scalar> {
    let t = t();
    match case {
        1 => {
            let w = padded(integral_weight(lambda)?, 2 * n)?;
            let Some(mu) = double_root(&w) else {
                return Ok(Scalar::zero());
            };
            let t2 = Scalar::s_pow(4);
            Ok(v_m(n, &t2) / &v_weight(&mu, &t2))
        }
        2 => {
            let w = padded(integral_weight(lambda)?, 2 * n)?;
            let rt = Scalar::s_pow(1);
            Ok(v_m(2 * n, &rt) / &v_weight(&w, &rt))
        }
        3 => {
            if lambda.len() != 2 * n {
                return Err(Error::Invalid(format!("{lambda} must have length {}", 2 * n)));
            }
            let Some(mu2) = lambda.mu_mubar_root_doubled() else {
                return Ok(Scalar::zero());
            };
            let l = mu2.iter().filter(|&&a| a > 0).count();
            let w: Vec<i32> = mu2.iter().map(|&a| a as i32).collect();
            let mut den = (Scalar::one() - &t).pow(n as u32) * &v_weight(&w, &t);
            for i in 1..=(n - l) {
                den = den * &(Scalar::one() + &t.pow(i as u32));
            }
            Ok(phi(n, &Scalar::s_pow(4)) / &den)
        }
        4 => {
            let w = padded(integral_weight(lambda)?, 2 * n)?;
            let lr2 = rho_pairing(&w, Rho::Two, n)?;
            let mut acc = Scalar::zero();
            let vn2 = v_m(n, &t).pow(2);
            for (mu, nu) in unions(&w, n) {
                // t^x with x = −⟨μ,ρ₃⟩ − ⟨ν,ρ₃⟩ + ⟨λ,ρ₂⟩, i.e. s^{2x}
                let two_x = -rho_pairing(&mu, Rho::Three, n)?.doubled() - rho_pairing(&nu, Rho::Three, n)?.doubled()
                    + lr2.doubled();
                let term = Scalar::s_pow(two_x) * &vn2 / &(v_weight(&mu, &t) * &v_weight(&nu, &t));
                acc = acc + &term;
            }
            Ok(acc)
        }
        _ => Err(Error::Invalid(format!("unknown case {case}"))),
    }
}

/// `p^{-⟨λ,ρ₂⟩}·lemma33` (cases 1, 3, 4) or `p^{-2⟨λ,ρ₂⟩}·lemma33` (case 2):
/// the `μ = 0` value predicted by the general integral identity.
pub fn chain_rhs_mu0(case: u8, lambda: &HalfWeight, n: usize) -> Result<Scalar> {
    let e = p_inverse_exponent(case)?;
    let l = lemma33(case, lambda, n)?;
    if lambda.len() > 2 * n {
        return Err(Error::TooLong { len: lambda.len(), n: 2 * n });
    }
    let mut d = lambda.doubled();
    if d.len() < 2 * n && d.iter().any(|&a| a < 0) {
        return Err(Error::Invalid(format!("{lambda} must have length {}", 2 * n)));
    }
    d.resize(2 * n, 0);
    let h = rho_pairing_doubled(&d, Rho::Two, n)?.doubled();
    let k = if case == 2 { 2 * h } else { h };
    Ok(p_half_pow(-k, e)? * &l)
}

/// An element `r0 + r1·σ` of `Q(σ)`, where `σ = s` evaluated at a prime:
/// `σ = 1/√p` (when `s² = 1/p`) or `σ = 1/p` (when `s = 1/p`, then `r1 = 0`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeValue {
    pub p: u64,
    pub rational: BigRational,
    /// Coefficient of `1/√p`.
    pub surd: BigRational,
}

impl PrimeValue {
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn sign(&self) -> Ordering {
        let a = &self.rational;
        let b = &self.surd;
        let sa = a.cmp(&BigRational::zero());
        let sb = b.cmp(&BigRational::zero());
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a² with b²/p
        let p = BigRational::from_integer(BigInt::from(self.p));
        match (a * a * &p).cmp(&(b * b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        a + b / (self.p as f64).sqrt()
    }
}

impl fmt::Display for PrimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.surd.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "({})/sqrt({})", self.surd, self.p),
            (false, false) => write!(f, "{} + ({})/sqrt({})", self.rational, self.surd, self.p),
        }
    }
}

/// `(E(1/p), O(1/p))` with `f(s) = E(s²) + s·O(s²)`.
fn split_even_odd(f: &UniPoly<BigRational>, p: &BigRational) -> (BigRational, BigRational) {
    let x = p.inv();
    let horner = |parity: usize| {
        f.coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(k, _)| k % 2 == parity)
            .fold(BigRational::zero(), |acc, (_, c)| acc * &x + c)
    };
    (horner(0), horner(1))
}

/// Numeric value of a case-dictionary scalar at the prime `p`.
pub fn evaluate_at_prime(x: &Scalar, case: u8, p: u64) -> Result<PrimeValue> {
    let e = p_inverse_exponent(case)?;
    let pq = BigRational::from_integer(BigInt::from(p));
    if e == 1 {
        let v = x
            .eval(&pq.inv())
            .ok_or_else(|| Error::Invalid(format!("{x} has a pole at s = 1/{p}")))?;
        return Ok(PrimeValue {
            p,
            rational: v,
            surd: BigRational::zero(),
        });
    }
    let (na, nb) = split_even_odd(x.numer(), &pq);
    let (da, db) = split_even_odd(x.denom(), &pq);
    // (na + nb σ)(da − db σ) / (da² − db² σ²), σ² = 1/p
    let norm = &da * &da - &db * &db / &pq;
    if norm.is_zero() {
        return Err(Error::Invalid(format!("{x} has a pole at s = 1/sqrt({p})")));
    }
    let rational = (&na * &da - &nb * &db / &pq) / &norm;
    let surd = (&nb * &da - &na * &db) / &norm;
    Ok(PrimeValue { p, rational, surd })
}

/// `true` when `x` is positive at `p`.
pub fn positive_at(x: &Scalar, case: u8, p: u64) -> Result<bool> {
    Ok(evaluate_at_prime(x, case, p)?.sign() == Ordering::Greater)
}
