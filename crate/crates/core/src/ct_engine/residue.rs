use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::{decompose, mul_mono, BinomialFactor, Decomposed, FactoredRational, Mono, SMono};
use crate::algebra::{binomial, Ring, UniPoly};
use crate::{Error, LaurentPoly, Result, Scalar};

/// `∫_T f dT`: the constant term of `f` in all variables, computed by
/// iterated residues under the regime `|s| < 1`.
pub fn torus_integral(f: &FactoredRational) -> Result<Scalar> {
    integrate(f, None)
}

/// Same as [`torus_integral`] but eliminating variables in the given order.
pub fn torus_integral_ordered(f: &FactoredRational, order: &[usize]) -> Result<Scalar> {
    integrate(f, Some(order))
}

fn integrate(f: &FactoredRational, order: Option<&[usize]>) -> Result<Scalar> {
    let mut cur = f.clone();
    clear_denominators(&mut cur);
    cur.normalize();
    let mut queue: Vec<usize> = order.map(|o| o.to_vec()).unwrap_or_default();
    queue.reverse();
    loop {
        if cur.is_zero() {
            return Ok(Scalar::zero());
        }
        let active = cur.active_vars();
        if active.is_empty() {
            debug_assert!(cur.denominators.is_empty());
            return Ok(&cur.prefactor * &cur.numerator.constant_term());
        }
        let (j, flip) = match order {
            Some(_) => {
                let j = loop {
                    let Some(j) = queue.pop() else {
                        return Err(Error::Invalid("variable order does not cover the integrand".into()));
                    };
                    if active.contains(&j) {
                        break j;
                    }
                };
                let a = plan_cost(&cur, j, false);
                let b = plan_cost(&cur, j, true);
                match (a, b) {
                    (Ok(a), Ok(b)) => (j, b < a),
                    (Ok(_), Err(_)) => (j, false),
                    (Err(_), Ok(_)) => (j, true),
                    (Err(e), Err(_)) => return Err(e),
                }
            }
            None => choose_variable(&cur, &active)?,
        };
        if flip {
            cur = invert_variable(&cur, j);
        }
        cur = integrate_variable(&cur, j)?;
        cur.normalize();
    }
}

/// Moves all non-monomial coefficient denominators of the numerator into
/// the prefactor, so the engine only handles coefficients in `Q[s, 1/s]`.
fn clear_denominators(f: &mut FactoredRational) {
    let mut l = UniPoly::<BigRational>::one();
    for (_, c) in f.numerator.terms() {
        let d = c.denom();
        if d.is_monomial() {
            continue;
        }
        let g = l.gcd(d);
        l = &l * &d.div_exact(&g).unwrap();
    }
    if l.is_one() {
        return;
    }
    let ls = Scalar::from_poly(l);
    f.numerator = f.numerator.scale(&ls);
    f.prefactor = &f.prefactor / &ls;
}

/// Number of nonzero poles inside the circle for variable `j` (after the
/// optional inversion `x_j -> 1/x_j`), or an error if one is on the circle
/// or is not a monomial root.
fn plan_cost(f: &FactoredRational, j: usize, flip: bool) -> Result<u32> {
    let mut cost = 0;
    for (b, m) in &f.denominators {
        let k = if flip { -b.exp[j] } else { b.exp[j] };
        if k == 0 {
            continue;
        }
        let val = b.valuation();
        if val == 0 {
            return Err(Error::IllPosed(format!("factor {b} has a pole on the torus")));
        }
        if (k as i64) * val < 0 {
            if k.abs() != 1 {
                return Err(Error::Invalid(format!("factor {b} has non-monomial roots inside the torus")));
            }
            cost += m;
        }
    }
    Ok(cost)
}

fn choose_variable(f: &FactoredRational, active: &[usize]) -> Result<(usize, bool)> {
    let mut best: Option<(u32, usize, bool)> = None;
    let mut first_err = None;
    for &j in active {
        for flip in [false, true] {
            match plan_cost(f, j, flip) {
                Ok(c) => {
                    if best.is_none_or(|b| c < b.0) {
                        best = Some((c, j, flip));
                    }
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
    }
    match best {
        Some((_, j, flip)) => Ok((j, flip)),
        None => Err(first_err.unwrap()),
    }
}

/// Substitutes `x_j -> 1/x_j` (the constant term is unchanged).
pub(crate) fn invert_variable(f: &FactoredRational, j: usize) -> FactoredRational {
    let mut out = FactoredRational {
        nvars: f.nvars,
        prefactor: f.prefactor.clone(),
        numerator: f.numerator.invert_var(j),
        denominators: BTreeMap::new(),
    };
    for (b, m) in &f.denominators {
        let mut v = b.exp.clone();
        v[j] = -v[j];
        out.div_binomial(b.coeff, &v, *m).expect("nonzero factor");
    }
    out
}

/// Image of `x^α` (with `α_j = a`) under `x_j -> z0`, as a monomial.
fn numerator_at(num: &LaurentPoly, j: usize, z0: &Mono) -> LaurentPoly {
    let n = num.nvars();
    LaurentPoly::from_terms(
        n,
        num.terms().map(|(e, c)| {
            let a = e[j] as i64;
            let zp = z0.pow(a);
            let mut exp = e.clone();
            exp[j] = 0;
            for (x, y) in exp.iter_mut().zip(&zp.exp) {
                *x += y;
            }
            (exp, zp.coeff.apply(c))
        }),
    )
}

fn without_var(v: &[i32], j: usize) -> Vec<i32> {
    let mut w = v.to_vec();
    w[j] = 0;
    w
}

/// One summand of the residue sum: `pre · num / (Π (1 − c)^k · Π dens)`.
/// Scalar binomials stay factored so that coefficients never acquire
/// general denominators inside the engine.
struct Piece {
    pre: Scalar,
    num: LaurentPoly,
    sdens: BTreeMap<SMono, u32>,
    dens: BTreeMap<BinomialFactor, u32>,
}

impl Piece {
    /// Divides by `(1 − b)^power`.
    fn divide_by(&mut self, b: &Mono, power: u32) {
        match decompose(b.coeff, &b.exp) {
            Decomposed::Scalar(_) => {
                *self.sdens.entry(b.coeff).or_insert(0) += power;
            }
            Decomposed::Factors { unit, factors } => {
                self.num = mul_mono(&self.num, &unit.inv().pow(power as i64));
                for f in factors {
                    *self.dens.entry(f).or_insert(0) += power;
                }
            }
        }
    }
}

/// Integrates out `x_j`: residue at 0 plus residues at the nonzero poles
/// inside the unit circle, over a common denominator.
fn integrate_variable(f: &FactoredRational, j: usize) -> Result<FactoredRational> {
    let n = f.nvars;
    let mut pass = BTreeMap::new();
    let mut active: Vec<(BinomialFactor, u32)> = Vec::new();
    for (b, m) in &f.denominators {
        if b.exp[j] == 0 {
            pass.insert(b.clone(), *m);
        } else {
            active.push((b.clone(), *m));
        }
    }
    let mut pieces = Vec::new();
    let r0 = residue_at_zero(&f.numerator, &active, j);
    if !r0.is_zero() {
        pieces.push(Piece {
            pre: Scalar::one(),
            num: r0,
            sdens: BTreeMap::new(),
            dens: BTreeMap::new(),
        });
    }
    for (idx, (b, m)) in active.iter().enumerate() {
        let k = b.exp[j];
        let val = b.valuation();
        if val == 0 {
            return Err(Error::IllPosed(format!("factor {b} has a pole on the torus")));
        }
        if (k as i64) * val >= 0 {
            continue;
        }
        if k.abs() != 1 {
            return Err(Error::Invalid(format!("factor {b} has non-monomial roots inside the torus")));
        }
        pieces.push(residue_at_pole(&f.numerator, &active, idx, *m, j));
    }
    let (num, sden, dens) = combine(n, pieces);
    let mut denominators = pass;
    for (b, m) in dens {
        *denominators.entry(b).or_insert(0) += m;
    }
    Ok(FactoredRational {
        nvars: n,
        prefactor: &f.prefactor / &sden,
        numerator: num,
        denominators,
    })
}

/// Coefficient of `x_j^0` in the expansion of `num / Π active` around `x_j = 0`.
fn residue_at_zero(num: &LaurentPoly, active: &[(BinomialFactor, u32)], j: usize) -> LaurentPoly {
    let n = num.nvars();
    let shift: i64 = active
        .iter()
        .filter(|(b, _)| b.exp[j] < 0)
        .map(|(b, m)| (-b.exp[j]) as i64 * *m as i64)
        .sum();
    let top = -shift;
    let mut by_deg: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e, c) in num.terms() {
        let a = e[j] as i64;
        if a > top {
            continue;
        }
        by_deg
            .entry(a)
            .or_insert_with(|| LaurentPoly::zero(n))
            .add_term(without_var(e, j), c.clone());
    }
    let Some((&lo, _)) = by_deg.iter().next() else {
        return LaurentPoly::zero(n);
    };
    let len = (top - lo + 1) as usize;
    let mut p: Vec<LaurentPoly> = vec![LaurentPoly::zero(n); len];
    for (d, q) in by_deg {
        p[(d - lo) as usize] = q;
    }
    let mut unit = Mono::one(n);
    for (b, m) in active {
        let k = b.exp[j];
        let y = Mono {
            coeff: b.coeff,
            exp: without_var(&b.exp, j),
        };
        let (g, kappa) = if k > 0 {
            (y, k as usize)
        } else {
            // 1/(1 − y z^k) = (−y^{-1}) z^{|k|} / (1 − y^{-1} z^{|k|})
            let yi = y.inv();
            let u = Mono {
                coeff: yi.coeff.negate(),
                exp: yi.exp.clone(),
            };
            unit = unit.mul(&u.pow(*m as i64));
            (yi, (-k) as usize)
        };
        for _ in 0..*m {
            for d in kappa..len {
                let add = mul_mono(&p[d - kappa], &g);
                if !add.is_zero() {
                    p[d].add_assign_ref(&add);
                }
            }
        }
    }
    mul_mono(&p[len - 1], &unit)
}

/// `(1+ε)^a` truncated after `ε^e`.
fn one_plus_eps_pow(a: i64, e: usize) -> Vec<BigRational> {
    (0..=e).map(|r| binomial::<BigRational>(a, r)).collect()
}

fn eps_mul(a: &[LaurentPoly], b: &[LaurentPoly], e: usize) -> Vec<LaurentPoly> {
    let n = a[0].nvars();
    let mut out = vec![LaurentPoly::zero(n); e + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, y) in b.iter().enumerate() {
            if i + k > e || y.is_zero() {
                continue;
            }
            let prod = x * y;
            out[i + k].add_assign_ref(&prod);
        }
    }
    out
}

fn eps_const(c: &[BigRational], n: usize) -> Vec<LaurentPoly> {
    c.iter()
        .map(|r| LaurentPoly::constant(n, Scalar::constant(r.clone())))
        .collect()
}

/// Residue of `num / (z · Π active)` at the root of `active[idx]`, which
/// has `x_j`-exponent ±1 and multiplicity `m`.
fn residue_at_pole(
    num: &LaurentPoly,
    active: &[(BinomialFactor, u32)],
    idx: usize,
    m: u32,
    j: usize,
) -> Piece {
    let n = num.nvars();
    let (b0, _) = &active[idx];
    let k0 = b0.exp[j] as i64;
    // Root of 1 − c y z^{k0}: z0 = (c y)^{-k0}.
    let z0 = Mono {
        coeff: b0.coeff,
        exp: without_var(&b0.exp, j),
    }
    .pow(-k0);
    let others: Vec<(Mono, i64, u32)> = active
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, (b, mb))| {
            let kb = b.exp[j] as i64;
            let y = Mono {
                coeff: b.coeff,
                exp: without_var(&b.exp, j),
            };
            (y.mul(&z0.pow(kb)), kb, *mb)
        })
        .collect();

    if m == 1 {
        let mut piece = Piece {
            pre: if k0 == 1 { -Scalar::one() } else { Scalar::one() },
            num: numerator_at(num, j, &z0),
            sdens: BTreeMap::new(),
            dens: BTreeMap::new(),
        };
        for (bm, _, mb) in &others {
            piece.divide_by(bm, *mb);
        }
        return piece;
    }

    let e = (m - 1) as usize;
    // N(z0 (1+ε))
    let mut nser = vec![LaurentPoly::zero(n); e + 1];
    for (exp, c) in num.terms() {
        let a = exp[j] as i64;
        let zp = z0.pow(a);
        let mut base = exp.clone();
        base[j] = 0;
        for (x, y) in base.iter_mut().zip(&zp.exp) {
            *x += y;
        }
        let cz = zp.coeff.apply(c);
        for (r, br) in one_plus_eps_pow(a, e).into_iter().enumerate() {
            if br.is_zero() {
                continue;
            }
            nser[r].add_term(base.clone(), &cz * &Scalar::constant(br));
        }
    }
    // Contribution of the vanishing factor together with dz/z.
    let lead = if k0 == 1 {
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        one_plus_eps_pow(-1, e)
            .into_iter()
            .map(|r| r * BigRational::from_i64(sign))
            .collect::<Vec<_>>()
    } else {
        one_plus_eps_pow(m as i64 - 1, e)
    };
    let mut acc = eps_mul(&nser, &eps_const(&lead, n), e);
    let mut piece_dens: Vec<(Mono, u32)> = Vec::new();
    for (bm, kb, mb) in &others {
        // T(ε) = Σ_{r≤e} C(mb+r−1, r) B^r δ^r D^{e−r}, δ = (1+ε)^{kb} − 1, D = 1 − B.
        let bpoly = bm.to_laurent();
        let dpoly = &LaurentPoly::one(n) - &bpoly;
        let mut delta = one_plus_eps_pow(*kb, e);
        delta[0] = BigRational::zero();
        let delta = eps_const(&delta, n);
        let mut t = vec![LaurentPoly::zero(n); e + 1];
        let mut bpow = LaurentPoly::one(n);
        let mut dpow_list = vec![LaurentPoly::one(n)];
        for _ in 0..e {
            let next = dpow_list.last().unwrap() * &dpoly;
            dpow_list.push(next);
        }
        let mut delta_pow = eps_const(&[BigRational::one()], n);
        delta_pow.resize(e + 1, LaurentPoly::zero(n));
        for r in 0..=e {
            let coef = Scalar::constant(binomial::<BigRational>(*mb as i64 + r as i64 - 1, r));
            let scal = (&bpow * &dpow_list[e - r]).scale(&coef);
            for (i, dp) in delta_pow.iter().enumerate() {
                if !dp.is_zero() {
                    t[i].add_assign_ref(&(&scal * dp));
                }
            }
            bpow = &bpow * &bpoly;
            delta_pow = eps_mul(&delta_pow, &delta, e);
        }
        acc = eps_mul(&acc, &t, e);
        piece_dens.push((bm.clone(), mb + e as u32));
    }
    let mut piece = Piece {
        pre: Scalar::one(),
        num: acc.swap_remove(e),
        sdens: BTreeMap::new(),
        dens: BTreeMap::new(),
    };
    for (bm, p) in &piece_dens {
        piece.divide_by(bm, *p);
    }
    piece
}

/// Sums pieces over the least common multiple of their denominators;
/// returns the numerator, the scalar part of the denominator, and the
/// binomial part.
fn combine(n: usize, pieces: Vec<Piece>) -> (LaurentPoly, Scalar, BTreeMap<BinomialFactor, u32>) {
    let mut lcm: BTreeMap<BinomialFactor, u32> = BTreeMap::new();
    let mut slcm: BTreeMap<SMono, u32> = BTreeMap::new();
    for p in &pieces {
        for (b, m) in &p.dens {
            let e = lcm.entry(b.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        for (c, m) in &p.sdens {
            let e = slcm.entry(*c).or_insert(0);
            *e = (*e).max(*m);
        }
    }
    let one_minus = |c: &SMono| Scalar::one() - &c.to_scalar();
    let mut total = LaurentPoly::zero(n);
    for p in pieces {
        if p.num.is_zero() || p.pre.is_zero() {
            continue;
        }
        let mut pre = p.pre;
        for (c, m) in &slcm {
            let have = p.sdens.get(c).copied().unwrap_or(0);
            if have < *m {
                pre = &pre * &Ring::pow(&one_minus(c), m - have);
            }
        }
        let mut num = if pre.is_one() { p.num } else { p.num.scale(&pre) };
        for (b, m) in &lcm {
            let have = p.dens.get(b).copied().unwrap_or(0);
            for _ in have..*m {
                num = &num * &b.to_laurent();
            }
        }
        total.add_assign_ref(&num);
    }
    let mut sden = Scalar::one();
    for (c, m) in &slcm {
        sden = &sden * &Ring::pow(&one_minus(c), *m);
    }
    (total, sden, lcm)
}

#[cfg(test)]
mod tests {
    use super::super::density::{build_density, DensityKind, DensityParams};
    use super::super::factor::SMono;
    use super::*;

    fn s(k: i64) -> Scalar {
        Scalar::s_pow(k)
    }

    #[test]
    fn trivial_integrals() {
        assert_eq!(torus_integral(&FactoredRational::one(2)).unwrap(), Scalar::one());
        let x = FactoredRational::from_laurent(LaurentPoly::var(2, 0));
        assert_eq!(torus_integral(&x).unwrap(), Scalar::zero());
    }

    #[test]
    fn geometric_pair() {
        let mut f = FactoredRational::one(2);
        f.div_binomial(SMono::s_pow(2), &[1, -1], 1).unwrap();
        f.div_binomial(SMono::s_pow(2), &[-1, 1], 1).unwrap();
        let want = Scalar::one() / (Scalar::one() - s(4));
        assert_eq!(torus_integral(&f).unwrap(), want);
        assert_eq!(torus_integral_ordered(&f, &[0, 1]).unwrap(), want);
        assert_eq!(torus_integral_ordered(&f, &[1, 0]).unwrap(), want);
    }

    #[test]
    fn type_a_density_total_mass() {
        let d = build_density(DensityKind::S, 2, DensityParams::type_a(Some(SMono::s_pow(2)))).unwrap();
        assert_eq!(torus_integral(&d).unwrap(), Scalar::one() / (Scalar::one() + s(2)));
    }

    #[test]
    fn double_pole() {
        // CT of 1/(1 − s x^{-1})^2 = 1 (only x^0 term of Σ (r+1) s^r x^{-r}).
        let mut f = FactoredRational::one(1);
        f.div_binomial(SMono::s_pow(1), &[-1], 2).unwrap();
        assert_eq!(torus_integral(&f).unwrap(), Scalar::one());
        // CT of x^{-1}... x * 1/(1 − s x^{-1})^2 → coefficient of x^{-1} term: 2s.
        let g = f.times(&LaurentPoly::var(1, 0));
        assert_eq!(torus_integral(&g).unwrap(), Scalar::from_int(2) * s(1));
    }
}
