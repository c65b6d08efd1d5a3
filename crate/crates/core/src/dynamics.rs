//! The cubic family `f(z) = z^3 + a z + b`: iterates, dynatomic and multiplier
//! polynomials, cycle multipliers, section verification and Jacobian checks.

use std::sync::Arc;

use cubic_algebra::ratfunc::eval_rf;
use cubic_algebra::{Coeff, MultiPoly, RationalFunction, Vars};

use crate::error::{Error, Result};
use crate::sections::SectionTriple;

/// Variable list `(a, b, z)` used for all generic cubic polynomials.
pub fn cubic_vars() -> Vars {
    cubic_algebra::vars(&["a", "b", "z"])
}

/// `z^3 + a z + b` over the given variable list (which must contain `a`, `b`, `z`).
pub fn cubic_poly(vs: &Vars) -> MultiPoly {
    let z = MultiPoly::var(vs, "z");
    &(&z.pow(3) + &(&MultiPoly::var(vs, "a") * &z)) + &MultiPoly::var(vs, "b")
}

/// `[f^0(z), f^1(z), ..., f^n(z)]` in `Q[a, b, z]`.
pub fn iterates(n: u32) -> Vec<MultiPoly> {
    let vs = cubic_vars();
    let a = MultiPoly::var(&vs, "a");
    let b = MultiPoly::var(&vs, "b");
    let mut out = vec![MultiPoly::var(&vs, "z")];
    for _ in 0..n {
        let w = out.last().unwrap();
        let next = &(&(&w.pow(2) * w) + &(&a * w)) + &b;
        out.push(next);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The Möbius function.
pub fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `sum_{d | n} mu(n/d) 3^d`, the degree of the `n`-th dynatomic polynomial in `z`.
pub fn dynatomic_degree(n: u32) -> i64 {
    divisors(n)
        .into_iter()
        .map(|d| mobius(n / d) as i64 * 3i64.pow(d))
        .sum()
}

/// `Phi_N(a, b, z) = prod_{d | N} (f^d(z) - z)^{mu(N/d)}`, computed with one exact division.
pub fn dynatomic(n: u32) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::Argument("period must be positive".into()));
    }
    let its = iterates(n);
    let z = &its[0];
    let mut num = MultiPoly::one(z.vars());
    let mut den = MultiPoly::one(z.vars());
    for d in divisors(n) {
        let factor = &its[d as usize] - z;
        match mobius(n / d) {
            1 => num = &num * &factor,
            -1 => den = &den * &factor,
            _ => {}
        }
    }
    Ok(num.exact_div(&den)?)
}

/// `d(f^N)/dz` expanded in `Q[a, b, z]`.
pub fn multiplier_poly(n: u32) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::Argument("period must be positive".into()));
    }
    Ok(iterates(n)[n as usize].diff("z"))
}

/// The chain-rule product `prod_{i < N} (3 f^i(z)^2 + a)`.
pub fn multiplier_product(n: u32) -> MultiPoly {
    let its = iterates(n);
    let vs = cubic_vars();
    let a = MultiPoly::var(&vs, "a");
    let mut acc = MultiPoly::one(&vs);
    for w in &its[..n as usize] {
        acc = &acc * &(&w.pow(2).scale(&Coeff::int(3)) + &a);
    }
    acc
}

/// `R(a, b, lambda)`: the curve of cubics with a period-two cycle of multiplier
/// `lambda`, in the variables `(a, b, lambda)`. The resultant of `Phi_2` and the
/// period-two multiplier condition in `z` is a constant times `R^2`.
pub fn period_two_curve() -> MultiPoly {
    let vs = cubic_algebra::vars(&["a", "b", "lambda"]);
    cubic_algebra::parse_poly(
        "729+972*a-432*a^3-108*a^4+48*a^5+16*a^6+1458*b^2+1215*b^2*a+324*b^2*a^2+216*b^2*a^3+729*b^4-243*lambda-216*lambda*a+48*lambda*a^3+12*lambda*a^4-162*lambda*b^2+81*a*lambda*b^2+27*lambda^2+12*a*lambda^2-lambda^3",
        &vs,
        None,
    )
    .expect("valid polynomial")
}

/// A cubic `z^3 + a z + b` with coefficients in a rational function field.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicMap {
    pub a: RationalFunction,
    pub b: RationalFunction,
}

impl CubicMap {
    pub fn new(a: RationalFunction, b: RationalFunction) -> Self {
        CubicMap { a, b }
    }

    pub fn apply(&self, z: &RationalFunction) -> RationalFunction {
        &(&z.pow(3) + &(&self.a * z)) + &self.b
    }

    pub fn derivative_at(&self, z: &RationalFunction) -> RationalFunction {
        &z.pow(2).scale(&Coeff::int(3)) + &self.a
    }
}

/// An ordered cycle `z_1, ..., z_N` with `f(z_i) = z_{i+1}` (indices mod `N`).
#[derive(Clone, Debug, PartialEq)]
pub struct CycleWitness {
    pub points: Vec<RationalFunction>,
}

impl CycleWitness {
    pub fn new(points: Vec<RationalFunction>) -> Self {
        CycleWitness { points }
    }

    /// The cycle generated by `z1` under `f`, of length `n`.
    pub fn from_orbit(f: &CubicMap, z1: &RationalFunction, n: usize) -> Self {
        let mut pts = vec![z1.clone()];
        for _ in 1..n {
            pts.push(f.apply(pts.last().unwrap()));
        }
        CycleWitness { points: pts }
    }

    pub fn rotated(&self, k: usize) -> Self {
        let n = self.points.len();
        CycleWitness { points: (0..n).map(|i| self.points[(i + k) % n].clone()).collect() }
    }

    pub fn validate(&self, f: &CubicMap) -> Result<()> {
        let n = self.points.len();
        if n == 0 {
            return Err(Error::Witness("empty cycle".into()));
        }
        for i in 0..n {
            if f.apply(&self.points[i]) != self.points[(i + 1) % n] {
                return Err(Error::Witness(format!("f(z_{}) != z_{}", i + 1, (i + 1) % n + 1)));
            }
            for j in 0..i {
                if self.points[i] == self.points[j] {
                    return Err(Error::Witness(format!("z_{} = z_{}: not an exact cycle", j + 1, i + 1)));
                }
            }
        }
        Ok(())
    }
}

/// `prod f'(z_i)` over a validated cycle.
pub fn cycle_multiplier(f: &CubicMap, w: &CycleWitness) -> Result<RationalFunction> {
    w.validate(f)?;
    let vs = f.a.vars().clone();
    let mut acc = RationalFunction::one(&vs);
    for z in &w.points {
        acc = &acc * &f.derivative_at(z);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionReport {
    pub phi_zero: bool,
    pub multiplier_ok: bool,
}

impl SectionReport {
    pub fn ok(&self) -> bool {
        self.phi_zero && self.multiplier_ok
    }
}

/// Checks `Phi_N(a, b, z_1) = 0` and that the multiplier of the period-`N` orbit of
/// `z_1` equals `w^m`, both as identities of rational functions in `w`.
pub fn verify_section(t: &SectionTriple, n: u32) -> Result<SectionReport> {
    let phi = dynatomic(n)?;
    let value = eval_rf(&phi, &[("a", &t.a), ("b", &t.b), ("z", &t.z1)]);
    let f = CubicMap::new(t.a.clone(), t.b.clone());
    let vs = t.z1.vars().clone();
    let mut mult = RationalFunction::one(&vs);
    let mut z = t.z1.clone();
    for _ in 0..n {
        mult = &mult * &f.derivative_at(&z);
        z = f.apply(&z);
    }
    let target = RationalFunction::var(t.w_vars(), &t.w).pow(t.m as i64);
    Ok(SectionReport { phi_zero: value.is_zero(), multiplier_ok: mult == target })
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobianReport {
    pub rank: usize,
    pub rank_full: bool,
    pub determinant_witness: Option<RationalFunction>,
}

/// Variables treated as coordinates of the point for a Jacobian computation.
pub struct JacobianInput<'a> {
    pub system: &'a [MultiPoly],
    /// Coordinates to differentiate by, in column order.
    pub coords: &'a [&'a str],
    /// Values of the coordinates (and of any parameter that should be specialized).
    pub point: &'a [(&'a str, RationalFunction)],
    /// For systems of the cyclic shape `P(z_i) - z_{i+1}, ..., P(z_n) - mu z_1, Lambda - nu t`:
    /// the names `z_1, ..., z_n`.
    pub cyclic_z: Option<&'a [&'a str]>,
}

/// Evaluates the Jacobian of the system at the point and computes its rank.
pub fn jacobian_check(input: &JacobianInput) -> Result<JacobianReport> {
    let vals: Vec<(&str, &RationalFunction)> = input.point.iter().map(|(n, v)| (*n, v)).collect();
    for (i, eq) in input.system.iter().enumerate() {
        let v = eval_rf(eq, &vals);
        if !v.is_zero() {
            return Err(Error::Witness(format!("equation {} does not vanish at the point: {}", i + 1, v)));
        }
    }
    let rows: Vec<Vec<RationalFunction>> = input
        .system
        .iter()
        .map(|eq| {
            input
                .coords
                .iter()
                .map(|c| {
                    if eq.var_index(c).is_some() {
                        eval_rf(&eq.diff(c), &vals)
                    } else {
                        RationalFunction::zero(eq.vars())
                    }
                })
                .collect()
        })
        .collect();
    let rank = rf_rank(rows.clone());
    let determinant_witness = match input.cyclic_z {
        None => None,
        Some(zs) => {
            let cols: Vec<usize> = zs
                .iter()
                .map(|z| input.coords.iter().position(|c| c == z))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Argument("cyclic variable missing from coordinates".into()))?;
            let sub: Vec<Vec<RationalFunction>> = rows[..zs.len()]
                .iter()
                .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
                .collect();
            Some(rf_det(sub))
        }
    };
    Ok(JacobianReport { rank, rank_full: rank == input.system.len(), determinant_witness })
}

fn rf_rank(mut m: Vec<Vec<RationalFunction>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().unwrap();
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..cols {
                let v = &m[r][k] - &(&f * &m[rank][k]);
                m[r][k] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rf_det(mut m: Vec<Vec<RationalFunction>>) -> RationalFunction {
    let n = m.len();
    let vs = m[0][0].vars().clone();
    let mut det = RationalFunction::one(&vs);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return RationalFunction::zero(&vs);
        };
        if p != c {
            m.swap(c, p);
            det = -&det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv().unwrap();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..n {
                let v = &m[r][k] - &(&f * &m[c][k]);
                m[r][k] = v;
            }
        }
    }
    det
}

/// The cyclic system `P(z_i) - z_{i+1}` (last: `P(z_n) - mu z_1`) and
/// `prod P'(z_i) - nu t` for `P = z^3 + a z + b`, over variables `a, b, z1..zn, t`.
pub fn cyclic_system(n: usize, mu: i64, nu: i64) -> (Vec<MultiPoly>, Vars) {
    let mut names = vec!["a".to_string(), "b".to_string()];
    for i in 1..=n {
        names.push(format!("z{i}"));
    }
    names.push("t".to_string());
    let vs: Vars = Arc::new(names);
    let a = MultiPoly::var(&vs, "a");
    let b = MultiPoly::var(&vs, "b");
    let z: Vec<MultiPoly> = (1..=n).map(|i| MultiPoly::var(&vs, &format!("z{i}"))).collect();
    let p = |w: &MultiPoly| &(&w.pow(3) + &(&a * w)) + &b;
    let dp = |w: &MultiPoly| &w.pow(2).scale(&Coeff::int(3)) + &a;
    let mut eqs = Vec::new();
    for i in 0..n {
        let next = if i + 1 < n { z[i + 1].clone() } else { z[0].scale(&Coeff::int(mu)) };
        eqs.push(&p(&z[i]) - &next);
    }
    let mut lam = MultiPoly::one(&vs);
    for w in &z {
        lam = &lam * &dp(w);
    }
    eqs.push(&lam - &MultiPoly::var(&vs, "t").scale(&Coeff::int(nu)));
    (eqs, vs)
}

/// The projective model `z_i^3 - 3u^2 z_i + 2v^3 - z_{i+1} s^2` (cyclically) and
/// `3^N prod (z_i^2 - u^2) - lambda s^(2N)` in variables `u, v, s, z1..zN, lambda`.
pub fn normalized_model_system(n: usize) -> (Vec<MultiPoly>, Vars) {
    let mut names = vec!["u".to_string(), "v".to_string(), "s".to_string()];
    for i in 1..=n {
        names.push(format!("z{i}"));
    }
    names.push("lambda".to_string());
    let vs: Vars = Arc::new(names);
    let u = MultiPoly::var(&vs, "u");
    let v = MultiPoly::var(&vs, "v");
    let s = MultiPoly::var(&vs, "s");
    let z: Vec<MultiPoly> = (1..=n).map(|i| MultiPoly::var(&vs, &format!("z{i}"))).collect();
    let u2 = u.pow(2);
    let mut eqs = Vec::new();
    for i in 0..n {
        let next = &z[(i + 1) % n];
        let e = &(&(&z[i].pow(3) - &(&u2 * &z[i]).scale(&Coeff::int(3))) + &v.pow(3).scale(&Coeff::int(2)))
            - &(next * &s.pow(2));
        eqs.push(e);
    }
    let mut prod = MultiPoly::constant(&vs, Coeff::int(3i64.pow(n as u32)));
    for w in &z {
        prod = &prod * &(&w.pow(2) - &u2);
    }
    eqs.push(&prod - &(&MultiPoly::var(&vs, "lambda") * &s.pow(2 * n as u32)));
    (eqs, vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubic_algebra::parse_poly;

    #[test]
    fn mobius_values() {
        let v: Vec<i32> = (1..=10).map(mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn fixed_point_polynomial() {
        let phi1 = dynatomic(1).unwrap();
        assert_eq!(phi1, parse_poly("z^3 + (a-1)*z + b", &cubic_vars(), None).unwrap());
        assert_eq!(dynatomic(3).unwrap().degree_in("z"), Some(24));
        assert_eq!(dynatomic_degree(3), 24);
    }

    #[test]
    fn multiplier_of_first_iterate() {
        assert_eq!(
            multiplier_poly(1).unwrap(),
            parse_poly("3*z^2 + a", &cubic_vars(), None).unwrap()
        );
        assert_eq!(multiplier_poly(3).unwrap(), multiplier_product(3));
    }

    #[test]
    fn cyclic_determinant_vanishes_on_lambda_equal_mu() {
        let (eqs, vs) = cyclic_system(1, 1, 1);
        let c = |n: i64| RationalFunction::int(&vs, n);
        let point = [("a", c(1)), ("b", c(0)), ("z1", c(0)), ("t", c(1))];
        let rep = jacobian_check(&JacobianInput {
            system: &eqs,
            coords: &["a", "b", "z1"],
            point: &point,
            cyclic_z: Some(&["z1"]),
        })
        .unwrap();
        assert!(rep.determinant_witness.unwrap().is_zero());
    }

    #[test]
    fn point_off_variety_rejected() {
        let (eqs, vs) = cyclic_system(1, 1, 1);
        let c = |n: i64| RationalFunction::int(&vs, n);
        let point = [("a", c(1)), ("b", c(1)), ("z1", c(0)), ("t", c(1))];
        let res = jacobian_check(&JacobianInput {
            system: &eqs,
            coords: &["a", "b", "z1"],
            point: &point,
            cyclic_z: None,
        });
        assert!(matches!(res, Err(Error::Witness(_))));
    }

    #[test]
    fn period_two_expansions_and_resultant() {
        let vs = cubic_vars();
        let phi2 = dynatomic(2).unwrap();
        let printed = "a^2*z^2+2*z^4*a+a*z^2+2*a*z*b+a+z^6+z^4+2*z^3*b+z^2+b*z+b^2+1";
        assert_eq!(phi2, parse_poly(printed, &vs, None).unwrap());
        let lvs = cubic_algebra::vars(&["a", "b", "z", "lambda"]);
        let m2 = &multiplier_poly(2).unwrap() - &MultiPoly::var(&lvs, "lambda");
        let printed_m = "9*z^8+21*z^6*a+15*z^4*a^2+18*z^5*b+24*z^3*b*a+3*a^3*z^2+6*a^2*z*b+9*b^2*z^2+3*b^2*a+3*a*z^2+a^2-lambda";
        assert_eq!(m2, parse_poly(printed_m, &lvs, None).unwrap());
        let res = cubic_algebra::resultant::resultant(&phi2, &m2, "z").unwrap();
        let r = period_two_curve().with_vars(&lvs);
        let r2 = r.pow(2);
        let ratio = res.leading_coeff().div(&r2.leading_coeff()).unwrap();
        assert_eq!(res, r2.scale(&ratio));
    }

    fn check_divisor_product(n: u32) {
        let its = iterates(n);
        let lhs = divisors(n)
            .into_iter()
            .fold(MultiPoly::one(&cubic_vars()), |acc, d| &acc * &dynatomic(d).unwrap());
        assert_eq!(lhs, &its[n as usize] - &its[0], "N = {n}");
        assert_eq!(dynatomic(n).unwrap().degree_in("z"), Some(dynatomic_degree(n) as u32));
    }

    #[test]
    fn divisor_product_small_periods() {
        for n in 1..=4 {
            check_divisor_product(n);
        }
    }

    // f^5 has about 1.5e5 terms; minutes in release mode
    #[test]
    #[ignore]
    fn divisor_product_periods_five_and_six() {
        check_divisor_product(5);
        check_divisor_product(6);
    }

    #[test]
    fn multiplier_chain_rule_up_to_four() {
        for n in 1..=4 {
            assert_eq!(multiplier_poly(n).unwrap(), multiplier_product(n), "N = {n}");
        }
    }
}
