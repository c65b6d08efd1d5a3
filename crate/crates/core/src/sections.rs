//! Explicit multiplier sections: the period-one family, the period-two sections
//! coming from points of `E_0` and `E_1`, and the Mordell–Weil group of `E_0`
//! over `C(lambda^(1/12))` as an abstract group.
//!
//! Section constants live in `Q(zeta_24)` (`zeta^8 - zeta^4 + 1 = 0`), which
//! contains `Q(zeta_12)` via `zeta_12 = zeta^2`, so `i = zeta^18` and
//! `sqrt(-2) = zeta^3 + zeta^9`.

use std::fmt;
use std::sync::Arc;

use cubic_algebra::json::{rf_from_json, rf_to_json};
use cubic_algebra::ratfunc::eval_rf;
use cubic_algebra::{Coeff, NfElem, NumberField, RationalFunction, Vars};
use num_integer::Integer;
use serde_json::{json, Value};

use crate::curves::functions::CurveFunction;
use crate::curves::models::{e0, e1, generators_k12, k12, over_root, short_model_change, t_power, LAMBDA};
use crate::curves::CurvePoint;
use crate::dynamics::{dynatomic, period_two_curve, verify_section, SectionReport};
use crate::error::{Error, Result};

/// `(a(w), b(w), z_1(w))` with multiplier `lambda = w^m` on a period-`n` cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionTriple {
    pub a: RationalFunction,
    pub b: RationalFunction,
    pub z1: RationalFunction,
    /// Name of the uniformizer.
    pub w: String,
    pub m: u32,
    pub n: u32,
}

impl SectionTriple {
    /// Puts the three functions over a common variable list starting with `w`.
    pub fn new(a: RationalFunction, b: RationalFunction, z1: RationalFunction, w: &str, m: u32, n: u32) -> Self {
        let mut names = vec![w.to_string()];
        for f in [&a, &b, &z1] {
            for v in f.vars().iter() {
                if !names.contains(v) {
                    names.push(v.clone());
                }
            }
        }
        let vs: Vars = Arc::new(names);
        SectionTriple { a: a.with_vars(&vs), b: b.with_vars(&vs), z1: z1.with_vars(&vs), w: w.to_string(), m, n }
    }

    pub fn w_vars(&self) -> &Vars {
        self.z1.vars()
    }

    pub fn verify(&self) -> Result<SectionReport> {
        verify_section(self, self.n)
    }

    /// The section pulled back along `w -> w^d`, an `(m d)`-th root section.
    pub fn precompose(&self, d: u32) -> SectionTriple {
        let wd = RationalFunction::var(self.w_vars(), &self.w).pow(d as i64);
        let f = |g: &RationalFunction| g.subs(&self.w, &wd);
        SectionTriple::new(f(&self.a), f(&self.b), f(&self.z1), &self.w, self.m * d, self.n)
    }

    /// `{"m", "N", "w", "a", "b", "z1"}` with the functions in the algebra JSON schema.
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "N": self.n,
            "w": self.w,
            "a": rf_to_json(&self.a),
            "b": rf_to_json(&self.b),
            "z1": rf_to_json(&self.z1),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let int = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Argument(format!("triple needs a positive integer {k:?}")))
        };
        let f = |k: &str| -> Result<RationalFunction> {
            Ok(rf_from_json(v.get(k).ok_or_else(|| Error::Argument(format!("triple needs {k:?}")))?)?)
        };
        let w = v.get("w").and_then(Value::as_str).unwrap_or("w");
        let (a, b, z1) = (f("a")?, f("b")?, f("z1")?);
        Ok(SectionTriple::new(a, b, z1, w, int("m")? as u32, int("N")? as u32))
    }
}

/// `Q(zeta_24)`.
pub fn k24() -> Arc<NumberField> {
    NumberField::cyclotomic24()
}

fn k24_elem(powers: &[(u64, i64)]) -> Coeff {
    let k = k24();
    powers.iter().fold(Coeff::zero(), |acc, &(e, c)| &acc + &Coeff::gen_pow(&k, e).scale_rat(&cubic_algebra::rat(c)))
}

/// `sqrt(-2) = zeta^3 + zeta^9` in `Q(zeta_24)`.
pub fn sqrt_minus_two() -> Coeff {
    k24_elem(&[(3, 1), (9, 1)])
}

/// `i = zeta_12^9 = zeta_24^18`.
pub fn i_24() -> Coeff {
    k24_elem(&[(18, 1)])
}

/// Moves constants of `Q(zeta_12)` into `Q(zeta_24)`; rational constants are unchanged.
pub fn lift_to_k24(f: &RationalFunction) -> RationalFunction {
    let image = NfElem::generator(&k24()).pow(2);
    let k = k12();
    f.map_coeffs(|c| match c.field() {
        Some(fld) if **fld == *k => c.map_generator(&image),
        _ => c.clone(),
    })
}

fn lift_point(p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => CurvePoint::affine(lift_to_k24(x), lift_to_k24(y)),
    }
}

/// The fixed-point family `(-27 s^2 + lambda, -54 s^3 - 3 s + 3 lambda s, -3 s)`,
/// with `s` a rational function (possibly involving further variables).
pub fn n1_section(s: &RationalFunction) -> SectionTriple {
    let mut names = vec![LAMBDA.to_string()];
    names.extend(s.vars().iter().filter(|v| v.as_str() != LAMBDA).cloned());
    let vs: Vars = Arc::new(names);
    let s = s.with_vars(&vs);
    let l = RationalFunction::var(&vs, LAMBDA);
    let k = |n: i64| RationalFunction::int(&vs, n);
    let s2 = s.pow(2);
    let a = &(&k(-27) * &s2) + &l;
    let b = &(&(&k(-54) * &(&s2 * &s)) - &(&k(3) * &s)) + &(&(&k(3) * &l) * &s);
    let z = &k(-3) * &s;
    SectionTriple::new(a, b, z, LAMBDA, 1, 1)
}

/// `a = (4u^2 - 4u + 1 - lambda) / (6u)`, `b = sqrt(-2) (8u^2 + 16u + lambda - 1) v / (54 u^2)`.
pub fn ab_formulas(
    u: &RationalFunction,
    v: &RationalFunction,
    lambda: &RationalFunction,
) -> (RationalFunction, RationalFunction) {
    let (u, v, lambda) = (lift_to_k24(u), lift_to_k24(v), lift_to_k24(lambda));
    let vs = u.vars().clone();
    let k = |n: i64| RationalFunction::int(&vs, n);
    let u2 = u.pow(2);
    let a_num = &(&(&(&k(4) * &u2) - &(&k(4) * &u)) + &k(1)) - &lambda;
    let a = &a_num / &(&k(6) * &u);
    let b_num = &(&(&(&(&k(8) * &u2) + &(&k(16) * &u)) + &lambda) - &k(1)) * &v;
    let b = (&b_num / &(&k(54) * &u2)).scale(&sqrt_minus_two());
    (a, b)
}

/// `(a, b)` of the cubic attached to a point of `E_0` (coordinates `(u, v)`),
/// given the value of `lambda` in the point's field.
pub fn point_to_ab(q: &CurvePoint, lambda: &RationalFunction) -> Result<(RationalFunction, RationalFunction)> {
    let (Some(u), Some(v)) = (q.x(), q.y()) else {
        return Err(Error::Pole("the identity does not give a cubic".into()));
    };
    if u.is_zero() {
        return Err(Error::Pole("(0, 0) does not give a cubic".into()));
    }
    let lambda = lambda.with_vars(u.vars());
    if !curve_residual(u, v, &lambda).is_zero() {
        return Err(Error::Witness(format!("{q} is not on E0")));
    }
    Ok(ab_formulas(u, v, &lambda))
}

/// `v^2 - u (u^2 + 2u + 1 - lambda)`.
fn curve_residual(u: &RationalFunction, v: &RationalFunction, lambda: &RationalFunction) -> RationalFunction {
    let vs = u.vars().clone();
    let k = |n: i64| RationalFunction::int(&vs, n);
    let (u, v, lambda) = (lift_to_k24(u), lift_to_k24(&v.with_vars(&vs)), lift_to_k24(&lambda.with_vars(&vs)));
    &v.pow(2) - &(&u * &(&(&(&u.pow(2) + &(&k(2) * &u)) + &k(1)) - &lambda))
}

/// `z = -sqrt(-2) (d^2 - 6d + 8 lambda) / (6e)`. The sign is forced by the
/// sign of `b`: with `+sqrt(-2)` in both, `z` is a period-two point of
/// `z^3 + a z - b` instead.
pub fn z_formula(d: &RationalFunction, e: &RationalFunction, lambda: &RationalFunction) -> RationalFunction {
    let (d, e, lambda) = (lift_to_k24(d), lift_to_k24(e), lift_to_k24(lambda));
    let vs = d.vars().clone();
    let k = |n: i64| RationalFunction::int(&vs, n);
    let num = &(&(&d.pow(2) - &(&k(6) * &d)) + &(&k(8) * &lambda));
    (num / &(&k(-6) * &e)).scale(&sqrt_minus_two())
}

/// The `E_1 -> E_0` isogeny on coordinates: `u = e^2/(4d^2)`, `v = e(d^2 - 4 lambda)/(8 d^2)`.
pub fn isogeny_image(
    d: &RationalFunction,
    e: &RationalFunction,
    lambda: &RationalFunction,
) -> (RationalFunction, RationalFunction) {
    let vs = d.vars().clone();
    let k = |n: i64| RationalFunction::int(&vs, n);
    let d2 = d.pow(2);
    let u = &e.pow(2) / &(&k(4) * &d2);
    let v = &(e * &(&d2 - &(&k(4) * lambda))) / &(&k(8) * &d2);
    (u, v)
}

/// The period-two section attached to a point `(d, e)` of `E_1` over `k(w)`
/// with `lambda = w^m`.
pub fn e1_point_to_triple(q: &CurvePoint, w: &str, m: u32) -> Result<SectionTriple> {
    let (Some(d), Some(e)) = (q.x(), q.y()) else {
        return Err(Error::Pole("the identity of E1 does not give a cycle".into()));
    };
    if e.is_zero() {
        return Err(Error::Pole("points with e = 0 are poles of z".into()));
    }
    let mut names = vec![w.to_string()];
    for v in d.vars().iter().chain(e.vars().iter()) {
        if !names.contains(v) {
            names.push(v.clone());
        }
    }
    let vs: Vars = Arc::new(names);
    let (d, e) = (d.with_vars(&vs), e.with_vars(&vs));
    let lambda = RationalFunction::var(&vs, w).pow(m as i64);
    let four = RationalFunction::int(&vs, 4);
    let on = &e.pow(2) - &(&d * &(&(&d.pow(2) - &(&four * &d)) + &(&four * &lambda)));
    if !lift_to_k24(&on).is_zero() {
        return Err(Error::Witness(format!("{q} is not on E1 with lambda = {w}^{m}")));
    }
    let (u, v) = isogeny_image(&d, &e, &lambda);
    let (a, b) = ab_formulas(&u, &v, &lambda);
    let z = z_formula(&d, &e, &lambda);
    Ok(SectionTriple::new(a, b, z, w, m, 2))
}

/// Symbolic check that `R(a(u, v), b(u, v))` vanishes on `E_0`.
pub fn ab_satisfies_r_on_e0() -> Result<bool> {
    let vs = cubic_algebra::vars(&["x", "y", LAMBDA]);
    let u = RationalFunction::var(&vs, "x");
    let v = RationalFunction::var(&vs, "y");
    let l = RationalFunction::var(&vs, LAMBDA);
    let (a, b) = ab_formulas(&u, &v, &l);
    let r = eval_rf(&period_two_curve(), &[("a", &a), ("b", &b), (LAMBDA, &l)]);
    Ok(CurveFunction::new(&e0(), &r, "x", "y")?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Report {
    pub phi2_vanishes: bool,
    pub multiplier_is_lambda: bool,
}

/// Symbolic check on `E_1` (coordinates `(d, e)`) that `z` is a point of period
/// two of `z^3 + a z + b` with multiplier `lambda`.
pub fn verify_e1_map() -> Result<E1Report> {
    let vs = cubic_algebra::vars(&["x", "y", LAMBDA]);
    let d = RationalFunction::var(&vs, "x");
    let e = RationalFunction::var(&vs, "y");
    let l = RationalFunction::var(&vs, LAMBDA);
    let (u, v) = isogeny_image(&d, &e, &l);
    let (a, b) = ab_formulas(&u, &v, &l);
    let z = z_formula(&d, &e, &l);
    let phi = eval_rf(&dynatomic(2)?, &[("a", &a), ("b", &b), ("z", &z)]);
    let f = crate::dynamics::CubicMap::new(a, b);
    let fz = f.apply(&z);
    let mult = &(&f.derivative_at(&z) * &f.derivative_at(&fz)) - &lift_to_k24(&l);
    Ok(E1Report {
        phi2_vanishes: CurveFunction::new(&e1(), &phi, "x", "y")?.is_zero(),
        multiplier_is_lambda: CurveFunction::new(&e1(), &mult, "x", "y")?.is_zero(),
    })
}

/// The square-root section `f(z) = z^3 + (w^2 - 9)/6 z + sqrt(-2)/54 (w^2 - 9) w`,
/// `z_1 = -sqrt(-2)/6 (w + 3i)`, `lambda = w^2`.
pub fn square_root_example() -> SectionTriple {
    let vs = cubic_algebra::vars(&["w"]);
    let w = RationalFunction::var(&vs, "w");
    let k = |n: i64| RationalFunction::int(&vs, n);
    let w2m9 = &w.pow(2) - &k(9);
    let a = &w2m9 / &k(6);
    let b = (&(&w2m9 * &w) / &k(54)).scale(&sqrt_minus_two());
    let z1 = (&(&w + &RationalFunction::constant(&vs, i_24().scale_rat(&cubic_algebra::rat(3)))) / &k(-6))
        .scale(&sqrt_minus_two());
    SectionTriple::new(a, b, z1, "w", 2, 2)
}

/// Largest `d | m` such that `a, b, z_1` are functions of `w^d`.
pub fn detect_root_order(t: &SectionTriple) -> u32 {
    let wi = t.w_vars().iter().position(|v| *v == t.w).expect("w is the first variable");
    let mut g = t.m;
    for f in [&t.a, &t.b, &t.z1] {
        for p in [f.num(), f.den()] {
            for (mono, _) in p.terms() {
                g = g.gcd(&mono.0[wi]);
            }
        }
    }
    g
}

/// `m1 P + m2 R1 + m3 R2 + e1 T1 + e2 T2`, torsion bits reduced mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MWElement {
    pub coeffs: [i64; 3],
    pub torsion: [u8; 2],
}

impl MWElement {
    pub fn new(coeffs: [i64; 3], torsion: [i64; 2]) -> Self {
        MWElement { coeffs, torsion: torsion.map(|e| e.rem_euclid(2) as u8) }
    }

    pub fn zero() -> Self {
        Self::new([0; 3], [0; 2])
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            [0, 1, 2].map(|i| self.coeffs[i] + o.coeffs[i]),
            [0, 1].map(|i| (self.torsion[i] + o.torsion[i]) as i64),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.map(|c| -c), self.torsion.map(|e| e as i64))
    }

    /// Parses `m1,m2,m3,e1,e2`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Argument(format!("bad coefficient list {s:?}: {e}")))?;
        if parts.len() != 5 {
            return Err(Error::Argument(format!("expected 5 coefficients, got {}", parts.len())));
        }
        Ok(Self::new([parts[0], parts[1], parts[2]], [parts[3], parts[4]]))
    }
}

impl fmt::Display for MWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [m1, m2, m3] = self.coeffs;
        let [e1, e2] = self.torsion;
        write!(f, "{m1} P + {m2} R1 + {m3} R2 + {e1} T1 + {e2} T2")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `v^2 = u(u^2 + 2u + 1 - lambda)`.
    E0Long,
    /// `y^2 = x^3 - 27(1 + 3 lambda) x - 54(1 - 9 lambda)`.
    AppendixShort,
}

/// The point of `E_0(K_12)` (`t^12 = lambda`) named by `el`.
pub fn mw_point(el: &MWElement, model: Model) -> Result<CurvePoint> {
    let g = generators_k12()?;
    let e = over_root(&e0(), 12);
    let [m1, m2, m3] = el.coeffs;
    let [e1, e2] = el.torsion;
    let p = e.combination(&[(m1, &g.p), (m2, &g.r1), (m3, &g.r2), (e1 as i64, &g.t1), (e2 as i64, &g.t2)])?;
    Ok(match model {
        Model::E0Long => p,
        Model::AppendixShort => short_model_change().map_point(&p),
    })
}

/// `(a, b)` for the cubic attached to a Mordell–Weil element (long model, `lambda = t^12`).
pub fn mw_to_ab(el: &MWElement) -> Result<(RationalFunction, RationalFunction)> {
    let p = mw_point(el, Model::E0Long)?;
    point_to_ab(&lift_point(&p), &t_power(12))
}

#[cfg(test)]
mod tests;
