//! Elliptic curves over rational function fields `k(t)`.
//!
//! Curves are in general Weierstrass form
//! `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6` with coefficients in
//! `k(t_1, ..., t_r)` (in practice a single parameter `t` or `lambda`).
//! Points are affine pairs of rational functions or the point at infinity.

pub mod divpoly;
pub mod functions;
pub mod isogeny;
pub mod models;
pub mod torsion;

use std::fmt;
use std::sync::Arc;

use cubic_algebra::{parse_poly, Coeff, MultiPoly, NumberField, RationalFunction, Vars};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: RationalFunction, y: RationalFunction },
}

impl CurvePoint {
    pub fn affine(x: RationalFunction, y: RationalFunction) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&RationalFunction> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&RationalFunction> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    fn with_vars(&self, vs: &Vars) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.with_vars(vs), y.with_vars(vs)),
        }
    }

    /// Substitutes `value` for the parameter `name` in both coordinates.
    pub fn subs(&self, name: &str, value: &RationalFunction) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.subs(name, value), y.subs(name, value)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CurvePoint::Infinity => json!("infinity"),
            CurvePoint::Affine { x, y } => json!({
                "x": cubic_algebra::json::rf_to_json(x),
                "y": cubic_algebra::json::rf_to_json(y),
            }),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve {
    vars: Vars,
    a: [RationalFunction; 5],
}

impl WeierstrassCurve {
    /// Curve with invariants `[a1, a2, a3, a4, a6]`; fails if singular.
    pub fn new(a: [RationalFunction; 5]) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        for c in &a {
            for v in c.vars().iter() {
                if !names.contains(v) {
                    names.push(v.clone());
                }
            }
        }
        let vars = Arc::new(names);
        let a = a.map(|c| c.with_vars(&vars));
        let e = WeierstrassCurve { vars, a };
        if e.discriminant().is_zero() {
            return Err(Error::Argument("singular Weierstrass equation".into()));
        }
        Ok(e)
    }

    /// `y^2 = x^3 + A x + B`.
    pub fn short(a4: RationalFunction, a6: RationalFunction) -> Result<Self> {
        let vs = a4.vars().clone();
        let z = RationalFunction::zero(&vs);
        Self::new([z.clone(), z.clone(), z, a4, a6])
    }

    /// Parses polynomial invariants, e.g. `["0", "2", "0", "1 - t", "0"]` over `vars = ["t"]`.
    pub fn parse(vars: &[&str], a: [&str; 5], field: Option<&Arc<NumberField>>) -> Result<Self> {
        let vs = cubic_algebra::vars(vars);
        let mut out = Vec::with_capacity(5);
        for s in a {
            out.push(RationalFunction::from_poly(parse_poly(s, &vs, field)?));
        }
        Self::new(out.try_into().expect("five invariants"))
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ainvs(&self) -> &[RationalFunction; 5] {
        &self.a
    }

    pub fn a1(&self) -> &RationalFunction {
        &self.a[0]
    }
    pub fn a2(&self) -> &RationalFunction {
        &self.a[1]
    }
    pub fn a3(&self) -> &RationalFunction {
        &self.a[2]
    }
    pub fn a4(&self) -> &RationalFunction {
        &self.a[3]
    }
    pub fn a6(&self) -> &RationalFunction {
        &self.a[4]
    }

    fn c(&self, n: i64) -> RationalFunction {
        RationalFunction::int(&self.vars, n)
    }

    pub fn is_short(&self) -> bool {
        self.a1().is_zero() && self.a2().is_zero() && self.a3().is_zero()
    }

    pub fn b2(&self) -> RationalFunction {
        &(self.a1() * self.a1()) + &(&self.c(4) * self.a2())
    }

    pub fn b4(&self) -> RationalFunction {
        &(&self.c(2) * self.a4()) + &(self.a1() * self.a3())
    }

    pub fn b6(&self) -> RationalFunction {
        &(self.a3() * self.a3()) + &(&self.c(4) * self.a6())
    }

    pub fn b8(&self) -> RationalFunction {
        let (a1, a2, a3, a4, a6) = (self.a1(), self.a2(), self.a3(), self.a4(), self.a6());
        let t1 = &(a1 * a1) * a6;
        let t2 = &(&self.c(4) * a2) * a6;
        let t3 = &(a1 * a3) * a4;
        let t4 = &(a3 * a3) * a2;
        let t5 = a4 * a4;
        &(&(&(&t1 + &t2) - &t3) + &t4) - &t5
    }

    pub fn c4(&self) -> RationalFunction {
        let b2 = self.b2();
        &(&b2 * &b2) - &(&self.c(24) * &self.b4())
    }

    pub fn c6(&self) -> RationalFunction {
        let b2 = self.b2();
        let t1 = -&(&(&b2 * &b2) * &b2);
        let t2 = &(&self.c(36) * &b2) * &self.b4();
        let t3 = &self.c(216) * &self.b6();
        &(&t1 + &t2) - &t3
    }

    pub fn discriminant(&self) -> RationalFunction {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        let t1 = -&(&(&b2 * &b2) * &b8);
        let t2 = &self.c(8) * &(&(&b4 * &b4) * &b4);
        let t3 = &self.c(27) * &(&b6 * &b6);
        let t4 = &(&(&self.c(9) * &b2) * &b4) * &b6;
        &(&(&t1 - &t2) - &t3) + &t4
    }

    pub fn j_invariant(&self) -> RationalFunction {
        let c4 = self.c4();
        (&(&c4 * &c4) * &c4).try_div(&self.discriminant()).expect("nonsingular")
    }

    /// Left side minus right side of the equation at `(x, y)`.
    pub fn residual(&self, x: &RationalFunction, y: &RationalFunction) -> RationalFunction {
        let (a1, a2, a3, a4, a6) = (self.a1(), self.a2(), self.a3(), self.a4(), self.a6());
        let lhs = &(&(y * y) + &(&(a1 * x) * y)) + &(a3 * y);
        let x2 = x * x;
        let rhs = &(&(&(&x2 * x) + &(a2 * &x2)) + &(a4 * x)) + a6;
        &lhs - &rhs
    }

    /// The defining polynomial in `x, y` and the parameters, with denominators cleared.
    pub fn equation(&self, x: &str, y: &str) -> MultiPoly {
        let mut names = vec![x.to_string(), y.to_string()];
        names.extend(self.vars.iter().cloned());
        let vs = Arc::new(names);
        let xr = RationalFunction::var(&vs, x);
        let yr = RationalFunction::var(&vs, y);
        let curve = WeierstrassCurve { vars: vs.clone(), a: self.a.clone().map(|c| c.with_vars(&vs)) };
        curve.residual(&xr, &yr).num().clone()
    }

    pub fn on_curve(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.residual(x, y).is_zero(),
        }
    }

    /// A point of the curve; fails with a witness error when `(x, y)` is off the curve.
    pub fn point(&self, x: RationalFunction, y: RationalFunction) -> Result<CurvePoint> {
        let p = CurvePoint::affine(x, y).with_vars(&self.vars);
        if !self.on_curve(&p) {
            return Err(Error::Witness(format!("point {p} is not on the curve")));
        }
        Ok(p)
    }

    fn own(&self, p: &CurvePoint) -> CurvePoint {
        p.with_vars(&self.vars)
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match self.own(p) {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let ny = &(&(-&y) - &(self.a1() * &x)) - self.a3();
                CurvePoint::affine(x, ny)
            }
        }
    }

    /// Chord-and-tangent addition; both points must lie on the curve.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        for r in [p, q] {
            if !self.on_curve(&self.own(r)) {
                return Err(Error::Witness(format!("point {r} is not on the curve")));
            }
        }
        Ok(self.add_unchecked(&self.own(p), &self.own(q)))
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (a1, a2, a3, a4) = (self.a1(), self.a2(), self.a3(), self.a4());
        let m = if x1 == x2 {
            let s = &(&(y1 + y2) + &(a1 * x2)) + a3;
            if s.is_zero() {
                return CurvePoint::Infinity;
            }
            let num = &(&(&(&self.c(3) * &(x1 * x1)) + &(&(&self.c(2) * a2) * x1)) + a4) - &(a1 * y1);
            let den = &(&(&self.c(2) * y1) + &(a1 * x1)) + a3;
            &num / &den
        } else {
            &(y2 - y1) / &(x2 - x1)
        };
        let x3 = &(&(&(&(&m * &m) + &(a1 * &m)) - a2) - x1) - x2;
        let nu = y1 - &(&m * x1);
        let y3 = &(&(-&(&(&m + a1) * &x3)) - &nu) - a3;
        CurvePoint::affine(x3, y3)
    }

    pub fn sub(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.add(p, p)
    }

    /// `m * p` by double-and-add.
    pub fn scalar_mul(&self, m: i64, p: &CurvePoint) -> Result<CurvePoint> {
        let p = self.own(p);
        if !self.on_curve(&p) {
            return Err(Error::Witness(format!("point {p} is not on the curve")));
        }
        let base = if m < 0 { self.neg(&p) } else { p };
        let mut k = m.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add_unchecked(&pow, &pow);
            }
        }
        Ok(acc)
    }

    /// `sum_i m_i P_i`.
    pub fn combination(&self, terms: &[(i64, &CurvePoint)]) -> Result<CurvePoint> {
        let mut acc = CurvePoint::Infinity;
        for (m, p) in terms {
            let q = self.scalar_mul(*m, p)?;
            acc = self.add_unchecked(&acc, &q);
        }
        Ok(acc)
    }

    /// Smallest `n <= bound` with `n p = O`.
    pub fn order_up_to(&self, p: &CurvePoint, bound: u32) -> Result<Option<u32>> {
        let p = self.own(p);
        if !self.on_curve(&p) {
            return Err(Error::Witness(format!("point {p} is not on the curve")));
        }
        let mut q = p.clone();
        for n in 1..=bound {
            if q.is_infinity() {
                return Ok(Some(n));
            }
            q = self.add_unchecked(&q, &p);
        }
        Ok(None)
    }

    /// Base change through the substitution `name -> value`; `value` may
    /// introduce new parameters (e.g. `lambda -> t^12`). Variables that no
    /// longer occur are dropped.
    pub fn base_change(&self, name: &str, value: &RationalFunction) -> Result<Self> {
        let a = self.a.clone().map(|c| c.subs(name, value));
        let mut names: Vec<String> = Vec::new();
        for c in &a {
            for v in c.vars().iter() {
                if v != name && !names.contains(v) {
                    names.push(v.clone());
                }
            }
        }
        let vs = Arc::new(names);
        let a = a.map(|c| drop_var(&c, &vs));
        Self::new(a)
    }

    /// Applies a model change; returns the new curve.
    pub fn change_model(&self, mc: &ModelChange) -> Result<Self> {
        let (u, r, s, t) = mc.std_params(&self.vars);
        let (a1, a2, a3, a4, a6) = (self.a1(), self.a2(), self.a3(), self.a4(), self.a6());
        let c = |n: i64| self.c(n);
        let a1n = &(a1 + &(&c(2) * &s)) / &u;
        let a2n = &(&(&(a2 - &(&s * a1)) + &(&c(3) * &r)) - &(&s * &s)) / &u.pow(2);
        let a3n = &(&(a3 + &(&r * a1)) + &(&c(2) * &t)) / &u.pow(3);
        let a4n = &(&(&(&(&(a4 - &(&s * a3)) + &(&(&c(2) * &r) * a2)) - &(&(&t + &(&r * &s)) * a1))
            + &(&c(3) * &(&r * &r)))
            - &(&(&c(2) * &s) * &t))
            / &u.pow(4);
        let a6n = &(&(&(&(&(&(a6 + &(&r * a4)) + &(&(&r * &r) * a2)) + &r.pow(3)) - &(&t * a3)) - &(&t * &t))
            - &(&(&r * &t) * a1))
            / &u.pow(6);
        Self::new([a1n, a2n, a3n, a4n, a6n])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.vars.as_ref(),
            "ainvs": self.a.iter().map(cubic_algebra::json::rf_to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a[0], self.a[1], self.a[2], self.a[3], self.a[4]
        )
    }
}

fn drop_var(c: &RationalFunction, vs: &Vars) -> RationalFunction {
    // every remaining variable of `c` is in `vs`; rebuild over exactly `vs`
    let keep = |p: &MultiPoly| -> MultiPoly {
        let mut out = MultiPoly::zero(vs);
        for (m, coeff) in p.terms() {
            let mut e = vec![0u32; vs.len()];
            for (i, name) in p.vars().iter().enumerate() {
                if m.0[i] > 0 {
                    let j = vs.iter().position(|v| v == name).expect("variable kept");
                    e[j] = m.0[i];
                }
            }
            out.add_term(cubic_algebra::Mono(e), coeff.clone());
        }
        out
    };
    RationalFunction::new(keep(c.num()), keep(c.den())).expect("nonzero denominator")
}

/// Change of coordinates `X = alpha^2 x + r`, `Y = alpha^3 y + s alpha^2 x + t`
/// from old coordinates `(x, y)` to new ones `(X, Y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelChange {
    pub alpha: Coeff,
    pub r: Coeff,
    pub s: Coeff,
    pub t: Coeff,
}

impl ModelChange {
    /// `X = alpha^2 x + r`, `Y = alpha^3 y`; fails for `alpha = 0`.
    pub fn scaling(alpha: Coeff, r: Coeff) -> Result<Self> {
        Self::new(alpha, r, Coeff::zero(), Coeff::zero())
    }

    pub fn new(alpha: Coeff, r: Coeff, s: Coeff, t: Coeff) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::Argument("model change with alpha = 0".into()));
        }
        Ok(ModelChange { alpha, r, s, t })
    }

    /// Parameters `(u, r', s', t')` of the textbook form `x = u^2 X + r', y = u^3 Y + s' u^2 X + t'`.
    fn std_params(&self, vs: &Vars) -> (RationalFunction, RationalFunction, RationalFunction, RationalFunction) {
        let ai = self.alpha.inv().expect("alpha nonzero");
        let ai2 = &ai * &ai;
        let ai3 = &ai2 * &ai;
        let u = ai.clone();
        let r = -&(&self.r * &ai2);
        let s = -&(&self.s * &ai);
        let t = &(&(&self.s * &self.r) - &self.t) * &ai3;
        let k = |c: Coeff| RationalFunction::constant(vs, c);
        (k(u), k(r), k(s), k(t))
    }

    /// Image of a point of the old model.
    pub fn map_point(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let vs = x.vars();
                let k = |c: &Coeff| RationalFunction::constant(vs, c.clone());
                let a2 = &self.alpha * &self.alpha;
                let a3 = &a2 * &self.alpha;
                let xn = &(&k(&a2) * x) + &k(&self.r);
                let yn = &(&(&k(&a3) * y) + &(&k(&(&self.s * &a2)) * x)) + &k(&self.t);
                CurvePoint::affine(xn, yn)
            }
        }
    }

    /// Preimage of a point of the new model.
    pub fn unmap_point(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let vs = x.vars();
                let k = |c: &Coeff| RationalFunction::constant(vs, c.clone());
                let a2 = &self.alpha * &self.alpha;
                let a3 = &a2 * &self.alpha;
                let xo = &(x - &k(&self.r)) / &k(&a2);
                let yo = &(&(y - &(&k(&(&self.s * &a2)) * &xo)) - &k(&self.t)) / &k(&a3);
                CurvePoint::affine(xo, yo)
            }
        }
    }
}

#[cfg(test)]
mod tests;
