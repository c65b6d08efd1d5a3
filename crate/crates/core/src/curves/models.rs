//! The curves `E_0: v^2 = u(u^2 + 2u + 1 - lambda)` and
//! `E_1: e^2 = d(d^2 - 4d + 4 lambda)`, their short model
//! `y^2 = x^3 - 27(1 + 3 lambda) x - 54(1 - 9 lambda)` (`x = 9u + 6`, `y = 27v`),
//! and the explicit Mordell–Weil generators over `lambda = t^n`.
//!
//! Constants live in `Q(zeta)` with `zeta^4 - zeta^2 + 1 = 0` and `i = zeta^9`.

use std::sync::Arc;

use cubic_algebra::{parse_poly, vars, Coeff, NumberField, RationalFunction};

use super::{CurvePoint, ModelChange, WeierstrassCurve};
use crate::error::{Error, Result};

pub const LAMBDA: &str = "lambda";
pub const T: &str = "t";

/// `Q(zeta_12)`.
pub fn k12() -> Arc<NumberField> {
    NumberField::cyclotomic12()
}

pub fn e0() -> WeierstrassCurve {
    WeierstrassCurve::parse(&[LAMBDA], ["0", "2", "0", "1 - lambda", "0"], None).expect("nonsingular")
}

pub fn e1() -> WeierstrassCurve {
    WeierstrassCurve::parse(&[LAMBDA], ["0", "-4", "0", "4*lambda", "0"], None).expect("nonsingular")
}

/// `x = 9u + 6`, `y = 27v`.
pub fn short_model_change() -> ModelChange {
    ModelChange::scaling(Coeff::int(3), Coeff::int(6)).expect("alpha nonzero")
}

/// `y^2 = x^3 - 27(1 + 3 lambda) x - 54(1 - 9 lambda)`.
pub fn e0_short() -> WeierstrassCurve {
    WeierstrassCurve::parse(&[LAMBDA], ["0", "0", "0", "-27 - 81*lambda", "-54 + 486*lambda"], None)
        .expect("nonsingular")
}

/// `t^n` as a rational function in `t`.
pub fn t_power(n: u32) -> RationalFunction {
    let vs = vars(&[T]);
    RationalFunction::from_poly(parse_poly(&format!("t^{n}"), &vs, None).expect("monomial"))
}

/// Base change of a curve over `k(lambda)` to `k(t)` with `lambda = t^n`.
pub fn over_root(e: &WeierstrassCurve, n: u32) -> WeierstrassCurve {
    e.base_change(LAMBDA, &t_power(n)).expect("base change of a nonsingular curve")
}

fn rf(s: &str) -> RationalFunction {
    let vs = vars(&[T]);
    RationalFunction::from_poly(parse_poly(s, &vs, Some(&k12())).expect("valid expression"))
}

/// Generators of `E_0(K_12)` in the `(u, v)` model, `t^12 = lambda`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub p: CurvePoint,
    pub r1: CurvePoint,
    pub r2: CurvePoint,
    pub t1: CurvePoint,
    pub t2: CurvePoint,
}

impl Generators {
    pub fn all(&self) -> [(&'static str, &CurvePoint); 5] {
        [("P", &self.p), ("R1", &self.r1), ("R2", &self.r2), ("T1", &self.t1), ("T2", &self.t2)]
    }

    pub fn map(&self, f: impl Fn(&CurvePoint) -> CurvePoint) -> Generators {
        Generators { p: f(&self.p), r1: f(&self.r1), r2: f(&self.r2), t1: f(&self.t1), t2: f(&self.t2) }
    }
}

/// `P, R_1, R_2, T_1, T_2` over `t^12 = lambda`, checked to lie on `E_0`.
pub fn generators_k12() -> Result<Generators> {
    let e = over_root(&e0(), 12);
    let pt = |x: &str, y: &str| e.point(rf(x), rf(y));
    Ok(Generators {
        p: pt(
            "-1 + (zeta^9 - 1)*t^3 + zeta^9*t^6",
            "(1 - zeta^9)*(t^3 + zeta^9)*(t^3 + 1)*t^3",
        )?,
        r1: pt("t^4 - 1", "zeta^9*t^4*(t^4 - 1)")?,
        r2: pt("zeta^4*t^4 - 1", "zeta*t^4*(zeta^4*t^4 - 1)")?,
        t1: pt("0", "0")?,
        t2: pt("-1 + t^6", "0")?,
    })
}

/// The same generators over `t^n = lambda` for `12 | n` (substituting `t -> t^(n/12)`).
pub fn generators_over(n: u32) -> Result<Generators> {
    if n == 0 || !n.is_multiple_of(12) {
        return Err(Error::Argument(format!("generators need 12 | n, got {n}")));
    }
    let g = generators_k12()?;
    let s = t_power(n / 12);
    Ok(g.map(|p| p.subs(T, &s)))
}

/// `P` over `t^4 = lambda`.
pub fn p_k4() -> Result<CurvePoint> {
    let e = over_root(&e0(), 4);
    e.point(rf("-1 + (zeta^9 - 1)*t + zeta^9*t^2"), rf("(1 - zeta^9)*(t + zeta^9)*(t + 1)*t"))
}

/// `R_1, R_2` and the 2-torsion point `(0, 0)` over `t^3 = lambda`, `(u, v)` model.
pub fn generators_k3() -> Result<(CurvePoint, CurvePoint, CurvePoint)> {
    let e = over_root(&e0(), 3);
    Ok((
        e.point(rf("t - 1"), rf("zeta^9*t*(t - 1)"))?,
        e.point(rf("zeta^4*t - 1"), rf("zeta*t*(zeta^4*t - 1)"))?,
        e.point(rf("0"), rf("0"))?,
    ))
}
