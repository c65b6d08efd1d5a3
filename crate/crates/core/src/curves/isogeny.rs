//! Isogenies of degree two between curves `y^2 = x^3 + a2 x^2 + a4 x + a6`.

use std::sync::Arc;

use cubic_algebra::ratfunc::eval_rf;
use cubic_algebra::{parse_poly, RationalFunction, Vars};

use super::functions::{rhs_poly, CurveFunction};
use super::models::{e0, e1, LAMBDA};
use super::{divpoly, CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};

pub const XV: &str = "x";
pub const YV: &str = "y";

/// A map of curves given by `x`- and `y`-coordinate rational functions of
/// the source coordinates `x, y` (and the parameters).
#[derive(Clone, Debug)]
pub struct Isogeny {
    pub source: WeierstrassCurve,
    pub target: WeierstrassCurve,
    pub x_map: RationalFunction,
    pub y_map: RationalFunction,
    pub kernel: Vec<CurvePoint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsogenyReport {
    pub equation_holds: bool,
    pub kernel_to_identity: bool,
    pub identity_to_identity: bool,
}

impl IsogenyReport {
    pub fn ok(&self) -> bool {
        self.equation_holds && self.kernel_to_identity && self.identity_to_identity
    }
}

/// Variable list `[x, y, params...]`.
fn xy_vars(e: &WeierstrassCurve) -> Vars {
    let mut names = vec![XV.to_string(), YV.to_string()];
    names.extend(e.vars().iter().cloned());
    Arc::new(names)
}

impl Isogeny {
    pub fn new(
        source: WeierstrassCurve,
        target: WeierstrassCurve,
        x_map: RationalFunction,
        y_map: RationalFunction,
        kernel: Vec<CurvePoint>,
    ) -> Self {
        let vs = xy_vars(&source);
        Isogeny { x_map: x_map.with_vars(&vs), y_map: y_map.with_vars(&vs), source, target, kernel }
    }

    /// Image of a point; poles of the coordinate maps go to the identity.
    pub fn apply(&self, p: &CurvePoint) -> Result<CurvePoint> {
        if !self.source.on_curve(p) {
            return Err(Error::Witness(format!("point {p} is not on the source curve")));
        }
        let fx = CurveFunction::new(&self.source, &self.x_map, XV, YV)?;
        let Some(x) = fx.eval(&self.source, p)? else {
            return Ok(CurvePoint::Infinity);
        };
        let fy = CurveFunction::new(&self.source, &self.y_map, XV, YV)?;
        let y = fy
            .eval(&self.source, p)?
            .ok_or_else(|| Error::Internal("y-map has a pole where the x-map does not".into()))?;
        Ok(CurvePoint::affine(x, y))
    }

    /// The composite `x`-map `x(other(self(P)))` as a function on the source.
    pub fn then_x(&self, other: &Isogeny) -> RationalFunction {
        eval_rf(other.x_map.num(), &[(XV, &self.x_map), (YV, &self.y_map)])
            .try_div(&eval_rf(other.x_map.den(), &[(XV, &self.x_map), (YV, &self.y_map)]))
            .expect("composite is defined")
    }
}

/// Checks that the image satisfies the target equation modulo the source
/// equation, and that the kernel and the identity go to the identity.
pub fn verify_isogeny(phi: &Isogeny) -> Result<IsogenyReport> {
    let residual = phi.target.residual(
        &phi.x_map,
        &phi.y_map,
    );
    let f = CurveFunction::new(&phi.source, &residual, XV, YV)?;
    if !f.is_zero() {
        return Err(Error::Verification(format!(
            "target equation leaves residue ({}) + ({}) y",
            display_x(&f.p0),
            display_x(&f.p1)
        )));
    }
    let mut kernel_ok = true;
    for k in &phi.kernel {
        kernel_ok &= phi.apply(k)?.is_infinity();
    }
    let identity_ok = phi.apply(&CurvePoint::Infinity)?.is_infinity();
    Ok(IsogenyReport { equation_holds: true, kernel_to_identity: kernel_ok, identity_to_identity: identity_ok })
}

fn display_x(p: &super::functions::XPoly) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({c})*x^{i}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// The 2-isogeny with kernel `{O, (x0, 0)}` on `y^2 = g(x)`:
/// with `X = x - x0` and `y^2 = X (X^2 + a X + b)`, the image is
/// `Y^2 = X (X^2 - 2a X + a^2 - 4b)` via `(y^2 / X^2, y (b - X^2) / X^2)`.
pub fn two_isogeny(e: &WeierstrassCurve, x0: &RationalFunction) -> Result<Isogeny> {
    let g = rhs_poly(e)?;
    let x0 = x0.with_vars(e.vars());
    if !g.eval(&x0).is_zero() {
        return Err(Error::Argument(format!("({x0}, 0) is not a point of order two")));
    }
    let vs = e.vars();
    let k = |n: i64| RationalFunction::int(vs, n);
    let a = &(&k(3) * &x0) + e.a2();
    let b = &(&(&k(3) * &(&x0 * &x0)) + &(&(&k(2) * e.a2()) * &x0)) + e.a4();
    let z = RationalFunction::zero(vs);
    let target = WeierstrassCurve::new([
        z.clone(),
        -&(&k(2) * &a),
        z.clone(),
        &(&a * &a) - &(&k(4) * &b),
        z,
    ])?;
    let xy = xy_vars(e);
    let x = RationalFunction::var(&xy, XV);
    let y = RationalFunction::var(&xy, YV);
    let big_x = &x - &x0.with_vars(&xy);
    let x2 = &big_x * &big_x;
    let x_map = &(&y * &y) / &x2;
    let y_map = &(&y * &(&b.with_vars(&xy) - &x2)) / &x2;
    let kernel = vec![CurvePoint::affine(x0.clone(), RationalFunction::zero(vs))];
    Ok(Isogeny::new(e.clone(), target, x_map, y_map, kernel))
}

fn parse_xy(s: &str) -> RationalFunction {
    let vs = cubic_algebra::vars(&[XV, YV, LAMBDA]);
    RationalFunction::from_poly(parse_poly(s, &vs, None).expect("valid expression"))
}

/// `E_1 -> E_0`, `u = e^2 / (4 d^2)`, `v = e (d^2 - 4 lambda) / (8 d^2)`,
/// written in the source coordinates `x = d`, `y = e`.
pub fn e1_to_e0() -> Isogeny {
    let x_map = &parse_xy("y^2") / &parse_xy("4*x^2");
    let y_map = &parse_xy("y*(x^2 - 4*lambda)") / &parse_xy("8*x^2");
    let src = e1();
    let zero = RationalFunction::zero(src.vars());
    Isogeny::new(src, e0(), x_map, y_map, vec![CurvePoint::affine(zero.clone(), zero)])
}

/// The dual `E_0 -> E_1`: the quotient of `E_0` by `(0, 0)`, which is `E_1` on the nose.
pub fn e0_to_e1() -> Result<Isogeny> {
    let phi = two_isogeny(&e0(), &RationalFunction::zero(e0().vars()))?;
    if phi.target != e1() {
        return Err(Error::Internal("quotient of E0 by (0,0) is not E1".into()));
    }
    Ok(phi)
}

/// Checks `x(dual(phi(P))) = x(2P)` on `E_1`.
pub fn dual_composes_to_doubling() -> Result<bool> {
    let phi = e1_to_e0();
    let dual = e0_to_e1()?;
    let comp = phi.then_x(&dual);
    let f = CurveFunction::new(&phi.source, &comp, XV, YV)?;
    let Some(as_x) = f.as_x_function(XV) else {
        return Ok(false);
    };
    let dup = divpoly::x_mult_map_in(&phi.source, 2, XV)?;
    Ok(as_x == dup.with_vars(as_x.vars()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::models::{over_root, t_power, T};

    #[test]
    fn e1_to_e0_verifies() {
        let report = verify_isogeny(&e1_to_e0()).unwrap();
        assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn dual_is_quotient_by_two_torsion_and_composes_to_doubling() {
        let dual = e0_to_e1().unwrap();
        assert!(verify_isogeny(&dual).unwrap().ok());
        assert!(dual_composes_to_doubling().unwrap());
    }

    #[test]
    fn broken_map_is_rejected() {
        let mut phi = e1_to_e0();
        phi.y_map = &phi.y_map + &RationalFunction::one(phi.y_map.vars());
        assert!(matches!(verify_isogeny(&phi), Err(Error::Verification(_))));
    }

    #[test]
    fn images_of_points_over_k4() {
        // the 2-torsion point (-1 + t^2, 0) of E_0 over t^4 = lambda maps into E_1
        let dual = e0_to_e1().unwrap();
        let s = t_power(4);
        let src = over_root(&dual.source, 4);
        let tgt = over_root(&dual.target, 4);
        let lifted = Isogeny::new(
            src.clone(),
            tgt.clone(),
            dual.x_map.subs(LAMBDA, &s),
            dual.y_map.subs(LAMBDA, &s),
            vec![],
        );
        let vs = cubic_algebra::vars(&[T]);
        let pt = src
            .point(
                RationalFunction::from_poly(parse_poly("-1 + t^2", &vs, None).unwrap()),
                RationalFunction::zero(&vs),
            )
            .unwrap();
        let img = lifted.apply(&pt).unwrap();
        assert!(tgt.on_curve(&img));
        assert!(!img.is_infinity());
    }
}
