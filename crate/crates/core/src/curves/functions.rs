//! Rational functions on a curve `y^2 = g(x)` and their values at points.
//!
//! A function in `x, y` is brought to the normal form `(p0 + p1 y) / q` with
//! `p0, p1, q` polynomials in `x` over the parameter field, using
//! `y^2 = g(x)` and multiplication by the conjugate of the denominator.
//! Values at points (including poles) are read off from local expansions.

use std::sync::Arc;

use cubic_algebra::{Mono, MultiPoly, RationalFunction, Vars};

use super::{CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};

/// Dense polynomial in `x` with coefficients in `k(params)`, constant term first.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly {
    vars: Vars,
    c: Vec<RationalFunction>,
}

impl XPoly {
    pub fn zero(vars: &Vars) -> Self {
        XPoly { vars: vars.clone(), c: Vec::new() }
    }

    pub fn from_coeffs(vars: &Vars, c: Vec<RationalFunction>) -> Self {
        let mut p = XPoly { vars: vars.clone(), c: c.into_iter().map(|r| r.with_vars(vars)).collect() };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|r| r.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.c
    }

    pub fn leading(&self) -> Option<&RationalFunction> {
        self.c.last()
    }

    fn get(&self, i: usize) -> RationalFunction {
        self.c.get(i).cloned().unwrap_or_else(|| RationalFunction::zero(&self.vars))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs(&self.vars, (0..n).map(|i| &self.get(i) + &o.get(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs(&self.vars, (0..n).map(|i| &self.get(i) - &o.get(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = vec![RationalFunction::zero(&self.vars); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(&self.vars, out)
    }

    pub fn eval(&self, x: &RationalFunction) -> RationalFunction {
        let x = x.with_vars(&self.vars);
        self.c
            .iter()
            .rev()
            .fold(RationalFunction::zero(&self.vars), |acc, c| &(&acc * &x) + c)
    }

    /// Coefficients of `p(x0 + s)` in `s`.
    pub fn taylor(&self, x0: &RationalFunction) -> Vec<RationalFunction> {
        let x0 = x0.with_vars(&self.vars);
        let mut c = self.c.clone();
        let n = c.len();
        // repeated synthetic division by (x - x0)
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * &x0;
                c[j] = &c[j] + &t;
            }
        }
        c
    }
}

/// Index of the first nonzero entry.
fn valuation(s: &[RationalFunction]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

/// A function `(p0 + p1 y) / q` on a curve `y^2 = g(x)`.
#[derive(Clone, Debug)]
pub struct CurveFunction {
    pub p0: XPoly,
    pub p1: XPoly,
    pub q: XPoly,
}

/// `g(x)` for a curve with `a1 = a3 = 0`.
pub fn rhs_poly(e: &WeierstrassCurve) -> Result<XPoly> {
    if !e.a1().is_zero() || !e.a3().is_zero() {
        return Err(Error::Argument("curve must have a1 = a3 = 0".into()));
    }
    let vs = e.vars();
    Ok(XPoly::from_coeffs(
        vs,
        vec![e.a6().clone(), e.a4().clone(), e.a2().clone(), RationalFunction::one(vs)],
    ))
}

/// Splits `p(x, y, params)` into `sum_j c_j(x) y^j` with `c_j` over `vars`.
fn split_xy(p: &MultiPoly, xvar: &str, yvar: &str, vars: &Vars) -> Vec<XPoly> {
    let names = p.vars();
    let xi = names.iter().position(|v| v == xvar);
    let yi = names.iter().position(|v| v == yvar);
    let map: Vec<Option<usize>> = names.iter().map(|v| vars.iter().position(|w| w == v)).collect();
    let mut table: Vec<Vec<MultiPoly>> = Vec::new();
    for (m, c) in p.terms() {
        let ex = xi.map(|i| m.0[i] as usize).unwrap_or(0);
        let ey = yi.map(|i| m.0[i] as usize).unwrap_or(0);
        let mut e = vec![0u32; vars.len()];
        for (k, &d) in m.0.iter().enumerate() {
            if Some(k) == xi || Some(k) == yi || d == 0 {
                continue;
            }
            let j = map[k].unwrap_or_else(|| panic!("unexpected variable {}", names[k]));
            e[j] = d;
        }
        while table.len() <= ey {
            table.push(Vec::new());
        }
        while table[ey].len() <= ex {
            table[ey].push(MultiPoly::zero(vars));
        }
        table[ey][ex].add_term(Mono(e), c.clone());
    }
    table
        .into_iter()
        .map(|row| XPoly::from_coeffs(vars, row.into_iter().map(RationalFunction::from_poly).collect()))
        .collect()
}

/// `sum_j c_j y^j` reduced with `y^2 = g` to `(r0, r1)`.
fn reduce_y(parts: Vec<XPoly>, g: &XPoly) -> (XPoly, XPoly) {
    let vs = g.vars.clone();
    let mut r = [XPoly::zero(&vs), XPoly::zero(&vs)];
    let mut gpow = XPoly::from_coeffs(&vs, vec![RationalFunction::one(&vs)]);
    for (j, c) in parts.into_iter().enumerate() {
        if j >= 2 && j % 2 == 0 {
            gpow = gpow.mul(g);
        }
        let term = c.mul(&gpow);
        r[j % 2] = r[j % 2].add(&term);
    }
    let [a, b] = r;
    (a, b)
}

impl CurveFunction {
    /// Normal form of `f(x, y)` on `e`; fails if `f` vanishes identically
    /// in its denominator on the curve.
    pub fn new(e: &WeierstrassCurve, f: &RationalFunction, xvar: &str, yvar: &str) -> Result<Self> {
        let g = rhs_poly(e)?;
        let vs = e.vars().clone();
        let (n0, n1) = reduce_y(split_xy(f.num(), xvar, yvar, &vs), &g);
        let (d0, d1) = reduce_y(split_xy(f.den(), xvar, yvar, &vs), &g);
        if d1.is_zero() {
            if d0.is_zero() {
                return Err(Error::Pole("denominator vanishes on the curve".into()));
            }
            return Ok(CurveFunction { p0: n0, p1: n1, q: d0 });
        }
        // multiply by the conjugate d0 - d1 y
        let q = d0.mul(&d0).sub(&d1.mul(&d1).mul(&g));
        if q.is_zero() {
            return Err(Error::Pole("denominator vanishes on the curve".into()));
        }
        let p0 = n0.mul(&d0).sub(&n1.mul(&d1).mul(&g));
        let p1 = n1.mul(&d0).sub(&n0.mul(&d1));
        Ok(CurveFunction { p0, p1, q })
    }

    /// Whether the function is identically zero on the curve.
    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }

    /// The function as an element of `k(params)(x)` when it does not involve `y`.
    pub fn as_x_function(&self, xvar: &str) -> Option<RationalFunction> {
        if !self.p1.is_zero() {
            return None;
        }
        let vs = &self.q.vars;
        let mut names = vec![xvar.to_string()];
        names.extend(vs.iter().cloned());
        let xv = Arc::new(names);
        let x = RationalFunction::var(&xv, xvar);
        let lift = |p: &XPoly| {
            p.c.iter()
                .rev()
                .fold(RationalFunction::zero(&xv), |acc, c| &(&acc * &x) + &c.with_vars(&xv))
        };
        Some(&lift(&self.p0) / &lift(&self.q))
    }

    /// Value at `p`, or `None` at a pole.
    pub fn eval(&self, e: &WeierstrassCurve, p: &CurvePoint) -> Result<Option<RationalFunction>> {
        let vs = e.vars().clone();
        let zero = RationalFunction::zero(&vs);
        match p {
            CurvePoint::Infinity => {
                // ord x = -2, ord y = -3
                let dq = self.q.degree().expect("nonzero denominator") as i64;
                let o0 = self.p0.degree().map(|d| -2 * d as i64);
                let o1 = self.p1.degree().map(|d| -2 * d as i64 - 3);
                let ord = match (o0, o1) {
                    (None, None) => return Ok(Some(zero)),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (Some(a), Some(b)) => a.min(b),
                };
                if ord < -2 * dq {
                    Ok(None)
                } else if ord > -2 * dq {
                    Ok(Some(zero))
                } else {
                    Ok(Some(self.p0.leading().unwrap() / self.q.leading().unwrap()))
                }
            }
            CurvePoint::Affine { x, y } => {
                let x0 = x.with_vars(&vs);
                let y0 = y.with_vars(&vs);
                let qs = self.q.taylor(&x0);
                let vq = valuation(&qs).expect("nonzero denominator");
                let p0s = self.p0.taylor(&x0);
                let p1s = self.p1.taylor(&x0);
                if y0.is_zero() {
                    // uniformizer y, ord(x - x0) = 2
                    let o0 = valuation(&p0s).map(|v| 2 * v);
                    let o1 = valuation(&p1s).map(|v| 2 * v + 1);
                    let ord = match (o0, o1) {
                        (None, None) => return Ok(Some(zero)),
                        (Some(a), None) => a,
                        (None, Some(b)) => b,
                        (Some(a), Some(b)) => a.min(b),
                    };
                    return Ok(if ord < 2 * vq {
                        None
                    } else if ord > 2 * vq {
                        Some(zero)
                    } else {
                        Some(&p0s[vq] / &qs[vq])
                    });
                }
                // uniformizer x - x0; expand y as a power series
                let g = rhs_poly(e)?;
                let gs = g.taylor(&x0);
                let ys = sqrt_series(&gs, &y0, vq + 1);
                let mut num = Vec::with_capacity(vq + 1);
                for k in 0..=vq {
                    let mut c = p0s.get(k).cloned().unwrap_or_else(|| zero.clone());
                    for i in 0..=k {
                        if let Some(a) = p1s.get(i) {
                            c = &c + &(a * &ys[k - i]);
                        }
                    }
                    num.push(c);
                }
                match valuation(&num) {
                    Some(v) if v < vq => Ok(None),
                    Some(v) if v == vq => Ok(Some(&num[vq] / &qs[vq])),
                    _ => Ok(Some(zero)),
                }
            }
        }
    }
}

/// Power series `y(s)` with `y^2 = G(s)`, `y(0) = y0 != 0`, to `prec` terms.
fn sqrt_series(gs: &[RationalFunction], y0: &RationalFunction, prec: usize) -> Vec<RationalFunction> {
    let vs = y0.vars().clone();
    let zero = RationalFunction::zero(&vs);
    let two_y0_inv = (&RationalFunction::int(&vs, 2) * y0).inv().expect("y0 nonzero");
    let mut c = vec![y0.clone()];
    for n in 1..prec {
        let mut rhs = gs.get(n).cloned().unwrap_or_else(|| zero.clone());
        for i in 1..n {
            rhs = &rhs - &(&c[i] * &c[n - i]);
        }
        c.push(&rhs * &two_y0_inv);
    }
    c
}

/// Value of `f(x, y)` at `p` on `e`, `None` at a pole.
pub fn eval_on_curve(
    e: &WeierstrassCurve,
    f: &RationalFunction,
    xvar: &str,
    yvar: &str,
    p: &CurvePoint,
) -> Result<Option<RationalFunction>> {
    CurveFunction::new(e, f, xvar, yvar)?.eval(e, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::models::e0;
    use cubic_algebra::{parse_poly, vars};

    fn f(s_num: &str, s_den: &str) -> RationalFunction {
        let vs = vars(&["x", "y", "lambda"]);
        RationalFunction::new(parse_poly(s_num, &vs, None).unwrap(), parse_poly(s_den, &vs, None).unwrap()).unwrap()
    }

    fn c(s: &str) -> RationalFunction {
        RationalFunction::from_poly(parse_poly(s, &vars(&["lambda"]), None).unwrap())
    }

    #[test]
    fn values_at_infinity() {
        let e = e0();
        let at_o = |num: &str, den: &str| eval_on_curve(&e, &f(num, den), "x", "y", &CurvePoint::Infinity).unwrap();
        assert_eq!(at_o("x", "1"), None);
        assert_eq!(at_o("x^3", "y^2"), Some(c("1")));
        assert_eq!(at_o("x", "y"), Some(c("0")));
        assert_eq!(at_o("y", "x"), None);
    }

    #[test]
    fn values_at_two_torsion() {
        let e = e0();
        let o = CurvePoint::affine(c("0"), c("0"));
        assert_eq!(eval_on_curve(&e, &f("y", "x"), "x", "y", &o).unwrap(), None);
        assert_eq!(eval_on_curve(&e, &f("y^2", "x"), "x", "y", &o).unwrap(), Some(c("1 - lambda")));
        assert_eq!(eval_on_curve(&e, &f("x", "y"), "x", "y", &o).unwrap(), Some(c("0")));
    }

    #[test]
    fn removable_singularity_at_ordinary_point() {
        // on y^2 = x^3 + 2x^2 + (1 - lambda) x take the point (-1, sqrt(lambda)) over lambda = s^2
        let e = crate::curves::models::over_root(&e0(), 2);
        let t = |s: &str| RationalFunction::from_poly(parse_poly(s, &vars(&["t"]), None).unwrap());
        let p = e.point(t("-1"), t("t")).unwrap();
        let vs = vars(&["x", "y", "t"]);
        let slope = RationalFunction::new(parse_poly("y - t", &vs, None).unwrap(), parse_poly("x + 1", &vs, None).unwrap())
            .unwrap();
        // derivative g'(x)/(2y) at x = -1: (3 - 4 + 1 - t^2) / (2t) = -t/2
        assert_eq!(eval_on_curve(&e, &slope, "x", "y", &p).unwrap(), Some(t("-t/2")));
        let pole = RationalFunction::new(parse_poly("1", &vs, None).unwrap(), parse_poly("y - t", &vs, None).unwrap())
            .unwrap();
        assert_eq!(eval_on_curve(&e, &pole, "x", "y", &p).unwrap(), None);
    }
}
