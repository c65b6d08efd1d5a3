//! Division polynomials and multiplication-by-`m` maps on `x`-coordinates.
//!
//! With `psi_2 = 2y + a1 x + a3` and `F = psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`,
//! the division polynomials are `psi_m = f_m` for odd `m` and
//! `psi_m = psi_2 f_m` for even `m`, where every `f_m` is a polynomial in `x`
//! alone. Then `x(mP) = x - psi_{m-1} psi_{m+1} / psi_m^2`.

use std::collections::HashMap;
use std::sync::Arc;

use cubic_algebra::RationalFunction;

use super::WeierstrassCurve;
use crate::error::{Error, Result};

/// Memoized `f_m` for one curve, as rational functions in `x` and the parameters.
pub struct DivisionPolynomials {
    x: RationalFunction,
    big_f: RationalFunction,
    cache: HashMap<u32, RationalFunction>,
}

impl DivisionPolynomials {
    pub fn new(e: &WeierstrassCurve, xvar: &str) -> Self {
        let mut names = vec![xvar.to_string()];
        names.extend(e.vars().iter().filter(|v| v.as_str() != xvar).cloned());
        let vs = Arc::new(names);
        let x = RationalFunction::var(&vs, xvar);
        let k = |n: i64| RationalFunction::int(&vs, n);
        let (b2, b4, b6, b8) = (
            e.b2().with_vars(&vs),
            e.b4().with_vars(&vs),
            e.b6().with_vars(&vs),
            e.b8().with_vars(&vs),
        );
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        let x4 = &x3 * &x;
        let big_f = &(&(&(&k(4) * &x3) + &(&b2 * &x2)) + &(&(&k(2) * &b4) * &x)) + &b6;
        let f3 = &(&(&(&(&k(3) * &x4) + &(&b2 * &x3)) + &(&(&k(3) * &b4) * &x2)) + &(&(&k(3) * &b6) * &x)) + &b8;
        let x5 = &x4 * &x;
        let x6 = &x5 * &x;
        let f4 = [
            &k(2) * &x6,
            &b2 * &x5,
            &(&k(5) * &b4) * &x4,
            &(&k(10) * &b6) * &x3,
            &(&k(10) * &b8) * &x2,
            &(&(&b2 * &b8) - &(&b4 * &b6)) * &x,
            &(&b4 * &b8) - &(&b6 * &b6),
        ]
        .iter()
        .fold(RationalFunction::zero(&vs), |acc, t| &acc + t);
        let mut cache = HashMap::new();
        cache.insert(0, RationalFunction::zero(&vs));
        cache.insert(1, RationalFunction::one(&vs));
        cache.insert(2, RationalFunction::one(&vs));
        cache.insert(3, f3);
        cache.insert(4, f4);
        DivisionPolynomials { x, big_f, cache }
    }

    /// `psi_2^2` as a polynomial in `x`.
    pub fn psi2_squared(&self) -> &RationalFunction {
        &self.big_f
    }

    pub fn x(&self) -> &RationalFunction {
        &self.x
    }

    /// `f_m`: `psi_m` for odd `m`, `psi_m / psi_2` for even `m`.
    pub fn f(&mut self, m: u32) -> RationalFunction {
        if let Some(v) = self.cache.get(&m) {
            return v.clone();
        }
        let k = m / 2;
        let v = if m % 2 == 1 {
            let a = &self.f(k + 2) * &self.f(k).pow(3);
            let b = &self.f(k - 1) * &self.f(k + 1).pow(3);
            let f2 = self.big_f.pow(2);
            if k.is_multiple_of(2) {
                &(&f2 * &a) - &b
            } else {
                &a - &(&f2 * &b)
            }
        } else {
            let inner = &(&self.f(k + 2) * &self.f(k - 1).pow(2)) - &(&self.f(k - 2) * &self.f(k + 1).pow(2));
            &self.f(k) * &inner
        };
        self.cache.insert(m, v.clone());
        v
    }

    /// Polynomial in `x` vanishing exactly at `x`-coordinates of nonzero points killed by `m`.
    pub fn torsion_polynomial(&mut self, m: u32) -> RationalFunction {
        let f = self.f(m);
        if m.is_multiple_of(2) {
            &f * &self.big_f
        } else {
            f
        }
    }

    /// `x(mP)` as a rational function of `x(P)`.
    pub fn x_mult(&mut self, m: u32) -> RationalFunction {
        let prod = &self.f(m - 1) * &self.f(m + 1);
        let fm2 = self.f(m).pow(2);
        let frac = if m.is_multiple_of(2) {
            prod.try_div(&(&self.big_f * &fm2))
        } else {
            (&self.big_f * &prod).try_div(&fm2)
        }
        .expect("division polynomial is nonzero");
        &self.x - &frac
    }
}

/// `x(mQ) = F_m(x)/G_m(x)` in the variable `x`.
pub fn x_mult_map(e: &WeierstrassCurve, m: i64) -> Result<RationalFunction> {
    x_mult_map_in(e, m, "x")
}

pub fn x_mult_map_in(e: &WeierstrassCurve, m: i64, xvar: &str) -> Result<RationalFunction> {
    if m <= 0 {
        return Err(Error::Argument(format!("multiplier must be positive, got {m}")));
    }
    Ok(DivisionPolynomials::new(e, xvar).x_mult(m as u32))
}
