//! Reduced fractions of multivariate polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::coeff::Coeff;
use crate::error::{AlgebraError, Result};
use crate::poly::{unify, MultiPoly, Vars};
use crate::resultant::gcd;

/// `num / den` with `gcd(num, den) = 1` and `den` of leading coefficient one.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::Division("zero denominator".into()));
        }
        let (num, den) = unify(&num, &den);
        if num.is_zero() {
            return Ok(Self::zero(num.vars()));
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        Ok(Self::normalize_lc(n, d))
    }

    fn normalize_lc(num: MultiPoly, den: MultiPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lc.inv().unwrap();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        RationalFunction { num: MultiPoly::zero(vars), den: MultiPoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn constant(vars: &Vars, c: Coeff) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, Coeff::int(n))
    }

    pub fn var(vars: &Vars, name: &str) -> Self {
        Self::from_poly(MultiPoly::var(vars, name))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn with_vars(&self, vars: &Vars) -> Self {
        RationalFunction { num: self.num.with_vars(vars), den: self.den.with_vars(vars) }
    }

    fn unify_rf(&self, other: &Self) -> (Self, Self) {
        if self.vars() == other.vars() {
            return (self.clone(), other.clone());
        }
        let (a, _) = unify(&self.num, &other.num);
        let (a, _) = unify(&a, &other.den);
        let (a, _) = unify(&a, &self.den);
        let vs = a.vars().clone();
        (self.with_vars(&vs), other.with_vars(&vs))
    }

    fn add_impl(&self, other: &Self, sign: bool) -> Self {
        if self.vars() != other.vars() {
            let (a, b) = self.unify_rf(other);
            return a.add_impl(&b, sign);
        }
        let on = if sign { other.num.clone() } else { -&other.num };
        if self.den == other.den {
            let num = &self.num + &on;
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::new(num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            let num = &(&self.num * &other.den) + &on;
            return RationalFunction { num, den: other.den.clone() };
        }
        if other.den.is_one() {
            let num = &self.num + &(&on * &self.den);
            return RationalFunction { num, den: self.den.clone() };
        }
        let g = gcd(&self.den, &other.den);
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = other.den.exact_div(&g).unwrap();
        let num = &(&self.num * &d2) + &(&on * &d1);
        let den = &self.den * &d2;
        if num.is_zero() {
            return Self::zero(self.vars());
        }
        let h = gcd(&num, &g);
        if h.is_one() {
            Self::normalize_lc(num, den)
        } else {
            Self::normalize_lc(num.exact_div(&h).unwrap(), den.exact_div(&h).unwrap())
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.vars() != other.vars() {
            let (a, b) = self.unify_rf(other);
            return a.mul_impl(&b);
        }
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars());
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        Self::normalize_lc(&n1 * &n2, &d1 * &d2)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::Division("inverse of zero".into()));
        }
        Ok(Self::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_impl(&other.inv()?))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("nonzero base") } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        RationalFunction { num: base.num.pow(k), den: base.den.pow(k) }
    }

    /// Substitutes a rational function for a variable.
    pub fn subs(&self, name: &str, value: &RationalFunction) -> Self {
        let n = subs_poly(&self.num, name, value);
        let d = subs_poly(&self.den, name, value);
        n.try_div(&d).expect("substitution made the denominator vanish")
    }

    /// Partial derivative.
    pub fn diff(&self, name: &str) -> Self {
        let n = &(&self.num.diff(name) * &self.den) - &(&self.num * &self.den.diff(name));
        Self::new(n, &self.den * &self.den).unwrap()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        Self::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f)).unwrap()
    }
}

/// `p(value)` where `value` is substituted for `name`.
pub fn subs_poly(p: &MultiPoly, name: &str, value: &RationalFunction) -> RationalFunction {
    let Some(i) = p.var_index(name) else {
        return RationalFunction::from_poly(p.clone());
    };
    let coeffs = p.coeffs_at(i);
    let (a, b) = RationalFunction::from_poly(p.clone()).unify_rf(value);
    let vs = a.vars().clone();
    // sum_k c_k n^k d^(D-k) / d^D
    let dd = coeffs.len().saturating_sub(1) as u32;
    let n = &b.num;
    let d = &b.den;
    let mut total = MultiPoly::zero(&vs);
    let mut npow = MultiPoly::one(&vs);
    let dpows: Vec<MultiPoly> = {
        let mut v = vec![MultiPoly::one(&vs)];
        for _ in 0..dd {
            let next = v.last().unwrap() * d;
            v.push(next);
        }
        v
    };
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            total = &total + &(&(&c.with_vars(&vs) * &npow) * &dpows[(dd as usize) - k]);
        }
        npow = &npow * n;
    }
    RationalFunction::new(total, dpows[dd as usize].clone()).unwrap()
}

/// Evaluates `p` at fractions `num_i / den_i` for the listed variables without any gcd
/// reduction, returning `(N, D)` with `p(values) = N / D` and `D` a product of powers of
/// the given denominators. Useful when the result is to be reduced modulo a relation.
pub fn eval_fractions(p: &MultiPoly, values: &[(&str, MultiPoly, MultiPoly)]) -> (MultiPoly, MultiPoly) {
    let mut target = p.clone();
    for (_, n, d) in values {
        target = unify(&unify(&target, n).0, d).0;
    }
    let vs = target.vars().clone();
    let p = p.with_vars(&vs);
    let idx: Vec<usize> = values.iter().map(|(v, _, _)| p.var_index(v).expect("variable")).collect();
    let degs: Vec<u32> = idx.iter().map(|&i| p.degree_at(i).unwrap_or(0)).collect();
    let mut npow: Vec<Vec<MultiPoly>> = Vec::new();
    let mut dpow: Vec<Vec<MultiPoly>> = Vec::new();
    for ((_, n, d), &k) in values.iter().zip(&degs) {
        let n = n.with_vars(&vs);
        let d = d.with_vars(&vs);
        let mut a = vec![MultiPoly::one(&vs)];
        let mut b = vec![MultiPoly::one(&vs)];
        for _ in 0..k {
            a.push(a.last().unwrap() * &n);
            b.push(b.last().unwrap() * &d);
        }
        npow.push(a);
        dpow.push(b);
    }
    let mut num = MultiPoly::zero(&vs);
    for (m, c) in p.terms() {
        let mut e = m.clone();
        let mut term = MultiPoly::one(&vs);
        for (j, &i) in idx.iter().enumerate() {
            let k = e.0[i] as usize;
            e.0[i] = 0;
            term = &term * &npow[j][k];
            term = &term * &dpow[j][degs[j] as usize - k];
        }
        num = &num + &term.mul_mono(&e, c);
    }
    let mut den = MultiPoly::one(&vs);
    for (j, _) in idx.iter().enumerate() {
        den = &den * &dpow[j][degs[j] as usize];
    }
    (num, den)
}

/// Evaluates `p` at rational-function values and normalizes the result.
pub fn eval_rf(p: &MultiPoly, values: &[(&str, &RationalFunction)]) -> RationalFunction {
    let vals: Vec<(&str, MultiPoly, MultiPoly)> =
        values.iter().map(|(v, r)| (*v, r.num().clone(), r.den().clone())).collect();
    let (n, d) = eval_fractions(p, &vals);
    RationalFunction::new(n, d).expect("nonzero denominators")
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.mul_impl(rhs)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.try_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::vars;

    fn p(s: &str, vs: &[&str]) -> MultiPoly {
        parse_poly(s, &vars(vs), None).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        let r = RationalFunction::new(p("l^2 - 1", &["l"]), p("l - 1", &["l"])).unwrap();
        assert_eq!(r, RationalFunction::from_poly(p("l + 1", &["l"])));
    }

    #[test]
    fn isogeny_u_coordinate_normal_form() {
        let vs = ["d", "e"];
        let r = RationalFunction::new(p("e^2*d", &vs), p("4*d^3", &vs)).unwrap();
        assert_eq!(r.num(), &p("1/4*e^2", &vs));
        assert_eq!(r.den(), &p("d^2", &vs));
    }

    #[test]
    fn zero_normal_form_and_zero_denominator() {
        let r = RationalFunction::new(p("0", &["x"]), p("x^2 + 1", &["x"])).unwrap();
        assert!(r.num().is_zero());
        assert!(r.den().is_one());
        assert!(RationalFunction::new(p("x", &["x"]), p("0", &["x"])).is_err());
    }

    #[test]
    fn field_operations() {
        let vs = vars(&["x", "y"]);
        let a = RationalFunction::new(p("x", &["x", "y"]), p("x + y", &["x", "y"])).unwrap();
        let b = RationalFunction::new(p("y", &["x", "y"]), p("x + y", &["x", "y"])).unwrap();
        assert!((&a + &b).is_one());
        let c = &(&a * &b) / &b;
        assert_eq!(c, a);
        let s = a.subs("y", &RationalFunction::var(&vs, "x"));
        assert_eq!(s, RationalFunction::constant(&vs, Coeff::Rat(crate::rational::frac(1, 2))));
    }
}
