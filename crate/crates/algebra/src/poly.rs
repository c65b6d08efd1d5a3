//! Sparse multivariate polynomials over [`Coeff`].
//!
//! Terms live in a `BTreeMap` keyed by graded-lex monomials, so iteration
//! order (and therefore printing and serialization) is deterministic. Binary
//! operations on polynomials with different variable lists first extend both
//! operands to the union of the lists (left operand's order first).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeff::Coeff;
use crate::error::{AlgebraError, Result};
use crate::mono::Mono;
use crate::numfield::{same_field, NumberField};
use crate::rational::{denom_lcm, numer_gcd, Rat};

pub type Vars = Arc<Vec<String>>;

pub fn vars(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Mono, Coeff>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = unify(self, other);
        a.terms == b.terms
    }
}

/// Extends both polynomials to a common variable list.
pub fn unify(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if a.vars == b.vars {
        return (a.clone(), b.clone());
    }
    let mut names: Vec<String> = a.vars.as_ref().clone();
    for v in b.vars.iter() {
        if !names.contains(v) {
            names.push(v.clone());
        }
    }
    let vs = Arc::new(names);
    (a.with_vars(&vs), b.with_vars(&vs))
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Coeff) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(vars.len()), c);
        }
        p
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, Coeff::int(n))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::int(vars, 1)
    }

    /// The variable `name`, which must occur in `vars`.
    pub fn var(vars: &Vars, name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::monomial(vars, Mono::var(vars.len(), i, 1), Coeff::one())
    }

    pub fn monomial(vars: &Vars, m: Mono, c: Coeff) -> Self {
        assert_eq!(m.0.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Mono, Coeff)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len());
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn idx(&self, name: &str) -> usize {
        self.var_index(name)
            .unwrap_or_else(|| panic!("variable {name} not in {:?}", self.vars))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Coeff> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value when the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn coeff(&self, m: &Mono) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Leading monomial and coefficient in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in the named variable (`None` for the zero polynomial).
    pub fn degree_in(&self, name: &str) -> Option<u32> {
        let i = self.idx(name);
        self.degree_at(i)
    }

    pub fn degree_at(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn min_degree_at(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    pub fn involves(&self, name: &str) -> bool {
        self.var_index(name)
            .is_some_and(|i| self.terms.keys().any(|m| m.0[i] > 0))
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    /// The number field of the coefficients, if any is algebraic.
    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.terms.values().find_map(|c| c.field().cloned())
    }

    /// Rewrites the polynomial over `new_vars`, which must contain every variable that occurs.
    pub fn with_vars(&self, new_vars: &Vars) -> Self {
        if &self.vars == new_vars {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        let mut out = Self::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = map[i].unwrap_or_else(|| {
                        panic!("variable {} missing from target list", self.vars[i])
                    });
                    e[j] += k;
                }
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&Coeff::Rat(r.clone()))
    }

    pub fn mul_mono(&self, m: &Mono, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    fn add_impl(&self, other: &Self, sign: bool) -> Self {
        if self.vars != other.vars {
            let (a, b) = unify(self, other);
            return a.add_impl(&b, sign);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            if sign {
                out.add_term(m.clone(), c.clone());
            } else {
                out.add_term(m.clone(), -c);
            }
        }
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.vars != other.vars {
            let (a, b) = unify(self, other);
            return a.mul_impl(&b);
        }
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        if let Some(terms) = crate::kernel::mul_rational(&self.terms, &other.terms, self.nvars()) {
            return MultiPoly { vars: self.vars.clone(), terms };
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Mono, Coeff> = HashMap::with_capacity(large.terms.len() * 2);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(m2);
                let p = c1 * c2;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get() + &p;
                        *e.get_mut() = s;
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Checked addition: fails on coefficients from different number fields.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_fields(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_fields(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_fields(other)?;
        Ok(self * other)
    }

    pub fn check_fields(&self, other: &Self) -> Result<()> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if !same_field(&a, &b) => Err(AlgebraError::Field(
                "polynomials over different number fields".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`; fails with a division error when the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if self.vars != d.vars {
            let (a, b) = unify(self, d);
            return a.exact_div(&b);
        }
        self.check_fields(d)?;
        let (dm, dc) = d
            .leading()
            .ok_or_else(|| AlgebraError::Division("division by zero polynomial".into()))?;
        let dc_inv = dc.inv().expect("nonzero leading coefficient");
        if let Some(c) = d.constant_value() {
            return Ok(self.scale(&c.inv().unwrap()));
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm).ok_or_else(|| {
                AlgebraError::Division("nonzero remainder in exact division".into())
            })?;
            let qc = rc * &dc_inv;
            // subtract qc*qm*d
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.terms.insert(qm, qc);
        }
        Ok(quot)
    }

    /// Whether `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Self) -> bool {
        self.exact_div(d).is_ok()
    }

    /// Coefficients as a polynomial in `name`: entry `k` is the coefficient of `name^k`.
    pub fn coeffs_in(&self, name: &str) -> Vec<MultiPoly> {
        let i = self.idx(name);
        self.coeffs_at(i)
    }

    pub fn coeffs_at(&self, i: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_at(i) {
            Some(d) => d as usize,
            None => return vec![],
        };
        let mut out = vec![Self::zero(&self.vars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.clone();
            e.0[i] = 0;
            out[k].terms.insert(e, c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coeffs_in`].
    pub fn from_coeffs_in(vars: &Vars, name: &str, coeffs: &[MultiPoly]) -> Self {
        let i = vars.iter().position(|v| v == name).expect("variable present");
        Self::from_coeffs_at(vars, i, coeffs)
    }

    pub fn from_coeffs_at(vars: &Vars, i: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let c = c.with_vars(vars);
            for (m, a) in c.terms {
                let mut e = m;
                e.0[i] += k as u32;
                out.add_term(e, a);
            }
        }
        out
    }

    /// Substitutes the polynomial `value` for the variable `name`.
    pub fn subs(&self, name: &str, value: &MultiPoly) -> Self {
        let Some(i) = self.var_index(name) else {
            return self.clone();
        };
        let coeffs = self.coeffs_at(i);
        if coeffs.is_empty() {
            return Self::zero(&self.vars);
        }
        let (_, value) = unify(self, value);
        let mut acc = Self::zero(value.vars());
        for c in coeffs.iter().rev() {
            acc = &(&acc * &value) + c;
        }
        acc
    }

    /// Simultaneous substitution of several variables.
    pub fn subs_many(&self, values: &[(&str, MultiPoly)]) -> Self {
        let mut target = self.clone();
        for (_, v) in values {
            target = unify(&target, v).0;
        }
        let tv = target.vars.clone();
        let mut out = Self::zero(&tv);
        let mut powers: Vec<(usize, Vec<MultiPoly>)> = values
            .iter()
            .filter_map(|(n, v)| self.var_index(n).map(|i| (i, vec![Self::one(&tv), v.with_vars(&tv)])))
            .collect();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let mut factor = Self::one(&tv);
            for (i, pw) in powers.iter_mut() {
                let k = e.0[*i] as usize;
                e.0[*i] = 0;
                while pw.len() <= k {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                if k > 0 {
                    factor = &factor * &pw[k];
                }
            }
            let base = MultiPoly::monomial(&self.vars, e, c.clone()).with_vars(&tv);
            out = &out + &(&base * &factor);
        }
        out
    }

    /// Evaluates the named variable at a scalar.
    pub fn eval_var(&self, name: &str, value: &Coeff) -> Self {
        self.subs(name, &Self::constant(&self.vars, value.clone()))
    }

    /// Evaluates every variable; `values` follows the variable order.
    pub fn eval(&self, values: &[Coeff]) -> Coeff {
        assert_eq!(values.len(), self.nvars());
        let mut cache: Vec<Vec<Coeff>> = values.iter().map(|v| vec![Coeff::one(), v.clone()]).collect();
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                while pw.len() <= k as usize {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                t = &t * &pw[k as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn diff(&self, name: &str) -> Self {
        let i = self.idx(name);
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.clone();
            e.0[i] -= 1;
            out.add_term(e, c.scale_rat(&Rat::from_integer(BigInt::from(k))));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Replaces `name^power` by `replacement` until the degree in `name` is below `power`.
    /// `replacement` must have degree below `power` in `name`.
    pub fn reduce_power(&self, name: &str, power: u32, replacement: &MultiPoly) -> Self {
        let (mut acc, rep) = unify(self, replacement);
        let i = acc.idx(name);
        assert!(rep.degree_at(i).unwrap_or(0) < power, "replacement degree too high");
        let vs = acc.vars.clone();
        while acc.degree_at(i).unwrap_or(0) >= power {
            let coeffs = acc.coeffs_at(i);
            let p = power as usize;
            let low = Self::from_coeffs_at(&vs, i, &coeffs[..p]);
            let high = Self::from_coeffs_at(&vs, i, &coeffs[p..]);
            acc = &low + &(&high * &rep);
        }
        acc
    }

    /// Rational content `c` and primitive part `p` with `self = c * p`, where `p` has
    /// coprime integer coefficients and positive leading coefficient. Requires rational
    /// coefficients.
    pub fn rational_primitive(&self) -> Option<(Rat, MultiPoly)> {
        if self.is_zero() {
            return Some((Rat::zero(), self.clone()));
        }
        let rs: Vec<&Rat> = self.terms.values().map(|c| c.as_rat()).collect::<Option<_>>()?;
        let l = denom_lcm(rs.iter().copied());
        let g = numer_gcd(rs.iter().copied());
        let mut content = Rat::new(g, l);
        if self.leading_coeff().as_rat().unwrap().is_negative() {
            content = -content;
        }
        let inv = Coeff::Rat(content.recip());
        Some((content, self.scale(&inv)))
    }

    /// Clears rational denominators of every coordinate, returning a multiple of `self`
    /// whose coefficient coordinates are integers with no common factor.
    pub fn integer_normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let field = self.field();
        let all: Vec<Rat> = match &field {
            None => self.terms.values().map(|c| c.as_rat().unwrap().clone()).collect(),
            Some(k) => self.terms.values().flat_map(|c| c.coords_in(k)).collect(),
        };
        let l = denom_lcm(all.iter());
        let g = numer_gcd(all.iter());
        self.scale_rat(&Rat::new(l, g))
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Renames variables, keeping exponent positions.
    pub fn rename_vars(&self, new_vars: &Vars) -> MultiPoly {
        assert_eq!(new_vars.len(), self.vars.len());
        MultiPoly { vars: new_vars.clone(), terms: self.terms.clone() }
    }

    /// Drops variables that do not occur (keeping the order of the rest).
    pub fn trim_vars(&self) -> MultiPoly {
        let keep = self.support_vars();
        let names: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let vs = Arc::new(names);
        let mut out = Self::zero(&vs);
        for (m, c) in &self.terms {
            out.terms.insert(Mono(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        out
    }

    /// Formats the polynomial using `^` for powers and `*` for products.
    pub fn to_string_desc(&self) -> String {
        format!("{}", self)
    }

    /// The largest power of each variable dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut e: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            e = Some(match e {
                None => m.0.clone(),
                Some(v) => v.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        Mono(e.unwrap_or_else(|| vec![0; self.nvars()]))
    }

    /// Divides by a monomial that divides every term.
    pub fn div_mono(&self, m: &Mono) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.div(m).expect("monomial divides every term"), c.clone()))
            .collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Integer coefficient when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.as_rat().is_some_and(|r| r.is_integer()))
    }

    pub fn one_like(&self) -> Self {
        Self::one(&self.vars)
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_impl(rhs, true)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_impl(rhs, false)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Coeff::int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_mono(vars: &[String], m: &Mono) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(&m.0) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{}^{}", v, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = fmt_mono(&self.vars, m);
            let (neg, body) = match c {
                Coeff::Rat(r) => {
                    let a = r.abs();
                    let body = if mono.is_empty() {
                        format!("{}", a)
                    } else if a.is_one() {
                        mono.clone()
                    } else {
                        format!("{}*{}", a, mono)
                    };
                    (r.is_negative(), body)
                }
                Coeff::Alg(_) => {
                    let cs = if c.is_compound() { format!("({})", c) } else { format!("{}", c) };
                    let body = if mono.is_empty() { cs } else { format!("{}*{}", cs, mono) };
                    match body.strip_prefix('-') {
                        Some(s) => (true, s.to_string()),
                        None => (false, body),
                    }
                }
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            write!(f, "{}", body)?;
            first = false;
        }
        Ok(())
    }
}

/// Convenience: integer content as a `BigInt` of an integral polynomial.
pub fn integer_content(p: &MultiPoly) -> BigInt {
    let rs: Vec<&Rat> = p.terms().filter_map(|(_, c)| c.as_rat()).collect();
    numer_gcd(rs)
}

/// `One` is handy for generic code.
pub fn is_unit_rat(c: &Coeff) -> bool {
    c.as_rat().is_some_and(|r| r.is_one() || (-r).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str, vs: &[&str]) -> MultiPoly {
        parse_poly(s, &vars(vs), None).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let v = vars(&["z"]);
        let a = &MultiPoly::var(&v, "z") + &MultiPoly::int(&v, 1);
        let b = &MultiPoly::var(&v, "z") - &MultiPoly::int(&v, 1);
        assert_eq!(&a * &b, p("z^2 - 1", &["z"]));
    }

    #[test]
    fn exact_division_and_failure() {
        let num = p("z^2 - 1", &["z"]);
        assert_eq!(num.exact_div(&p("z - 1", &["z"])).unwrap(), p("z + 1", &["z"]));
        assert!(matches!(
            num.exact_div(&p("z + 2", &["z"])),
            Err(AlgebraError::Division(_))
        ));
    }

    #[test]
    fn union_of_variable_lists() {
        let a = p("a + 1", &["a"]);
        let z = p("z", &["z"]);
        let s = &a * &z;
        assert_eq!(s.vars().as_ref(), &vec!["a".to_string(), "z".to_string()]);
        assert_eq!(s, p("a*z + z", &["a", "z"]));
    }

    #[test]
    fn coefficient_round_trip_and_substitution() {
        let f = p("x^3*y + 2*x*y^2 - 7", &["x", "y"]);
        let cs = f.coeffs_in("x");
        assert_eq!(cs.len(), 4);
        assert_eq!(MultiPoly::from_coeffs_in(f.vars(), "x", &cs), f);
        let g = f.subs("y", &p("x + 1", &["x", "y"]));
        assert_eq!(g, p("x^4 + x^3 + 2*x^3 + 4*x^2 + 2*x - 7", &["x", "y"]));
    }

    #[test]
    fn power_reduction() {
        let f = p("e^5 + e^2 + 1", &["d", "e"]);
        let r = p("d", &["d", "e"]);
        assert_eq!(f.reduce_power("e", 2, &r), p("d^2*e + d + 1", &["d", "e"]));
    }

    #[test]
    fn display_is_descending() {
        let f = p("1 - 3*x + x^2*y", &["x", "y"]);
        assert_eq!(f.to_string(), "x^2*y - 3*x + 1");
    }

    #[test]
    fn diff_and_eval() {
        let f = p("z^3 + a*z + b", &["a", "b", "z"]);
        assert_eq!(f.diff("z"), p("3*z^2 + a", &["a", "b", "z"]));
        let v = f.eval(&[Coeff::int(1), Coeff::int(2), Coeff::int(3)]);
        assert_eq!(v, Coeff::int(32));
    }
}
