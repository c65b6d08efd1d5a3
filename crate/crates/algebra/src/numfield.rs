//! Simple algebraic number fields `Q[X]/(m(X))`.
//!
//! Elements are stored as coordinate vectors on the power basis
//! `1, X, ..., X^(n-1)`. The minimal polynomial is trusted to be irreducible;
//! only monicity is checked.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::rational::{rat, Rat};

#[derive(Debug)]
pub struct NumberField {
    min_poly: Vec<Rat>,
    gen_name: String,
    // reduce_table[k] = X^(n + k) mod m, for k in 0..n-1
    reduce_table: Vec<Vec<Rat>>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// `min_poly` lists coefficients from the constant term upwards and must be monic.
    pub fn new(min_poly: Vec<Rat>, gen_name: &str) -> Result<Arc<Self>> {
        let mut m = min_poly;
        while m.last().is_some_and(|c| c.is_zero()) {
            m.pop();
        }
        if m.len() < 2 {
            return Err(AlgebraError::Degree("minimal polynomial must have positive degree".into()));
        }
        if !m.last().unwrap().is_one() {
            return Err(AlgebraError::Field("minimal polynomial must be monic".into()));
        }
        let n = m.len() - 1;
        let mut table = Vec::with_capacity(n.saturating_sub(1));
        // X^n = -(m_0 + ... + m_{n-1} X^{n-1})
        let mut cur: Vec<Rat> = m[..n].iter().map(|c| -c).collect();
        for _ in 0..n.saturating_sub(1) {
            table.push(cur.clone());
            // multiply by X
            let top = cur[n - 1].clone();
            let mut next = vec![Rat::zero(); n];
            for i in (1..n).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..n {
                    next[i] -= &top * &m[i];
                }
            }
            cur = next;
        }
        Ok(Arc::new(NumberField {
            min_poly: m,
            gen_name: gen_name.to_string(),
            reduce_table: table,
        }))
    }

    pub fn from_ints(coeffs: &[i64], gen_name: &str) -> Arc<Self> {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), gen_name)
            .expect("valid minimal polynomial")
    }

    /// `Q(zeta_12)`, minimal polynomial `X^4 - X^2 + 1`.
    pub fn cyclotomic12() -> Arc<Self> {
        Self::from_ints(&[1, 0, -1, 0, 1], "zeta")
    }

    /// `Q(zeta_24)`, minimal polynomial `X^8 - X^4 + 1`.
    pub fn cyclotomic24() -> Arc<Self> {
        Self::from_ints(&[1, 0, 0, 0, -1, 0, 0, 0, 1], "zeta")
    }

    /// `Q(zeta_8)`, minimal polynomial `X^4 + 1`.
    pub fn cyclotomic8() -> Arc<Self> {
        Self::from_ints(&[1, 0, 0, 0, 1], "zeta")
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[Rat] {
        &self.min_poly
    }

    pub fn gen_name(&self) -> &str {
        &self.gen_name
    }

    /// Reduces an arbitrary-length coefficient vector modulo the minimal polynomial.
    pub fn reduce(&self, mut coeffs: Vec<Rat>) -> Vec<Rat> {
        let n = self.degree();
        if coeffs.len() <= n {
            coeffs.resize(n, Rat::zero());
            return coeffs;
        }
        // generic long division for long inputs, table lookup for short ones
        if coeffs.len() < 2 * n {
            let mut out: Vec<Rat> = coeffs[..n].to_vec();
            for (k, c) in coeffs[n..].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(&self.reduce_table[k]) {
                    if !t.is_zero() {
                        *o += c * t;
                    }
                }
            }
            return out;
        }
        for i in (n..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                let mj = &self.min_poly[j];
                if !mj.is_zero() {
                    coeffs[i - n + j] -= &c * mj;
                }
            }
        }
        coeffs.truncate(n);
        coeffs
    }
}

/// An element of a [`NumberField`].
#[derive(Clone, Debug)]
pub struct NfElem {
    field: Arc<NumberField>,
    coords: Vec<Rat>,
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_field(&self.field, &other.field)
    }
}

pub fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl NfElem {
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rat>) -> Self {
        let coords = field.reduce(coords);
        NfElem { field: field.clone(), coords }
    }

    pub fn from_rat(field: &Arc<NumberField>, c: Rat) -> Self {
        let mut coords = vec![Rat::zero(); field.degree()];
        coords[0] = c;
        NfElem { field: field.clone(), coords }
    }

    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![Rat::zero(), Rat::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `Some(c)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            same_field(&self.field, &other.field),
            "arithmetic between elements of different number fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        NfElem { field: self.field.clone(), coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        NfElem { field: self.field.clone(), coords }
    }

    pub fn neg(&self) -> Self {
        NfElem { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        NfElem { field: self.field.clone(), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn add_rat(&self, c: &Rat) -> Self {
        let mut coords = self.coords.clone();
        coords[0] += c;
        NfElem { field: self.field.clone(), coords }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.coords.len();
        let mut prod = vec![Rat::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        NfElem { field: self.field.clone(), coords: self.field.reduce(prod) }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = NfElem::from_rat(&self.field, Rat::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the minimal polynomial.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.field.min_poly.clone();
        let a = trim(self.coords.clone());
        // invariant: s * a == r (mod m)
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (vec![], vec![Rat::one()]);
        while !(r1.len() == 1) {
            let (q, r) = divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // gcd non-trivial: minimal polynomial was reducible
                return None;
            }
        }
        let c = r1[0].clone();
        let coords: Vec<Rat> = s1.iter().map(|x| x / &c).collect();
        Some(NfElem::new(&self.field, coords))
    }

    /// Image under the field homomorphism sending the generator to `image`.
    pub fn map_generator(&self, image: &NfElem) -> NfElem {
        let target = image.field().clone();
        let mut acc = NfElem::from_rat(&target, Rat::zero());
        for c in self.coords.iter().rev() {
            acc = acc.mul(image).add_rat(c);
        }
        acc
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{}", c),
                1 if c.is_one() => self.field.gen_name.clone(),
                1 => format!("{}*{}", c, self.field.gen_name),
                _ if c.is_one() => format!("{}^{}", self.field.gen_name, i),
                _ => format!("{}*{}^{}", c, self.field.gen_name, i),
            };
            if first {
                write!(f, "{}", term)?;
            } else if let Some(stripped) = term.strip_prefix('-') {
                write!(f, " - {}", stripped)?;
            } else {
                write!(f, " + {}", term)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    let lb = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

/// Integer lcm of the denominators of the coordinates.
pub fn coords_denominator_lcm(coords: &[Rat]) -> BigInt {
    use num_integer::Integer;
    coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta12_pow(k: u64) -> NfElem {
        let k12 = NumberField::cyclotomic12();
        NfElem::generator(&k12).pow(k)
    }

    #[test]
    fn zeta12_sixth_power_is_minus_one() {
        // X^6 = X^2 * X^4 = X^2 (X^2 - 1) = X^4 - X^2 = -1
        let k12 = NumberField::cyclotomic12();
        assert_eq!(zeta12_pow(6), NfElem::from_rat(&k12, rat(-1)));
    }

    #[test]
    fn zeta12_ninth_power_squares_to_minus_one() {
        let k12 = NumberField::cyclotomic12();
        let i = zeta12_pow(9);
        assert_eq!(i.mul(&i), NfElem::from_rat(&k12, rat(-1)));
        assert_eq!(zeta12_pow(0), NfElem::from_rat(&k12, rat(1)));
    }

    #[test]
    fn sqrt_minus_two_in_zeta8() {
        let k8 = NumberField::cyclotomic8();
        let z = NfElem::generator(&k8);
        let s = z.add(&z.pow(3));
        assert_eq!(s.mul(&s), NfElem::from_rat(&k8, rat(-2)));
    }

    #[test]
    fn inverse_round_trip() {
        let k24 = NumberField::cyclotomic24();
        let z = NfElem::generator(&k24);
        let x = z.pow(5).add(&z.scale(&rat(3))).add_rat(&rat(-7));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), NfElem::from_rat(&k24, rat(1)));
    }

    #[test]
    fn long_reduction_matches_repeated_multiplication() {
        let k24 = NumberField::cyclotomic24();
        let z = NfElem::generator(&k24);
        let mut coords = vec![Rat::zero(); 40];
        coords[39] = rat(1);
        assert_eq!(NfElem::new(&k24, coords), z.pow(39));
    }

    #[test]
    fn generator_map_embeds_zeta12_in_zeta24() {
        let k12 = NumberField::cyclotomic12();
        let k24 = NumberField::cyclotomic24();
        let z24 = NfElem::generator(&k24);
        let img = z24.pow(2);
        let a = NfElem::generator(&k12).pow(4).add_rat(&rat(2));
        let b = NfElem::generator(&k12).pow(7);
        assert_eq!(
            a.mul(&b).map_generator(&img),
            a.map_generator(&img).mul(&b.map_generator(&img))
        );
    }

    #[test]
    fn non_monic_rejected() {
        assert!(NumberField::new(vec![rat(1), rat(2)], "g").is_err());
    }
}
