//! Scalar coefficients: rationals or elements of a number field.
//!
//! Values that happen to be rational are always stored as [`Coeff::Rat`],
//! so equality is representation equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::numfield::{same_field, NfElem, NumberField};
use crate::rational::{rat, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum Coeff {
    Rat(Rat),
    Alg(NfElem),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        Coeff::Rat(Rat::one())
    }

    pub fn int(n: i64) -> Self {
        Coeff::Rat(rat(n))
    }

    pub fn from_nf(e: NfElem) -> Self {
        match e.as_rational() {
            Some(r) => Coeff::Rat(r.clone()),
            None => Coeff::Alg(e),
        }
    }

    /// `gen^k` in the given field.
    pub fn gen_pow(field: &Arc<NumberField>, k: u64) -> Self {
        Coeff::from_nf(NfElem::generator(field).pow(k))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Alg(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Rat(r) if r.is_one())
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Coeff::Rat(r) => Some(r),
            Coeff::Alg(_) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Coeff::Rat(_) => None,
            Coeff::Alg(e) => Some(e.field()),
        }
    }

    /// Coordinates on the power basis of `field` (rationals embed as constants).
    pub fn coords_in(&self, field: &Arc<NumberField>) -> Vec<Rat> {
        match self {
            Coeff::Rat(r) => {
                let mut v = vec![Rat::zero(); field.degree()];
                v[0] = r.clone();
                v
            }
            Coeff::Alg(e) => e.coords().to_vec(),
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Alg(a), Coeff::Alg(b)) => same_field(a.field(), b.field()),
            _ => true,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(AlgebraError::Field("coefficients from different number fields".into()))
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            Coeff::Rat(r) if r.is_zero() => None,
            Coeff::Rat(r) => Some(Coeff::Rat(r.recip())),
            Coeff::Alg(e) => e.inv().map(Coeff::from_nf),
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Coeff::one();
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

    pub fn scale_rat(&self, r: &Rat) -> Self {
        match self {
            Coeff::Rat(a) => Coeff::Rat(a * r),
            Coeff::Alg(e) => {
                if r.is_zero() {
                    Coeff::zero()
                } else {
                    Coeff::Alg(e.scale(r))
                }
            }
        }
    }

    /// Image under the homomorphism sending the field generator to `image`.
    pub fn map_generator(&self, image: &NfElem) -> Self {
        match self {
            Coeff::Rat(r) => Coeff::Rat(r.clone()),
            Coeff::Alg(e) => Coeff::from_nf(e.map_generator(image)),
        }
    }

    /// Whether the printed form needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        match self {
            Coeff::Rat(_) => false,
            Coeff::Alg(e) => e.coords().iter().filter(|c| !c.is_zero()).count() > 1,
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl From<Rat> for Coeff {
    fn from(r: Rat) -> Self {
        Coeff::Rat(r)
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::int(n)
    }
}

impl From<NfElem> for Coeff {
    fn from(e: NfElem) -> Self {
        Coeff::from_nf(e)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Alg(a), Coeff::Rat(b)) | (Coeff::Rat(b), Coeff::Alg(a)) => {
                Coeff::Alg(a.add_rat(b))
            }
            (Coeff::Alg(a), Coeff::Alg(b)) => Coeff::from_nf(a.add(b)),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a - b),
            (Coeff::Alg(a), Coeff::Rat(b)) => Coeff::Alg(a.add_rat(&-b)),
            (Coeff::Rat(a), Coeff::Alg(b)) => Coeff::Alg(b.neg().add_rat(a)),
            (Coeff::Alg(a), Coeff::Alg(b)) => Coeff::from_nf(a.sub(b)),
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Alg(a), Coeff::Rat(b)) | (Coeff::Rat(b), Coeff::Alg(a)) => {
                if b.is_zero() {
                    Coeff::zero()
                } else {
                    Coeff::Alg(a.scale(b))
                }
            }
            (Coeff::Alg(a), Coeff::Alg(b)) => Coeff::from_nf(a.mul(b)),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Alg(a) => Coeff::Alg(a.neg()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(r) => write!(f, "{}", r),
            Coeff::Alg(e) => write!(f, "{}", e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_results_demote() {
        let k = NumberField::cyclotomic12();
        let i = Coeff::gen_pow(&k, 9);
        assert!(matches!(&i * &i, Coeff::Rat(_)));
        assert_eq!(&i * &i, Coeff::int(-1));
        assert_eq!(&i - &i, Coeff::zero());
    }

    #[test]
    fn mixed_fields_detected() {
        let a = Coeff::gen_pow(&NumberField::cyclotomic12(), 1);
        let b = Coeff::gen_pow(&NumberField::cyclotomic8(), 1);
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_add(&Coeff::int(3)).is_ok());
    }
}
