//! Rational-number helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_bigint(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parses `"p"` or `"p/q"` in decimal.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Least common multiple of the denominators.
pub fn denom_lcm<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Greatest common divisor of the numerators (nonnegative; zero for an empty input).
pub fn numer_gcd<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
}

/// Ceiling of a rational number.
pub fn ceil_rat(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

pub fn abs_rat(r: &Rat) -> Rat {
    r.abs()
}

/// Reduces `r` modulo the prime `p`; `None` when `p` divides the denominator.
pub fn rat_mod_p(r: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb);
    if d.is_zero() {
        return None;
    }
    let n = r.numer().mod_floor(&pb);
    let n: u64 = n.try_into().ok()?;
    let d: u64 = d.try_into().ok()?;
    Some(crate::fp::mul_mod(n, crate::fp::inv_mod(d, p)?, p))
}

/// Rational reconstruction: the unique `n/d` with `|n|, d <= sqrt(p/2)` and
/// `n = a d mod p`, if one exists.
pub fn rat_reconstruct(a: u64, p: u64) -> Option<Rat> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if s1 == 0 || s1.abs() > bound {
        return None;
    }
    let (n, d) = if s1 < 0 { (-r1, -s1) } else { (r1, s1) };
    Some(Rat::new(BigInt::from(n), BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_inverts_reduction() {
        let p = 1_000_000_007u64;
        for (n, d) in [(3i64, 7i64), (-22, 5), (0, 1), (12345, 678)] {
            let r = Rat::new(BigInt::from(n), BigInt::from(d));
            assert_eq!(rat_reconstruct(rat_mod_p(&r, p).unwrap(), p), Some(r));
        }
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rat("-3/6"), Some(frac(-1, 2)));
        assert_eq!(parse_rat("7"), Some(rat(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(rat_mod_p(&frac(1, 2), 13), Some(7));
        assert_eq!(rat_mod_p(&frac(1, 13), 13), None);
        assert_eq!(rat_mod_p(&rat(-1), 13), Some(12));
    }
}
