//! Counting periodic points of the multiplier family and the resulting
//! Riemann–Hurwitz lower bounds on genera of `X_1(N)`, `X_0(N)`, `P_1(N)`.
//!
//! For `N = 2n` the multiplier map `X_1(N) -> P^1` has `omega(n)` points
//! above a generic multiplier, where `omega` is obtained from the total count
//! `2n 3^n` by Dirichlet inversion against `beta`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::dynamics::{divisors, mobius};
use crate::error::{Error, Result};

/// Dirichlet inverse of [`beta`]: `theta(m) = mobius(m) * beta(m)`, so
/// `theta(2) = 0` and `theta(p) = -p` for odd primes.
///
/// `theta` is multiplicative but vanishes on odd non-squarefree arguments
/// (`theta(9) = 0`); the completely multiplicative extension (`theta(9) = 9`)
/// would break the convolution identity with `beta` from `n = 9` on.
pub fn theta(m: u32) -> BigInt {
    assert!(m >= 1, "theta is defined on positive integers");
    if m.is_multiple_of(2) {
        return BigInt::zero();
    }
    BigInt::from(mobius(m)) * BigInt::from(m)
}

/// `beta(m) = m` for odd `m`, zero otherwise.
pub fn beta(m: u32) -> BigInt {
    assert!(m >= 1, "beta is defined on positive integers");
    if m.is_multiple_of(2) {
        BigInt::zero()
    } else {
        BigInt::from(m)
    }
}

/// `2 d 3^d`.
fn points_on_fibre(d: u32) -> BigInt {
    BigInt::from(2u32 * d) * BigInt::from(3u32).pow(d)
}

/// Number of exact `n`-cycles with multiplier constraint over a generic fibre.
pub fn omega(n: u32) -> BigInt {
    assert!(n >= 1, "omega is defined on positive integers");
    divisors(n)
        .into_iter()
        .map(|d| theta(n / d) * points_on_fibre(d))
        .sum()
}

/// `sum_{d | n} beta(n/d) omega(d)`; equals `2 n 3^n`.
pub fn beta_convolution(n: u32) -> BigInt {
    divisors(n).into_iter().map(|d| beta(n / d) * omega(d)).sum()
}

/// Whether a bound is known to be the exact genus or only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    LowerBound,
    /// Lower bound quoted as a constant rather than recomputed.
    Supplied,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::LowerBound => "lower_bound",
            Provenance::Supplied => "supplied",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusBound {
    pub value: BigInt,
    pub provenance: Provenance,
}

impl GenusBound {
    fn new(value: BigInt, provenance: Provenance) -> Self {
        GenusBound { value, provenance }
    }

    fn to_json(&self) -> Value {
        json!({"value": self.value.to_string(), "provenance": self.provenance.as_str()})
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusRow {
    pub n: u32,
    pub x1: GenusBound,
    pub x0: Option<GenusBound>,
    pub p1: Option<GenusBound>,
}

impl GenusRow {
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "X1": self.x1.to_json(),
            "X0": self.x0.as_ref().map(GenusBound::to_json),
            "P1": self.p1.as_ref().map(GenusBound::to_json),
        })
    }
}

/// Smallest integer `g` with `2g - 2 >= num / den`, clamped at zero.
fn genus_from_euler(num: BigInt, den: BigInt) -> BigInt {
    // 2g >= num/den + 2  <=>  g >= (num + 2 den) / (2 den)
    let g = (num + BigInt::from(2) * &den).div_ceil(&(BigInt::from(2) * den));
    if g.is_negative() {
        BigInt::zero()
    } else {
        g
    }
}

/// Lower bounds on the genera for period `N`.
///
/// The bound for `X_1(2n)` uses `2g - 2 >= omega(n) - 4N`, which is what the
/// Riemann–Hurwitz argument delivers and what reproduces the known values;
/// the weaker closed form `omega(n)/2 + 1 - 2n` would give smaller numbers.
pub fn genus_bounds(n_period: i64) -> Result<GenusRow> {
    if n_period <= 0 {
        return Err(Error::Argument(format!("period must be positive, got {n_period}")));
    }
    let big_n = n_period as u32;
    let exact = |g: u32| GenusBound::new(BigInt::from(g), Provenance::Exact);
    match big_n {
        1 => return Ok(GenusRow { n: 1, x1: exact(0), x0: Some(exact(0)), p1: Some(exact(0)) }),
        2 => return Ok(GenusRow { n: 2, x1: exact(1), x0: Some(exact(1)), p1: Some(exact(0)) }),
        _ => {}
    }
    // 2g - 2 >= N - 4 for every N
    let generic = genus_from_euler(BigInt::from(big_n) - 4, BigInt::one());
    if big_n % 2 == 1 {
        let x1 = if big_n == 3 {
            GenusBound::new(BigInt::from(5).max(generic), Provenance::Supplied)
        } else {
            GenusBound::new(generic, Provenance::LowerBound)
        };
        return Ok(GenusRow { n: big_n, x1, x0: None, p1: None });
    }
    let w = omega(big_n / 2);
    let nn = BigInt::from(big_n);
    let x0 = genus_from_euler(&w - BigInt::from(4) * &nn, nn.clone());
    let x1 = genus_from_euler(&w - BigInt::from(4) * &nn, BigInt::one()).max(generic);
    let p1 = genus_from_euler(&w - BigInt::from(4) * &nn, BigInt::from(2));
    Ok(GenusRow {
        n: big_n,
        x1: GenusBound::new(x1, Provenance::LowerBound),
        x0: Some(GenusBound::new(x0, Provenance::LowerBound)),
        p1: Some(GenusBound::new(p1, Provenance::LowerBound)),
    })
}

pub fn genus_table(max_n: u32) -> Result<Vec<GenusRow>> {
    (1..=max_n as i64).map(genus_bounds).collect()
}

/// Markdown rendering with one column per period.
pub fn table_markdown(rows: &[GenusRow]) -> String {
    let cell = |b: &Option<GenusBound>| match b {
        None => String::new(),
        Some(b) if b.provenance == Provenance::Exact => format!("**{}**", b.value),
        Some(b) => b.value.to_string(),
    };
    let mut out = String::from("| N |");
    for r in rows {
        out += &format!(" {} |", r.n);
    }
    out += "\n|---|";
    out += &"---|".repeat(rows.len());
    for (label, pick) in [
        ("X_1(N)", &(|r: &GenusRow| Some(r.x1.clone())) as &dyn Fn(&GenusRow) -> Option<GenusBound>),
        ("X_0(N)", &|r: &GenusRow| r.x0.clone()),
        ("P_1(N)", &|r: &GenusRow| r.p1.clone()),
    ] {
        out += &format!("\n| {label} |");
        for r in rows {
            out += &format!(" {} |", cell(&pick(r)));
        }
    }
    out.push('\n');
    out
}

/// Bezout count `4n 3^n` and the number `2n 3^n` of points on `V_n` over a
/// generic multiplier; `omega(n)` equals the latter exactly when `n` is a
/// power of two.
pub fn bezout_counts(n: u32) -> (BigInt, BigInt) {
    assert!(n >= 1, "bezout_counts needs n >= 1");
    let three_n = BigInt::from(3u32).pow(n);
    let total = BigInt::from(4u32 * n) * &three_n;
    let cycles = BigInt::from(2u32 * n) * three_n;
    let w = omega(n);
    debug_assert!(w <= cycles);
    debug_assert_eq!(w == cycles, n.is_power_of_two());
    (total, cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn small_values() {
        assert_eq!(theta(2), b(0));
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(theta(p), b(-(p as i64)));
        }
        assert_eq!(omega(1), b(6));
        assert_eq!(omega(2), b(36));
        assert_eq!(omega(3), b(144));
    }

    #[test]
    fn theta_multiplicative_and_inverse_to_beta() {
        for a in 1..=50u32 {
            for c in 1..=50u32 {
                if num_integer::gcd(a, c) == 1 {
                    assert_eq!(theta(a * c), theta(a) * theta(c), "{a} {c}");
                }
            }
        }
        // the completely multiplicative extension would give 9 here
        assert_eq!(theta(9), b(0));
        for n in 1..=50u32 {
            let conv: BigInt = divisors(n).into_iter().map(|d| theta(d) * beta(n / d)).sum();
            assert_eq!(conv, if n == 1 { b(1) } else { b(0) }, "n = {n}");
        }
    }

    #[test]
    fn dirichlet_identity_and_growth() {
        for n in 1..=12u32 {
            let target = BigInt::from(2 * n) * BigInt::from(3).pow(n);
            assert_eq!(beta_convolution(n), target, "n = {n}");
            assert!(omega(n) >= BigInt::from(n) * BigInt::from(3).pow(n));
        }
    }

    #[test]
    fn table_rows() {
        let expect: [(i64, i64, Option<i64>, Option<i64>); 8] = [
            (1, 0, Some(0), Some(0)),
            (2, 1, Some(1), Some(0)),
            (3, 5, None, None),
            (4, 11, Some(4), Some(6)),
            (5, 2, None, None),
            (6, 61, Some(11), Some(31)),
            (7, 3, None, None),
            (8, 309, Some(40), Some(155)),
        ];
        for (n, x1, x0, p1) in expect {
            let row = genus_bounds(n).unwrap();
            assert_eq!(row.x1.value, b(x1), "X1({n})");
            assert_eq!(row.x0.map(|g| g.value), x0.map(b), "X0({n})");
            assert_eq!(row.p1.map(|g| g.value), p1.map(b), "P1({n})");
        }
        assert_eq!(genus_bounds(3).unwrap().x1.provenance, Provenance::Supplied);
        assert!(genus_bounds(0).is_err());
    }

    #[test]
    fn bezout() {
        assert_eq!(bezout_counts(1), (b(12), b(6)));
        assert_eq!(bezout_counts(2), (b(72), b(36)));
        assert_eq!(bezout_counts(3), (b(324), b(162)));
        // 6 beta(3) + omega(3) accounts for every point on V_3
        assert_eq!(b(6) * beta(3) + omega(3), b(162));
    }

    #[test]
    fn markdown_has_all_columns() {
        let md = table_markdown(&genus_table(8).unwrap());
        assert!(md.contains("| 309 |"));
        assert_eq!(md.lines().count(), 5);
    }
}
