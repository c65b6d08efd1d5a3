//! Fast multiplication kernel for polynomials with rational coefficients.
//!
//! Exponent vectors are packed into a single `u128` whose bit fields are
//! wide enough for the product's degrees, so monomial multiplication becomes
//! integer addition. Coefficients are cleared to integers first so the inner
//! loop runs on `BigInt` without per-term gcds.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::Coeff;
use crate::mono::Mono;
use crate::rational::Rat;

struct Packing {
    shifts: Vec<u32>,
    masks: Vec<u128>,
}

impl Packing {
    /// Bit fields able to hold exponents up to `maxdeg[i]`; `None` if they do not fit.
    fn new(maxdeg: &[u32]) -> Option<Self> {
        let mut shifts = Vec::with_capacity(maxdeg.len());
        let mut masks = Vec::with_capacity(maxdeg.len());
        let mut at = 0u32;
        for &d in maxdeg {
            let bits = 32 - d.leading_zeros();
            shifts.push(at);
            masks.push(if bits == 0 { 0 } else { (1u128 << bits) - 1 });
            at += bits;
            if at > 128 {
                return None;
            }
        }
        Some(Packing { shifts, masks })
    }

    fn pack(&self, m: &Mono) -> u128 {
        m.0.iter()
            .zip(&self.shifts)
            .fold(0u128, |acc, (&e, &s)| acc | ((e as u128) << s))
    }

    fn unpack(&self, k: u128) -> Mono {
        Mono(
            self.shifts
                .iter()
                .zip(&self.masks)
                .map(|(&s, &m)| ((k >> s) & m) as u32)
                .collect(),
        )
    }
}

/// Integer image `(L * p, L)` of a rational-coefficient term list, with `L` the denominator lcm.
fn clear_denominators<'a>(terms: impl Iterator<Item = (&'a Mono, &'a Coeff)> + Clone) -> Option<(Vec<(&'a Mono, BigInt)>, BigInt)> {
    let mut l = BigInt::one();
    for (_, c) in terms.clone() {
        let r = c.as_rat()?;
        if !r.denom().is_one() {
            l = num_integer::Integer::lcm(&l, r.denom());
        }
    }
    let out = terms
        .map(|(m, c)| {
            let r = c.as_rat().unwrap();
            (m, r.numer() * (&l / r.denom()))
        })
        .collect();
    Some((out, l))
}

/// Product of two term maps over the same variables, or `None` when a
/// coefficient is algebraic or the exponents do not pack into 128 bits.
pub(crate) fn mul_rational(
    a: &BTreeMap<Mono, Coeff>,
    b: &BTreeMap<Mono, Coeff>,
    nvars: usize,
) -> Option<BTreeMap<Mono, Coeff>> {
    let mut maxdeg = vec![0u32; nvars];
    for (i, d) in maxdeg.iter_mut().enumerate() {
        let da = a.keys().map(|m| m.0[i]).max().unwrap_or(0);
        let db = b.keys().map(|m| m.0[i]).max().unwrap_or(0);
        *d = da.checked_add(db)?;
    }
    let pk = Packing::new(&maxdeg)?;
    let (ia, la) = clear_denominators(a.iter())?;
    let (ib, lb) = clear_denominators(b.iter())?;
    let pa: Vec<(u128, BigInt)> = ia.into_iter().map(|(m, c)| (pk.pack(m), c)).collect();
    let pb: Vec<(u128, BigInt)> = ib.into_iter().map(|(m, c)| (pk.pack(m), c)).collect();
    let (small, large) = if pa.len() <= pb.len() { (&pa, &pb) } else { (&pb, &pa) };
    let mut acc: HashMap<u128, BigInt> = HashMap::with_capacity(large.len() * 2);
    for (ka, ca) in small {
        for (kb, cb) in large {
            let p = ca * cb;
            match acc.entry(ka + kb) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(p);
                }
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += p;
                }
            }
        }
    }
    let l = la * lb;
    let unit = l.is_one();
    Some(
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let r = if unit { Rat::from_integer(c) } else { Rat::new(c, l.clone()) };
                (pk.unpack(k), Coeff::Rat(r))
            })
            .collect(),
    )
}
