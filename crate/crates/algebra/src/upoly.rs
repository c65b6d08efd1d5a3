//! Dense univariate polynomials over [`Coeff`], stored from the constant term upwards.

use crate::coeff::Coeff;

pub type UPoly = Vec<Coeff>;

pub fn trim(a: &mut UPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn add(a: &[Coeff], b: &[Coeff]) -> UPoly {
    let n = a.len().max(b.len());
    let z = Coeff::zero();
    let mut out: UPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[Coeff], b: &[Coeff]) -> UPoly {
    let n = a.len().max(b.len());
    let z = Coeff::zero();
    let mut out: UPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    trim(&mut out);
    out
}

pub fn scale(a: &[Coeff], c: &Coeff) -> UPoly {
    let mut out: UPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[Coeff], b: &[Coeff]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Coeff::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder over the coefficient field.
pub fn divrem(a: &[Coeff], b: &[Coeff]) -> (UPoly, UPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let inv = b[db].inv().unwrap();
    let mut q = vec![Coeff::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] = &r[k + j] - &(&c * bj);
                }
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn monic(a: &[Coeff]) -> UPoly {
    match a.last() {
        None => vec![],
        Some(l) => scale(a, &l.inv().unwrap()),
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Coeff], b: &[Coeff]) -> UPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = divrem(&x, &y).1;
        x = y;
        y = monic(&r);
    }
    monic(&x)
}

/// Extended gcd: `(g, s, t)` with `s*a + t*b = g` and `g` monic.
pub fn xgcd(a: &[Coeff], b: &[Coeff]) -> (UPoly, UPoly, UPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (UPoly, UPoly) = (vec![Coeff::one()], vec![]);
    let (mut t0, mut t1): (UPoly, UPoly) = (vec![], vec![Coeff::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last().cloned() {
        None => (vec![], s0, t0),
        Some(l) => {
            let inv = l.inv().unwrap();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn eval(a: &[Coeff], x: &Coeff) -> Coeff {
    a.iter().rev().fold(Coeff::zero(), |acc, c| &(&acc * x) + c)
}

pub fn deriv(a: &[Coeff]) -> UPoly {
    let mut out: UPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale_rat(&crate::rational::rat(i as i64)))
        .collect();
    trim(&mut out);
    out
}

pub fn degree(a: &[Coeff]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> UPoly {
        v.iter().map(|&x| Coeff::int(x)).collect()
    }

    #[test]
    fn gcd_of_products() {
        let a = mul(&ints(&[1, 1]), &ints(&[-2, 0, 1]));
        let b = mul(&ints(&[1, 1]), &ints(&[3, 1]));
        assert_eq!(gcd(&a, &b), ints(&[1, 1]));
        let (g, s, t) = xgcd(&a, &b);
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
    }
}
