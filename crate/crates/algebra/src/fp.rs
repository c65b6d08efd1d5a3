//! Arithmetic in prime fields `F_p` (p < 2^63) and dense univariate polynomials over them.
//!
//! Polynomials are coefficient vectors from the constant term upwards with no
//! trailing zeros; the zero polynomial is the empty vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub type FpPoly = Vec<u64>;

pub fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn padd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn psub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

pub fn pscale(a: &[u64], c: u64, p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().map(|&x| mul_mod(x, c, p)).collect();
    trim(&mut out);
    out
}

pub fn pmul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    // accumulate with periodic reduction to stay within u128
    let limit = u128::MAX / (pp * pp).max(1) - 1;
    let mut count = 0u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x as u128 * y as u128;
        }
        count += 1;
        if count >= limit {
            for v in acc.iter_mut() {
                *v %= pp;
            }
            count = 0;
        }
    }
    let mut out: FpPoly = acc.into_iter().map(|v| (v % pp) as u64).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder.
pub fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).unwrap();
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + db], inv, p);
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = sub_mod(r[k + j], mul_mod(c, bj, p), p);
            }
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn prem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    pdivrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => vec![],
        Some(&l) => pscale(a, inv_mod(l, p).unwrap(), p),
    }
}

/// Monic gcd.
pub fn pgcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = prem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn pxgcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (vec![], s0, t0),
        Some(&l) => {
            let inv = inv_mod(l, p).unwrap();
            (pscale(&r0, inv, p), pscale(&s0, inv, p), pscale(&t0, inv, p))
        }
    }
}

pub fn peval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

pub fn pderiv(a: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
        .collect();
    trim(&mut out);
    out
}

/// `base^e mod m`.
pub fn ppowmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> FpPoly {
    let mut acc = prem(&[1], m, p);
    let mut b = prem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = prem(&pmul(&acc, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = prem(&pmul(&b, &b, p), m, p);
        }
    }
    acc
}

/// Product of the distinct linear factors of `a`: `gcd(a, x^p - x)`.
pub fn linear_part(a: &[u64], p: u64) -> FpPoly {
    let a = monic(a, p);
    if a.len() <= 1 {
        return vec![1];
    }
    let xp = ppowmod(&[0, 1], p as u128, &a, p);
    let h = psub(&xp, &[0, 1], p);
    pgcd(&a, &h, p)
}

/// Distinct roots of `a` in `F_p`, sorted ascending.
pub fn roots(a: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    if a.is_empty() {
        return vec![];
    }
    let g = linear_part(&a, p);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    split_linear(&g, p, &mut rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(g: &[u64], p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => return,
        2 => {
            out.push(neg_mod(mul_mod(g[0], inv_mod(g[1], p).unwrap(), p), p));
            return;
        }
        _ => {}
    }
    if p == 2 {
        for x in 0..2 {
            if peval(g, x, 2) == 0 {
                out.push(x);
            }
        }
        return;
    }
    loop {
        let a = rng.gen_range(0..p);
        let h = ppowmod(&[a, 1], ((p - 1) / 2) as u128, g, p);
        let h = psub(&h, &[1], p);
        let d = pgcd(g, &h, p);
        if d.len() > 1 && d.len() < g.len() {
            let (q, _) = pdivrem(g, &d, p);
            split_linear(&d, p, rng, out);
            split_linear(&q, p, rng, out);
            return;
        }
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(factor, multiplicity)`.
pub fn squarefree(a: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let a = monic(a, p);
    let mut out = Vec::new();
    if a.len() <= 1 {
        return out;
    }
    let d = pderiv(&a, p);
    if d.is_empty() {
        // a = b(x^p)
        let b: FpPoly = a.iter().step_by(p as usize).copied().collect();
        for (f, m) in squarefree(&b, p) {
            out.push((f, m * p as usize));
        }
        return out;
    }
    let mut c = pgcd(&a, &d, p);
    let mut w = pdivrem(&a, &c, p).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = pgcd(&w, &c, p);
        let z = pdivrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = pdivrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        let b: FpPoly = c.iter().step_by(p as usize).copied().collect();
        for (f, m) in squarefree(&b, p) {
            out.push((f, m * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(a: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = monic(a, p);
    let mut h: FpPoly = vec![0, 1];
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = ppowmod(&h, p as u128, &f, p);
        let g = pgcd(&f, &psub(&h, &[0, 1], p), p);
        if g.len() > 1 {
            f = pdivrem(&f, &g, p).0;
            h = prem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus) of a product of degree-`d` irreducibles.
pub fn equal_degree(a: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = a.len() - 1;
    if n == d {
        return vec![monic(a, p)];
    }
    loop {
        let r: FpPoly = {
            let mut v: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
            trim(&mut v);
            v
        };
        if r.len() <= 1 {
            continue;
        }
        let g = if p == 2 {
            // trace map r + r^2 + ... + r^(2^(d-1))
            let mut acc = r.clone();
            let mut cur = r.clone();
            for _ in 1..d {
                cur = prem(&pmul(&cur, &cur, p), a, p);
                acc = padd(&acc, &cur, p);
            }
            pgcd(a, &acc, p)
        } else {
            let e = (pow_u128(p, d) - 1) / 2;
            let h = psub(&ppowmod(&r, e, a, p), &[1], p);
            pgcd(a, &h, p)
        };
        if g.len() > 1 && g.len() < a.len() {
            let q = pdivrem(a, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&q, d, p, rng));
            return out;
        }
    }
}

fn pow_u128(p: u64, d: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..d {
        acc = acc.checked_mul(p as u128).expect("field size overflow");
    }
    acc
}

/// Monic irreducible factors of a squarefree polynomial, sorted by (degree, coefficients).
pub fn factor_squarefree(a: &[u64], p: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7 ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(a, p) {
        out.extend(equal_degree(&g, d, p, &mut rng));
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

/// Whether a squarefree-tested polynomial is squarefree.
pub fn is_squarefree(a: &[u64], p: u64) -> bool {
    let d = pderiv(a, p);
    !d.is_empty() && pgcd(a, &d, p).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn roots_of_x4_minus_x2_plus_1_mod_13() {
        let r = roots(&[1, 0, 12, 0, 1], 13);
        assert_eq!(r.len(), 4);
        assert!(r.contains(&2));
        for x in r {
            assert_eq!(peval(&[1, 0, 12, 0, 1], x, 13), 0);
        }
    }

    #[test]
    fn factorization_reassembles() {
        let p = 101;
        // (x^2+1)(x^3+x+1)(x-5)
        let f = pmul(&pmul(&[1, 0, 1], &[1, 1, 0, 1], p), &[p - 5, 1], p);
        let fs = factor_squarefree(&f, p);
        let prod = fs.iter().fold(vec![1u64], |acc, g| pmul(&acc, g, p));
        assert_eq!(prod, monic(&f, p));
        assert!(fs.iter().all(|g| g.len() <= 4));
    }

    #[test]
    fn xgcd_identity() {
        let p = 97;
        let a = vec![3, 0, 5, 1];
        let b = vec![7, 2, 1];
        let (g, s, t) = pxgcd(&a, &b, p);
        assert_eq!(padd(&pmul(&s, &a, p), &pmul(&t, &b, p), p), g);
    }

    #[test]
    fn squarefree_decomposition() {
        let p = 7;
        let f = pmul(&pmul(&[1, 1], &[1, 1], p), &[2, 1], p);
        let sf = squarefree(&f, p);
        assert!(sf.contains(&(vec![1, 1], 2)));
        assert!(sf.contains(&(vec![2, 1], 1)));
    }
}
