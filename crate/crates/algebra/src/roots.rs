//! Roots in `k[t]` (or in `k`) of polynomials `f(x) in k[t][x]` whose leading
//! coefficient in `x` is a nonzero constant, so that every root in `k(t)` is a
//! polynomial of bounded degree.
//!
//! Candidates are found by reducing modulo primes that split the defining
//! polynomial of `k`, Hensel-lifting roots of `f(x, t0)` in `F_p[[t - t0]]`,
//! interpolating across the embeddings of `k`, and rationally reconstructing the
//! coordinates. Only roots verified by exact substitution are returned.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{AlgebraError, Result};
use crate::fp::{self, FpPoly};
use crate::numfield::{NfElem, NumberField};
use crate::rational::{denom_lcm, rat_mod_p, rat_reconstruct, Rat};
use crate::resultant::squarefree_part_in;
use crate::{Coeff, Mono, MultiPoly};

/// Number of primes at which the root count is cross-checked.
pub const CHECK_PRIMES: usize = 3;

const PRIME_START: u64 = (1 << 62) - 1;
const MAX_PARTIAL: usize = 1 << 20;
/// Window for the scaled first coordinate when matching embeddings.
const MATCH_WINDOW: u64 = 1 << 40;

#[derive(Clone, Debug)]
pub struct RootSearch {
    /// Verified roots, as polynomials over the input's variables not involving `x`.
    pub roots: Vec<MultiPoly>,
    /// Degree bound on roots in `t`.
    pub degree_bound: u32,
    /// `(p, number of roots of degree <= bound in F_p[t])` under one embedding.
    pub prime_counts: Vec<(u64, usize)>,
}

impl RootSearch {
    /// Whether every prime saw exactly as many roots as were verified over `k`.
    pub fn counts_agree(&self) -> bool {
        self.prime_counts.iter().all(|&(_, c)| c == self.roots.len())
    }
}

/// Roots of `f` in `x` lying in `k[t]` (`t = None`: roots in `k`), where `k` is
/// `field` or `Q`. All coefficients of `f` must lie in `k`.
pub fn polynomial_roots(
    f: &MultiPoly,
    x: &str,
    t: Option<&str>,
    field: Option<&Arc<NumberField>>,
) -> Result<RootSearch> {
    let xi = f
        .var_index(x)
        .ok_or_else(|| AlgebraError::Field(format!("variable {x} is not in {:?}", f.vars())))?;
    let ti = t.and_then(|t| f.var_index(t));
    for v in f.support_vars() {
        if v != xi && Some(v) != ti {
            return Err(AlgebraError::Field(format!("unexpected variable {}", f.vars()[v])));
        }
    }
    if f.is_zero() {
        return Err(AlgebraError::Degree("every element is a root of the zero polynomial".into()));
    }
    let field = field.cloned().or_else(|| f.field());
    let f = squarefree_part_in(f, x);
    let cs = f.coeffs_at(xi);
    let deg = cs.len() - 1;
    if !cs[deg].is_constant() {
        return Err(AlgebraError::Degree("leading coefficient in x must be constant".into()));
    }
    let tdeg = |c: &MultiPoly| ti.and_then(|i| c.degree_at(i)).unwrap_or(0) as usize;
    let bound = (0..deg).filter(|&i| !cs[i].is_zero()).map(|i| tdeg(&cs[i]) / (deg - i)).max().unwrap_or(0);
    let mut out = RootSearch { roots: Vec::new(), degree_bound: bound as u32, prime_counts: Vec::new() };
    if deg == 0 {
        out.prime_counts = vec![(0, 0); CHECK_PRIMES];
        return Ok(out);
    }

    // g(y) = L^deg f(y / L) / lc(f) is monic with integral coordinates; x = y / L
    let lc = cs[deg].constant_value().expect("checked constant");
    let lc_inv = lc.inv().expect("nonzero leading coefficient");
    let monic: Vec<MultiPoly> = cs.iter().map(|c| c.scale(&lc_inv)).collect();
    let scale = coordinate_denominator(&monic, field.as_ref());
    let cs: Vec<MultiPoly> =
        monic.iter().enumerate().map(|(i, c)| c.scale_rat(&num_traits::pow(scale.clone(), deg - i))).collect();
    let g = MultiPoly::from_coeffs_at(f.vars(), xi, &cs);
    let index = field.as_ref().map_or(BigInt::one(), index_bound);

    let mut primes = Vec::new();
    let mut cand = PRIME_START;
    while primes.len() < CHECK_PRIMES {
        if PRIME_START - cand > 1 << 24 {
            return Err(AlgebraError::Field("no admissible prime: coefficients outside the given field?".into()));
        }
        cand -= 2;
        if !fp::is_prime(cand) {
            continue;
        }
        if let Some(spec) = Specialization::new(&cs, ti, field.as_ref(), cand) {
            primes.push(spec);
        }
    }

    // candidate search at the first prime: roots under each embedding, matched
    // across embeddings by a small first coordinate at t = 1, then reconstructed
    let first = &primes[0];
    let per_embedding: Vec<Vec<FpPoly>> =
        first.reduced.iter().map(|fx| fp_roots(fx, bound, first.p)).collect();
    if per_embedding.iter().all(|r| !r.is_empty()) {
        for tuple in matched_tuples(&per_embedding, first, index)? {
            let tuple: Vec<&FpPoly> = tuple.iter().enumerate().map(|(j, &i)| &per_embedding[j][i]).collect();
            let Some(y) = reconstruct(&tuple, first, field.as_ref(), &g, ti) else {
                continue;
            };
            if !g.subs(x, &y).is_zero() {
                continue;
            }
            let r = y.scale_rat(&(Rat::one() / &scale));
            if !out.roots.contains(&r) && f.subs(x, &r).is_zero() {
                out.roots.push(r);
            }
        }
    }
    out.prime_counts.push((first.p, per_embedding[0].len()));
    for spec in &primes[1..] {
        out.prime_counts.push((spec.p, fp_roots(&spec.reduced[0], bound, spec.p).len()));
    }
    out.roots.sort_by_key(|a| a.to_string());
    Ok(out)
}

/// Common denominator of all coordinates of all coefficients.
fn coordinate_denominator(cs: &[MultiPoly], field: Option<&Arc<NumberField>>) -> Rat {
    let coords: Vec<Rat> = cs
        .iter()
        .flat_map(|c| c.terms().map(|(_, a)| a.clone()).collect::<Vec<_>>())
        .flat_map(|a| match field {
            Some(k) => a.coords_in(k),
            None => a.as_rat().cloned().into_iter().collect(),
        })
        .collect();
    Rat::from_integer(denom_lcm(&coords))
}

/// A multiple of the index of `Z[gen]` in the ring of integers: `|disc(m)|` when the
/// defining polynomial is integral, else 1 (matching may then miss roots, never invent them).
fn index_bound(k: &Arc<NumberField>) -> BigInt {
    if !k.min_poly().iter().all(|c| c.is_integer()) {
        return BigInt::one();
    }
    let vs = crate::vars(&["X"]);
    let m = MultiPoly::from_coeffs_in(
        &vs,
        "X",
        &k.min_poly().iter().map(|c| MultiPoly::constant(&vs, Coeff::Rat(c.clone()))).collect::<Vec<_>>(),
    );
    let disc = crate::resultant::resultant(&m, &m.diff("X"), "X")
        .ok()
        .and_then(|r| r.constant_value())
        .and_then(|c| c.as_rat().cloned())
        .unwrap_or_else(Rat::one);
    disc.numer().abs().max(BigInt::one())
}

/// Index tuples (one root per embedding) whose interpolated first coordinate at
/// `t = 1`, times `index`, lies within the matching window.
fn matched_tuples(sets: &[Vec<FpPoly>], spec: &Specialization, index: BigInt) -> Result<Vec<Vec<usize>>> {
    let p = spec.p;
    let d = sets.len();
    let idx_mod = (index % BigInt::from(p)).try_into().unwrap_or(1u64);
    // w0[j] = index * (V^-1)[0][j]
    let w0: Vec<u64> = (0..d)
        .map(|j| {
            let mut e = vec![0; d];
            e[j] = 1;
            let col = if d == 1 { vec![1] } else { vandermonde_solve(&spec.images, &e, p).expect("distinct images") };
            fp::mul_mod(col[0], idx_mod, p)
        })
        .collect();
    let at_one = |r: &FpPoly| r.iter().fold(0, |acc, &c| fp::add_mod(acc, c, p));
    let partials = |range: std::ops::Range<usize>| -> Result<Vec<(u64, Vec<usize>)>> {
        let mut out = vec![(0u64, Vec::new())];
        for j in range {
            let mut next = Vec::with_capacity(out.len() * sets[j].len());
            for (acc, idx) in &out {
                for (i, r) in sets[j].iter().enumerate() {
                    let mut idx = idx.clone();
                    idx.push(i);
                    next.push((fp::add_mod(*acc, fp::mul_mod(w0[j], at_one(r), p), p), idx));
                }
            }
            if next.len() > MAX_PARTIAL {
                return Err(AlgebraError::Degree(format!("{} partial embedding matches exceed the limit", next.len())));
            }
            out = next;
        }
        Ok(out)
    };
    let h = d / 2;
    let left = partials(0..h)?;
    let mut right = partials(h..d)?;
    right.sort_by_key(|(v, _)| *v);
    let keys: Vec<u64> = right.iter().map(|(v, _)| *v).collect();
    let window = MATCH_WINDOW.min(p / 4);
    let mut out = Vec::new();
    for (l, lidx) in &left {
        let target = fp::neg_mod(*l, p);
        let lo = fp::sub_mod(target, window, p);
        let hi = fp::add_mod(target, window, p);
        let ranges = if lo <= hi { vec![(lo, hi)] } else { vec![(lo, p - 1), (0, hi)] };
        for (a, b) in ranges {
            let start = keys.partition_point(|&v| v < a);
            let stop = keys.partition_point(|&v| v <= b);
            for (_, ridx) in &right[start..stop] {
                let mut idx = lidx.clone();
                idx.extend_from_slice(ridx);
                out.push(idx);
            }
        }
    }
    Ok(out)
}

/// `f` reduced modulo `p` under each embedding `gen -> r_j` of `k` into `F_p`.
struct Specialization {
    p: u64,
    images: Vec<u64>,
    /// per embedding, per power of `x`, a polynomial in `t`
    reduced: Vec<Vec<FpPoly>>,
}

impl Specialization {
    fn new(cs: &[MultiPoly], ti: Option<usize>, field: Option<&Arc<NumberField>>, p: u64) -> Option<Self> {
        let images = match field {
            None => vec![0],
            Some(k) => {
                let m: Option<Vec<u64>> = k.min_poly().iter().map(|c| rat_mod_p(c, p)).collect();
                let r = fp::roots(&m?, p);
                if r.len() != k.degree() {
                    return None;
                }
                r
            }
        };
        let mut reduced = Vec::new();
        for &r in &images {
            let mut fx = Vec::with_capacity(cs.len());
            for c in cs {
                let mut poly: FpPoly = Vec::new();
                for (m, a) in c.terms() {
                    let e = ti.map_or(0, |i| m.0[i]) as usize;
                    if poly.len() <= e {
                        poly.resize(e + 1, 0);
                    }
                    poly[e] = fp::add_mod(poly[e], coeff_mod(a, field, r, p)?, p);
                }
                fp::trim(&mut poly);
                fx.push(poly);
            }
            if fx.last().is_none_or(|lc| lc.is_empty()) {
                return None;
            }
            reduced.push(fx);
        }
        Some(Specialization { p, images, reduced })
    }
}

fn coeff_mod(c: &Coeff, field: Option<&Arc<NumberField>>, r: u64, p: u64) -> Option<u64> {
    match (c, field) {
        (Coeff::Rat(q), _) => rat_mod_p(q, p),
        (Coeff::Alg(e), Some(_)) => {
            let mut acc = 0;
            let mut pw = 1;
            for q in e.coords() {
                acc = fp::add_mod(acc, fp::mul_mod(rat_mod_p(q, p)?, pw, p), p);
                pw = fp::mul_mod(pw, r, p);
            }
            Some(acc)
        }
        (Coeff::Alg(_), None) => None,
    }
}

/// Roots of degree `<= bound` in `F_p[t]` of `sum fx[i] x^i`, verified exactly.
fn fp_roots(fx: &[FpPoly], bound: usize, p: u64) -> Vec<FpPoly> {
    let deg = fx.len() - 1;
    let at = |t0: u64| -> FpPoly {
        let mut u: FpPoly = fx.iter().map(|c| fp::peval(c, t0, p)).collect();
        fp::trim(&mut u);
        u
    };
    let Some(t0) = (0..p.min(4096)).find(|&t0| {
        let u = at(t0);
        u.len() == deg + 1 && fp::is_squarefree(&u, p)
    }) else {
        return Vec::new();
    };
    let u = at(t0);
    let du = fp::pderiv(&u, p);
    let shifted: Vec<FpPoly> = fx.iter().map(|c| taylor_shift(c, t0, p)).collect();
    let mut out = Vec::new();
    for r0 in fp::roots(&u, p) {
        let inv = fp::inv_mod(fp::peval(&du, r0, p), p).expect("simple root");
        let mut series = vec![r0];
        for k in 1..=bound {
            let val = horner_trunc(&shifted, &series, k + 1, p);
            let ek = val.get(k).copied().unwrap_or(0);
            series.push(fp::neg_mod(fp::mul_mod(ek, inv, p), p));
        }
        let mut root = taylor_shift(&series, fp::neg_mod(t0, p), p);
        fp::trim(&mut root);
        if horner(fx, &root, p).is_empty() {
            out.push(root);
        }
    }
    out.sort();
    out
}

/// `a(y + c)` as a polynomial in `y`.
fn taylor_shift(a: &[u64], c: u64, p: u64) -> FpPoly {
    let mut b = a.to_vec();
    let n = b.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            b[j] = fp::add_mod(b[j], fp::mul_mod(c, b[j + 1], p), p);
        }
    }
    fp::trim(&mut b);
    b
}

fn horner(fx: &[FpPoly], x: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = Vec::new();
    for c in fx.iter().rev() {
        acc = fp::padd(&fp::pmul(&acc, x, p), c, p);
    }
    acc
}

fn horner_trunc(fx: &[FpPoly], x: &[u64], prec: usize, p: u64) -> FpPoly {
    let mut acc: FpPoly = Vec::new();
    for c in fx.iter().rev() {
        let mut prod = fp::pmul(&acc, x, p);
        prod.truncate(prec);
        let mut cc = c.clone();
        cc.truncate(prec);
        acc = fp::padd(&prod, &cc, p);
    }
    acc
}

/// Interpolates one root per embedding into a polynomial over `k` and
/// reconstructs its rational coordinates.
fn reconstruct(
    tuple: &[&FpPoly],
    spec: &Specialization,
    field: Option<&Arc<NumberField>>,
    f: &MultiPoly,
    ti: Option<usize>,
) -> Option<MultiPoly> {
    let p = spec.p;
    let d = tuple.len();
    let len = tuple.iter().map(|r| r.len()).max().unwrap_or(0);
    if len > 1 && ti.is_none() {
        return None;
    }
    let n = f.nvars();
    let mut out = MultiPoly::zero(f.vars());
    for e in 0..len {
        let values: Vec<u64> = tuple.iter().map(|r| r.get(e).copied().unwrap_or(0)).collect();
        let coords = if d == 1 { values } else { vandermonde_solve(&spec.images, &values, p)? };
        let rats: Option<Vec<Rat>> = coords.iter().map(|&c| rat_reconstruct(c, p)).collect();
        let rats = rats?;
        let c = match field {
            Some(k) => Coeff::from_nf(NfElem::new(k, rats)),
            None => Coeff::Rat(rats.into_iter().next()?),
        };
        let mut m = Mono::one(n);
        if let Some(i) = ti {
            m.0[i] = e as u32;
        }
        out.add_term(m, c);
    }
    Some(out)
}

/// Solves `sum_k c_k r_j^k = v_j` modulo `p`.
fn vandermonde_solve(r: &[u64], v: &[u64], p: u64) -> Option<Vec<u64>> {
    let d = r.len();
    let mut m: Vec<Vec<u64>> = (0..d)
        .map(|j| {
            let mut row: Vec<u64> = (0..d).map(|k| fp::pow_mod(r[j], k as u64, p)).collect();
            row.push(v[j]);
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&i| m[i][col] != 0)?;
        m.swap(col, piv);
        let inv = fp::inv_mod(m[col][col], p)?;
        for x in m[col].iter_mut() {
            *x = fp::mul_mod(*x, inv, p);
        }
        for i in 0..d {
            if i != col && m[i][col] != 0 {
                let factor = m[i][col];
                for k in col..=d {
                    let sub = fp::mul_mod(factor, m[col][k], p);
                    m[i][k] = fp::sub_mod(m[i][k], sub, p);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_poly, vars};

    #[test]
    fn rational_polynomial_roots() {
        let vs = vars(&["x", "t"]);
        let f = parse_poly("(x - t^2 + 3)*(2*x + t)*(x^2 - t)", &vs, None).unwrap();
        let s = polynomial_roots(&f, "x", Some("t"), None).unwrap();
        let want: Vec<MultiPoly> = ["t^2 - 3", "-1/2*t"].iter().map(|e| parse_poly(e, &vs, None).unwrap()).collect();
        assert_eq!(s.roots.len(), 2);
        for w in &want {
            assert!(s.roots.contains(w), "{w} missing from {:?}", s.roots);
        }
        assert!(s.counts_agree());
    }

    #[test]
    fn roots_needing_the_number_field() {
        let k = NumberField::cyclotomic12();
        let vs = vars(&["x", "t"]);
        // x^2 + t^2 splits only once i = zeta^3 is available
        let f = parse_poly("x^2 + t^2", &vs, None).unwrap();
        let over_q = polynomial_roots(&f, "x", Some("t"), None).unwrap();
        assert!(over_q.roots.is_empty());
        let over_k = polynomial_roots(&f, "x", Some("t"), Some(&k)).unwrap();
        assert_eq!(over_k.roots.len(), 2);
        for r in &over_k.roots {
            assert!(f.subs("x", r).is_zero());
        }
    }

    #[test]
    fn roots_in_the_constant_field() {
        let k = NumberField::cyclotomic12();
        let vs = vars(&["x"]);
        let f = parse_poly("x^4 - x^2 + 1", &vs, None).unwrap();
        let s = polynomial_roots(&f, "x", None, Some(&k)).unwrap();
        assert_eq!(s.roots.len(), 4);
        assert!(s.counts_agree());
    }

    #[test]
    fn many_roots_and_fractional_coordinates() {
        let k = NumberField::cyclotomic12();
        let vs = vars(&["x"]);
        let f = parse_poly("x^13 - x", &vs, None).unwrap();
        let s = polynomial_roots(&f, "x", None, Some(&k)).unwrap();
        assert_eq!(s.roots.len(), 13);
        assert!(s.counts_agree());

        let vs = vars(&["x", "t"]);
        let f = parse_poly("(3*x - zeta)*(x - 2*zeta^2*t + 1/5)*(x^2 - zeta*t)", &vs, Some(&k)).unwrap();
        let s = polynomial_roots(&f, "x", Some("t"), None).unwrap();
        let want: Vec<MultiPoly> =
            ["1/3*zeta", "2*zeta^2*t - 1/5"].iter().map(|e| parse_poly(e, &vs, Some(&k)).unwrap()).collect();
        assert_eq!(s.roots.len(), 2, "{:?}", s.roots);
        for w in &want {
            assert!(s.roots.contains(w));
        }
    }

    #[test]
    fn nonconstant_leading_coefficient_is_rejected() {
        let vs = vars(&["x", "t"]);
        let f = parse_poly("t*x - 1", &vs, None).unwrap();
        assert!(polynomial_roots(&f, "x", Some("t"), None).is_err());
    }
}
