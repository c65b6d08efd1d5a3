//! Certificates that a bivariate polynomial over `F_p` is absolutely
//! irreducible, or has no factor of degree one in `z`, over `F_p-bar(t)`.
//!
//! A simple root `alpha` of `P(z, t0)` lifts to a power series `phi(s)` with
//! `P(phi(s), t0 + s) = 0`. The absolutely irreducible factor through `phi` is
//! defined over the field of `alpha` and has `t`-degree at most `deg_t P`, so a
//! factor of `z`-degree `r` gives a relation `sum_{i<=r} c_i(s) phi^i = 0` with
//! `deg c_i <= deg_t P`. Showing that the truncated linear system for such
//! relations has only the trivial solution rules the factor out.

use crate::fp::{
    add_mod, factor_squarefree, inv_mod, is_squarefree, mul_mod, pmul, prem, pxgcd, sub_mod, trim, FpPoly,
};

/// Arithmetic in a finite field with elements of type `E`.
pub trait FiniteField {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_fp(&self, a: u64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug)]
pub struct Fp(pub u64);

impl FiniteField for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_fp(&self, a: u64) -> u64 {
        a % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.0)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// `F_p[y] / (f)` for a monic irreducible `f`; elements are reduced polynomials in `y`.
#[derive(Clone, Debug)]
pub struct Fq {
    pub p: u64,
    pub modulus: FpPoly,
}

impl Fq {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The class of `y`, a root of the modulus.
    pub fn generator(&self) -> FpPoly {
        let mut g = vec![0, 1];
        g = prem(&g, &self.modulus, self.p);
        g
    }
}

impl FiniteField for Fq {
    type E = FpPoly;
    fn zero(&self) -> FpPoly {
        vec![]
    }
    fn one(&self) -> FpPoly {
        vec![1]
    }
    fn from_fp(&self, a: u64) -> FpPoly {
        let mut v = vec![a % self.p];
        trim(&mut v);
        v
    }
    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        crate::fp::padd(a, b, self.p)
    }
    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        crate::fp::psub(a, b, self.p)
    }
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        prem(&pmul(a, b, self.p), &self.modulus, self.p)
    }
    fn inv(&self, a: &FpPoly) -> Option<FpPoly> {
        if a.is_empty() {
            return None;
        }
        let (g, s, _) = pxgcd(a, &self.modulus, self.p);
        if g.len() != 1 {
            return None;
        }
        let c = inv_mod(g[0], self.p)?;
        Some(prem(&crate::fp::pscale(&s, c, self.p), &self.modulus, self.p))
    }
    fn is_zero(&self, a: &FpPoly) -> bool {
        a.is_empty()
    }
}

/// Truncated power series `sum a_i s^i`, `i < prec`.
fn series_mul<F: FiniteField>(k: &F, a: &[F::E], b: &[F::E], prec: usize) -> Vec<F::E> {
    let mut out = vec![k.zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    out
}

fn series_inv<F: FiniteField>(k: &F, a: &[F::E], prec: usize) -> Option<Vec<F::E>> {
    let a0 = k.inv(a.first()?)?;
    let mut out = vec![k.zero(); prec];
    out[0] = a0.clone();
    for n in 1..prec {
        let mut acc = k.zero();
        for i in 1..=n.min(a.len() - 1) {
            acc = k.add(&acc, &k.mul(&a[i], &out[n - i]));
        }
        out[n] = k.sub(&k.zero(), &k.mul(&acc, &a0));
    }
    Some(out)
}

/// `(P(phi), P'(phi))` for `P = sum c_i(s) z^i`.
fn eval_with_derivative<F: FiniteField>(
    k: &F,
    coeffs: &[Vec<F::E>],
    phi: &[F::E],
    prec: usize,
) -> (Vec<F::E>, Vec<F::E>) {
    let mut val = vec![k.zero(); prec];
    let mut der = vec![k.zero(); prec];
    for c in coeffs.iter().rev() {
        der = series_mul(k, &der, phi, prec);
        for (d, v) in der.iter_mut().zip(&val) {
            *d = k.add(d, v);
        }
        val = series_mul(k, &val, phi, prec);
        for (v, x) in val.iter_mut().zip(c.iter()) {
            *v = k.add(v, x);
        }
    }
    (val, der)
}

/// Newton lifting of a simple root `alpha` of `P(z, t0)` to precision `prec`.
fn lift_root<F: FiniteField>(k: &F, coeffs: &[Vec<F::E>], alpha: F::E, prec: usize) -> Option<Vec<F::E>> {
    let mut phi = vec![alpha];
    let mut cur = 1;
    while cur < prec {
        cur = (2 * cur).min(prec);
        phi.resize(cur, k.zero());
        let (v, d) = eval_with_derivative(k, coeffs, &phi, cur);
        let step = series_mul(k, &v, &series_inv(k, &d, cur)?, cur);
        for (x, y) in phi.iter_mut().zip(&step) {
            *x = k.sub(x, y);
        }
    }
    Some(phi)
}

/// Rank of a matrix given by columns.
fn column_rank<F: FiniteField>(k: &F, mut cols: Vec<Vec<F::E>>) -> usize {
    let rows = cols.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut pivot_rows: Vec<usize> = Vec::new();
    for c in 0..cols.len() {
        // eliminate previous pivots from this column
        let (done, rest) = cols.split_at_mut(c);
        let col = &mut rest[0];
        for (pc, &pr) in done.iter().zip(&pivot_rows) {
            if pr == usize::MAX || k.is_zero(&col[pr]) {
                continue;
            }
            let f = col[pr].clone();
            for r in 0..rows {
                if !k.is_zero(&pc[r]) {
                    col[r] = k.sub(&col[r], &k.mul(&f, &pc[r]));
                }
            }
        }
        match (0..rows).find(|&r| !k.is_zero(&col[r]) && !pivot_rows.contains(&r)) {
            Some(r) => {
                let inv = k.inv(&col[r]).expect("nonzero pivot");
                for x in col.iter_mut() {
                    *x = k.mul(x, &inv);
                }
                pivot_rows.push(r);
                rank += 1;
            }
            None => pivot_rows.push(usize::MAX),
        }
    }
    rank
}

/// Whether some relation `sum_{i<=r} c_i(s) phi^i = 0` with `deg c_i <= bdeg`
/// survives truncation at `prec`; `false` proves there is none.
fn has_relation<F: FiniteField>(k: &F, phi: &[F::E], r: usize, bdeg: usize, prec: usize) -> bool {
    let mut cols = Vec::with_capacity((r + 1) * (bdeg + 1));
    let mut pw = vec![k.zero(); prec];
    pw[0] = k.one();
    for i in 0..=r {
        if i > 0 {
            pw = series_mul(k, &pw, phi, prec);
        }
        for j in 0..=bdeg {
            let mut col = vec![k.zero(); prec];
            col[j..].clone_from_slice(&pw[..prec - j]);
            cols.push(col);
        }
    }
    let n = cols.len();
    column_rank(k, cols) < n
}

/// A bivariate polynomial over `F_p` as `z`-coefficients, each a polynomial in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivariate {
    pub p: u64,
    pub coeffs: Vec<FpPoly>,
}

impl Bivariate {
    pub fn new(p: u64, mut coeffs: Vec<FpPoly>) -> Self {
        for c in coeffs.iter_mut() {
            trim(c);
        }
        while coeffs.last().is_some_and(|c| c.is_empty()) {
            coeffs.pop();
        }
        Bivariate { p, coeffs }
    }

    pub fn z_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn t_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Coefficients of `P(z, t0 + s)` in `s`.
    fn shifted(&self, t0: u64) -> Vec<FpPoly> {
        self.coeffs.iter().map(|c| taylor_shift(c, t0, self.p)).collect()
    }

    /// A `t0` in `start..start + tries` where `P(z, t0)` keeps its `z`-degree and
    /// is squarefree. Its existence shows the lift to characteristic zero has
    /// no repeated factor of positive `z`-degree.
    pub fn squarefree_specialization(&self, start: u64, tries: u64) -> Option<u64> {
        let d = self.z_degree();
        (start..start + tries).map(|t| t % self.p).find(|&t0| {
            let v = self.at(t0);
            v.len() == d + 1 && crate::fp::is_squarefree(&v, self.p)
        })
    }

    fn at(&self, t0: u64) -> FpPoly {
        let mut v: FpPoly = self.coeffs.iter().map(|c| crate::fp::peval(c, t0, self.p)).collect();
        trim(&mut v);
        v
    }
}

fn taylor_shift(c: &[u64], t0: u64, p: u64) -> FpPoly {
    // Horner in (s + t0)
    let mut out: FpPoly = vec![];
    for &a in c.iter().rev() {
        out = pmul(&out, &[t0 % p, 1], p);
        out = crate::fp::padd(&out, &[a], p);
    }
    out
}

/// What the relation search establishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorTest {
    /// No factor of any `z`-degree below the full degree.
    AbsolutelyIrreducible,
    /// No factor of `z`-degree one.
    NoLinearFactor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCertificate {
    pub certified: bool,
    pub t0: Option<u64>,
    /// Degrees of the roots of `P(z, t0)` that were lifted.
    pub root_degrees: Vec<usize>,
    pub precision: usize,
    pub detail: String,
}

/// Tries `t0 = start, start + 1, ...` (at most `tries` values) for a good
/// specialization and runs the relation test.
pub fn certify_bivariate(f: &Bivariate, test: FactorTest, start: u64, tries: u64) -> FactorCertificate {
    let p = f.p;
    let d = f.z_degree();
    let fail = |detail: String| FactorCertificate { certified: false, t0: None, root_degrees: vec![], precision: 0, detail };
    if d == 0 {
        return fail("constant in z".into());
    }
    if d == 1 {
        return match test {
            FactorTest::AbsolutelyIrreducible if content_is_trivial(f) => FactorCertificate {
                certified: true,
                t0: None,
                root_degrees: vec![],
                precision: 0,
                detail: "linear in z with trivial content".into(),
            },
            _ => fail("linear in z".into()),
        };
    }
    if !content_is_trivial(f) {
        return fail("nontrivial content in t".into());
    }
    let lc = &f.coeffs[d];
    let bdeg = f.t_degree();
    for t0 in (start..start.saturating_add(tries)).map(|t| t % p) {
        if crate::fp::peval(lc, t0, p) == 0 {
            continue;
        }
        let spec = f.at(t0);
        if spec.len() != d + 1 || !is_squarefree(&spec, p) {
            continue;
        }
        let factors = factor_squarefree(&spec, p);
        let chosen: Vec<&FpPoly> = match test {
            FactorTest::AbsolutelyIrreducible => factors.iter().take(1).collect(),
            FactorTest::NoLinearFactor => factors.iter().collect(),
        };
        let r = match test {
            FactorTest::AbsolutelyIrreducible => d - 1,
            FactorTest::NoLinearFactor => 1,
        };
        let shifted = f.shifted(t0);
        let unknowns = (r + 1) * (bdeg + 1);
        let mut prec = unknowns + 8;
        let mut ok = true;
        for g in &chosen {
            let found = if g.len() == 2 {
                let k = Fp(p);
                let alpha = sub_mod(0, mul_mod(g[0], inv_mod(g[1], p).unwrap(), p), p);
                relation_with_retry(&k, &lift_coeffs(&k, &shifted), alpha, r, bdeg, &mut prec)
            } else {
                let k = Fq { p, modulus: (*g).clone() };
                let alpha = k.generator();
                relation_with_retry(&k, &lift_coeffs(&k, &shifted), alpha, r, bdeg, &mut prec)
            };
            if found {
                ok = false;
                break;
            }
        }
        let root_degrees = chosen.iter().map(|g| g.len() - 1).collect();
        return FactorCertificate {
            certified: ok,
            t0: Some(t0),
            root_degrees,
            precision: prec,
            detail: if ok {
                format!("no relation of z-degree <= {r} with t-degree <= {bdeg}")
            } else {
                format!("a relation of z-degree <= {r} persists at precision {prec}")
            },
        };
    }
    fail(format!("no good specialization among {tries} values of t"))
}

fn lift_coeffs<F: FiniteField>(k: &F, shifted: &[FpPoly]) -> Vec<Vec<F::E>> {
    shifted.iter().map(|c| c.iter().map(|&a| k.from_fp(a)).collect()).collect()
}

/// Runs the relation test, doubling the precision once before reporting a relation.
fn relation_with_retry<F: FiniteField>(
    k: &F,
    coeffs: &[Vec<F::E>],
    alpha: F::E,
    r: usize,
    bdeg: usize,
    prec: &mut usize,
) -> bool {
    for attempt in 0..2 {
        if attempt == 1 {
            *prec *= 2;
        }
        let Some(phi) = lift_root(k, coeffs, alpha.clone(), *prec) else {
            return true;
        };
        if !has_relation(k, &phi, r, bdeg, *prec) {
            return false;
        }
    }
    true
}

/// The gcd of the `z`-coefficients is a constant.
fn content_is_trivial(f: &Bivariate) -> bool {
    let mut g: FpPoly = vec![];
    for c in &f.coeffs {
        g = crate::fp::pgcd(&g, c, f.p);
        if g.len() == 1 {
            return true;
        }
    }
    g.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 10007;

    /// Coefficients of `z` from a list of (z-degree, t-degree, coefficient) terms.
    fn biv(terms: &[(usize, usize, i64)]) -> Bivariate {
        let dz = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![vec![]; dz + 1];
        for &(i, j, c) in terms {
            let v = &mut coeffs[i];
            if v.len() <= j {
                v.resize(j + 1, 0);
            }
            v[j] = add_mod(v[j], c.rem_euclid(P as i64) as u64, P);
        }
        Bivariate::new(P, coeffs)
    }

    #[test]
    fn field_extension_arithmetic() {
        // F_p[y]/(y^2 + 1) with p = 3 mod 4
        let k = Fq { p: 10007, modulus: vec![1, 0, 1] };
        let y = k.generator();
        assert_eq!(k.mul(&y, &y), k.from_fp(10006));
        let a = vec![3, 5];
        assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
    }

    #[test]
    fn series_root_of_a_square_root() {
        // z^2 - (1 + s) has the root 1 + s/2 - s^2/8 + ...
        let k = Fp(P);
        let coeffs = vec![vec![P - 1, P - 1], vec![], vec![1]];
        let phi = lift_root(&k, &coeffs, 1, 4).unwrap();
        let half = inv_mod(2, P).unwrap();
        let eighth = inv_mod(8, P).unwrap();
        assert_eq!(phi[..3], [1, half, P - eighth]);
        let sq = series_mul(&k, &phi, &phi, 4);
        assert_eq!(sq, vec![1, 1, 0, 0]);
    }

    #[test]
    fn irreducible_curves_are_certified() {
        // z^2 - t^3 - 1 (an elliptic curve) and z^3 + t z + t^2 + 1
        for f in [biv(&[(2, 0, 1), (0, 3, -1), (0, 0, -1)]), biv(&[(3, 0, 1), (1, 1, 1), (0, 2, 1), (0, 0, 1)])] {
            let c = certify_bivariate(&f, FactorTest::AbsolutelyIrreducible, 1, 50);
            assert!(c.certified, "{c:?}");
            assert!(certify_bivariate(&f, FactorTest::NoLinearFactor, 1, 50).certified);
        }
    }

    #[test]
    fn reducible_curves_are_not_certified() {
        // (z - t)(z + t + 1) and z^2 - t^2 (absolutely reducible)
        let a = biv(&[(2, 0, 1), (1, 0, 1), (0, 2, -1), (0, 1, -1)]);
        let b = biv(&[(2, 0, 1), (0, 2, -1)]);
        for f in [a, b] {
            assert!(!certify_bivariate(&f, FactorTest::AbsolutelyIrreducible, 1, 50).certified);
            assert!(!certify_bivariate(&f, FactorTest::NoLinearFactor, 1, 50).certified);
        }
    }

    #[test]
    fn irreducible_over_fp_but_not_absolutely() {
        // z^2 + t^2 with p = 3 mod 4: irreducible over F_p(t), splits over F_p^2
        let f = biv(&[(2, 0, 1), (0, 2, 1)]);
        let c = certify_bivariate(&f, FactorTest::AbsolutelyIrreducible, 1, 50);
        assert!(!c.certified, "{c:?}");
        assert_eq!(c.root_degrees, vec![2]);
        assert!(!certify_bivariate(&f, FactorTest::NoLinearFactor, 1, 50).certified);
    }

    #[test]
    fn quadratic_factors_without_linear_ones() {
        // (z^2 - t)(z^2 - t - 1): no linear factor, not irreducible
        let f = biv(&[(4, 0, 1), (2, 1, -2), (2, 0, -1), (0, 2, 1), (0, 1, 1)]);
        assert!(!certify_bivariate(&f, FactorTest::AbsolutelyIrreducible, 1, 50).certified);
        assert!(certify_bivariate(&f, FactorTest::NoLinearFactor, 1, 50).certified);
    }

    #[test]
    fn content_in_t_blocks_certification() {
        // t (z^2 - t^3 - 1)
        let f = biv(&[(2, 1, 1), (0, 4, -1), (0, 1, -1)]);
        let c = certify_bivariate(&f, FactorTest::AbsolutelyIrreducible, 1, 50);
        assert!(!c.certified);
        assert!(c.detail.contains("content"));
    }
}
