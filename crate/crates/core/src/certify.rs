//! Irreducibility certificates for the halving and thirding curves
//! `F_m(z, t) - x(Q) G_m(z, t) = 0`, where `x(mR) = F_m/G_m` on the short model
//! and `Q` runs over `H_3` modulo `2 H_3` (duplication, `t^24 = lambda`) or
//! `H_1` modulo `3 H_1` (triplication, `t^12 = lambda`).
//!
//! Certificates are obtained modulo a prime `p = 1 mod 12` through a degree
//! one place of `Q(zeta_12)`: if the reduction keeps its bidegree and total
//! degree and is absolutely irreducible (or has no factor of degree one in
//! `z`), so is the polynomial in characteristic zero.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use cubic_algebra::absfactor::{certify_bivariate, Bivariate, FactorTest};
use cubic_algebra::fp::{is_prime, pow_mod, roots as fp_roots};
use cubic_algebra::resultant::gcd;
use cubic_algebra::roots::polynomial_roots;
use cubic_algebra::rational::{denom_lcm, rat_from_bigint, rat_mod_p};
use cubic_algebra::{Coeff, MultiPoly, NumberField, RationalFunction};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::curves::divpoly::x_mult_map_in;
use crate::curves::models::{e0_short, k12, over_root, t_power, T};
use crate::curves::CurvePoint;
use crate::error::{Error, Result};
use crate::sections::{mw_point, MWElement, Model};

pub const ZV: &str = "z";
/// Default lower bound for certification primes.
pub const DEFAULT_PRIME_FLOOR: u64 = 10_000;
/// Default upper bound for the prime search.
pub const DEFAULT_PRIME_CAP: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseKind {
    Duplication,
    Triplication,
}

impl CaseKind {
    pub fn multiplier(self) -> u32 {
        match self {
            CaseKind::Duplication => 2,
            CaseKind::Triplication => 3,
        }
    }

    /// `n` with `t^n = lambda`.
    pub fn base_exponent(self) -> u32 {
        match self {
            CaseKind::Duplication => 24,
            CaseKind::Triplication => 12,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dup" | "duplication" => Ok(CaseKind::Duplication),
            "trip" | "triplication" => Ok(CaseKind::Triplication),
            _ => Err(Error::Argument(format!("unknown case kind {s:?} (expected dup or trip)"))),
        }
    }
}

/// Duplication: `(i, j, l, t1, t2)` for `iP + jR1 + lR2 + t1 T1 + t2 T2`, entries in `{0, 1}`.
/// Triplication: `(i, t1, t2)` for `iP + t1 T1 + t2 T2`, `i in {0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseDescriptor {
    pub kind: CaseKind,
    pub coeffs: Vec<u8>,
}

impl CaseDescriptor {
    pub fn new(kind: CaseKind, coeffs: Vec<u8>) -> Result<Self> {
        let ok = match kind {
            CaseKind::Duplication => coeffs.len() == 5 && coeffs.iter().all(|&c| c <= 1),
            CaseKind::Triplication => coeffs.len() == 3 && coeffs[0] <= 2 && coeffs[1] <= 1 && coeffs[2] <= 1,
        };
        if !ok {
            return Err(Error::Argument(format!("coefficients {coeffs:?} out of range for {kind:?}")));
        }
        Ok(CaseDescriptor { kind, coeffs })
    }

    /// All cases in the order of the nested loops.
    pub fn all(kind: CaseKind) -> Vec<CaseDescriptor> {
        let mut out = Vec::new();
        match kind {
            CaseKind::Duplication => {
                for n in 0..32u8 {
                    out.push(CaseDescriptor { kind, coeffs: (0..5).rev().map(|b| (n >> b) & 1).collect() });
                }
            }
            CaseKind::Triplication => {
                for i in 0..3 {
                    for t1 in 0..2 {
                        for t2 in 0..2 {
                            out.push(CaseDescriptor { kind, coeffs: vec![i, t1, t2] });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The combination as a Mordell–Weil element over `K_12`.
    pub fn element(&self) -> MWElement {
        let c: Vec<i64> = self.coeffs.iter().map(|&x| x as i64).collect();
        match self.kind {
            CaseKind::Duplication => MWElement::new([c[0], c[1], c[2]], [c[3], c[4]]),
            CaseKind::Triplication => MWElement::new([c[0], 0, 0], [c[1], c[2]]),
        }
    }
}

impl fmt::Display for CaseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            CaseKind::Duplication => "dup",
            CaseKind::Triplication => "trip",
        };
        let c: Vec<String> = self.coeffs.iter().map(u8::to_string).collect();
        write!(f, "{k}({})", c.join(","))
    }
}

/// A prime `p = 1 mod 12` with a root of `X^4 - X^2 + 1`, the image of `zeta_12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteFieldCtx {
    pub p: u64,
    pub root: u64,
}

impl FiniteFieldCtx {
    /// Image of an element of `Q` or `Q(zeta_12)`; `None` if a denominator is divisible by `p`.
    pub fn reduce(&self, c: &Coeff, field: &Arc<NumberField>) -> Option<u64> {
        let mut acc = 0u64;
        for (i, q) in c.coords_in(field).iter().enumerate() {
            let v = rat_mod_p(q, self.p)?;
            let term = cubic_algebra::fp::mul_mod(v, pow_mod(self.root, i as u64, self.p), self.p);
            acc = cubic_algebra::fp::add_mod(acc, term, self.p);
        }
        Some(acc)
    }
}

/// The smallest prime `p >= floor`, `p = 1 mod 12`, with its smallest root of `X^4 - X^2 + 1`.
pub fn choose_prime(floor: u64, cap: u64) -> Result<FiniteFieldCtx> {
    let mut p = floor.max(2);
    p += (13 - p % 12) % 12;
    while p <= cap {
        if is_prime(p) {
            let mut r = fp_roots(&[1, 0, p - 1, 0, 1], p);
            r.sort_unstable();
            let root = *r.first().ok_or_else(|| Error::Internal(format!("X^4 - X^2 + 1 does not split mod {p}")))?;
            return Ok(FiniteFieldCtx { p, root });
        }
        p += 12;
    }
    Err(Error::Config(format!("no prime = 1 mod 12 in [{floor}, {cap}]")))
}

/// The next admissible prime after `ctx`.
pub fn next_prime(ctx: &FiniteFieldCtx, cap: u64) -> Result<FiniteFieldCtx> {
    choose_prime(ctx.p + 1, cap)
}

/// The point of `E(K_n)` in the short model, `n` the base exponent of the case.
pub fn case_point(c: &CaseDescriptor) -> Result<CurvePoint> {
    let q = mw_point(&c.element(), Model::AppendixShort)?;
    Ok(match c.kind {
        CaseKind::Duplication => q.subs(T, &t_power(2)),
        CaseKind::Triplication => q,
    })
}

/// `x(mR) = F_m/G_m` on `y^2 = x^3 - 27(1 + 3 lambda) x - 54(1 - 9 lambda)`, `lambda = t^n`, in `(z, t)`.
pub fn mult_map(kind: CaseKind) -> Result<RationalFunction> {
    let e = over_root(&e0_short(), kind.base_exponent());
    x_mult_map_in(&e, kind.multiplier() as i64, ZV)
}

/// Numerator of `F_m/G_m - x(Q)` with rational denominators cleared; for the
/// trivial combination `Q = O` nothing is subtracted.
pub fn build_case_poly(c: &CaseDescriptor) -> Result<MultiPoly> {
    let map = mult_map(c.kind)?;
    let vs = map.vars().clone();
    let diff = match case_point(c)? {
        CurvePoint::Infinity => map,
        CurvePoint::Affine { x, .. } => &map - &x.with_vars(&vs),
    };
    Ok(clear_denominators(diff.num()))
}

fn clear_denominators(p: &MultiPoly) -> MultiPoly {
    let k = k12();
    let coords: Vec<_> = p.terms().flat_map(|(_, c)| c.coords_in(&k)).collect();
    let l = denom_lcm(coords.iter());
    p.scale(&Coeff::from(rat_from_bigint(l)))
}

/// `(z-degree, t-degree, total degree)`.
pub fn degrees(p: &MultiPoly) -> (u32, u32, u32) {
    let zi = p.vars().iter().position(|v| v == ZV);
    let ti = p.vars().iter().position(|v| v == T);
    let mut out = (0, 0, 0);
    for (m, _) in p.terms() {
        let ez = zi.map_or(0, |i| m.0[i]);
        let et = ti.map_or(0, |i| m.0[i]);
        out = (out.0.max(ez), out.1.max(et), out.2.max(ez + et));
    }
    out
}

/// Reduction of a polynomial in `(z, t)` modulo the place of `ctx`, checking
/// that no denominator vanishes and that all three degrees are preserved.
pub fn reduce_case_poly(p: &MultiPoly, ctx: &FiniteFieldCtx) -> Result<Bivariate> {
    let k = k12();
    let zi = p.vars().iter().position(|v| v == ZV).ok_or_else(|| Error::Argument("no variable z".into()))?;
    let ti = p.vars().iter().position(|v| v == T);
    if p.vars().len() > 1 + ti.is_some() as usize {
        return Err(Error::Argument(format!("unexpected variables in {:?}", p.vars())));
    }
    let (dz, dt, _) = degrees(p);
    let mut coeffs = vec![vec![0u64; dt as usize + 1]; dz as usize + 1];
    let mut total = 0;
    for (m, c) in p.terms() {
        let v = ctx
            .reduce(c, &k)
            .ok_or_else(|| Error::Verification(format!("a coefficient has a denominator divisible by {}", ctx.p)))?;
        let (ez, et) = (m.0[zi] as usize, ti.map_or(0, |i| m.0[i] as usize));
        coeffs[ez][et] = v;
        if v != 0 {
            total = total.max(ez + et);
        }
    }
    let b = Bivariate::new(ctx.p, coeffs);
    if (b.z_degree() as u32, b.t_degree() as u32, total as u32) != degrees(p) {
        return Err(Error::Verification(format!("the reduction mod {} drops a degree", ctx.p)));
    }
    Ok(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// No root `z(t)` in the algebraic closure's function field: all the argument needs.
    NoLinearFactor,
    /// Absolute irreducibility, as in the original verification.
    GeometricIrreducibility,
}

impl Mode {
    fn test(self) -> FactorTest {
        match self {
            Mode::NoLinearFactor => FactorTest::NoLinearFactor,
            Mode::GeometricIrreducibility => FactorTest::AbsolutelyIrreducible,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The property of the mode holds in characteristic zero.
    Certified,
    /// The polynomial has a repeated factor; its radical is certified for the
    /// mode (absolutely irreducible, or without linear factor).
    NotReduced(String),
    /// Exact factor in characteristic zero.
    Reducible(String),
    /// No prime in the retry list gave a certificate.
    Inconclusive(String),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }

    /// Whether the zero locus has no component of degree one in `z`.
    pub fn no_linear_factor(&self) -> bool {
        matches!(self, Verdict::Certified | Verdict::NotReduced(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::NotReduced(_) => "not reduced",
            Verdict::Reducible(_) => "reducible",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: CaseDescriptor,
    pub mode: Mode,
    pub verdict: Verdict,
    /// Prime that produced the certificate, if any.
    pub prime: Option<u64>,
    pub degrees: (u32, u32, u32),
    /// Whether the polynomial is squarefree in characteristic zero.
    pub reduced: bool,
    pub detail: String,
    pub millis: u128,
}

impl CaseReport {
    pub fn to_json(&self) -> Value {
        let info = match &self.verdict {
            Verdict::Certified => String::new(),
            Verdict::NotReduced(s) | Verdict::Reducible(s) | Verdict::Inconclusive(s) => s.clone(),
        };
        json!({
            "case": self.case.to_string(),
            "coefficients": self.case.coeffs,
            "mode": format!("{:?}", self.mode),
            "verdict": self.verdict.label(),
            "info": info,
            "prime": self.prime,
            "degrees": {"z": self.degrees.0, "t": self.degrees.1, "total": self.degrees.2},
            "reduced": self.reduced,
            "detail": self.detail,
            "millis": self.millis,
        })
    }
}

/// The repeated part `gcd(P, dP/dz)` and the radical of `P`. A squarefree
/// specialization modulo `ctx` settles the reduced case without the exact gcd.
pub fn radical(p: &MultiPoly, ctx: Option<&FiniteFieldCtx>) -> Result<(MultiPoly, MultiPoly)> {
    if let Some(b) = ctx.and_then(|c| reduce_case_poly(p, c).ok()) {
        if b.squarefree_specialization(1, 50).is_some() {
            return Ok((MultiPoly::one(p.vars()), p.clone()));
        }
    }
    let h = gcd(p, &p.diff(ZV));
    if degrees(&h).0 == 0 {
        return Ok((MultiPoly::one(p.vars()), p.clone()));
    }
    Ok((h.clone(), clear_denominators(&p.exact_div(&h)?)))
}

/// Roots `z = r(t)` in `Q(zeta_12)[t]`, when the leading coefficient in `z` is constant.
pub fn polynomial_linear_factors(p: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let zi = p.var_index(ZV).ok_or_else(|| Error::Argument("no variable z".into()))?;
    let cs = p.coeffs_at(zi);
    if !cs.last().is_some_and(MultiPoly::is_constant) {
        return Ok(Vec::new());
    }
    Ok(polynomial_roots(p, ZV, Some(T), Some(&k12()))?.roots)
}

fn linear_factor_label(roots: &[MultiPoly]) -> String {
    let fs: Vec<String> = roots.iter().map(|r| format!("z - ({r})")).collect();
    format!("linear factor {}", fs.join(", "))
}

/// The verdict labels of the linear factors `z - x(T)` for the nonzero 2-torsion
/// points `T`: such roots are the solutions `Q = T` of `3Q = T`, already in `H_1`.
pub fn torsion_linear_factors(kind: CaseKind) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for t in [[1, 0], [0, 1], [1, 1]] {
        let q = mw_point(&MWElement::new([0; 3], t), Model::AppendixShort)?;
        let q = match kind {
            CaseKind::Duplication => q.subs(T, &t_power(2)),
            CaseKind::Triplication => q,
        };
        if let Some(x) = q.x() {
            let vs = cubic_algebra::vars(&[ZV, T]);
            out.push(linear_factor_label(&[x.with_vars(&vs).num().clone()]));
        }
    }
    Ok(out)
}

/// Certifies one case modulo `ctx`, moving on to the following primes (up to
/// `retries` more) when a prime is inadmissible or inconclusive. The modular
/// test runs on the radical; repeated factors and roots in `Q(zeta_12)[t]` are
/// exhibited exactly.
pub fn certify_case(c: &CaseDescriptor, ctx: &FiniteFieldCtx, mode: Mode, retries: usize) -> Result<CaseReport> {
    let start = Instant::now();
    let poly = build_case_poly(c)?;
    let degs = degrees(&poly);
    let (repeated, rad) = radical(&poly, Some(ctx))?;
    let reduced = degrees(&repeated).0 == 0;
    let mut report = CaseReport {
        case: c.clone(),
        mode,
        verdict: Verdict::Inconclusive(String::new()),
        prime: None,
        degrees: degs,
        reduced,
        detail: String::new(),
        millis: 0,
    };
    let mut ctx = *ctx;
    let mut notes = Vec::new();
    let mut certified = false;
    for attempt in 0..=retries {
        if attempt > 0 {
            ctx = next_prime(&ctx, DEFAULT_PRIME_CAP)?;
        }
        let red = match reduce_case_poly(&rad, &ctx) {
            Ok(b) => b,
            Err(e) => {
                notes.push(format!("p = {}: {e}", ctx.p));
                continue;
            }
        };
        let cert = certify_bivariate(&red, mode.test(), 1, 200);
        if cert.certified {
            certified = true;
            report.prime = Some(ctx.p);
            notes.push(format!(
                "p = {}, t0 = {:?}, roots of degree {:?}: {}",
                ctx.p, cert.t0, cert.root_degrees, cert.detail
            ));
            break;
        }
        notes.push(format!("p = {}: {}", ctx.p, cert.detail));
    }
    let linear = if certified { Vec::new() } else { polynomial_linear_factors(&rad)? };
    report.verdict = if let Some(f) = trivial_case_factor(c)? {
        // the literal numerator is F_m; the solutions of mQ = O are cut out by G_m
        notes.insert(0, format!("numerator F_{} {}", c.kind.multiplier(), if certified { "certified" } else { "not certified" }));
        Verdict::Reducible(f)
    } else if !linear.is_empty() {
        Verdict::Reducible(linear_factor_label(&linear))
    } else if !certified {
        Verdict::Inconclusive(notes.join("; "))
    } else if !reduced && mode == Mode::GeometricIrreducibility {
        Verdict::NotReduced(format!("repeated factor {repeated}"))
    } else {
        Verdict::Certified
    };
    report.detail = notes.join("; ");
    report.millis = start.elapsed().as_millis();
    Ok(report)
}

/// For the trivial combination the solutions are the points with `mR = O`,
/// cut out by `G_m`; returns its factorization exhibited exactly.
pub fn trivial_case_factor(c: &CaseDescriptor) -> Result<Option<String>> {
    if !c.is_trivial() {
        return Ok(None);
    }
    let g = mult_map(c.kind)?.den().clone();
    let vs = g.vars().clone();
    let z = MultiPoly::var(&vs, ZV);
    Ok(match c.kind {
        CaseKind::Duplication => {
            // x(T1) = 6
            let lin = &z - &MultiPoly::constant(&vs, Coeff::int(6));
            let q = g.exact_div(&lin)?;
            (degrees(&q).0 > 0).then(|| format!("G_2 = ({lin}) * ({q})"))
        }
        CaseKind::Triplication => {
            // G_3 = psi_3^2 is a square
            let h = gcd(&g, &g.diff(ZV));
            (degrees(&h).0 > 0).then(|| format!("G_3 has the repeated factor {h}"))
        }
    })
}

/// All cases of one kind, certified in parallel and reported in loop order.
pub fn certify_lemma(kind: CaseKind, mode: Mode, ctx: &FiniteFieldCtx, retries: usize) -> Result<Vec<CaseReport>> {
    let mut out: Vec<CaseReport> = CaseDescriptor::all(kind)
        .par_iter()
        .map(|c| certify_case(c, ctx, mode, retries))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(out)
}

#[cfg(test)]
mod tests;
