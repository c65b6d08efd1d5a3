//! Local reduction data at the places of `k(t)`, Fastenberg's rank bound,
//! Shioda's rank formula and the height pairing.
//!
//! The residue fields have characteristic zero, so Tate's algorithm reduces to
//! reading the Kodaira type off `v(Delta)` and `v(j)` of a minimal model, and
//! a minimal model is the short model `Y^2 = X^3 - 27 c4 X - 54 c6` scaled by
//! `pi^k` with `k = min(floor(v(c4)/4), floor(v(c6)/6))`. All local quantities
//! below are valuations, shifted by the weights of that scaling.

use std::fmt;
use std::sync::Arc;

use cubic_algebra::resultant::squarefree_part_in;
use cubic_algebra::roots::polynomial_roots;
use cubic_algebra::{frac, rat, Coeff, MultiPoly, NumberField, Rat, RationalFunction};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::curves::models::k12;
use crate::curves::{CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};

/// A place of `k(t)`: a monic irreducible polynomial in `t`, or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Place {
    Finite(MultiPoly),
    Infinite,
}

impl Place {
    /// The place `t = c` in the variable `var`.
    pub fn at(var: &str, c: Coeff) -> Place {
        let vs = cubic_algebra::vars(&[var]);
        let pi = &MultiPoly::var(&vs, var) - &MultiPoly::constant(&vs, c);
        Place::Finite(pi)
    }

    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(pi) => pi.total_degree().unwrap_or(0),
            Place::Infinite => 1,
        }
    }

    /// `c` for the place `t = c`.
    pub fn root(&self) -> Option<Coeff> {
        match self {
            Place::Finite(pi) if pi.total_degree() == Some(1) => Some(-&pi.coeff(&cubic_algebra::Mono::one(pi.nvars()))),
            _ => None,
        }
    }

    pub fn is_zero_place(&self) -> bool {
        self.root().is_some_and(|c| c.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    /// Valuation of a polynomial in (at most) the place's variable; `None` for zero.
    pub fn poly_valuation(&self, p: &MultiPoly) -> Option<i64> {
        if p.is_zero() {
            return None;
        }
        match self {
            Place::Infinite => {
                let d = p.support_vars().first().and_then(|&i| p.degree_at(i)).unwrap_or(0);
                Some(-(d as i64))
            }
            Place::Finite(pi) => {
                let var = &pi.vars()[0];
                let Some(i) = p.var_index(var) else {
                    return Some(0);
                };
                if let Some(c) = self.root() {
                    let vs = p.vars();
                    let shift = &MultiPoly::var(vs, var) + &MultiPoly::constant(vs, c);
                    return Some(p.subs(var, &shift).min_degree_at(i).unwrap_or(0) as i64);
                }
                let pi = pi.with_vars(p.vars());
                let mut q = p.clone();
                let mut v = 0;
                while let Ok(next) = q.exact_div(&pi) {
                    q = next;
                    v += 1;
                }
                Some(v)
            }
        }
    }

    pub fn valuation(&self, f: &RationalFunction) -> Option<i64> {
        let n = self.poly_valuation(f.num())?;
        Some(n - self.poly_valuation(f.den()).expect("nonzero denominator"))
    }

    fn sort_key(&self) -> (u8, String) {
        match self {
            Place::Finite(_) => (0, self.to_string()),
            Place::Infinite => (1, String::new()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(pi) => match self.root() {
                Some(c) => write!(f, "{} = {}", pi.vars()[0], c),
                None => write!(f, "({pi}) = 0"),
            },
        }
    }
}

/// Kodaira fibre types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kodaira {
    /// `I_n`; `I_0` is good reduction.
    I(u32),
    /// `I_n^*`.
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Number of irreducible components of the fibre.
    pub fn components(&self) -> u32 {
        match *self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n,
            Kodaira::IStar(n) => n + 5,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }

    /// Euler number of the fibre (the valuation of the minimal discriminant).
    pub fn euler(&self) -> u32 {
        match *self {
            Kodaira::I(n) => n,
            Kodaira::IStar(n) => n + 6,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }

    /// Conductor exponent: 0 good, 1 multiplicative, 2 additive.
    pub fn conductor(&self) -> u32 {
        match *self {
            Kodaira::I(0) => 0,
            Kodaira::I(_) => 1,
            _ => 2,
        }
    }

    /// `n` for `I_n` and `I_n^*`, else 0.
    pub fn index(&self) -> u32 {
        match *self {
            Kodaira::I(n) | Kodaira::IStar(n) => n,
            _ => 0,
        }
    }

    pub fn is_good(&self) -> bool {
        *self == Kodaira::I(0)
    }

    fn from_valuations(v_disc: i64, v_j: i64) -> Result<Kodaira> {
        if v_j < 0 {
            let n = (-v_j) as u32;
            return match v_disc + v_j {
                0 => Ok(Kodaira::I(n)),
                6 => Ok(Kodaira::IStar(n)),
                _ => Err(Error::Internal(format!("inconsistent valuations v(Delta) = {v_disc}, v(j) = {v_j}"))),
            };
        }
        Ok(match v_disc {
            0 => Kodaira::I(0),
            2 => Kodaira::II,
            3 => Kodaira::III,
            4 => Kodaira::IV,
            6 => Kodaira::IStar(0),
            8 => Kodaira::IVStar,
            9 => Kodaira::IIIStar,
            10 => Kodaira::IIStar,
            _ => return Err(Error::Internal(format!("minimal discriminant valuation {v_disc} with integral j"))),
        })
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalData {
    pub place: Place,
    pub kodaira: Kodaira,
    /// Component count `m_t`.
    pub m: u32,
    /// Conductor exponent `f_t`.
    pub f: u32,
    /// Euler number `e_t`.
    pub e: u32,
    /// `n_t`: the index of `I_n` or `I_n^*`, else 0.
    pub n: u32,
    /// Exponent `k` of the scaling from the short model to a minimal model.
    pub shift: i64,
}

impl LocalData {
    pub fn to_json(&self) -> Value {
        json!({
            "place": self.place.to_string(),
            "degree": self.place.degree(),
            "kodaira": self.kodaira.to_string(),
            "m": self.m,
            "f": self.f,
            "e": self.e,
            "n": self.n,
        })
    }
}

/// `c4` and `c6` of the curve, so that `Y^2 = X^3 - 27 c4 X - 54 c6` with
/// `X = 36 x + 3 b2`, `Y = 108 (2y + a1 x + a3)`.
struct ShortData {
    c4: RationalFunction,
    c6: RationalFunction,
    disc: RationalFunction,
}

impl ShortData {
    fn new(e: &WeierstrassCurve) -> Self {
        let c4 = e.c4();
        let c6 = e.c6();
        let disc = &c4.pow(3) - &c6.pow(2);
        ShortData { c4, c6, disc }
    }

    fn coords(&self, e: &WeierstrassCurve, p: &CurvePoint) -> Option<(RationalFunction, RationalFunction)> {
        let (x, y) = (p.x()?, p.y()?);
        let vs = e.vars();
        let k = |n: i64| RationalFunction::int(vs, n);
        let x = x.with_vars(vs);
        let y = y.with_vars(vs);
        let big_x = &(&k(36) * &x) + &(&k(3) * &e.b2());
        let big_y = &k(108) * &(&(&(&k(2) * &y) + &(e.a1() * &x)) + e.a3());
        Some((big_x, big_y))
    }
}

fn require_one_parameter(e: &WeierstrassCurve) -> Result<()> {
    if e.vars().len() > 1 {
        return Err(Error::Argument(format!("curve must be over k(t) in one variable, has {:?}", e.vars())));
    }
    Ok(())
}

/// Kodaira type and local invariants of a minimal model at `v`.
pub fn tate_local(e: &WeierstrassCurve, v: &Place) -> Result<LocalData> {
    require_one_parameter(e)?;
    tate_local_with(&ShortData::new(e), v)
}

fn tate_local_with(sd: &ShortData, v: &Place) -> Result<LocalData> {
    let vc4 = v.valuation(&sd.c4);
    let vc6 = v.valuation(&sd.c6);
    let vd = v.valuation(&sd.disc).ok_or_else(|| Error::Internal("singular curve".into()))?;
    let shift = [vc4.map(|a| a.div_euclid(4)), vc6.map(|a| a.div_euclid(6))]
        .into_iter()
        .flatten()
        .min()
        .ok_or_else(|| Error::Internal("c4 = c6 = 0".into()))?;
    let v_disc = vd - 12 * shift;
    let v_j = match vc4 {
        Some(a) => 3 * (a - 4 * shift) - v_disc,
        None => 0,
    };
    let kodaira = Kodaira::from_valuations(v_disc, v_j)?;
    if kodaira.euler() as i64 != v_disc {
        return Err(Error::Internal(format!("{kodaira} with v(Delta_min) = {v_disc}")));
    }
    Ok(LocalData {
        place: v.clone(),
        m: kodaira.components(),
        f: kodaira.conductor(),
        e: kodaira.euler(),
        n: kodaira.index(),
        kodaira,
        shift,
    })
}

/// The finite places where the curve has bad reduction or a non-integral short
/// model, followed by the infinite place (always listed). All such places must
/// be rational over `field`.
pub fn local_table(e: &WeierstrassCurve, field: &Arc<NumberField>) -> Result<Vec<LocalData>> {
    require_one_parameter(e)?;
    let sd = ShortData::new(e);
    let mut out = Vec::new();
    if let Some(var) = e.vars().first() {
        let special = [sd.disc.num(), sd.c4.den(), sd.c6.den()]
            .into_iter()
            .fold(MultiPoly::one(e.vars()), |acc, p| &acc * p);
        if !special.is_constant() {
            let sq = squarefree_part_in(&special, var);
            let found = polynomial_roots(&sq, var, None, Some(field))?;
            let deg = sq.degree_in(var).unwrap_or(0) as usize;
            if found.roots.len() != deg {
                return Err(Error::Argument(format!(
                    "only {} of the {deg} special places of the curve are rational over the constant field",
                    found.roots.len()
                )));
            }
            for r in &found.roots {
                let c = r.constant_value().expect("roots in the constant field are constants");
                let ld = tate_local_with(&sd, &Place::at(var, c))?;
                if !ld.kodaira.is_good() || ld.shift != 0 {
                    out.push(ld);
                }
            }
        }
    }
    out.sort_by_key(|ld| ld.place.sort_key());
    out.push(tate_local_with(&sd, &Place::Infinite)?);
    Ok(out)
}

/// `chi` and the local data needed for heights.
#[derive(Clone, Debug)]
pub struct HeightContext {
    pub chi: i64,
    pub local_data: Vec<LocalData>,
}

impl HeightContext {
    /// Over the constant field `Q(zeta_12)`.
    pub fn new(e: &WeierstrassCurve) -> Result<Self> {
        Self::over(e, &k12())
    }

    pub fn over(e: &WeierstrassCurve, field: &Arc<NumberField>) -> Result<Self> {
        let local_data = local_table(e, field)?;
        let total = euler_sum(&local_data);
        if total % 12 != 0 || total == 0 {
            return Err(Error::Internal(format!("sum of Euler numbers {total} is not a positive multiple of 12")));
        }
        Ok(HeightContext { chi: total / 12, local_data })
    }
}

/// `sum e_t deg(t)`.
pub fn euler_sum(data: &[LocalData]) -> i64 {
    data.iter().map(|ld| ld.e as i64 * ld.place.degree() as i64).sum()
}

/// `gamma = sum_{t != 0, inf} (f_t - e_t/6) - (n_0 + n_inf)/6`.
pub fn fastenberg_gamma(data: &[LocalData]) -> Result<Rat> {
    let inf = data
        .iter()
        .find(|ld| ld.place.is_infinite())
        .ok_or_else(|| Error::Argument("local data must include the infinite place".into()))?;
    let n0 = data.iter().find(|ld| ld.place.is_zero_place()).map_or(0, |ld| ld.n);
    let mut gamma = Rat::zero();
    for ld in data.iter().filter(|ld| !ld.place.is_infinite() && !ld.place.is_zero_place()) {
        gamma += (rat(ld.f as i64) - frac(ld.e as i64, 6)) * rat(ld.place.degree() as i64);
    }
    Ok(gamma - frac((n0 + inf.n) as i64, 6))
}

/// Largest prime-power divisor of `d` (`kappa(1) = 1`).
pub fn kappa(d: u64) -> u64 {
    let mut best = 1;
    let mut m = d;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut q = 1;
            while m.is_multiple_of(p) {
                m /= p;
                q *= p;
            }
            best = best.max(q);
        }
        p += 1;
    }
    best.max(m)
}

pub fn euler_phi(d: u64) -> u64 {
    let mut m = d;
    let mut out = d;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// `sum phi(d)` over `d | n` with `kappa(d) < 2/(1 - gamma)`, less one for the
/// fixed space when `subtract_fixed_space` is set.
pub fn fastenberg_bound(n: u64, gamma: &Rat, subtract_fixed_space: bool) -> Result<u64> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    if *gamma >= Rat::one() {
        return Err(Error::Argument(format!("Fastenberg's bound needs gamma < 1, got {gamma}")));
    }
    let limit = rat(2) / (Rat::one() - gamma);
    let raw: u64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d) && rat(kappa(*d) as i64) < limit)
        .map(euler_phi)
        .sum();
    Ok(if subtract_fixed_space { raw.saturating_sub(1) } else { raw })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiodaRank {
    pub rank: i64,
    /// The formula went negative and was clamped to 0.
    pub saturated: bool,
}

/// `ns_rank - 2 - sum (m_t - 1)`.
pub fn shioda_rank(ns_rank: i64, data: &[LocalData]) -> ShiodaRank {
    let r = ns_rank - 2 - data.iter().map(|ld| (ld.m as i64 - 1) * ld.place.degree() as i64).sum::<i64>();
    ShiodaRank { rank: r.max(0), saturated: r < 0 }
}

/// Rank bound for `E_0` over `k(lambda^(1/n))`: the improved Fastenberg bound,
/// and for `6 | n` the Shioda bound of the `lambda = t^6` K3 surface.
pub fn e0_rank_bound(n: u64) -> Result<u64> {
    let base = crate::curves::models::e0();
    let gamma = fastenberg_gamma(&local_table(&base, &k12())?)?;
    let mut bound = fastenberg_bound(n, &gamma, true)?;
    if n.is_multiple_of(6) {
        let k3 = crate::curves::models::over_root(&base, 6);
        let s = shioda_rank(20, &local_table(&k3, &k12())?);
        bound = bound.min(s.rank as u64);
    }
    Ok(bound)
}

fn min_opt(a: Option<i64>, shift: i64) -> Option<i64> {
    a.map(|v| v - shift)
}

/// `contr_v(P)` for the component of the minimal model at `v` met by `P`.
pub fn contribution(e: &WeierstrassCurve, p: &CurvePoint, ld: &LocalData) -> Result<Rat> {
    let sd = ShortData::new(e);
    contribution_with(e, &sd, p, ld)
}

fn contribution_with(e: &WeierstrassCurve, sd: &ShortData, p: &CurvePoint, ld: &LocalData) -> Result<Rat> {
    let Some((x, y)) = sd.coords(e, p) else {
        return Ok(Rat::zero());
    };
    let v = &ld.place;
    let k = ld.shift;
    let vx = min_opt(v.valuation(&x), 2 * k);
    if vx.is_some_and(|a| a < 0) {
        return Ok(Rat::zero());
    }
    let vs = x.vars().clone();
    let c = |n: i64| RationalFunction::int(&vs, n);
    let a = &c(-27) * &sd.c4.with_vars(&vs);
    let b = &c(-54) * &sd.c6.with_vars(&vs);
    let v2 = min_opt(v.valuation(&y), 3 * k);
    let vdf = min_opt(v.valuation(&(&(&c(3) * &x.pow(2)) + &a)), 4 * k);
    let positive = |o: Option<i64>| o.is_none_or(|a| a > 0);
    if !(positive(v2) && positive(vdf)) {
        return Ok(Rat::zero());
    }
    let out = match ld.kodaira {
        Kodaira::I(0) => return Err(Error::Internal(format!("point singular at the good place {v}"))),
        Kodaira::I(m) => {
            let half = frac(m as i64, 2);
            let alpha = match v2 {
                Some(a) if rat(a) < half => rat(a),
                _ => half,
            };
            &alpha * (rat(m as i64) - &alpha) / rat(m as i64)
        }
        kod => {
            let psi3 = &(&(&(&c(3) * &x.pow(4)) + &(&(&c(6) * &a) * &x.pow(2))) + &(&(&c(12) * &b) * &x)) - &a.pow(2);
            let v3 = min_opt(v.valuation(&psi3), 8 * k);
            let val = match (v2, v3) {
                (Some(a2), Some(a3)) if a3 >= 3 * a2 => frac(2 * a2, 3),
                (Some(a2), None) => frac(2 * a2, 3),
                (_, Some(a3)) => frac(a3, 4),
                (None, None) => return Err(Error::Internal("psi2 and psi3 both vanish".into())),
            };
            let allowed: Vec<Rat> = match kod {
                Kodaira::III => vec![frac(1, 2)],
                Kodaira::IV => vec![frac(2, 3)],
                Kodaira::IStar(0) => vec![rat(1)],
                Kodaira::IStar(n) => vec![rat(1), rat(1) + frac(n as i64, 4)],
                Kodaira::IVStar => vec![frac(4, 3)],
                Kodaira::IIIStar => vec![frac(3, 2)],
                _ => vec![],
            };
            if !allowed.contains(&val) {
                return Err(Error::Internal(format!("contribution {val} impossible for a {kod} fibre at {v}")));
            }
            val
        }
    };
    Ok(out)
}

/// `(P . O)`: half the pole order of `X` on the local minimal models, summed over all places.
pub fn intersection_with_zero(e: &WeierstrassCurve, p: &CurvePoint, ctx: &HeightContext) -> Result<Rat> {
    let sd = ShortData::new(e);
    intersection_with(e, &sd, p, ctx)
}

fn intersection_with(e: &WeierstrassCurve, sd: &ShortData, p: &CurvePoint, ctx: &HeightContext) -> Result<Rat> {
    let Some((x, _)) = sd.coords(e, p) else {
        return Ok(Rat::zero());
    };
    let mut poles = 0i64;
    let mut den_accounted = 0i64;
    for ld in &ctx.local_data {
        let deg = ld.place.degree() as i64;
        if let Some(vx) = ld.place.valuation(&x) {
            poles += (-(vx - 2 * ld.shift)).max(0) * deg;
        }
        if !ld.place.is_infinite() {
            den_accounted += ld.place.poly_valuation(x.den()).unwrap_or(0) * deg;
        }
    }
    let den_deg = x.den().total_degree().unwrap_or(0) as i64;
    poles += den_deg - den_accounted;
    if poles % 2 != 0 {
        return Err(Error::Internal(format!("odd pole order {poles} of x")));
    }
    Ok(frac(poles, 2))
}

/// `<P, P> = 2 chi + 2 (P.O) - sum contr_v(P)`.
pub fn height(e: &WeierstrassCurve, p: &CurvePoint, ctx: &HeightContext) -> Result<Rat> {
    if !e.on_curve(p) {
        return Err(Error::Witness(format!("point {p} is not on the curve")));
    }
    if p.is_infinity() {
        return Ok(Rat::zero());
    }
    let sd = ShortData::new(e);
    let mut h = rat(2 * ctx.chi) + rat(2) * intersection_with(e, &sd, p, ctx)?;
    for ld in &ctx.local_data {
        h -= contribution_with(e, &sd, p, ld)? * rat(ld.place.degree() as i64);
    }
    Ok(h)
}

/// `<P, Q> = (h(P + Q) - h(P) - h(Q)) / 2`.
pub fn height_pairing(e: &WeierstrassCurve, p: &CurvePoint, q: &CurvePoint, ctx: &HeightContext) -> Result<Rat> {
    if p == q {
        return height(e, p, ctx);
    }
    let s = e.add(p, q).map_err(|_| Error::Witness("points are not on the curve".into()))?;
    Ok((height(e, &s, ctx)? - height(e, p, ctx)? - height(e, q, ctx)?) / rat(2))
}

pub fn gram_matrix(e: &WeierstrassCurve, pts: &[&CurvePoint], ctx: &HeightContext) -> Result<Vec<Vec<Rat>>> {
    let hs: Vec<Rat> = pts.iter().map(|p| height(e, p, ctx)).collect::<Result<_>>()?;
    let n = pts.len();
    let mut g = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        g[i][i] = hs[i].clone();
        for j in i + 1..n {
            let s = e.add(pts[i], pts[j])?;
            let v = (height(e, &s, ctx)? - &hs[i] - &hs[j]) / rat(2);
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// Determinant by Gaussian elimination over `Q`.
pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= &a[col][col];
        for i in col + 1..n {
            let f = &a[i][col] / &a[col][col];
            for j in col..n {
                let sub = &f * &a[col][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}

/// Positive definiteness by leading principal minors.
pub fn is_positive_definite(m: &[Vec<Rat>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<Rat>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

/// Least common denominator of a matrix of rationals.
pub fn denominator_lcm(m: &[Vec<Rat>]) -> u64 {
    cubic_algebra::rational::denom_lcm(m.iter().flatten()).to_u64().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::models::{e0, over_root, T};

    fn types(data: &[LocalData]) -> Vec<(String, String)> {
        data.iter().map(|ld| (ld.place.to_string(), ld.kodaira.to_string())).collect()
    }

    #[test]
    fn kappa_and_phi() {
        assert_eq!((1..=12).map(kappa).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 3, 7, 8, 9, 5, 11, 4]);
        assert_eq!((1..=12).map(euler_phi).collect::<Vec<_>>(), vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn fibres_of_e0_over_k_lambda() {
        let data = local_table(&e0(), &k12()).unwrap();
        assert_eq!(
            types(&data),
            vec![
                ("lambda = 0".into(), "I1".into()),
                ("lambda = 1".into(), "I2".into()),
                ("inf".into(), "III*".into())
            ]
        );
        let fe: Vec<(u32, u32)> = data.iter().map(|ld| (ld.f, ld.e)).collect();
        assert_eq!(fe, vec![(1, 1), (1, 2), (2, 9)]);
        assert_eq!(euler_sum(&data), 12);
        assert_eq!(fastenberg_gamma(&data).unwrap(), frac(1, 2));
        assert_eq!(shioda_rank(10, &data), ShiodaRank { rank: 0, saturated: false });
    }

    #[test]
    fn fibres_over_k4_and_k6() {
        let d4 = local_table(&over_root(&e0(), 4), &k12()).unwrap();
        let t0 = d4.iter().find(|ld| ld.place.is_zero_place()).unwrap();
        assert_eq!(t0.kodaira, Kodaira::I(4));
        assert_eq!(d4.iter().filter(|ld| ld.kodaira == Kodaira::I(2)).count(), 4);
        assert!(d4.last().unwrap().kodaira.is_good());
        assert_eq!(d4.len(), 6);

        let d6 = local_table(&over_root(&e0(), 6), &k12()).unwrap();
        assert_eq!(d6.iter().find(|ld| ld.place.is_zero_place()).unwrap().kodaira, Kodaira::I(6));
        assert_eq!(d6.iter().filter(|ld| ld.kodaira == Kodaira::I(2)).count(), 6);
        assert_eq!(d6.last().unwrap().kodaira, Kodaira::IStar(0));
        assert_eq!(euler_sum(&d6), 24);
        assert_eq!(shioda_rank(20, &d6).rank, 3);
    }

    #[test]
    fn fastenberg_bounds() {
        let g = frac(1, 2);
        let raw: Vec<u64> = [1, 2, 3, 6].iter().map(|&n| fastenberg_bound(n, &g, false).unwrap()).collect();
        assert_eq!(raw, vec![1, 2, 3, 6]);
        let improved: Vec<u64> = [1, 2, 3, 6].iter().map(|&n| e0_rank_bound(n).unwrap()).collect();
        assert_eq!(improved, vec![0, 1, 2, 3]);
        assert_eq!(fastenberg_bound(7, &Rat::zero(), false).unwrap(), 1);
        assert!(fastenberg_bound(4, &rat(1), false).is_err());
        for n in 1..=24u64 {
            for m in 1..=4 {
                assert!(fastenberg_bound(n, &g, false).unwrap() <= fastenberg_bound(n * m, &g, false).unwrap());
            }
        }
    }

    #[test]
    fn missing_infinite_place_is_rejected() {
        let mut data = local_table(&e0(), &k12()).unwrap();
        data.pop();
        assert!(matches!(fastenberg_gamma(&data), Err(Error::Argument(_))));
    }

    #[test]
    fn kodaira_consistency() {
        for n in [1u32, 2, 3, 4, 6, 12] {
            for ld in local_table(&over_root(&e0(), n), &k12()).unwrap() {
                let k = ld.kodaira;
                assert_eq!((ld.m, ld.f, ld.e, ld.n), (k.components(), k.conductor(), k.euler(), k.index()));
                assert_eq!(ld.f == 0, k.is_good());
            }
        }
    }

    #[test]
    fn place_valuations() {
        let vs = cubic_algebra::vars(&[T]);
        let f = RationalFunction::from_poly(cubic_algebra::parse_poly("t^3*(t - 1)^2", &vs, None).unwrap());
        assert_eq!(Place::at(T, Coeff::zero()).valuation(&f), Some(3));
        assert_eq!(Place::at(T, Coeff::one()).valuation(&f), Some(2));
        assert_eq!(Place::Infinite.valuation(&f), Some(-5));
    }

    #[test]
    fn height_of_p_over_k4() {
        let e = over_root(&e0(), 4);
        let ctx = HeightContext::new(&e).unwrap();
        assert_eq!(ctx.chi, 1);
        let p = crate::curves::models::p_k4().unwrap();
        assert_eq!(intersection_with_zero(&e, &p, &ctx).unwrap(), Rat::zero());
        let t0 = ctx.local_data.iter().find(|ld| ld.place.is_zero_place()).unwrap();
        assert_eq!(contribution(&e, &p, t0).unwrap(), frac(3, 4));
        // 2P = (-1, t^2) meets the middle component of the I4 fibre
        let p2 = e.double(&p).unwrap();
        assert_eq!(contribution(&e, &p2, t0).unwrap(), rat(1));
        let halves = ctx
            .local_data
            .iter()
            .filter(|ld| contribution(&e, &p, ld).unwrap() == frac(1, 2))
            .count();
        assert_eq!(halves, 2);
        assert_eq!(height(&e, &p, &ctx).unwrap(), frac(1, 4));
        assert_eq!(height(&e, &p2, &ctx).unwrap(), rat(1));
    }

    #[test]
    fn gram_matrix_over_k3() {
        let e = over_root(&e0(), 3);
        let ctx = HeightContext::new(&e).unwrap();
        let (r1, r2, t) = crate::curves::models::generators_k3().unwrap();
        let g = gram_matrix(&e, &[&r1, &r2], &ctx).unwrap();
        assert_eq!(g, vec![vec![frac(1, 3), frac(-1, 6)], vec![frac(-1, 6), frac(1, 3)]]);
        assert_eq!(determinant(&g), frac(1, 12));
        assert_eq!(6 % denominator_lcm(&g), 0);
        assert_eq!(height(&e, &t, &ctx).unwrap(), Rat::zero());
        assert_eq!(height_pairing(&e, &t, &r1, &ctx).unwrap(), Rat::zero());
    }

    #[test]
    fn pairing_is_bilinear_on_samples() {
        let e = over_root(&e0(), 3);
        let ctx = HeightContext::new(&e).unwrap();
        let (r1, r2, t) = crate::curves::models::generators_k3().unwrap();
        let q = e.combination(&[(2, &r1), (-1, &r2), (1, &t)]).unwrap();
        // <2 R1 - R2 + T, R1> = 2/3 + 1/6
        assert_eq!(height_pairing(&e, &q, &r1, &ctx).unwrap(), frac(5, 6));
        assert_eq!(height_pairing(&e, &r1, &q, &ctx).unwrap(), frac(5, 6));
        assert_eq!(height(&e, &q, &ctx).unwrap(), frac(4, 3) + frac(1, 3) + frac(2, 3));
    }

    #[test]
    fn off_curve_point_is_rejected() {
        let e = over_root(&e0(), 3);
        let ctx = HeightContext::new(&e).unwrap();
        let vs = cubic_algebra::vars(&[T]);
        let bad = CurvePoint::affine(RationalFunction::int(&vs, 1), RationalFunction::int(&vs, 1));
        assert!(matches!(height(&e, &bad, &ctx), Err(Error::Witness(_))));
    }

    #[test]
    fn gram_matrix_over_k12_is_positive_definite() {
        let e = over_root(&e0(), 12);
        let ctx = HeightContext::new(&e).unwrap();
        let g = crate::curves::models::generators_k12().unwrap();
        let m = gram_matrix(&e, &[&g.p, &g.r1, &g.r2], &ctx).unwrap();
        // heights scale with the degree of the base change: 3 * 1/4 and 4 * the K3 matrix
        assert_eq!(m[0], vec![frac(3, 4), Rat::zero(), Rat::zero()]);
        assert_eq!(m[1][1..], [frac(4, 3), frac(-2, 3)]);
        assert!(is_positive_definite(&m));
        assert_eq!(height(&e, &g.t2, &ctx).unwrap(), Rat::zero());
    }
}
