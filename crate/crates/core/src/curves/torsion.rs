//! Torsion probes: points of order dividing `l` over `K_n = k(t)`, `t^n = lambda`,
//! `k = Q(zeta_12)`, found as roots of division polynomials.

use std::sync::Arc;

use cubic_algebra::roots::polynomial_roots;
use cubic_algebra::{MultiPoly, RationalFunction};

use super::divpoly::DivisionPolynomials;
use super::models::{k12, over_root, T};
use super::WeierstrassCurve;
use crate::error::{Error, Result};

const XV: &str = "x";
const YV: &str = "y";

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionX {
    pub x: RationalFunction,
    /// Exact order of the points with this `x`-coordinate.
    pub order: u32,
    /// Whether the corresponding `y` also lies in `K_n`.
    pub y_rational: bool,
}

#[derive(Clone, Debug)]
pub struct TorsionProbe {
    pub ell: u32,
    pub n: u32,
    /// Verified roots of the `l`-torsion polynomial.
    pub found: Vec<TorsionX>,
    pub degree_bound: u32,
    /// Root counts of the reduced division polynomial at independent primes.
    pub prime_counts: Vec<(u64, usize)>,
}

impl TorsionProbe {
    /// The prime-field counts match the verified roots, cross-checking that nothing was missed.
    pub fn counts_agree(&self) -> bool {
        self.prime_counts.iter().all(|&(_, c)| c == self.found.len())
    }

    /// Roots of exact order `ell`, i.e. beyond the lower-order torsion.
    pub fn primitive(&self) -> impl Iterator<Item = &TorsionX> {
        self.found.iter().filter(move |r| r.order == self.ell)
    }
}

/// Searches `K_n` for `x`-coordinates of nonzero points killed by `ell`.
pub fn torsion_probe(e: &WeierstrassCurve, ell: u32, n: u32) -> Result<TorsionProbe> {
    if !(2..=4).contains(&ell) || n == 0 {
        return Err(Error::Argument(format!("need l in 2..=4 and n >= 1, got l = {ell}, n = {n}")));
    }
    let k = k12();
    let en = over_root(e, n);
    let mut dp = DivisionPolynomials::new(&en, XV);
    let psi = polynomial_part(&dp.torsion_polynomial(ell))?;
    let search = polynomial_roots(&psi, XV, Some(T), Some(&k))?;
    let mut found = Vec::new();
    for r in &search.roots {
        let x = RationalFunction::from_poly(r.clone()).with_vars(psi.vars());
        let mut order = ell;
        for m in (2..ell).filter(|m| ell.is_multiple_of(*m)) {
            if dp.torsion_polynomial(m).subs(XV, &x).is_zero() {
                order = m;
                break;
            }
        }
        let y_rational = has_rational_y(&en, &x, &k)?;
        found.push(TorsionX { x: x.with_vars(&cubic_algebra::vars(&[T])), order, y_rational });
    }
    Ok(TorsionProbe { ell, n, found, degree_bound: search.degree_bound, prime_counts: search.prime_counts })
}

/// Numerator of a rational function with constant denominator.
fn polynomial_part(f: &RationalFunction) -> Result<MultiPoly> {
    let d = f
        .den()
        .constant_value()
        .ok_or_else(|| Error::Argument("division polynomial has a nonconstant denominator".into()))?;
    let inv = d.inv().ok_or_else(|| Error::Internal("zero denominator".into()))?;
    Ok(f.num().scale(&inv))
}

/// Whether `y^2 + a1 x y + a3 y = x^3 + ...` has a solution `y in K_n` at this `x`.
fn has_rational_y(e: &WeierstrassCurve, x: &RationalFunction, k: &Arc<cubic_algebra::NumberField>) -> Result<bool> {
    let mut names = vec![YV.to_string()];
    names.extend(x.vars().iter().filter(|v| v.as_str() != XV).cloned());
    let vs = Arc::new(names);
    let x = x.with_vars(&vs);
    let y = RationalFunction::var(&vs, YV);
    let q = polynomial_part(&e.residual(&x, &y).with_vars(&vs))?;
    Ok(!polynomial_roots(&q, YV, Some(T), Some(k))?.roots.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::models::e0;
    use cubic_algebra::parse_poly;

    fn xs(p: &TorsionProbe) -> Vec<RationalFunction> {
        p.found.iter().map(|r| r.x.clone()).collect()
    }

    #[test]
    fn full_two_torsion_over_k2() {
        let probe = torsion_probe(&e0(), 2, 2).unwrap();
        let vs = cubic_algebra::vars(&[T]);
        let want: Vec<RationalFunction> = ["0", "-1 + t", "-1 - t"]
            .iter()
            .map(|s| RationalFunction::from_poly(parse_poly(s, &vs, None).unwrap()))
            .collect();
        let got = xs(&probe);
        assert_eq!(got.len(), 3, "{got:?}");
        for w in &want {
            assert!(got.contains(w), "{w} missing from {got:?}");
        }
        assert!(probe.found.iter().all(|r| r.order == 2 && r.y_rational));
        assert!(probe.counts_agree());
    }

    #[test]
    fn only_one_two_torsion_point_over_the_base() {
        let probe = torsion_probe(&e0(), 2, 1).unwrap();
        assert_eq!(probe.found.len(), 1);
        assert!(probe.found[0].x.is_zero());
    }

    #[test]
    fn no_three_torsion_over_k12() {
        let probe = torsion_probe(&e0(), 3, 12).unwrap();
        assert!(probe.found.is_empty(), "{:?}", probe.found);
        assert!(probe.counts_agree(), "{:?}", probe.prime_counts);
    }

    #[test]
    fn four_torsion_over_k12_is_two_torsion() {
        let probe = torsion_probe(&e0(), 4, 12).unwrap();
        assert_eq!(probe.found.len(), 3, "{:?}", probe.found);
        assert_eq!(probe.primitive().count(), 0);
        assert!(probe.counts_agree(), "{:?}", probe.prime_counts);
    }
}
