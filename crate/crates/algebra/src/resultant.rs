//! Resultants and greatest common divisors of multivariate polynomials.
//!
//! Both use the subresultant remainder sequence over the coefficient ring
//! `K[other variables]`, so intermediate divisions are exact and coefficient
//! growth stays polynomial.

use crate::coeff::Coeff;
use crate::error::{AlgebraError, Result};
use crate::poly::{unify, MultiPoly};
use crate::upoly;

/// A polynomial in one distinguished variable with polynomial coefficients.
type Rec = Vec<MultiPoly>;

fn rec_trim(a: &mut Rec) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn deg(a: &Rec) -> usize {
    a.len() - 1
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Rec, b: &Rec) -> Rec {
    let mut r = a.clone();
    rec_trim(&mut r);
    let db = deg(b);
    let lb = &b[db];
    if r.len() < b.len() {
        return r;
    }
    let mut steps = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() >= b.len() {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[shift + j] = &r[shift + j] - &(&lr * bj);
            }
        }
        r.pop();
        rec_trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn rec_exact_div(a: &Rec, d: &MultiPoly) -> Result<Rec> {
    if d.is_one() {
        return Ok(a.clone());
    }
    a.iter().map(|c| c.exact_div(d)).collect()
}

/// `Res_var(p, q)` via the subresultant algorithm.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgebraError::Degree("resultant of a zero polynomial".into()));
    }
    let (p, q) = unify(p, q);
    let p = if p.var_index(var).is_some() {
        p
    } else {
        let mut names = p.vars().as_ref().clone();
        names.push(var.to_string());
        p.with_vars(&std::sync::Arc::new(names))
    };
    let q = q.with_vars(p.vars());
    p.check_fields(&q)?;
    let vs = p.vars().clone();
    let mut a: Rec = p.coeffs_in(var);
    let mut b: Rec = q.coeffs_in(var);
    let one = MultiPoly::one(&vs);
    let mut sign = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = !sign;
        }
    }
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a) as u32);
        return Ok(if sign { -&r } else { r });
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let da = deg(&a);
        let db = deg(&b);
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Ok(MultiPoly::zero(&vs));
        }
        let div = &g * &h.pow(delta);
        b = rec_exact_div(&r, &div)?;
        g = a[deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1))?,
        };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let lb = b[0].clone();
    let res = match da {
        0 => one,
        1 => lb,
        _ => lb.pow(da).exact_div(&h.pow(da - 1))?,
    };
    Ok(if sign { -&res } else { res })
}

/// Univariate view when at most one variable occurs in either input.
fn common_univariate(p: &MultiPoly, q: &MultiPoly) -> Option<Option<usize>> {
    let mut sp = p.support_vars();
    sp.extend(q.support_vars());
    sp.sort_unstable();
    sp.dedup();
    match sp.len() {
        0 => Some(None),
        1 => Some(Some(sp[0])),
        _ => None,
    }
}

fn to_dense(p: &MultiPoly, i: usize) -> upoly::UPoly {
    let n = p.degree_at(i).map(|d| d as usize + 1).unwrap_or(0);
    let mut out = vec![Coeff::zero(); n];
    for (m, c) in p.terms() {
        out[m.0[i] as usize] = c.clone();
    }
    out
}

fn from_dense(template: &MultiPoly, i: usize, a: &[Coeff]) -> MultiPoly {
    let n = template.nvars();
    let terms = a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
        let mut e = vec![0u32; n];
        e[i] = k as u32;
        (crate::mono::Mono(e), c.clone())
    });
    MultiPoly::from_terms(template.vars(), terms)
}

/// Greatest common divisor, normalized to leading coefficient one (graded-lex).
/// `gcd(0, 0) = 0`.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let (p, q) = unify(p, q);
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(p.vars());
    }
    if let Some(u) = common_univariate(&p, &q) {
        let Some(i) = u else {
            return MultiPoly::one(p.vars());
        };
        let g = upoly::gcd(&to_dense(&p, i), &to_dense(&q, i));
        return from_dense(&p, i, &g);
    }
    // pull out the common monomial factor first: cheap and frequent
    let mp = p.monomial_content();
    let mq = q.monomial_content();
    if !mp.is_one() || !mq.is_one() {
        let m = crate::mono::Mono(mp.0.iter().zip(&mq.0).map(|(a, b)| *a.min(b)).collect());
        let g = gcd(&p.div_mono(&mp), &q.div_mono(&mq));
        return g.mul_mono(&m, &Coeff::one()).monic();
    }
    let sp = p.support_vars();
    let sq = q.support_vars();
    // a variable occurring in only one argument can be eliminated through contents
    for &i in &sp {
        if !sq.contains(&i) {
            return gcd(&content_at(&p, i), &q);
        }
    }
    for &i in &sq {
        if !sp.contains(&i) {
            return gcd(&p, &content_at(&q, i));
        }
    }
    // main variable: the one of smallest combined degree keeps the sequence short
    let i = *sp
        .iter()
        .min_by_key(|&&i| p.degree_at(i).unwrap() + q.degree_at(i).unwrap())
        .unwrap();
    let cp = content_at(&p, i);
    let cq = content_at(&q, i);
    let c = gcd(&cp, &cq);
    let pp = p.exact_div(&cp).expect("content divides");
    let qp = q.exact_div(&cq).expect("content divides");
    let g = primitive_gcd(&pp, &qp, i);
    (&c * &g).monic()
}

/// Gcd of the coefficients with respect to variable `i`.
pub fn content_at(p: &MultiPoly, i: usize) -> MultiPoly {
    let mut cs = p.coeffs_at(i);
    cs.retain(|c| !c.is_zero());
    cs.sort_by_key(|c| c.num_terms());
    let mut g = MultiPoly::zero(p.vars());
    for c in cs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(p.vars());
        }
    }
    g
}

/// Gcd of two polynomials that are primitive with respect to variable `i`.
fn primitive_gcd(p: &MultiPoly, q: &MultiPoly, i: usize) -> MultiPoly {
    let vs = p.vars().clone();
    let mut a: Rec = p.coeffs_at(i);
    let mut b: Rec = q.coeffs_at(i);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return MultiPoly::one(&vs);
    }
    let mut g = MultiPoly::one(&vs);
    let mut h = MultiPoly::one(&vs);
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            let bp = MultiPoly::from_coeffs_at(&vs, i, &b);
            let c = content_at(&bp, i);
            return bp.exact_div(&c).expect("content divides");
        }
        if r.len() == 1 {
            return MultiPoly::one(&vs);
        }
        a = b;
        let div = &g * &h.pow(delta);
        b = rec_exact_div(&r, &div).expect("subresultant division is exact");
        g = a[deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)).expect("exact"),
        };
    }
}

/// Polynomial least common multiple (monic).
pub fn lcm(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() || q.is_zero() {
        return MultiPoly::zero(p.vars());
    }
    let g = gcd(p, q);
    (p * &q.exact_div(&g).expect("gcd divides")).monic()
}

/// Discriminant-free squarefree part (monic) with respect to all variables jointly.
pub fn squarefree_part_in(p: &MultiPoly, var: &str) -> MultiPoly {
    let d = p.diff(var);
    if d.is_zero() {
        return p.monic();
    }
    let g = gcd(p, &d);
    p.exact_div(&g).expect("gcd divides").monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::vars;

    fn p(s: &str, vs: &[&str]) -> MultiPoly {
        parse_poly(s, &vars(vs), None).unwrap()
    }

    #[test]
    fn resultant_by_evaluation() {
        let r = resultant(&p("z^2 - l", &["l", "z"]), &p("z - 1", &["l", "z"]), "z").unwrap();
        assert_eq!(r, p("1 - l", &["l", "z"]));
    }

    #[test]
    fn resultant_zero_input_is_error() {
        assert!(resultant(&p("0", &["z"]), &p("z", &["z"]), "z").is_err());
    }

    #[test]
    fn resultant_of_common_factor_is_zero() {
        let r = resultant(&p("(z-x)*(z+1)", &["x", "z"]), &p("(z-x)*(z^2+3)", &["x", "z"]), "z").unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_multivariate() {
        let vs = ["x", "y", "z"];
        let g = p("x*y - z^2 + 3", &vs);
        let a = &g * &p("x + y + z", &vs);
        let b = &g * &p("x^2 - y*z + 1", &vs);
        assert_eq!(gcd(&a, &b), g.monic());
        let c = p("(x+1)^2*y", &vs);
        let d = p("(x+1)*y^3*z", &vs);
        assert_eq!(gcd(&c, &d), p("x*y + y", &vs));
    }
}
