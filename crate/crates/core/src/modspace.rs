//! Moduli of polynomials with marked cycles: recovering coefficients from the
//! cycle points by a modified Vandermonde system, affine normal forms, and the
//! field-of-moduli invariants of the monic centred form.

use serde_json::{json, Value};

use cubic_algebra::json::{coeff_from_json, coeff_to_json};
use cubic_algebra::Coeff;

use crate::error::{Error, Result};

/// Coefficients `a_0, ..., a_d` of `sum a_i z^i`.
pub type Coeffs = Vec<Coeff>;

/// Marked cycles of lengths `N_1, ..., N_s` through `z_1, ..., z_M`, together
/// with the values of `a_M, ..., a_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleSpec {
    pub d: usize,
    pub cycle_lengths: Vec<usize>,
    pub points: Vec<Coeff>,
    pub tail: Vec<Coeff>,
}

impl CycleSpec {
    pub fn new(d: usize, cycle_lengths: Vec<usize>, points: Vec<Coeff>, tail: Vec<Coeff>) -> Result<Self> {
        let spec = CycleSpec { d, cycle_lengths, points, tail };
        spec.check_shape()?;
        Ok(spec)
    }

    pub fn m(&self) -> usize {
        self.cycle_lengths.iter().sum()
    }

    fn check_shape(&self) -> Result<()> {
        let m = self.m();
        if self.d < 2 {
            return Err(Error::Argument(format!("degree must be at least 2, got {}", self.d)));
        }
        if self.cycle_lengths.contains(&0) {
            return Err(Error::Argument("cycle lengths must be positive".into()));
        }
        if m > self.d + 1 {
            return Err(Error::Argument(format!("cycle lengths sum to {m} > d + 1 = {}", self.d + 1)));
        }
        if self.points.len() != m {
            return Err(Error::Argument(format!("expected {m} points, got {}", self.points.len())));
        }
        if self.tail.len() != self.d + 1 - m {
            return Err(Error::Argument(format!(
                "expected {} tail coefficients a_{m}..a_{}, got {}",
                self.d + 1 - m,
                self.d,
                self.tail.len()
            )));
        }
        Ok(())
    }

    /// `sigma(i)`: the successor of point `i` in its cycle.
    pub fn successor(&self, i: usize) -> usize {
        let mut start = 0;
        for &n in &self.cycle_lengths {
            if i < start + n {
                return start + (i - start + 1) % n;
            }
            start += n;
        }
        panic!("point index {i} out of range")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "cycle_lengths": self.cycle_lengths,
            "points": self.points.iter().map(|c| coeff_to_json(c, c.field())).collect::<Vec<_>>(),
            "tail": self.tail.iter().map(|c| coeff_to_json(c, c.field())).collect::<Vec<_>>(),
        })
    }

    /// Reads `{"d", "cycle_lengths", "points", "tail"}` with rational entries.
    pub fn from_json(v: &Value) -> Result<Self> {
        let d = v
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Argument("spec needs an integer \"d\"".into()))? as usize;
        let lens = v
            .get("cycle_lengths")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Argument("spec needs \"cycle_lengths\"".into()))?
            .iter()
            .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| Error::Argument("bad cycle length".into())))
            .collect::<Result<Vec<_>>>()?;
        let list = |k: &str| -> Result<Vec<Coeff>> {
            v.get(k)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Argument(format!("spec needs a list {k:?}")))?
                .iter()
                .map(|x| Ok(coeff_from_json(x, None)?))
                .collect()
        };
        CycleSpec::new(d, lens, list("points")?, list("tail")?)
    }
}

/// `f(z)` by Horner's rule.
pub fn eval(coeffs: &[Coeff], z: &Coeff) -> Coeff {
    coeffs.iter().rev().fold(Coeff::zero(), |acc, c| &(&acc * z) + c)
}

/// Solves the cycle system for `a_0, ..., a_{M-1}` and returns the full coefficient vector.
pub fn recover_coeffs(spec: &CycleSpec) -> Result<Coeffs> {
    spec.check_shape()?;
    let (d, m) = (spec.d, spec.m());
    if spec.tail.last().is_none_or(Coeff::is_zero) {
        return Err(Error::Degree(format!("leading coefficient a_{d} must be nonzero")));
    }
    // rows f(z_j) = z_sigma(j); the known tail moves to the right-hand side
    let mut mat = Vec::with_capacity(m);
    for j in 0..m {
        let z = &spec.points[j];
        let mut row = Vec::with_capacity(m + 1);
        let mut pw = Coeff::one();
        for _ in 0..m {
            row.push(pw.clone());
            pw = &pw * z;
        }
        let mut rhs = spec.points[spec.successor(j)].clone();
        for c in &spec.tail {
            rhs = &rhs - &(c * &pw);
            pw = &pw * z;
        }
        row.push(rhs);
        mat.push(row);
    }
    let head = bareiss_solve(mat).map_err(|_| {
        Error::SingularMatrix("the cycle points are not pairwise distinct".into())
    })?;
    let mut out = head;
    out.extend(spec.tail.iter().cloned());
    debug_assert_eq!(out.len(), d + 1);
    Ok(out)
}

/// Solves `A x = b` for a square augmented matrix `[A | b]` by fraction-free elimination.
pub fn bareiss_solve(mut a: Vec<Vec<Coeff>>) -> Result<Vec<Coeff>> {
    let n = a.len();
    let mut prev = Coeff::one();
    for k in 0..n {
        let piv = (k..n)
            .find(|&r| !a[r][k].is_zero())
            .ok_or_else(|| Error::SingularMatrix(format!("no pivot in column {k}")))?;
        a.swap(k, piv);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div(&prev).expect("previous pivot is nonzero");
            }
            a[i][k] = Coeff::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Coeff::zero(); n];
    for i in (0..n).rev() {
        let mut s = a[i][n].clone();
        for j in i + 1..n {
            s = &s - &(&a[i][j] * &x[j]);
        }
        x[i] = s.div(&a[i][i]).expect("pivot is nonzero");
    }
    Ok(x)
}

/// Indices `k < N_1` with `f^k(z_1) = z_1`: marked cycles collapsing to a shorter period.
pub fn shorter_periods(coeffs: &[Coeff], spec: &CycleSpec) -> Vec<usize> {
    let (Some(&n1), Some(z1)) = (spec.cycle_lengths.first(), spec.points.first()) else {
        return Vec::new();
    };
    let mut z = z1.clone();
    let mut out = Vec::new();
    for k in 1..n1 {
        z = eval(coeffs, &z);
        if z == *z1 {
            out.push(k);
        }
    }
    out
}

/// Whether `f(z_j) = z_sigma(j)` for every marked point.
pub fn satisfies_cycles(coeffs: &[Coeff], spec: &CycleSpec) -> bool {
    (0..spec.m()).all(|j| eval(coeffs, &spec.points[j]) == spec.points[spec.successor(j)])
}

/// An affine map `z -> alpha z + beta`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub alpha: Coeff,
    pub beta: Coeff,
}

impl Affine {
    pub fn apply(&self, z: &Coeff) -> Coeff {
        &(&self.alpha * z) + &self.beta
    }
}

/// Coefficients of `phi o f o phi^(-1)`.
pub fn conjugate(coeffs: &[Coeff], phi: &Affine) -> Result<Coeffs> {
    let inv = phi.alpha.inv().ok_or_else(|| Error::Argument("conjugating map must have alpha != 0".into()))?;
    // phi^(-1)(z) = inv z - inv beta
    let lin = [-&(&inv * &phi.beta), inv];
    let mut acc: Coeffs = vec![Coeff::zero()];
    for c in coeffs.iter().rev() {
        acc = poly_mul(&acc, &lin);
        acc[0] = &acc[0] + c;
    }
    let mut out: Coeffs = acc.iter().map(|c| &phi.alpha * c).collect();
    out[0] = &out[0] + &phi.beta;
    out.truncate(coeffs.len());
    Ok(out)
}

fn poly_mul(p: &[Coeff], q: &[Coeff]) -> Coeffs {
    let mut out = vec![Coeff::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

/// A polynomial with marked points (listed in cycle order).
#[derive(Clone, Debug, PartialEq)]
pub struct Marked {
    pub coeffs: Coeffs,
    pub points: Vec<Coeff>,
}

impl Marked {
    pub fn conjugate(&self, phi: &Affine) -> Result<Marked> {
        Ok(Marked { coeffs: conjugate(&self.coeffs, phi)?, points: self.points.iter().map(|z| phi.apply(z)).collect() })
    }
}

/// The affine map to the normal form, and the normalized data.
///
/// * two or more marked points: `z_1 = 0`, `z_2 = 1`;
/// * one marked point: `z = 0` (so `a_0 = 0`) and `a_2 = 1`;
/// * none: barycenter at `0` and `f(0) = 1`, i.e. `a_d z^d + a_{d-2} z^{d-2} + ... + a_1 z + 1`.
pub fn normalize_marked(x: &Marked) -> Result<(Affine, Marked)> {
    let d = x.coeffs.len().saturating_sub(1);
    if d < 2 || x.coeffs[d].is_zero() {
        return Err(Error::Degree("need a polynomial of degree at least 2".into()));
    }
    let phi = match x.points.as_slice() {
        [z1, z2, ..] => {
            let diff = z2 - z1;
            let alpha = diff
                .inv()
                .ok_or_else(|| Error::Normalization("z_1 = z_2: the first two marked points coincide".into()))?;
            let beta = -&(&alpha * z1);
            Affine { alpha, beta }
        }
        [z] => {
            let moved = conjugate(&x.coeffs, &Affine { alpha: Coeff::one(), beta: -z })?;
            // conjugating by z -> alpha z scales a_i by alpha^(1 - i)
            let alpha = moved[2].clone();
            if alpha.is_zero() {
                return Err(Error::Normalization("a_2 = 0 after moving the fixed point to 0".into()));
            }
            Affine { beta: -&(&alpha * z), alpha }
        }
        [] => {
            let n = Coeff::int(d as i64);
            let bary = -&x.coeffs[d - 1].div(&(&n * &x.coeffs[d])).expect("a_d != 0");
            let value = &eval(&x.coeffs, &bary) - &bary;
            let alpha = value
                .inv()
                .ok_or_else(|| Error::Normalization("the barycenter is a fixed point".into()))?;
            Affine { beta: -&(&alpha * &bary), alpha }
        }
    };
    let y = x.conjugate(&phi)?;
    Ok((phi, y))
}

/// `(a_1, a_0 a_2, a_0^2 a_3, ..., a_0^(d-3) a_(d-2), a_0^(d-1))` for
/// `z^d + a_(d-2) z^(d-2) + ... + a_0`.
pub fn moduli_invariants(coeffs: &[Coeff]) -> Result<Vec<Coeff>> {
    let d = coeffs.len().saturating_sub(1);
    if d < 2 || !coeffs[d].is_one() || !coeffs[d - 1].is_zero() {
        return Err(Error::Argument("expected a monic polynomial with a_(d-1) = 0".into()));
    }
    let a0 = &coeffs[0];
    let mut out: Vec<Coeff> = (1..=d - 2).map(|i| &a0.pow(i as u64 - 1) * &coeffs[i]).collect();
    out.push(a0.pow(d as u64 - 1));
    Ok(out)
}

#[cfg(test)]
mod tests;
