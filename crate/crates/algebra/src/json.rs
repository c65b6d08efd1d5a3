//! JSON encoding of polynomials and rational functions.
//!
//! ```text
//! {"field": {"min_poly": [c0, ..., 1]} | null,
//!  "vars": ["a", "b", "z"],
//!  "terms": [{"exp": [..], "coeff": [..]}, ...]}
//! ```
//!
//! A rational coefficient is a pair `["num", "den"]` of decimal strings; a
//! number-field coefficient is a list of such pairs (power-basis coordinates).
//! Terms are listed in descending graded-lex order. The reader also accepts
//! plain JSON integers and `"p/q"` strings wherever a rational is expected.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::coeff::Coeff;
use crate::error::{AlgebraError, Result};
use crate::mono::Mono;
use crate::numfield::{NfElem, NumberField};
use crate::poly::MultiPoly;
use crate::ratfunc::RationalFunction;
use crate::rational::{parse_rat, Rat};

pub fn rat_to_json(r: &Rat) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            let n = int_from_json(&a[0])?;
            let d = int_from_json(&a[1])?;
            if d == BigInt::from(0) {
                return Err(AlgebraError::Parse("zero denominator".into()));
            }
            Ok(Rat::new(n, d))
        }
        Value::Number(_) => Ok(Rat::from_integer(int_from_json(v)?)),
        Value::String(s) => parse_rat(s).ok_or_else(|| AlgebraError::Parse(format!("bad rational {s}"))),
        _ => Err(AlgebraError::Parse(format!("expected rational, found {v}"))),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s.parse().map_err(|_| AlgebraError::Parse(format!("bad integer {s}"))),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| AlgebraError::Parse(format!("bad integer {n}"))),
        _ => Err(AlgebraError::Parse(format!("expected integer, found {v}"))),
    }
}

pub fn field_to_json(k: Option<&Arc<NumberField>>) -> Value {
    match k {
        None => Value::Null,
        Some(k) => json!({
            "min_poly": k.min_poly().iter().map(rat_to_json).collect::<Vec<_>>(),
            "gen": k.gen_name(),
        }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Option<Arc<NumberField>>> {
    match v {
        Value::Null => Ok(None),
        Value::Object(o) => {
            let mp = o
                .get("min_poly")
                .and_then(|m| m.as_array())
                .ok_or_else(|| AlgebraError::Parse("field without min_poly".into()))?;
            let coeffs = mp.iter().map(rat_from_json).collect::<Result<Vec<_>>>()?;
            let name = o.get("gen").and_then(|g| g.as_str()).unwrap_or("zeta");
            Ok(Some(NumberField::new(coeffs, name)?))
        }
        _ => Err(AlgebraError::Parse("field must be null or an object".into())),
    }
}

pub fn coeff_to_json(c: &Coeff, field: Option<&Arc<NumberField>>) -> Value {
    match field {
        None => rat_to_json(c.as_rat().expect("rational coefficient")),
        Some(k) => Value::Array(c.coords_in(k).iter().map(rat_to_json).collect()),
    }
}

pub fn coeff_from_json(v: &Value, field: Option<&Arc<NumberField>>) -> Result<Coeff> {
    match field {
        None => Ok(Coeff::Rat(rat_from_json(v)?)),
        Some(k) => {
            let a = v
                .as_array()
                .ok_or_else(|| AlgebraError::Parse("expected coordinate list".into()))?;
            // a pair of strings is a rational constant
            if a.len() == 2 && a.iter().all(|x| x.is_string()) {
                return Ok(Coeff::Rat(rat_from_json(v)?));
            }
            if a.len() > k.degree() {
                return Err(AlgebraError::Parse("too many coordinates".into()));
            }
            let coords = a.iter().map(rat_from_json).collect::<Result<Vec<_>>>()?;
            Ok(Coeff::from_nf(NfElem::new(k, coords)))
        }
    }
}

/// Serializes `p`; `field` overrides the field detected from the coefficients.
pub fn poly_to_json_in(p: &MultiPoly, field: Option<&Arc<NumberField>>) -> Value {
    let detected = p.field();
    let field = field.or(detected.as_ref());
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| json!({"exp": m.0, "coeff": coeff_to_json(c, field)}))
        .collect();
    json!({
        "field": field_to_json(field),
        "vars": p.vars().as_ref(),
        "terms": terms,
    })
}

pub fn poly_to_json(p: &MultiPoly) -> Value {
    poly_to_json_in(p, None)
}

pub fn poly_from_json(v: &Value) -> Result<MultiPoly> {
    let o = v
        .as_object()
        .ok_or_else(|| AlgebraError::Parse("polynomial must be an object".into()))?;
    let field = field_from_json(o.get("field").unwrap_or(&Value::Null))?;
    let names: Vec<String> = o
        .get("vars")
        .and_then(|x| x.as_array())
        .ok_or_else(|| AlgebraError::Parse("missing vars".into()))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| AlgebraError::Parse("bad variable".into())))
        .collect::<Result<_>>()?;
    let vs = Arc::new(names);
    let mut p = MultiPoly::zero(&vs);
    let terms = o
        .get("terms")
        .and_then(|x| x.as_array())
        .ok_or_else(|| AlgebraError::Parse("missing terms".into()))?;
    for t in terms {
        let exp: Vec<u32> = t
            .get("exp")
            .and_then(|e| e.as_array())
            .ok_or_else(|| AlgebraError::Parse("missing exp".into()))?
            .iter()
            .map(|e| e.as_u64().map(|x| x as u32).ok_or_else(|| AlgebraError::Parse("bad exponent".into())))
            .collect::<Result<_>>()?;
        if exp.len() != vs.len() {
            return Err(AlgebraError::Parse("exponent length mismatch".into()));
        }
        let c = coeff_from_json(t.get("coeff").unwrap_or(&Value::Null), field.as_ref())?;
        p.add_term(Mono(exp), c);
    }
    Ok(p)
}

pub fn rf_to_json(r: &RationalFunction) -> Value {
    let field = r.num().field().or_else(|| r.den().field());
    json!({
        "num": poly_to_json_in(r.num(), field.as_ref()),
        "den": poly_to_json_in(r.den(), field.as_ref()),
    })
}

/// Reads either `{"num":..,"den":..}` or a bare polynomial.
pub fn rf_from_json(v: &Value) -> Result<RationalFunction> {
    match (v.get("num"), v.get("den")) {
        (Some(n), Some(d)) => RationalFunction::new(poly_from_json(n)?, poly_from_json(d)?),
        _ => Ok(RationalFunction::from_poly(poly_from_json(v)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::vars;

    #[test]
    fn round_trip_rational_and_algebraic() {
        let vs = vars(&["t", "x"]);
        let p = parse_poly("x^3 - 27/4*t*x + 123456789012345678901234567890", &vs, None).unwrap();
        let back = poly_from_json(&poly_to_json(&p)).unwrap();
        assert_eq!(back, p);

        let k = NumberField::cyclotomic12();
        let q = parse_poly("zeta^9*t^3 + (zeta - 1/3)*x + 5", &vs, Some(&k)).unwrap();
        let back = poly_from_json(&poly_to_json(&q)).unwrap();
        assert_eq!(back, q);
        assert_eq!(
            serde_json::to_string(&poly_to_json(&back)).unwrap(),
            serde_json::to_string(&poly_to_json(&q)).unwrap()
        );
    }

    #[test]
    fn accepts_plain_numbers() {
        let v = json!({"field": null, "vars": ["z"], "terms": [{"exp": [2], "coeff": 1}, {"exp": [0], "coeff": "-1/2"}]});
        let p = poly_from_json(&v).unwrap();
        assert_eq!(p, parse_poly("z^2 - 1/2", &vars(&["z"]), None).unwrap());
    }
}
