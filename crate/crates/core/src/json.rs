//! JSON encodings. Every integer travels as a decimal string.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{AlgElement, IdealLattice};
use crate::error::{Error, Result};
use crate::exact::{IntMat, IntPoly, RatMat};
use crate::form::DecomposableForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
}

pub fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a decimal integer: {s:?}")))
}

/// Accepts a decimal string or a JSON integer.
pub fn int_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => parse_int(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

pub fn ints_from_value(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(int_from_value)
        .collect()
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn poly_to_json(f: &IntPoly) -> Value {
    let coeffs: Vec<String> = if f.is_zero() {
        vec!["0".into()]
    } else {
        f.coeffs().iter().map(ToString::to_string).collect()
    };
    json!({ "coeffs": coeffs })
}

pub fn poly_from_value(v: &Value) -> Result<IntPoly> {
    let c = v
        .get("coeffs")
        .ok_or_else(|| Error::Parse("polynomial object needs a \"coeffs\" field".into()))?;
    Ok(IntPoly::new(ints_from_value(c)?))
}

pub fn parse_poly(text: &str) -> Result<IntPoly> {
    poly_from_value(&parse_value(text)?)
}

pub fn parse_ints(text: &str) -> Result<Vec<BigInt>> {
    ints_from_value(&parse_value(text)?)
}

pub fn int_matrix_to_json(m: &IntMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn rat_matrix_to_json(m: &RatMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn int_matrix_from_value(v: &Value) -> Result<IntMat> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?
        .iter()
        .map(ints_from_value)
        .collect::<Result<Vec<_>>>()?;
    IntMat::from_vecs(rows)
}

pub fn parse_int_matrix(text: &str) -> Result<IntMat> {
    int_matrix_from_value(&parse_value(text)?)
}

pub fn rational_to_json(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn element_to_json(x: &AlgElement) -> Value {
    Value::Array(x.coords().iter().map(rational_to_json).collect())
}

/// Terms sorted lexicographically by exponent vector.
pub fn form_to_json(form: &DecomposableForm) -> Value {
    Value::Array(
        form.poly()
            .terms()
            .iter()
            .map(|(e, c)| json!({ "exp": e, "coeff": c.to_string() }))
            .collect(),
    )
}

pub fn lattice_to_json(l: &IdealLattice) -> Value {
    json!({
        "denominator": l.denominator().to_string(),
        "hnf": int_matrix_to_json(l.hnf()),
        "algebra": poly_to_json(l.algebra().defining_poly()),
    })
}

pub fn strings(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let f = IntPoly::from_i64(&[1, 0, -123456789]);
        let v = poly_to_json(&f);
        assert_eq!(v, json!({ "coeffs": ["1", "0", "-123456789"] }));
        assert_eq!(poly_from_value(&v).unwrap(), f);
        assert_eq!(parse_poly(r#"{"coeffs":[1,"0",1]}"#).unwrap(), IntPoly::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_poly("{\"coeffs\": [1, 2") {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 1")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly(r#"{"coeffs":["x"]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn matrix_round_trip() {
        let m = IntMat::from_i64(&[&[1, -2], &[3, 4]]);
        assert_eq!(int_matrix_from_value(&int_matrix_to_json(&m)).unwrap(), m);
    }
}
