//! JSON codecs for descriptors, elements and polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{ElementValue, FieldDescriptor, FieldElement, FieldKind, PadicNumber};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Poly};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get_u64(v: &Value, key: &str) -> Result<u64> {
    v.get(key).and_then(Value::as_u64).ok_or_else(|| perr(format!("missing integer field `{key}`")))
}

pub fn descriptor_to_json(d: &FieldDescriptor) -> Value {
    match d.kind() {
        FieldKind::Rationals => json!({"kind": "Q"}),
        FieldKind::PrimeField { p } => json!({"kind": "Fp", "p": p}),
        FieldKind::ExtField { p, modulus } => json!({"kind": "Fq", "p": p, "modulus": modulus}),
        FieldKind::PadicField { p, precision } => json!({"kind": "Qp", "p": p, "precision": precision}),
    }
}

pub fn descriptor_from_json(v: &Value) -> Result<FieldDescriptor> {
    match v.get("kind").and_then(Value::as_str) {
        Some("Q") => Ok(FieldDescriptor::rationals()),
        Some("Fp") => FieldDescriptor::prime(get_u64(v, "p")?),
        Some("Fq") => {
            let p = get_u64(v, "p")?;
            let m = v
                .get("modulus")
                .and_then(Value::as_array)
                .ok_or_else(|| perr("missing `modulus`"))?
                .iter()
                .map(|c| c.as_u64().ok_or_else(|| perr("modulus entries must be nonnegative integers")))
                .collect::<Result<Vec<_>>>()?;
            FieldDescriptor::extension(p, m)
        }
        Some("Qp") => {
            let prec = u32::try_from(get_u64(v, "precision")?).map_err(|_| perr("precision too large"))?;
            FieldDescriptor::padic(get_u64(v, "p")?, prec)
        }
        other => Err(perr(format!("unknown field kind {other:?}"))),
    }
}

pub fn parse_descriptor(s: &str) -> Result<FieldDescriptor> {
    descriptor_from_json(&serde_json::from_str(s).map_err(|e| perr(e.to_string()))?)
}

pub fn element_to_json(x: &FieldElement) -> Value {
    match x.value() {
        ElementValue::Rational(r) => Value::String(r.to_string()),
        ElementValue::Residue(r) => json!(r),
        ElementValue::Vector(v) => json!(v),
        ElementValue::Padic(pd) => {
            if pd.is_exact_zero() {
                json!({"val": "inf", "digits": []})
            } else {
                json!({"val": pd.valuation_bound(), "digits": pd.digits()})
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| perr(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| perr(format!("bad rational `{s}`")))?;
    if d == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn scalar_rational(v: &Value) -> Result<Option<BigRational>> {
    Ok(match v {
        Value::Number(n) => Some(parse_rational(&n.to_string())?),
        Value::String(s) => Some(parse_rational(s)?),
        _ => None,
    })
}

/// Accepts integers, rational strings, coefficient arrays (extension fields)
/// and `{"val":k,"digits":[...]}` objects (p-adic fields).
pub fn element_from_json(d: &FieldDescriptor, v: &Value) -> Result<FieldElement> {
    if let Some(r) = scalar_rational(v)? {
        return FieldElement::from_rational(d, &r);
    }
    match (d.kind(), v) {
        (FieldKind::ExtField { p, .. }, Value::Array(a)) => {
            let cs = a
                .iter()
                .map(|c| {
                    let r = scalar_rational(c)?.ok_or_else(|| perr("coefficient must be a number"))?;
                    if !r.is_integer() {
                        return Err(perr("extension coefficients must be integers"));
                    }
                    let m = BigInt::from(*p);
                    let c = ((r.to_integer() % &m) + &m) % &m;
                    Ok(u64::try_from(c).unwrap())
                })
                .collect::<Result<Vec<_>>>()?;
            FieldElement::from_coeffs(d, &cs)
        }
        (FieldKind::PadicField { p, .. }, Value::Object(o)) => {
            let digits = o
                .get("digits")
                .and_then(Value::as_array)
                .ok_or_else(|| perr("missing `digits`"))?
                .iter()
                .map(|c| c.as_u64().ok_or_else(|| perr("digits must be nonnegative integers")))
                .collect::<Result<Vec<_>>>()?;
            let pd = match o.get("val") {
                Some(Value::String(s)) if s == "inf" => PadicNumber::exact_zero(*p),
                Some(Value::Number(n)) => {
                    let k = n.as_i64().ok_or_else(|| perr("valuation must be an integer"))?;
                    PadicNumber::from_digits(*p, k, &digits)?
                }
                _ => return Err(perr("missing `val`")),
            };
            FieldElement::from_padic(d, pd)
        }
        _ => Err(perr(format!("cannot read {v} as an element of {d}"))),
    }
}

pub fn elements_from_json(d: &FieldDescriptor, v: &Value) -> Result<Vec<FieldElement>> {
    v.as_array().ok_or_else(|| perr("expected an array"))?.iter().map(|x| element_from_json(d, x)).collect()
}

pub fn poly_to_json(f: &Poly<FieldElement>) -> Value {
    json!({
        "field": descriptor_to_json(f.field()),
        "coeffs": f.coeffs().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

pub fn poly_from_json(v: &Value) -> Result<Poly<FieldElement>> {
    let d = descriptor_from_json(v.get("field").ok_or_else(|| perr("missing `field`"))?)?;
    let cs = elements_from_json(&d, v.get("coeffs").ok_or_else(|| perr("missing `coeffs`"))?)?;
    Ok(Poly::new(cs, FieldElement::from_i64(&d, 0)))
}

/// Terms in graded-lex order, highest first.
pub fn multipoly_to_json(f: &MultiPoly<FieldElement>) -> Value {
    let terms: Vec<Value> = f.terms().map(|(e, c)| json!({"exp": e.0, "c": element_to_json(c)})).collect();
    json!({"field": descriptor_to_json(f.zero_elem().field()), "nvars": f.nvars(), "terms": terms})
}

pub fn multipoly_from_json(v: &Value) -> Result<MultiPoly<FieldElement>> {
    let d = descriptor_from_json(v.get("field").ok_or_else(|| perr("missing `field`"))?)?;
    let nvars = get_u64(v, "nvars")? as usize;
    let zero = FieldElement::from_i64(&d, 0);
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("missing `terms`"))?
        .iter()
        .map(|t| {
            let exp = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| perr("term without `exp`"))?
                .iter()
                .map(|e| e.as_u64().map(|e| e as u32).ok_or_else(|| perr("bad exponent")))
                .collect::<Result<Vec<_>>>()?;
            let c = element_from_json(&d, t.get("c").ok_or_else(|| perr("term without `c`"))?)?;
            Ok((exp, c))
        })
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(nvars, &zero, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    #[test]
    fn descriptor_round_trip() {
        for s in [
            r#"{"kind":"Q"}"#,
            r#"{"kind":"Fp","p":5}"#,
            r#"{"kind":"Fq","p":5,"modulus":[2,0,1]}"#,
            r#"{"kind":"Qp","p":5,"precision":12}"#,
        ] {
            let d = parse_descriptor(s).unwrap();
            let v: Value = serde_json::from_str(s).unwrap();
            assert_eq!(descriptor_to_json(&d), v);
        }
        assert!(parse_descriptor(r#"{"kind":"Fp","p":6}"#).is_err());
        assert!(parse_descriptor(r#"{"kind":"R"}"#).is_err());
    }

    #[test]
    fn element_round_trip() {
        let q = FieldDescriptor::rationals();
        let x = element_from_json(&q, &json!("3/4")).unwrap();
        assert_eq!(element_to_json(&x), json!("3/4"));
        assert_eq!(element_from_json(&q, &json!(-2)).unwrap(), FieldElement::from_i64(&q, -2));

        let f25 = FieldDescriptor::extension(5, vec![2, 0, 1]).unwrap();
        let a = element_from_json(&f25, &json!([2, 1])).unwrap();
        assert_eq!(element_from_json(&f25, &element_to_json(&a)).unwrap(), a);

        let q5 = FieldDescriptor::padic(5, 8).unwrap();
        let y = FieldElement::from_i64(&q5, 50);
        let back = element_from_json(&q5, &element_to_json(&y)).unwrap();
        assert_eq!(back, y);
        let z = element_from_json(&q5, &json!({"val": "inf", "digits": []})).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn poly_round_trip() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let f = Poly::from_ints(&f7, &[3, 0, 1]);
        assert_eq!(poly_from_json(&poly_to_json(&f)).unwrap(), f);
        let z = FieldElement::from_i64(&f7, 0);
        let m = MultiPoly::var(2, 0, &z) * MultiPoly::var(2, 1, &z) + MultiPoly::constant(2, z.from_i64_like(3));
        let j = multipoly_to_json(&m);
        assert_eq!(j["terms"][0]["exp"], json!([1, 1]));
        assert_eq!(multipoly_from_json(&j).unwrap(), m);
    }
}
