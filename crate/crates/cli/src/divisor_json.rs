//! Divisor files:
//!
//! ```json
//! {"curve": "sphere" | {"elliptic": "a+bi"}, "terms": [[re, im, mult], ["inf", mult], ...]}
//! ```
//!
//! `curve` may be omitted when the curve is given on the command line.

use holink_core::linking::{Curve, Divisor, Point};
use holink_core::{Complex64, Tau};
use serde_json::{json, Value};

use crate::format::{format_complex, parse_complex};

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Domain(#[from] holink_core::Error),
}

fn shape<T>(msg: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError::Shape(msg.into()))
}

/// `"sphere"`, `"elliptic:a+bi"` or a bare modulus `"a+bi"`.
pub fn parse_curve_spec(text: &str) -> Result<Curve, SchemaError> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("sphere") {
        return Ok(Curve::Sphere);
    }
    let modulus = t.strip_prefix("elliptic:").unwrap_or(t);
    let tau = parse_complex(modulus).map_err(|e| SchemaError::Shape(e.to_string()))?;
    Ok(Curve::Elliptic(Tau::new(tau)?))
}

fn parse_curve(value: &Value) -> Result<Curve, SchemaError> {
    match value {
        Value::String(s) if s == "sphere" => Ok(Curve::Sphere),
        Value::Object(map) if map.len() == 1 => match map.get("elliptic") {
            Some(Value::String(s)) => {
                let tau = parse_complex(s).map_err(|e| SchemaError::Shape(e.to_string()))?;
                Ok(Curve::Elliptic(Tau::new(tau)?))
            }
            _ => shape("curve object must be {\"elliptic\": \"a+bi\"}"),
        },
        _ => shape("curve must be \"sphere\" or {\"elliptic\": \"a+bi\"}"),
    }
}

fn parse_mult(value: &Value) -> Result<i64, SchemaError> {
    match value.as_i64() {
        Some(m) => Ok(m),
        None => shape(format!("multiplicity must be an integer, got {value}")),
    }
}

fn parse_term(value: &Value) -> Result<(Point, i64), SchemaError> {
    let Some(items) = value.as_array() else {
        return shape(format!("term must be an array, got {value}"));
    };
    match items.as_slice() {
        [Value::String(s), m] if s == "inf" => Ok((Point::Infinity, parse_mult(m)?)),
        [re, im, m] => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok((Point::finite(re, im), parse_mult(m)?)),
            _ => shape(format!("point coordinates must be numbers, got {value}")),
        },
        _ => shape(format!("term must be [re, im, mult] or [\"inf\", mult], got {value}")),
    }
}

/// Parse a divisor document. With `override_curve` set, a `curve` field in the
/// document must name the same curve.
pub fn parse_divisor(text: &str, override_curve: Option<Curve>) -> Result<Divisor, SchemaError> {
    let doc: Value = serde_json::from_str(text)?;
    let Some(obj) = doc.as_object() else {
        return shape("divisor document must be a JSON object");
    };
    if let Some(key) = obj.keys().find(|k| *k != "curve" && *k != "terms") {
        return shape(format!("unknown field {key:?}"));
    }
    let declared = obj.get("curve").map(parse_curve).transpose()?;
    let curve = match (declared, override_curve) {
        (Some(a), Some(b)) if !a.same_as(&b) => return Err(holink_core::Error::CurveMismatch.into()),
        (_, Some(b)) => b,
        (Some(a), None) => a,
        (None, None) => return shape("no curve: add a \"curve\" field or pass --curve"),
    };
    let Some(terms) = obj.get("terms").and_then(Value::as_array) else {
        return shape("\"terms\" must be an array");
    };
    let terms = terms.iter().map(parse_term).collect::<Result<Vec<_>, _>>()?;
    Ok(Divisor::new(curve, terms)?)
}

pub fn divisor_to_json(d: &Divisor) -> Value {
    let curve = match d.curve() {
        Curve::Sphere => json!("sphere"),
        Curve::Elliptic(tau) => json!({ "elliptic": format_complex(tau.value(), 17) }),
    };
    let terms: Vec<Value> = d
        .terms()
        .iter()
        .map(|&(p, m)| match p {
            Point::Finite(Complex64 { re, im }) => json!([re, im, m]),
            Point::Infinity => json!(["inf", m]),
        })
        .collect();
    json!({ "curve": curve, "terms": terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_with_infinity() {
        let d = parse_divisor(r#"{"curve":"sphere","terms":[[0,0,1],["inf",-1]]}"#, None).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.terms().len(), 2);
        assert!(d.terms().iter().any(|(p, m)| *p == Point::Infinity && *m == -1));
    }

    #[test]
    fn elliptic_round_trip() {
        let text = r#"{"curve":{"elliptic":"0.25+1.5i"},"terms":[[0.1,0.2,2],[0.3,0.1,-2]]}"#;
        let d = parse_divisor(text, None).unwrap();
        let again = parse_divisor(&divisor_to_json(&d).to_string(), None).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn curve_override_and_mismatch() {
        let bare = r#"{"terms":[[1,0,1],[2,0,-1]]}"#;
        assert!(parse_divisor(bare, None).is_err());
        assert!(parse_divisor(bare, Some(Curve::Sphere)).is_ok());
        let tagged = r#"{"curve":"sphere","terms":[[1,0,1],[2,0,-1]]}"#;
        let elliptic = parse_curve_spec("elliptic:0+1i").unwrap();
        assert!(matches!(
            parse_divisor(tagged, Some(elliptic)),
            Err(SchemaError::Domain(holink_core::Error::CurveMismatch))
        ));
    }

    #[test]
    fn malformed_documents() {
        for bad in [
            "[]",
            r#"{"curve":"torus","terms":[]}"#,
            r#"{"curve":"sphere","terms":[[1,0]]}"#,
            r#"{"curve":"sphere","terms":[[1,0,1.5]]}"#,
            r#"{"curve":"sphere","terms":[["inf",1,2]]}"#,
            r#"{"curve":"sphere","terms":[],"extra":1}"#,
            r#"{"curve":{"elliptic":"0-1i"},"terms":[]}"#,
        ] {
            assert!(parse_divisor(bad, None).is_err(), "{bad}");
        }
    }

    #[test]
    fn curve_specs() {
        assert_eq!(parse_curve_spec("sphere").unwrap(), Curve::Sphere);
        assert!(matches!(parse_curve_spec("0.5+2i").unwrap(), Curve::Elliptic(_)));
        assert!(parse_curve_spec("elliptic:garbage").is_err());
    }
}
