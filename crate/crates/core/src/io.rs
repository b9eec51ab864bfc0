//! JSON documents for interpolation data.
//!
//! ```json
//! {"field": "Q", "k": 2,
//!  "nodes": [{"u": "1", "values": ["1", "0"]}, {"u": "2", "values": ["0"]}]}
//! ```
//!
//! `values[j]` is the Taylor coefficient v_{i,j}: the j-th derivative of the
//! interpolant at u_i must equal j! * v_{i,j}. Pass `derivative_values` to
//! supply raw derivatives instead; they are divided by j! on ingestion.
//! `field` is `"Q"` (the default) or `{"p": PRIME}`.

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldConfig, RawScalar, Scalar};
use crate::problem::HermiteData;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    field: Option<RawField>,
    k: usize,
    nodes: Vec<RawNode>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawField {
    Name(String),
    Prime { p: u64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    u: RawScalar,
    values: Vec<RawScalar>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Replaces the document's field.
    pub field_override: Option<FieldConfig>,
    /// Values are raw derivatives rather than Taylor coefficients.
    pub derivative_values: bool,
}

pub fn parse_document(text: &str, opts: &ParseOptions) -> Result<HermiteData> {
    let raw: RawDocument = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed document: {e}")))?;
    let doc_field = match raw.field {
        None => FieldConfig::Rationals,
        Some(RawField::Name(s)) => s
            .parse()
            .map_err(|e| Error::InvalidInput(format!("field: {e}")))?,
        Some(RawField::Prime { p }) => {
            FieldConfig::prime(p).map_err(|e| Error::InvalidInput(format!("field: {e}")))?
        }
    };
    let field = opts.field_override.unwrap_or(doc_field);
    let mut nodes = Vec::with_capacity(raw.nodes.len());
    let mut values = Vec::with_capacity(raw.nodes.len());
    for (i, node) in raw.nodes.into_iter().enumerate() {
        let u = node
            .u
            .into_field(field)
            .map_err(|e| Error::InvalidInput(format!("nodes[{i}].u: {e}")))?;
        let mut vs = Vec::with_capacity(node.values.len());
        for (j, v) in node.values.into_iter().enumerate() {
            let mut s = v
                .into_field(field)
                .map_err(|e| Error::InvalidInput(format!("nodes[{i}].values[{j}]: {e}")))?;
            if opts.derivative_values {
                let fact: BigInt = (1..=j as u64).map(BigInt::from).product();
                s = s.checked_div(&field.from_bigint(&fact)).map_err(|e| {
                    Error::InvalidInput(format!("nodes[{i}].values[{j}]: {e}"))
                })?;
            }
            vs.push(s);
        }
        nodes.push(u);
        values.push(vs);
    }
    HermiteData::new(field, nodes, values, raw.k)
}

pub fn field_json(field: FieldConfig) -> Value {
    match field {
        FieldConfig::Rationals => json!("Q"),
        FieldConfig::Prime(p) => json!({ "p": p }),
    }
}

fn scalar_json(s: &Scalar) -> Value {
    serde_json::to_value(s).expect("scalars serialize")
}

/// The document form of `data`; `parse_document` inverts it.
pub fn document_json(data: &HermiteData) -> Value {
    let nodes: Vec<Value> = data
        .nodes()
        .iter()
        .zip(data.values())
        .map(|(u, vs)| {
            json!({
                "u": scalar_json(u),
                "values": vs.iter().map(scalar_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "field": field_json(data.field()), "k": data.k(), "nodes": nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str =
        r#"{"field":"Q","k":2,"nodes":[{"u":"1","values":["1","0"]},{"u":"2","values":["0"]}]}"#;

    #[test]
    fn parses_golden() {
        let d = parse_document(GOLDEN, &ParseOptions::default()).unwrap();
        assert_eq!(d.multiplicities(), &[2, 1]);
        assert_eq!(d.k(), 2);
        assert_eq!(d.value(0, 0), &FieldConfig::Rationals.one());
    }

    #[test]
    fn round_trip() {
        let d = parse_document(GOLDEN, &ParseOptions::default()).unwrap();
        let text = document_json(&d).to_string();
        assert_eq!(parse_document(&text, &ParseOptions::default()).unwrap(), d);
    }

    #[test]
    fn prime_round_trip() {
        let doc = r#"{"field":{"p":7},"k":1,"nodes":[{"u":"3","values":["1/2",{"residue":5,"p":7}]}]}"#;
        let d = parse_document(doc, &ParseOptions::default()).unwrap();
        let f = FieldConfig::Prime(7);
        assert_eq!(d.value(0, 0), &f.from_i64(4));
        let text = document_json(&d).to_string();
        assert_eq!(parse_document(&text, &ParseOptions::default()).unwrap(), d);
    }

    #[test]
    fn derivative_values_are_scaled() {
        let doc = r#"{"k":1,"nodes":[{"u":"0","values":["1","2","6"]}]}"#;
        let opts = ParseOptions {
            derivative_values: true,
            ..Default::default()
        };
        let d = parse_document(doc, &opts).unwrap();
        let q = FieldConfig::Rationals;
        assert_eq!(d.values()[0], vec![q.one(), q.from_i64(2), q.from_i64(3)]);
    }

    #[test]
    fn errors_name_the_field() {
        let doc = r#"{"k":1,"nodes":[{"u":"x","values":["1"]}]}"#;
        let err = parse_document(doc, &ParseOptions::default()).unwrap_err();
        assert!(err.to_string().contains("nodes[0].u"), "{err}");
        let err = parse_document(r#"{"nodes":[]}"#, &ParseOptions::default()).unwrap_err();
        assert!(err.to_string().contains("`k`"), "{err}");
    }
}
