//! JSON documents read and written by the command-line front end.
//!
//! Floats are written in scientific notation with 17 significant digits so
//! that every `f64` round-trips and identical inputs give identical bytes.
//! Non-finite values are written as `null`.

use std::io;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::{Error, Result};
use crate::families::{FamilyCase, FamilyParams, Provenance};
use crate::geometry::{Basis, DiagonalMetric, Region, VectorField};

/// Metric and/or field with optional sweep settings. Any subset of the keys
/// may be present; the same file can serve as `--metric` and `--field`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
}

fn required<'a>(v: &'a Option<String>, key: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Input(format!("missing key `{key}`")))
}

impl ProblemDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn metric(&self) -> Result<DiagonalMetric> {
        DiagonalMetric::parse(required(&self.f1, "f1")?, required(&self.f2, "f2")?)
    }

    pub fn field(&self) -> Result<VectorField> {
        let basis = self.basis.ok_or_else(|| Error::Input("missing key `basis`".into()))?;
        VectorField::parse(basis, required(&self.v1, "v1")?, required(&self.v2, "v2")?)
    }

    pub fn has_field(&self) -> bool {
        self.v1.is_some() || self.v2.is_some() || self.basis.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricDoc {
    pub f1: String,
    pub f2: String,
}

impl From<&DiagonalMetric> for MetricDoc {
    fn from(m: &DiagonalMetric) -> Self {
        MetricDoc { f1: m.f1.to_string(), f2: m.f2.to_string() }
    }
}

/// A field on the wire. `closed_form` is false when a component contains a
/// quadrature-backed antiderivative, whose printed form cannot be parsed
/// back.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldDoc {
    pub basis: Basis,
    pub v1: String,
    pub v2: String,
    pub closed_form: bool,
}

impl From<&VectorField> for FieldDoc {
    fn from(v: &VectorField) -> Self {
        FieldDoc {
            basis: v.basis,
            v1: v.c1.to_string(),
            v2: v.c2.to_string(),
            closed_form: v.is_closed_form(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRequest {
    pub case: FamilyCase,
    pub params: FamilyParams,
    pub metric: ProblemDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyResponse {
    pub case: FamilyCase,
    pub params: FamilyParams,
    pub metric: MetricDoc,
    pub region: Region,
    pub field: FieldDoc,
    /// The same field in the other basis.
    pub converted: FieldDoc,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

/// Machine-readable error object.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorDoc {
    pub kind: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorDoc {
    fn from(e: &Error) -> Self {
        let kind = match e {
            Error::Parse(_) => "parse",
            Error::Eval(_) => "evaluation",
            Error::Inadmissible(_) => "inadmissible",
            Error::NonConstantK { .. } => "non_constant_k",
            Error::Params(_) => "params",
            Error::Input(_) => "input",
        };
        ErrorDoc { kind, message: e.to_string() }
    }
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}

struct SigFigs;

impl Formatter for SigFigs {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

/// Compact JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigs);
    value
        .serialize(&mut ser)
        .expect("report types serialize infallibly");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_digits() {
        assert_eq!(to_json(&0.1), "1.0000000000000001e-1");
        assert_eq!(to_json(&[2.0, -0.5]), "[2.0000000000000000e0,-5.0000000000000000e-1]");
        assert_eq!(to_json(&f64::NAN), "null");
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, std::f64::consts::E, -1e-300, 6.02e23] {
            let back: f64 = to_json(&v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits());
        }
    }

    #[test]
    fn problem_doc_is_strict() {
        assert!(ProblemDoc::from_json(r#"{"f1": "1", "colour": 3}"#).is_err());
        let d = ProblemDoc::from_json(r#"{"f1": "exp(x1)", "f2": "1", "region": [0, 1, 0, 2]}"#).unwrap();
        assert_eq!(d.region, Some(Region::from([0.0, 1.0, 0.0, 2.0])));
        assert!(d.field().is_err());
        assert!(!d.has_field());
        assert!(d.metric().is_ok());
    }

    #[test]
    fn family_request() {
        let r: FamilyRequest = from_json(
            r#"{"case": "BothX1_ii", "params": {"c": [1]}, "metric": {"f1": "exp(-x1)", "f2": "exp(x1)"}}"#,
        )
        .unwrap();
        assert_eq!(r.case, FamilyCase::BothX1Reciprocal);
        assert_eq!(r.params.anchor, 0.0);
    }

    #[test]
    fn error_kinds() {
        let e = Error::Inadmissible("f1 not constant on region".into());
        assert_eq!(
            to_json(&ErrorDoc::from(&e)),
            r#"{"kind":"inadmissible","message":"case inadmissible: f1 not constant on region"}"#
        );
    }
}
