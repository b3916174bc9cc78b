//! Certificate documents: a versioned JSON envelope around one witness.
//!
//! ```json
//! {"schema": "dioph-cert/1", "kind": "zz", "field": "Q", "data": {...}}
//! ```
//!
//! Polynomials are stored as strings in the text syntax of [`crate::text`].
//! Writing is deterministic, so a document produced here parses and
//! re-serializes to the same bytes.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{FieldDescriptor, NumberFieldElement};
use crate::text::{parse_element, parse_field, parse_poly, parse_zpoly, ParseError};
use crate::witness::{
    verify_c_membership, verify_degree_witness, verify_divisor_certificate, verify_divu_witness,
    verify_zz_witness, CMembershipCertificate, DegreeWitness, DivUWitness, DivisorCertificate,
    Verdict, ZZWitness,
};
use crate::{KPoly, ZPoly};

pub const SCHEMA: &str = "dioph-cert/1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error("malformed certificate JSON: {0}")]
    Json(String),
    #[error("unsupported schema {0:?}")]
    Schema(String),
    #[error("unknown certificate kind {0:?}")]
    UnknownKind(String),
    #[error("field {field}: {source}")]
    Parse { field: &'static str, source: ParseError },
    #[error("{0} is not an integer")]
    NotInteger(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    DivU(DivUWitness),
    Divisor(DivisorCertificate),
    CMember(CMembershipCertificate),
    ZZ(ZZWitness),
    Degree(DegreeWitness),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::DivU(_) => "divu",
            Certificate::Divisor(_) => "divisor",
            Certificate::CMember(_) => "cmember",
            Certificate::ZZ(_) => "zz",
            Certificate::Degree(_) => "degree",
        }
    }

    /// Runs the matching verifier; the accepted value is rendered as text.
    pub fn verify(&self) -> Verdict<String> {
        match self {
            Certificate::DivU(w) => verify_divu_witness(w).map(|u| format!("u = {}", u)),
            Certificate::Divisor(c) => verify_divisor_certificate(c).map(|u| format!("u = {}", u)),
            Certificate::CMember(c) => verify_c_membership(c).map(|f| {
                let sign = if f.sign() < 0 { "-" } else { "+" };
                format!("sign = {}1, indices = {:?}", sign, f.indices())
            }),
            Certificate::ZZ(w) => verify_zz_witness(w).map(|x| format!("X = {}", x)),
            Certificate::Degree(w) => verify_degree_witness(w).map(|d| format!("d = {}", d)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertDocument {
    pub field: Arc<FieldDescriptor>,
    pub cert: Certificate,
}

#[derive(Serialize)]
struct EnvelopeOut<'a, D> {
    schema: &'a str,
    kind: &'a str,
    field: &'a str,
    data: D,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvelopeIn {
    schema: String,
    kind: String,
    field: String,
    data: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivUData {
    #[serde(rename = "G")]
    g: String,
    #[serde(rename = "S")]
    s: String,
    #[serde(rename = "X")]
    x: String,
    #[serde(rename = "Y")]
    y: String,
    n: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorData {
    #[serde(rename = "F")]
    f: String,
    #[serde(rename = "G")]
    g: String,
    u: u64,
    inner: DivUData,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CMemberData {
    divisor: DivisorData,
    t: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ZZData {
    #[serde(rename = "M")]
    m: String,
    #[serde(rename = "D")]
    d: String,
    #[serde(rename = "Q")]
    q: String,
    #[serde(rename = "R")]
    r: String,
    #[serde(rename = "C")]
    c: String,
    #[serde(rename = "X")]
    x: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeData {
    #[serde(rename = "X")]
    x: String,
    #[serde(rename = "Y")]
    y: String,
    d: u64,
    #[serde(rename = "F")]
    f: String,
}

fn divu_data(w: &DivUWitness) -> DivUData {
    DivUData {
        g: w.g.to_string(),
        s: w.s.to_string(),
        x: w.x.to_string(),
        y: w.y.to_string(),
        n: w.n,
    }
}

fn divisor_data(c: &DivisorCertificate) -> DivisorData {
    DivisorData {
        f: c.f.to_string(),
        g: c.g.to_string(),
        u: c.u,
        inner: divu_data(&c.inner),
    }
}

fn integer_number(n: &BigInt) -> serde_json::Number {
    n.to_string().parse().expect("integer literal is a JSON number")
}

struct Reader<'a> {
    field: &'a Arc<FieldDescriptor>,
}

impl Reader<'_> {
    fn poly(&self, name: &'static str, s: &str) -> Result<KPoly, CertError> {
        parse_poly(s, self.field).map_err(|source| CertError::Parse { field: name, source })
    }

    fn zpoly(&self, name: &'static str, s: &str) -> Result<ZPoly, CertError> {
        parse_zpoly(s).map_err(|source| CertError::Parse { field: name, source })
    }

    fn element(&self, name: &'static str, s: &str) -> Result<NumberFieldElement, CertError> {
        parse_element(s, self.field).map_err(|source| CertError::Parse { field: name, source })
    }

    fn divu(&self, d: &DivUData) -> Result<DivUWitness, CertError> {
        Ok(DivUWitness {
            g: self.poly("G", &d.g)?,
            s: self.poly("S", &d.s)?,
            x: self.poly("X", &d.x)?,
            y: self.poly("Y", &d.y)?,
            n: d.n,
        })
    }

    fn divisor(&self, d: &DivisorData) -> Result<DivisorCertificate, CertError> {
        Ok(DivisorCertificate {
            f: self.poly("F", &d.f)?,
            g: self.poly("G", &d.g)?,
            u: d.u,
            inner: self.divu(&d.inner)?,
        })
    }
}

fn from_value<T: for<'de> Deserialize<'de>>(v: serde_json::Value) -> Result<T, CertError> {
    serde_json::from_value(v).map_err(|e| CertError::Json(e.to_string()))
}

impl CertDocument {
    pub fn new(field: &Arc<FieldDescriptor>, cert: Certificate) -> Self {
        Self {
            field: field.clone(),
            cert,
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        fn render<D: Serialize>(doc: &CertDocument, data: D) -> String {
            let env = EnvelopeOut {
                schema: SCHEMA,
                kind: doc.cert.kind(),
                field: doc.field.label(),
                data,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("serializable");
            s.push('\n');
            s
        }
        match &self.cert {
            Certificate::DivU(w) => render(self, divu_data(w)),
            Certificate::Divisor(c) => render(self, divisor_data(c)),
            Certificate::CMember(c) => render(
                self,
                CMemberData {
                    divisor: divisor_data(&c.divisor),
                    t: integer_number(&c.t),
                },
            ),
            Certificate::ZZ(w) => render(
                self,
                ZZData {
                    m: w.m.to_string(),
                    d: w.d.to_string(),
                    q: w.q.to_string(),
                    r: w.r.to_string(),
                    c: w.c.to_string(),
                    x: w.x.to_string(),
                },
            ),
            Certificate::Degree(w) => render(
                self,
                DegreeData {
                    x: w.x.to_string(),
                    y: w.y.to_string(),
                    d: w.d,
                    f: w.f.to_string(),
                },
            ),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, CertError> {
        let env: EnvelopeIn = serde_json::from_str(s).map_err(|e| CertError::Json(e.to_string()))?;
        if env.schema != SCHEMA {
            return Err(CertError::Schema(env.schema));
        }
        let field = parse_field(&env.field).map_err(|source| CertError::Parse {
            field: "field",
            source,
        })?;
        let rd = Reader { field: &field };
        let cert = match env.kind.as_str() {
            "divu" => Certificate::DivU(rd.divu(&from_value(env.data)?)?),
            "divisor" => Certificate::Divisor(rd.divisor(&from_value(env.data)?)?),
            "cmember" => {
                let d: CMemberData = from_value(env.data)?;
                let t = d.t.to_string().parse::<BigInt>().map_err(|_| CertError::NotInteger("t"))?;
                Certificate::CMember(CMembershipCertificate {
                    divisor: rd.divisor(&d.divisor)?,
                    t,
                })
            }
            "zz" => {
                let d: ZZData = from_value(env.data)?;
                Certificate::ZZ(ZZWitness {
                    m: rd.poly("M", &d.m)?,
                    d: rd.poly("D", &d.d)?,
                    q: rd.poly("Q", &d.q)?,
                    r: rd.poly("R", &d.r)?,
                    c: rd.element("C", &d.c)?,
                    x: rd.poly("X", &d.x)?,
                })
            }
            "degree" => {
                let d: DegreeData = from_value(env.data)?;
                Certificate::Degree(DegreeWitness {
                    x: rd.zpoly("X", &d.x)?,
                    y: rd.zpoly("Y", &d.y)?,
                    d: d.d,
                    f: rd.poly("F", &d.f)?,
                })
            }
            other => return Err(CertError::UnknownKind(other.to_string())),
        };
        Ok(Self { field, cert })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{build_divu_witness, build_zz_witness};

    #[test]
    fn zz_golden() {
        let q = FieldDescriptor::rationals();
        let w = build_zz_witness(&ZPoly::from_i64s(&[3, 0, 1])).unwrap();
        let doc = CertDocument::new(&q, Certificate::ZZ(w));
        let s = doc.to_json_string();
        let expected = r#"{
  "schema": "dioph-cert/1",
  "kind": "zz",
  "field": "Q",
  "data": {
    "M": "Z^2 + 1",
    "D": "Z^3 - 1",
    "Q": "0",
    "R": "Z^2 + 1",
    "C": "2",
    "X": "Z^2 + 3"
  }
}
"#;
        assert_eq!(s, expected);
        let back = CertDocument::from_json_str(&s).unwrap();
        assert_eq!(back.to_json_string(), s);
        assert_eq!(back.cert.verify(), Verdict::Accept("X = Z^2 + 3".to_string()));
    }

    #[test]
    fn divu_round_trip_over_extension() {
        let qi = parse_field("Q(i)/i^2+1").unwrap();
        let g = parse_poly("1+Z+Z^2+Z^3", &qi).unwrap();
        let doc = CertDocument::new(&qi, Certificate::DivU(build_divu_witness(&g, 4).unwrap()));
        let s = doc.to_json_string();
        let back = CertDocument::from_json_str(&s).unwrap();
        assert_eq!(back.to_json_string(), s);
        assert!(back.cert.verify().is_accept());
    }

    #[test]
    fn rejects_bad_envelopes() {
        assert!(matches!(CertDocument::from_json_str("{}"), Err(CertError::Json(_))));
        let wrong = r#"{"schema":"x","kind":"zz","field":"Q","data":{}}"#;
        assert_eq!(CertDocument::from_json_str(wrong), Err(CertError::Schema("x".into())));
        let kind = r#"{"schema":"dioph-cert/1","kind":"nope","field":"Q","data":{}}"#;
        assert_eq!(CertDocument::from_json_str(kind), Err(CertError::UnknownKind("nope".into())));
    }
}
