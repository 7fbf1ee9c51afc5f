//! JSON group input documents.
//!
//! ```json
//! {"ring": "Z", "n": 2, "generators": [[[0, -1], [1, 0]]], "name": "rotation"}
//! ```
//!
//! `ring` is `"Z"`, `"Q"` or `{"Fp": p}`; entries are integers or strings
//! `"a/b"`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::closure::{close_group, MatrixGroup};
use crate::error::{Error, Result};
use crate::linalg::{parse_ratio, ExactMatrix, RingDescriptor, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Named(String),
    PrimeField {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl RingSpec {
    pub fn descriptor(&self) -> Result<RingDescriptor> {
        match self {
            RingSpec::Named(s) => s.parse(),
            RingSpec::PrimeField { fp } => RingDescriptor::prime_field(*fp),
        }
    }

    pub fn from_descriptor(ring: RingDescriptor) -> Self {
        match ring {
            RingDescriptor::Integers => RingSpec::Named("Z".into()),
            RingDescriptor::Rationals => RingSpec::Named("Q".into()),
            RingDescriptor::PrimeField(p) => RingSpec::PrimeField { fp: p.get() },
        }
    }
}

impl std::str::FromStr for RingDescriptor {
    type Err = Error;

    /// Accepts `Z`, `Q`, `Fp` forms such as `F7` / `F_7`, or a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" => Ok(RingDescriptor::Integers),
            "Q" | "QQ" => Ok(RingDescriptor::Rationals),
            _ => {
                let digits = t.trim_start_matches('F').trim_start_matches('_');
                digits
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("unknown ring {s:?}")))
                    .and_then(RingDescriptor::prime_field)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub ring: RingSpec,
    pub n: usize,
    pub generators: Vec<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

fn parse_entry(v: &Value, ring: RingDescriptor) -> Result<Scalar> {
    let ratio = match v {
        Value::Number(n) => parse_ratio(&n.to_string())?,
        Value::String(s) => parse_ratio(s)?,
        other => return Err(Error::Parse(format!("matrix entry {other} is not a number"))),
    };
    Scalar::from_ratio(ring, &ratio)
}

impl GroupDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn generator_matrices(&self, ring: RingDescriptor) -> Result<Vec<ExactMatrix>> {
        self.generators
            .iter()
            .map(|rows| {
                if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                    return Err(Error::Parse(format!("generator is not {0}x{0}", self.n)));
                }
                let entries = rows
                    .iter()
                    .flatten()
                    .map(|v| parse_entry(v, ring))
                    .collect::<Result<Vec<_>>>()?;
                ExactMatrix::new(ring, self.n, self.n, entries)
            })
            .collect()
    }

    /// Builds the group over the document's ring, or over `ring_override`
    /// (entries are read as fractions and mapped into it).
    pub fn build(&self, ring_override: Option<RingDescriptor>, cap: usize) -> Result<MatrixGroup> {
        let ring = match ring_override {
            Some(r) => r,
            None => self.ring.descriptor()?,
        };
        let gens = self.generator_matrices(ring)?;
        close_group(ring, self.n, &gens, cap)
    }
}
