//! JSON report written by every command.
//!
//! Counts that fit in a `u64` are JSON numbers and larger ones are decimal
//! strings, so tree values of any size survive a round trip.

use std::fmt;
use std::str::FromStr;

use kdcc_core::{BigUint, Edge, FamilySpec, Witness};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Count(pub BigUint);

impl From<usize> for Count {
    fn from(x: usize) -> Self {
        Count(BigUint::from(x))
    }
}

impl From<BigUint> for Count {
    fn from(x: BigUint) -> Self {
        Count(x)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(&self.0) {
            Ok(small) => s.serialize_u64(small),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(x) => Ok(Count(BigUint::from(x))),
            Repr::Text(s) => BigUint::from_str(&s)
                .map(Count)
                .map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "closed-form")]
    ClosedForm,
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "extension: p=0")]
    Extension,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Oracle => "oracle",
            Provenance::Extension => "extension: p=0",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Input {
    Spec(FamilySpec),
    File {
        path: String,
        vertices: usize,
        edges: usize,
    },
    Ranges {
        family: String,
        params: Vec<String>,
    },
    Random {
        graphs: usize,
        seed: u64,
    },
}

/// One measured quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    /// `cv`, `ce` or `cm`
    pub measure: String,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub value: Count,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    /// Human names for `vertices`, when the input has them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub verified: bool,
}

impl WitnessReport {
    pub fn new(w: &Witness, labels: Option<Vec<String>>, verified: bool) -> Self {
        WitnessReport {
            vertices: w.vertices().to_vec(),
            edges: w.edges().iter().map(|e| [e.u(), e.v()]).collect(),
            labels,
            verified,
        }
    }

    pub fn to_witness(&self, k: usize) -> Option<Witness> {
        let edges = self
            .edges
            .iter()
            .map(|&[a, b]| Edge::new(a, b).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(Witness::new(self.vertices.clone(), edges, k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: u64,
    pub q: Count,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingReport {
    pub k: u64,
    pub size: usize,
    pub exact: bool,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

/// One row of the formula-versus-oracle table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub instance: FamilySpec,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub formula: Count,
    pub provenance: Provenance,
    pub oracle: Option<usize>,
    pub packing: Option<usize>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of one randomized property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    pub input: Input,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<Vec<CurvePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packing: Option<PackingReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub properties: Vec<PropertyCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: Vec<String>, input: Input) -> Self {
        Report {
            schema: SCHEMA,
            command,
            input,
            values: Vec::new(),
            curve: None,
            packing: None,
            rows: Vec::new(),
            properties: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report is serializable");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_switches_to_string_past_u64() {
        let small = Count::from(7usize);
        assert_eq!(serde_json::to_string(&small).unwrap(), "7");
        let big = Count(BigUint::from(u64::MAX) * 3u32);
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(text, "\"55340232221128654845\"");
        assert_eq!(serde_json::from_str::<Count>(&text).unwrap(), big);
        assert!(serde_json::from_str::<Count>("\"12x\"").is_err());
    }

    #[test]
    fn provenance_tags() {
        for (p, tag) in [
            (Provenance::ClosedForm, "\"closed-form\""),
            (Provenance::Oracle, "\"oracle\""),
            (Provenance::Extension, "\"extension: p=0\""),
        ] {
            assert_eq!(serde_json::to_string(&p).unwrap(), tag);
            assert_eq!(p.as_str(), &tag[1..tag.len() - 1]);
        }
    }

    #[test]
    fn report_round_trip() {
        let mut report = Report::new(
            vec!["cv".into(), "path".into(), "7".into()],
            Input::Spec(FamilySpec::Path { n: 7 }),
        );
        let w = Witness::new(vec![2, 5], vec![Edge::new(0, 1).unwrap()], 2);
        report.values.push(Value {
            measure: "cv".into(),
            k: 2,
            p: None,
            value: Count::from(2usize),
            provenance: Provenance::ClosedForm,
            case: Some("path".into()),
            witness: Some(WitnessReport::new(
                &w,
                Some(vec!["3".into(), "6".into()]),
                true,
            )),
        });
        let text = report.to_json();
        assert!(text.contains("\"schema\": 1"));
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(
            back.values[0].witness.as_ref().unwrap().to_witness(2),
            Some(w)
        );
    }
}
