//! Line-delimited JSON reports with a stable key order.
//!
//! Exact numbers are `"p/q"` strings; floats are JSON numbers written with 17
//! significant digits so that parsing them back gives the same `f64`.

use std::fmt;
use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use serde::de::Deserializer;
use serde::ser::{Error as _, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::exact::{fmt_rational, QVec, Quad};

/// A float serialized in scientific notation with 17 significant digits;
/// non-finite values become `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F64(pub f64);

impl Serialize for F64 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(S::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F64 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(F64(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

impl fmt::Display for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Constant,
    Nonconstant,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constant => "CONSTANT",
            Verdict::Nonconstant => "NONCONSTANT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub first_h_norm2: String,
    pub second_h_norm2: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tier1Report {
    pub pass: bool,
    pub truncated: bool,
    pub orbit_size: usize,
    pub h_norm2: String,
    pub m_norm2: String,
    pub violating_pair: Option<ViolationReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tier2Report {
    pub points: usize,
    pub max_residual: F64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tier3Report {
    pub samples: usize,
    pub steps: usize,
    pub seed: u64,
    pub min_f: F64,
    pub max_f: F64,
    /// `(max_f - min_f) / ‖v‖²`
    pub spread: F64,
    pub max_norm_defect: F64,
    pub max_pythagoras_defect: F64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// `"weyl"` when seeded by an exact Weyl violation, else `"search"`.
    pub source: String,
    pub f1: F64,
    pub f2: F64,
    pub gap: F64,
    pub g1: Vec<Vec<F64>>,
    pub g2: Vec<Vec<F64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub h_ratio: String,
    pub cartan_ratio: String,
    pub algebra_ratio: String,
    pub weyl_constant: bool,
    pub weyl_orthogonal_basis: bool,
    pub ad_orthogonal_basis: bool,
    pub cartan_identity: Option<bool>,
    pub algebra_identity: Option<bool>,
}

/// Outcome of verifying one candidate on one pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub pair: String,
    pub candidate: Vec<String>,
    pub norm2: String,
    pub verdict: Verdict,
    pub tier1: Option<Tier1Report>,
    pub tier2: Option<Tier2Report>,
    pub tier3: Option<Tier3Report>,
    pub witness: Option<WitnessReport>,
    pub ratios: Option<RatioReport>,
    pub symmetric: Option<bool>,
    pub note: Option<String>,
}

impl VerdictReport {
    /// Single-line JSON.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}

/// Trailing record of a classification run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub reports: usize,
    pub constant: usize,
    pub nonconstant: usize,
    pub inconclusive: usize,
    /// Pairs with at least one CONSTANT candidate, in catalog order.
    pub positive: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SummaryLine {
    summary: Summary,
}

impl Summary {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&SummaryLine { summary: self.clone() }).expect("summary serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str::<SummaryLine>(line).map(|l| l.summary)
    }
}

/// Writes reports (and an optional summary) as JSON lines.
pub fn write_reports<W: Write>(mut w: W, reports: &[VerdictReport], summary: Option<&Summary>) -> std::io::Result<()> {
    for r in reports {
        writeln!(w, "{}", r.to_json_line())?;
    }
    if let Some(s) = summary {
        writeln!(w, "{}", s.to_json_line())?;
    }
    Ok(())
}

pub fn save_report(
    path: impl AsRef<Path>,
    reports: &[VerdictReport],
    summary: Option<&Summary>,
) -> std::io::Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_reports(&mut w, reports, summary)?;
    w.flush()
}

pub(crate) fn quad_string(q: &Quad) -> String {
    match q.as_rational() {
        Some(r) => fmt_rational(&r),
        None => q.to_string(),
    }
}

pub(crate) fn qvec_strings(v: &QVec) -> Vec<String> {
    v.0.iter().map(quad_string).collect()
}

pub(crate) fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<F64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| F64(m[(i, j)])).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn floats_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let s = serde_json::to_string(&F64(x)).unwrap();
            let back: F64 = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back.0.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(serde_json::to_string(&F64(f64::NAN)).unwrap(), "null");
    }

    #[test]
    fn verdict_names() {
        assert_eq!(serde_json::to_string(&Verdict::Nonconstant).unwrap(), "\"NONCONSTANT\"");
        assert_eq!(Verdict::Inconclusive.to_string(), "INCONCLUSIVE");
    }
}
