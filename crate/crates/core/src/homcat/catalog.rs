//! Catalog files: JSON lists of pairs with exact candidate vectors.
//!
//! ```json
//! {"entries": [{"name": "SO8/SO7", "constructor": "SO(N)/SO(M)",
//!   "params": {"N": 8, "M": 7}, "candidates": [["1", "1", "1", "1"]],
//!   "expected_verdict": "positive"}]}
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use super::{build_pair, Candidate, Expected, HomogeneousPair, PairError, PairSpec};
use crate::exact::parse_rational;

const DEFAULT_CATALOG: &str = include_str!("../../data/catalog.json");

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("malformed catalog JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("catalog entry {index}{}: {message}", name.as_deref().map(|n| format!(" ({n})")).unwrap_or_default())]
    Entry { index: usize, name: Option<String>, message: String },
    #[error("catalog I/O error: {0}")]
    Io(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: PairSpec,
    pub candidates: Vec<Candidate>,
    pub expected: Expected,
}

impl CatalogEntry {
    /// Builds the pair and attaches name, candidates and metadata.
    pub fn build(&self) -> Result<HomogeneousPair, PairError> {
        let mut pair = build_pair(&self.spec)?;
        pair.set_name(self.name.clone());
        for c in &self.candidates {
            pair.validate_candidate(c)?;
        }
        pair.candidates = self.candidates.clone();
        pair.expected = self.expected;
        Ok(pair)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn find(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[derive(Deserialize)]
struct RawCatalog {
    entries: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    constructor: String,
    #[serde(default)]
    params: BTreeMap<String, usize>,
    candidates: Vec<Vec<Value>>,
    #[serde(default)]
    expected_verdict: Option<Expected>,
}

#[derive(Serialize)]
struct OutEntry<'a> {
    name: &'a str,
    constructor: &'a str,
    params: BTreeMap<String, usize>,
    candidates: Vec<Vec<String>>,
    expected_verdict: Expected,
}

#[derive(Serialize)]
struct OutCatalog<'a> {
    entries: Vec<OutEntry<'a>>,
}

/// The catalog shipped with the crate.
pub fn default_catalog() -> Catalog {
    parse_catalog(DEFAULT_CATALOG).expect("bundled catalog is valid")
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| CatalogError::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let json_err =
        |e: serde_json::Error| CatalogError::Json { line: e.line(), column: e.column(), message: e.to_string() };
    let raw: RawCatalog = serde_json::from_str(text).map_err(json_err)?;
    let mut entries = Vec::with_capacity(raw.entries.len());
    for (index, v) in raw.entries.into_iter().enumerate() {
        let name = v.get("name").and_then(Value::as_str).map(str::to_string);
        let fail = |message: String| CatalogError::Entry { index, name: name.clone(), message };
        let e: RawEntry = serde_json::from_value(v.clone()).map_err(|e| fail(e.to_string()))?;
        let spec = PairSpec::from_constructor(&e.constructor, &e.params).map_err(fail)?;
        let mut candidates = Vec::with_capacity(e.candidates.len());
        for (ci, c) in e.candidates.iter().enumerate() {
            let coords = c
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) if n.is_i64() => {
                        Ok(crate::exact::Rational::from_integer(n.as_i64().unwrap() as i128))
                    }
                    other => Err(format!("non-rational coordinate {other}")),
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|m| fail(format!("candidate {ci}: {m}")))?;
            candidates.push(Candidate::new(coords));
        }
        entries.push(CatalogEntry {
            name: e.name,
            spec,
            candidates,
            expected: e.expected_verdict.unwrap_or(Expected::Unknown),
        });
    }
    Ok(Catalog { entries })
}

/// Pretty JSON in the catalog format.
pub fn to_json(c: &Catalog) -> String {
    let out = OutCatalog {
        entries: c
            .entries
            .iter()
            .map(|e| OutEntry {
                name: &e.name,
                constructor: e.spec.constructor(),
                params: e.spec.params(),
                candidates: e.candidates.iter().map(|c| c.coords.iter().map(|x| x.to_string()).collect()).collect(),
                expected_verdict: e.expected,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&out).expect("catalog serialises") + "\n"
}

pub fn save_catalog(c: &Catalog, path: impl AsRef<Path>) -> Result<(), CatalogError> {
    std::fs::write(path.as_ref(), to_json(c)).map_err(|e| CatalogError::Io(format!("{}: {e}", path.as_ref().display())))
}
