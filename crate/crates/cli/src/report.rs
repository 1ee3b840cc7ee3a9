//! Output documents: root tables, reference checks and oracle comparisons.

use std::collections::BTreeMap;

use genroots::engine::RootRecord;
use genroots::famous::ReferenceCheck;
use genroots::oracle::ComparisonReport;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::json::{format_real, Pair, Real};

/// One root and the branch that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub z: Pair,
    pub k: usize,
    pub q: u32,
    pub s: i64,
    /// Found through the `1/z` form of the equation.
    pub reciprocal: bool,
    pub residual: Real,
    pub series_terms: usize,
    pub refined: bool,
    pub converged: bool,
}

impl From<&RootRecord> for RootEntry {
    fn from(r: &RootRecord) -> Self {
        let b = r.branch();
        Self {
            z: r.z.into(),
            k: b.k,
            q: b.q,
            s: b.s,
            reciprocal: b.reciprocal,
            residual: Real(r.residual),
            series_terms: r.series_terms,
            refined: r.refined,
            converged: r.converged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub label: String,
    pub expected: Real,
    pub actual: Real,
    pub tol: Real,
    pub passed: bool,
}

impl From<&ReferenceCheck> for CheckEntry {
    fn from(c: &ReferenceCheck) -> Self {
        Self {
            label: c.label.clone(),
            expected: Real(c.expected),
            actual: Real(c.actual),
            tol: Real(c.tol),
            passed: c.passed(),
        }
    }
}

/// Output of `solve` and `famous`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RootReport {
    pub command: String,
    pub roots: Vec<RootEntry>,
    /// Named scalars reported by a famous solver.
    #[serde(default)]
    pub values: BTreeMap<String, Real>,
    #[serde(default)]
    pub checks: Vec<CheckEntry>,
    pub diagnostics: Vec<String>,
    /// Branches whose series diverged without a Newton rescue.
    pub unrescued: usize,
    pub settings: BTreeMap<String, Value>,
}

pub const CSV_HEADER: [&str; 10] =
    ["z_re", "z_im", "k", "q", "s", "residual", "series_terms", "refined", "converged", "reciprocal"];

fn csv_real(x: f64) -> String {
    format_real(x).unwrap_or_else(|| format!("{x}"))
}

impl RootReport {
    pub fn to_csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for r in &self.roots {
            w.write_record([
                csv_real(r.z.0 .0),
                csv_real(r.z.1 .0),
                r.k.to_string(),
                r.q.to_string(),
                r.s.to_string(),
                csv_real(r.residual.0),
                r.series_terms.to_string(),
                r.refined.to_string(),
                r.converged.to_string(),
                r.reciprocal.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchEntry {
    pub engine: Pair,
    pub oracle: Pair,
    pub distance: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub oracle: String,
    pub matched: Vec<MatchEntry>,
    pub engine_only: Vec<Pair>,
    pub oracle_only: Vec<Pair>,
    pub max_distance: Real,
    pub tol: Real,
}

impl ComparisonEntry {
    pub fn new(oracle: &str, r: &ComparisonReport) -> Self {
        Self {
            oracle: oracle.to_string(),
            matched: r
                .matched
                .iter()
                .map(|&(e, o, d)| MatchEntry {
                    engine: e.into(),
                    oracle: o.into(),
                    distance: Real(d),
                })
                .collect(),
            engine_only: r.engine_only.iter().map(|&z| z.into()).collect(),
            oracle_only: r.oracle_only.iter().map(|&z| z.into()).collect(),
            max_distance: Real(r.max_distance),
            tol: Real(r.tol),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.engine_only.is_empty() && self.oracle_only.is_empty()
    }
}

/// Output of `compare`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CompareReport {
    pub comparisons: Vec<ComparisonEntry>,
    pub diagnostics: Vec<String>,
    pub settings: BTreeMap<String, Value>,
}
