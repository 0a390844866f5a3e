use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Deserialize;

use super::field::UnitVectorField;
use crate::error::{invalid, Error, Result};
use crate::fmt::sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    ExactD1,
    LocalSearchD1,
    Seesaw,
}

impl SolverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::ExactD1 => "exact_d1",
            SolverKind::LocalSearchD1 => "local_search_d1",
            SolverKind::Seesaw => "seesaw",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact_d1" => Ok(SolverKind::ExactD1),
            "local_search_d1" => Ok(SolverKind::LocalSearchD1),
            "seesaw" => Ok(SolverKind::Seesaw),
            other => Err(invalid(format!("unknown solver {other:?}"))),
        }
    }
}

/// Outcome of one solver call.
///
/// `value` is `objective(g, h)` recomputed on the returned pair. For the
/// iterative solvers `value_trace` holds the objective after each sweep,
/// starting with the initial pair, and is nondecreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solver: SolverKind,
    pub value: f64,
    pub g: UnitVectorField,
    pub h: UnitVectorField,
    pub iterations: usize,
    pub value_trace: Vec<f64>,
    pub stationarity: f64,
    pub seed: Option<u64>,
    pub restarts: usize,
}

impl SolveReport {
    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn m(&self) -> usize {
        self.h.len()
    }

    pub fn d(&self) -> usize {
        self.g.dim()
    }

    /// Largest single-step decrease in `value_trace` (0 for a monotone trace).
    pub fn max_trace_decrease(&self) -> f64 {
        self.value_trace
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(0.0, f64::max)
    }

    /// Serializes to the key/value report format. Floats carry 12
    /// significant digits; `include_fields` appends the `g` and `h` rows.
    pub fn to_text(&self, include_fields: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "solver = \"{}\"", self.solver);
        let _ = writeln!(out, "n = {}", self.n());
        let _ = writeln!(out, "m = {}", self.m());
        let _ = writeln!(out, "d = {}", self.d());
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed = {seed}");
        }
        let _ = writeln!(out, "restarts = {}", self.restarts);
        let _ = writeln!(out, "value = {}", sig(self.value));
        let _ = writeln!(out, "iterations = {}", self.iterations);
        let _ = writeln!(out, "stationarity = {}", sig(self.stationarity));
        let _ = writeln!(out, "value_trace = {}", float_array(&self.value_trace));
        if include_fields {
            write_rows(&mut out, "g", &self.g);
            write_rows(&mut out, "h", &self.h);
        }
        out
    }
}

fn float_array(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| sig(v)).collect();
    format!("[{}]", items.join(", "))
}

fn write_rows(out: &mut String, key: &str, field: &UnitVectorField) {
    let _ = writeln!(out, "{key} = [");
    for row in field.rows() {
        let _ = writeln!(out, "  {},", float_array(row));
    }
    let _ = writeln!(out, "]");
}

/// A parsed report document. Field rows are kept as plain numbers since
/// 12-digit output does not round-trip the unit-norm tolerance.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub solver: String,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub seed: Option<u64>,
    pub restarts: usize,
    pub value: f64,
    pub iterations: usize,
    pub stationarity: f64,
    pub value_trace: Vec<f64>,
    pub g: Option<Vec<Vec<f64>>>,
    pub h: Option<Vec<Vec<f64>>>,
}

impl ReportDocument {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            line: e
                .span()
                .map(|s| text[..s.start].lines().count().max(1))
                .unwrap_or(0),
            message: e.message().to_string(),
        })
    }

    pub fn solver_kind(&self) -> Result<SolverKind> {
        self.solver.parse()
    }
}
