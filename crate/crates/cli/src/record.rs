//! Result records and their CSV/JSON serialization.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hyperscat_core::{Error, C64};
use serde_json::{json, Map, Value};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// JSON number, or a string for non-finite values.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn complex(z: C64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    /// `"<="`, `">="`, `"in"`, `"=="` or `"holds"`.
    pub relation: &'static str,
    pub threshold: Vec<f64>,
    pub pass: bool,
}

impl Check {
    pub fn le(name: &str, measured: f64, threshold: f64) -> Self {
        Self { name: name.into(), measured, relation: "<=", threshold: vec![threshold], pass: measured <= threshold }
    }

    pub fn ge(name: &str, measured: f64, threshold: f64) -> Self {
        Self { name: name.into(), measured, relation: ">=", threshold: vec![threshold], pass: measured >= threshold }
    }

    pub fn within(name: &str, measured: f64, lo: f64, hi: f64) -> Self {
        Self { name: name.into(), measured, relation: "in", threshold: vec![lo, hi], pass: lo <= measured && measured <= hi }
    }

    pub fn equals(name: &str, measured: f64, target: f64) -> Self {
        Self { name: name.into(), measured, relation: "==", threshold: vec![target], pass: measured == target }
    }

    /// A boolean property; `measured` is 1 or 0.
    pub fn holds(name: &str, ok: bool) -> Self {
        Self { name: name.into(), measured: if ok { 1.0 } else { 0.0 }, relation: "holds", threshold: vec![], pass: ok }
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "measured": num(self.measured),
            "relation": self.relation,
            "threshold": self.threshold.iter().map(|&t| num(t)).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }

    pub fn summary(&self) -> String {
        let thr = match self.relation {
            "in" => format!("in [{:e}, {:e}]", self.threshold[0], self.threshold[1]),
            "holds" => "holds".into(),
            r => format!("{r} {:e}", self.threshold[0]),
        };
        let status = if self.pass { "PASS" } else { "FAIL" };
        if self.relation == "holds" {
            format!("{status} {}", self.name)
        } else {
            format!("{status} {}: {:e} {thr}", self.name, self.measured)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Columns `<name>_re, <name>_im`.
pub fn complex_cells(z: C64) -> [Cell; 2] {
    [Cell::Num(z.re), Cell::Num(z.im)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub experiment: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub outputs: Map<String, Value>,
    pub tables: Vec<Table>,
    pub error: Option<Error>,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Pole(_) => "pole",
        Error::Domain(_) => "domain",
        Error::NonConvergence(_) => "nonconvergence",
        Error::Hypothesis { .. } => "hypothesis",
        Error::Resonance(_) => "resonance",
        Error::Conditioning(_) => "conditioning",
        Error::Unsupported(_) => "unsupported",
        Error::Parse { .. } => "parse",
        Error::Modes(_) => "modes",
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Modes(list) = e {
        v["modes"] = list.iter().map(|(k, e)| json!({ "k": k, "error": error_json(e) })).collect();
    }
    v
}

/// Exit code for a core error: 1 for poles and other mathematical failures, 2 for inputs the
/// computation cannot accept, 3 for non-convergence.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Pole(_) | Error::Resonance(_) | Error::Hypothesis { .. } => 1,
        Error::Domain(_) | Error::Unsupported(_) | Error::Parse { .. } => 2,
        Error::NonConvergence(_) | Error::Conditioning(_) => 3,
        Error::Modes(v) => {
            if v.iter().any(|(_, e)| e.is_pole()) {
                1
            } else {
                v.iter().map(|(_, e)| error_exit_code(e)).max().unwrap_or(1)
            }
        }
    }
}

impl ResultRecord {
    pub fn new(experiment: &str, config: &BTreeMap<String, String>) -> Self {
        Self {
            experiment: experiment.into(),
            config: config.clone(),
            checks: Vec::new(),
            outputs: Map::new(),
            tables: Vec::new(),
            error: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => error_exit_code(e),
            None if self.passed() => 0,
            None => 1,
        }
    }

    fn table_file(&self, t: &Table) -> String {
        format!("{}_{}.csv", self.experiment, t.name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "experiment": self.experiment,
            "config": self.config,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "outputs": self.outputs,
            "tables": self.tables.iter().map(|t| json!({
                "name": t.name,
                "file": self.table_file(t),
                "columns": t.header,
                "rows": t.rows.len(),
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
            "error": self.error.as_ref().map(error_json),
        })
    }

    /// Writes `<experiment>.json` and one CSV per table; returns the paths written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut written = Vec::new();
        for t in &self.tables {
            let path = dir.join(self.table_file(t));
            let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
            let mut w = csv::Writer::from_path(&path).map_err(io)?;
            w.write_record(&t.header).map_err(io)?;
            for r in &t.rows {
                w.write_record(r.iter().map(Cell::render)).map_err(io)?;
            }
            w.flush().map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            written.push(path);
        }
        let path = dir.join(format!("{}.json", self.experiment));
        let text = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        std::fs::write(&path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
        Ok(written)
    }
}
