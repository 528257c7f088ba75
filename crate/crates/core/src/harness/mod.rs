//! Scenario runner: parse a scenario, simulate it against the oracle, write
//! the event log, fit scaling laws over batches of logs, draw SVGs.

mod scenario;
mod stats;
mod svg;

pub use scenario::{BodySpec, MotionSpec, PolyLit, Rational, Scenario, ShapeSpec};
pub use stats::{emit_stats, Model, Regression};
pub use svg::{render_svg, RenderWhat};

use crate::kinetics::{simulate, EventLog, KineticsError};
use std::fmt;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// A malformed scenario. `line` and `column` are 1-based; 0 when the
/// problem is not tied to a position (e.g. an invalid generated polygon).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn semantic(message: impl Into<String>) -> Self {
        ParseError { line: 0, column: 0, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.line > 0 {
            write!(f, "{}:{}: {}", self.line, self.column, self.message)
        } else {
            f.write_str(&self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("oracle mismatch: {detail}")]
    OracleMismatch { detail: String, log: Box<EventLog> },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error(transparent)]
    Kinetics(#[from] KineticsError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Unsupported(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Parse(_) => 2,
            HarnessError::OracleMismatch { .. } => 3,
            HarnessError::InsufficientData(_) => 4,
            _ => 1,
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.to_path_buf(), source }
    }
}

/// Command-line overrides for a scenario.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub oracle_samples: Option<usize>,
    pub seed: Option<u64>,
    /// Output directory; the current directory when `None`.
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub log: EventLog,
    pub csv: PathBuf,
    pub json: PathBuf,
}

impl RunReport {
    /// One line per event kind with a nonzero count, then `μ` and `σ`.
    pub fn summary(&self) -> String {
        let s = &self.log.stats;
        let mut out = format!("{}: {} events, {} steps\n", self.log.structure, self.log.events.len(), self.log.total_steps);
        for (k, n) in self.log.counts.iter().filter(|(_, n)| **n > 0) {
            out.push_str(&format!("  {k}: {n}\n"));
        }
        out.push_str(&format!("  sigma = {}, D = {}, mu = {}\n", s.min_separation, s.diameter, s.mu));
        out
    }
}

pub fn load_scenario(path: &Path, opts: &RunOptions) -> Result<Scenario, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let mut sc = Scenario::from_json(&text)?;
    if let Some(n) = opts.oracle_samples {
        sc.oracle_samples = n;
    }
    if let Some(s) = opts.seed {
        sc.seed = s;
    }
    Ok(sc)
}

/// File stem for a scenario's artifacts: its name, else the file stem.
pub fn stem(sc: &Scenario, path: &Path) -> String {
    sc.name.clone().unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "scenario".into()))
}

/// Runs a scenario and writes `<stem>.csv` and `<stem>.json` (the log with
/// its `SeparationStats` footer). On an oracle disagreement the files are
/// still written and [`HarnessError::OracleMismatch`] is returned.
pub fn run_scenario(path: &Path, opts: &RunOptions) -> Result<RunReport, HarnessError> {
    let sc = load_scenario(path, opts)?;
    let log = run_loaded(&sc)?;
    let dir = opts.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
    let name = stem(&sc, path);
    let csv = dir.join(format!("{name}.csv"));
    let json = dir.join(format!("{name}.json"));
    std::fs::write(&csv, log.to_csv()).map_err(|e| HarnessError::io(&csv, e))?;
    std::fs::write(&json, log.to_json()).map_err(|e| HarnessError::io(&json, e))?;
    if !log.stats.oracle_agrees {
        let detail = log.stats.first_disagreement.clone().unwrap_or_else(|| "disagreement".into());
        return Err(HarnessError::OracleMismatch { detail, log: Box::new(log) });
    }
    Ok(RunReport { log, csv, json })
}

/// Simulates an already parsed scenario.
pub fn run_loaded(sc: &Scenario) -> Result<EventLog, HarnessError> {
    let moving = sc.body(0)?;
    let obstacle = sc.body(1)?;
    Ok(simulate(&moving, &obstacle, &sc.config())?)
}

#[cfg(test)]
mod tests;
