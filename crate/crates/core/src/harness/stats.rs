use super::HarnessError;
use crate::kinetics::EventLog;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// The regressor an event count is fitted against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// `log₂(D/σ)`.
    Log,
    /// `√(D/σ)`.
    Sqrt,
    /// `μ²`.
    #[serde(alias = "quadratic")]
    Quad,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Log => "log",
            Model::Sqrt => "sqrt",
            Model::Quad => "quad",
        }
    }

    fn regressor(self, log: &EventLog) -> Option<f64> {
        let s = &log.stats;
        let ratio = s.diameter / s.min_separation;
        match self {
            Model::Log if ratio.is_finite() && ratio > 0.0 => Some(ratio.log2()),
            Model::Sqrt if ratio.is_finite() && ratio > 0.0 => Some(ratio.sqrt()),
            Model::Quad if s.mu.is_finite() => Some(s.mu * s.mu),
            _ => None,
        }
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "log" => Ok(Model::Log),
            "sqrt" => Ok(Model::Sqrt),
            "quad" | "quadratic" => Ok(Model::Quad),
            _ => Err(format!("unknown model {s:?} (log, sqrt, quad)")),
        }
    }
}

/// Least-squares fit `events ≈ a + b·x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regression {
    pub model: Model,
    pub a: f64,
    pub b: f64,
    pub r2: f64,
    /// `(x, events)` per log.
    pub points: Vec<[f64; 2]>,
}

impl Regression {
    /// Ordinary least squares on `(x, y)` pairs. `R² = 1` when `y` is
    /// constant and fitted exactly.
    pub fn fit(model: Model, points: Vec<[f64; 2]>) -> Regression {
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p[0]).sum::<f64>() / n;
        let my = points.iter().map(|p| p[1]).sum::<f64>() / n;
        let sxx: f64 = points.iter().map(|p| (p[0] - mx).powi(2)).sum();
        let sxy: f64 = points.iter().map(|p| (p[0] - mx) * (p[1] - my)).sum();
        let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        let a = my - b * mx;
        let ss_tot: f64 = points.iter().map(|p| (p[1] - my).powi(2)).sum();
        let ss_res: f64 = points.iter().map(|p| (p[1] - a - b * p[0]).powi(2)).sum();
        let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else if ss_res == 0.0 { 1.0 } else { 0.0 };
        Regression { model, a, b, r2, points }
    }

    pub fn table(&self) -> String {
        let mut s = format!("model {}: events = {:.4} + {:.4}·x, R² = {:.4}\n", self.model.name(), self.a, self.b, self.r2);
        s.push_str("x,events,fitted\n");
        for p in &self.points {
            let _ = writeln!(s, "{:.6},{},{:.3}", p[0], p[1], self.a + self.b * p[0]);
        }
        s
    }
}

/// Fits the update-event counts of `logs` against the model's regressor.
/// Needs at least four logs with a defined regressor, not all equal.
pub fn emit_stats(logs: &[EventLog], model: Model) -> Result<Regression, HarnessError> {
    let points: Vec<[f64; 2]> = logs.iter().filter_map(|l| model.regressor(l).map(|x| [x, l.update_events() as f64])).collect();
    if points.len() < 4 {
        return Err(HarnessError::InsufficientData(format!("{} usable logs, need at least 4", points.len())));
    }
    if points.iter().all(|p| p[0] == points[0][0]) {
        return Err(HarnessError::InsufficientData("the logs do not vary the separation".into()));
    }
    Ok(Regression::fit(model, points))
}
