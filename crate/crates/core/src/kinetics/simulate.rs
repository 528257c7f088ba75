use super::cells::CellKds;
use super::engine::{run_engine, Certificate, EngineOpts, EngineRun, Kds};
use super::log::{EventLog, SeparationStats};
use super::motion::{MotionFrame, Relative};
use super::oracle::Oracle;
use super::pair::{PairCtx, PairLazy};
use super::point::{Descent, PointActive, PointCtx, PointLazy};
use super::KineticsError;
use crate::geometry::{bounding_rectangle, ConvexPolygon, Point};
use crate::hierarchy::{build_compass, build_dudley, BoomerangHierarchy, HierarchyKind};
use crate::num::{self, Scalar};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::rc::Rc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Point(Point),
    Polygon(ConvexPolygon),
}

impl Shape {
    pub fn size(&self) -> usize {
        match self {
            Shape::Point(_) => 1,
            Shape::Polygon(p) => p.len(),
        }
    }
}

/// A shape in its body frame and the motion carrying it.
#[derive(Clone, Debug)]
pub struct Body {
    pub shape: Shape,
    pub motion: MotionFrame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    Lazy,
    ActiveTriangle,
    #[serde(alias = "mixed-cell")]
    Mixed,
    Inflated,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::Lazy => "lazy",
            Structure::ActiveTriangle => "active-triangle",
            Structure::Mixed => "mixed",
            Structure::Inflated => "inflated",
        }
    }
}

/// Test hooks that corrupt a run on purpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// The first non-collision event is dropped: its certificate is left
    /// failed.
    SkipEvent,
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub structure: Structure,
    pub hierarchy: HierarchyKind,
    pub t0: Scalar,
    pub t1: Scalar,
    /// Background grid for the oracle; 0 disables it (event times are still
    /// checked).
    pub oracle_samples: usize,
    pub fault: Option<Fault>,
    pub max_events: usize,
    pub descent: Descent,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            structure: Structure::Lazy,
            hierarchy: HierarchyKind::Compass,
            t0: num::zero(),
            t1: num::one(),
            oracle_samples: 4096,
            fault: None,
            max_events: 1_000_000,
            descent: Descent::LevelByLevel,
        }
    }
}

pub fn hierarchy_of(kind: HierarchyKind, p: &ConvexPolygon) -> BoomerangHierarchy {
    match kind {
        HierarchyKind::Compass => build_compass(p),
        HierarchyKind::Dudley => build_dudley(p),
    }
}

/// Runs the chosen structure for `moving` against `obstacle` over the
/// configured horizon and checks it against the oracle.
pub fn simulate(moving: &Body, obstacle: &Body, cfg: &SimConfig) -> Result<EventLog, KineticsError> {
    let mut log = EventLog::new(cfg.structure.name());
    log.stats.oracle_agrees = true;
    if cfg.t1 <= cfg.t0 {
        return Ok(log);
    }
    let Shape::Polygon(q) = &obstacle.shape else {
        return Err(KineticsError::Unsupported("the obstacle must be a polygon".into()));
    };
    let rel = Rc::new(Relative::new(&moving.motion, &obstacle.motion));
    let oracle = Oracle::new(&moving.shape, q, (*rel).clone());
    let start_err = match moving.shape {
        Shape::Point(_) => KineticsError::PointInsidePolygon,
        Shape::Polygon(_) => KineticsError::InitialOverlap,
    };
    if !oracle.separated(&cfg.t0) {
        return Err(start_err);
    }
    let t0 = &cfg.t0;
    let opts = EngineOpts { max_events: cfg.max_events, skip_first: cfg.fault == Some(Fault::SkipEvent) };
    let mut check = Validity::default();
    let run = match (&moving.shape, cfg.structure) {
        (Shape::Point(x), Structure::Lazy | Structure::ActiveTriangle | Structure::Inflated) => {
            let ctx = PointCtx::new(Rc::new(hierarchy_of(cfg.hierarchy, q)), Rc::clone(&rel), x);
            match cfg.structure {
                Structure::Lazy => drive(PointLazy::new(ctx, t0), cfg, &opts, &mut log, &mut check),
                Structure::ActiveTriangle => drive(PointActive::new(ctx, t0, cfg.descent), cfg, &opts, &mut log, &mut check),
                _ => {
                    let k = crate::hysteresis::InflatedKds::new(q, Rc::clone(&rel), x, t0);
                    drive(k, cfg, &opts, &mut log, &mut check)
                }
            }
        }
        (Shape::Polygon(p), Structure::Lazy) => {
            let ctx = PairCtx::new(Rc::new(hierarchy_of(cfg.hierarchy, p)), Rc::new(hierarchy_of(cfg.hierarchy, q)), Rc::clone(&rel));
            drive(PairLazy::new(ctx, t0), cfg, &opts, &mut log, &mut check)
        }
        (Shape::Polygon(p), Structure::Mixed) => {
            let hq = Rc::new(hierarchy_of(cfg.hierarchy, q));
            let hn = Rc::new(hierarchy_of(cfg.hierarchy, &p.negate()));
            let rects = PairCtx::new(
                Rc::new(build_compass(&bounding_rectangle(p))),
                Rc::new(build_compass(&bounding_rectangle(q))),
                Rc::clone(&rel),
            );
            let k = CellKds::new(hq, hn, rects, Rc::clone(&rel), t0, &cfg.t1 - t0);
            drive(k, cfg, &opts, &mut log, &mut check)
        }
        (_, s) => return Err(KineticsError::Unsupported(format!("structure {} for this pair", s.name()))),
    };
    let Some(run) = run else { return Err(start_err) };
    log.stats = judge(&oracle, &run, &check, cfg, moving.shape.size().max(q.len()));
    Ok(log)
}

fn drive<K: Kds>(kds: Option<K>, cfg: &SimConfig, opts: &EngineOpts, log: &mut EventLog, check: &mut Validity) -> Option<EngineRun> {
    let mut kds = kds?;
    Some(run_engine(&mut kds, &cfg.t0, &cfg.t1, opts, log, |lo, hi, certs| check.interval(lo, hi, certs)))
}

/// Certificates must stay positive strictly between events.
#[derive(Default)]
struct Validity {
    first_failure: Option<String>,
}

impl Validity {
    const POINTS: i64 = 16;

    fn interval(&mut self, lo: &Scalar, hi: &Scalar, certs: &[Certificate]) {
        if self.first_failure.is_some() || hi <= lo {
            return;
        }
        for k in 1..=Self::POINTS {
            let t = lo + (hi - lo) * num::ratio(k, Self::POINTS + 1);
            if let Some(c) = certs.iter().find(|c| c.poly.sign_at(&t) != Ordering::Greater) {
                self.first_failure = Some(format!("certificate {:?}#{} fails at t={}", c.kind, c.id, num::to_f64(&t)));
                return;
            }
        }
    }
}

fn judge(oracle: &Oracle, run: &EngineRun, check: &Validity, cfg: &SimConfig, n: usize) -> SeparationStats {
    let (t0, t1) = (&cfg.t0, &cfg.t1);
    let span = t1 - t0;
    let k = cfg.oracle_samples.max(1) as i64;
    let grid: Vec<Scalar> = (0..=k).map(|i| t0 + &span * num::ratio(i, k)).collect();
    let mut all: Vec<Scalar> = grid.iter().chain(&run.times).cloned().collect();
    all.sort();
    all.dedup();
    let mut stats = SeparationStats { diameter: oracle.diameter, oracle_agrees: true, ..Default::default() };
    stats.samples = all.len();
    stats.min_separation = f64::INFINITY;
    let mut disagree: Option<String> = check.first_failure.clone();
    for t in &all {
        let tf = num::to_f64(t);
        let s = oracle.signed_separation_f64(tf).max(0.0);
        if s < stats.min_separation {
            stats.min_separation = s;
            stats.min_separation_time = tf;
        }
        let certified = run.collision.as_ref().is_none_or(|c| t < c) && run.stopped.as_ref().is_none_or(|c| t <= c);
        if certified && disagree.is_none() && !oracle.separated(t) {
            disagree = Some(format!("certified separation but contact at t={tf}"));
        }
    }
    let kds = run.collision.clone();
    let orc = oracle.first_contact(&grid);
    let tol = num::to_f64(&span) * 1e-6;
    match (&kds, &orc) {
        (Some(a), Some(b)) if (num::to_f64(a) - num::to_f64(b)).abs() > tol => {
            disagree.get_or_insert(format!("collision at t={} but oracle contact at t={}", num::to_f64(a), num::to_f64(b)));
        }
        (Some(a), None) if oracle.signed_separation_f64(num::to_f64(a)) > 1e-9 * (oracle.diameter + 1.0) => {
            disagree.get_or_insert(format!("collision at t={} not confirmed", num::to_f64(a)));
        }
        (None, Some(b)) if run.stopped.is_none() => {
            disagree.get_or_insert(format!("missed contact at t={}", num::to_f64(b)));
        }
        _ => {}
    }
    stats.kds_collision = kds.as_ref().map(num::to_f64);
    stats.oracle_collision = orc.as_ref().map(num::to_f64);
    if stats.kds_collision.is_some() {
        stats.min_separation = 0.0;
    }
    let sigma = stats.min_separation;
    stats.mu = if sigma > 0.0 { (n as f64).min((stats.diameter / sigma).sqrt()) } else { n as f64 };
    stats.oracle_agrees = disagree.is_none();
    stats.first_disagreement = disagree;
    stats
}
