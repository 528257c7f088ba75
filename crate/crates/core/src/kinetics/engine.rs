use super::log::{EventKind, EventLog, EventRecord};
use crate::num::{self, Scalar};
use crate::poly::{first_root_after, Poly, Root, ROOT_BITS};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertKind {
    /// A point or vertex stays outside a facet line; failure is a stab, a
    /// push or a collision.
    StabLine,
    RollParallel,
    /// The configuration point stays inside a cell edge.
    CellBoundary,
    SlopeOrder,
}

impl CertKind {
    fn priority(self) -> u8 {
        match self {
            CertKind::StabLine | CertKind::CellBoundary => 0,
            CertKind::RollParallel => 1,
            CertKind::SlopeOrder => 2,
        }
    }
}

/// A sign condition `poly(t) > 0` (the numerator of a rational function with
/// positive denominator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertKind,
    pub id: usize,
    pub poly: Poly,
}

impl Certificate {
    pub fn new(kind: CertKind, id: usize, poly: Poly) -> Self {
        Certificate { kind, id, poly }
    }

    /// Holds at `t` and just after it.
    pub fn valid_at(&self, t: &Scalar) -> bool {
        valid_at(&self.poly, t)
    }
}

pub(crate) fn valid_at(p: &Poly, t: &Scalar) -> bool {
    match p.sign_at(t) {
        Ordering::Greater => true,
        Ordering::Equal => p.sign_after(t) == Ordering::Greater,
        Ordering::Less => false,
    }
}

/// Earliest root of the certificate in `(t_now, horizon]`; `None` is never.
pub fn next_certificate_failure(c: &Certificate, t_now: &Scalar, horizon: &Scalar) -> Option<Root> {
    first_root_after(&c.poly, t_now, horizon, ROOT_BITS)
}

/// Result of processing one certificate failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Handled {
    pub kind: EventKind,
    pub level_after: usize,
    pub feature: usize,
    pub steps: usize,
    pub degenerate: bool,
}

pub(crate) trait Kds: Clone {
    fn certificates(&self) -> Vec<Certificate>;
    fn level(&self) -> usize;
    /// Repairs the structure after `fired` failed at `t` (the processing
    /// time of `root`).
    fn handle(&mut self, fired: &Certificate, root: &Root, t: &Scalar) -> Handled;
}

#[derive(Clone, Debug)]
pub(crate) struct EngineOpts {
    pub max_events: usize,
    /// Drop the first non-collision event without repairing the structure.
    pub skip_first: bool,
}

/// What the event loop reports besides the log.
pub(crate) struct EngineRun {
    pub times: Vec<Scalar>,
    pub collision: Option<Scalar>,
    /// Set when the event cap stopped the run early.
    pub stopped: Option<Scalar>,
}

fn earlier(a: &(Root, &Certificate), b: &(Root, &Certificate), t: &Scalar, t1: &Scalar) -> bool {
    let key = |r: &Root, c: &Certificate| (c.kind.priority(), c.id, r.time());
    let (ra, ca) = (&a.0, a.1);
    let (rb, cb) = (&b.0, b.1);
    let disjoint = |x: &Root, y: &Root| x.hi < y.lo || (x.hi == y.lo && x.exact.is_some() && y.exact.is_none());
    if disjoint(ra, rb) {
        return true;
    }
    if disjoint(rb, ra) {
        return false;
    }
    // Overlapping isolating intervals: refine both.
    let fine = |c: &Certificate, r: &Root| {
        if r.exact.is_some() {
            r.clone()
        } else {
            first_root_after(&c.poly, t, t1, 4 * ROOT_BITS).unwrap_or_else(|| r.clone())
        }
    };
    let (fa, fb) = (fine(ca, ra), fine(cb, rb));
    match fa.time().cmp(&fb.time()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => key(&fa, ca) < key(&fb, cb),
    }
}

/// Runs the event loop over `[t0, t1]`, calling `interval` with the
/// certificates held on each open interval between events.
pub(crate) fn run_engine<K: Kds>(
    kds: &mut K,
    t0: &Scalar,
    t1: &Scalar,
    opts: &EngineOpts,
    log: &mut EventLog,
    mut interval: impl FnMut(&Scalar, &Scalar, &[Certificate]),
) -> EngineRun {
    let mut t = t0.clone();
    let mut certs = kds.certificates();
    let mut run = EngineRun { times: Vec::new(), collision: None, stopped: None };
    let mut skip = opts.skip_first;
    loop {
        let mut best: Option<(Root, &Certificate)> = None;
        for c in &certs {
            if let Some(r) = next_certificate_failure(c, &t, t1) {
                let cand = (r, c);
                if best.as_ref().is_none_or(|b| earlier(&cand, b, &t, t1)) {
                    best = Some(cand);
                }
            }
        }
        let Some((root, fired)) = best else {
            interval(&t, t1, &certs);
            break;
        };
        let te = root.time();
        interval(&t, &te, &certs);
        let level_before = kds.level();
        let h = if skip {
            let mut probe = kds.clone();
            let h = probe.handle(fired, &root, &te);
            if h.kind != EventKind::Collision {
                skip = false;
                t = te;
                continue;
            }
            *kds = probe;
            h
        } else {
            kds.handle(fired, &root, &te)
        };
        log.push(EventRecord {
            time: num::to_f64(&te),
            time_exact: te.to_string(),
            kind: h.kind,
            level_before,
            level_after: h.level_after,
            steps: h.steps,
            feature: h.feature,
            degenerate: h.degenerate,
        });
        run.times.push(te.clone());
        if h.kind == EventKind::Collision {
            run.collision = Some(te);
            break;
        }
        certs = kds.certificates();
        t = te;
        if log.events.len() >= opts.max_events {
            log.truncated = true;
            run.stopped = Some(t);
            break;
        }
    }
    run
}
