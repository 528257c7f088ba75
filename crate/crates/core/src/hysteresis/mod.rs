//! Inflated compass hierarchies: separating edges chosen with a margin, so
//! that after every event the point must travel a fraction of its distance
//! to the polygon before the next one.

mod clear;

pub use clear::{exhaustive_kappa_clear, greedy_kappa_clear, smallest_enclosing_disk, ClearDisk, Decomposition};

use crate::geometry::ops::{offset_facets, point_polygon_dist_f64};
use crate::geometry::point::point_segment_dist2;
use crate::geometry::{ConvexPolygon, Point};
use crate::hierarchy::{build_compass, BoomerangHierarchy, HierarchyKind, NEVER};
use crate::kinetics::{valid_at, EventKind, EventLog, Handled, Kds, PointCtx, Relative};
use crate::kinetics::{CertKind, Certificate};
use crate::num::{self, Scalar};
use crate::poly::Root;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::rc::Rc;
use thiserror::Error;

/// `β = 2(1+√2)`.
pub const BETA: f64 = 2.0 * (1.0 + std::f64::consts::SQRT_2);
/// `κ = 2β + 1 = 5 + 4√2`.
pub const KAPPA: f64 = 2.0 * BETA + 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HysteresisParams {
    pub beta: f64,
    pub kappa: f64,
}

impl Default for HysteresisParams {
    fn default() -> Self {
        HysteresisParams { beta: BETA, kappa: KAPPA }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HysteresisError {
    /// The point lies in the innermost inflated envelope: no margin is
    /// available.
    #[error("point inside the innermost inflated envelope")]
    InsideInnermost,
    #[error("the path touches the polygon")]
    PathTouchesPolygon,
}

/// A compass hierarchy whose envelope `Q_i` is widened by `ε_i = ε₀/2^i`.
#[derive(Clone, Debug)]
pub struct InflatedHierarchy {
    base: BoomerangHierarchy,
    eps: Vec<Scalar>,
    /// Unit normal and offset of every facet, for screening.
    unit: Vec<([f64; 2], f64)>,
}

/// Builds the inflated hierarchy. `ε₀` is the smallest value with
/// `err_i ≤ ε₀/2^i` for every level, where `err_i` is the exact distance
/// from `Q_i`'s farthest vertex to `Q` (rounded up).
pub fn build_inflated(h: &BoomerangHierarchy) -> InflatedHierarchy {
    assert_eq!(h.kind, HierarchyKind::Compass, "inflation needs a compass hierarchy");
    let q = h.original();
    let qf = q.to_f64();
    let mut eps0 = Scalar::zero();
    let mut scale = Scalar::one();
    for i in 0..=h.depth() {
        let worst = farthest_dist2(q, &qf, &h.envelope_points(i));
        let err = num::sqrt_upper(&worst, 40);
        let need = &err * &scale;
        if need > eps0 {
            eps0 = need;
        }
        scale *= num::int(2);
    }
    let mut eps = Vec::with_capacity(h.depth() + 1);
    let mut e = eps0;
    for _ in 0..=h.depth() {
        eps.push(e.clone());
        e /= num::int(2);
    }
    let unit = h
        .facets()
        .iter()
        .map(|f| {
            let n = f.normal.to_f64();
            let len = n[0].hypot(n[1]);
            let s = f.start.to_f64();
            ([n[0] / len, n[1] / len], (n[0] * s[0] + n[1] * s[1]) / len)
        })
        .collect();
    let ih = InflatedHierarchy { base: h.clone(), eps, unit };
    debug_assert!(ih.verify_nesting());
    ih
}

/// Largest exact squared distance from `pts` to `q`. Distances are screened
/// in f64; only near-maximal points and their near-minimal edges are
/// evaluated exactly.
fn farthest_dist2(q: &ConvexPolygon, qf: &[[f64; 2]], pts: &[Point]) -> Scalar {
    let df: Vec<f64> = pts.iter().map(|v| point_polygon_dist_f64(qf, v.to_f64())).collect();
    let top = df.iter().cloned().fold(0.0, f64::max);
    let slack = SCREEN * (1.0 + top + reach(qf));
    let v = q.vertices();
    let n = v.len();
    let mut best = Scalar::zero();
    for (p, _) in pts.iter().zip(&df).filter(|(_, &d)| d >= top - slack && d > 0.0) {
        if q.contains(p) {
            continue;
        }
        let pf = p.to_f64();
        let seg: Vec<f64> = (0..n).map(|i| point_polygon_dist_f64(&[qf[i], qf[(i + 1) % n]], pf)).collect();
        let low = seg.iter().cloned().fold(f64::INFINITY, f64::min);
        let d = (0..n)
            .filter(|&i| seg[i] <= low + slack)
            .map(|i| point_segment_dist2(p, &v[i], &v[(i + 1) % n]))
            .min()
            .expect("a nearest edge");
        if d > best {
            best = d;
        }
    }
    best
}

/// Relative margin beyond which an f64 comparison is trusted.
const SCREEN: f64 = 1e-9;

fn reach(pts: &[[f64; 2]]) -> f64 {
    pts.iter().map(|p| p[0].abs().max(p[1].abs())).fold(0.0, f64::max)
}

impl InflatedHierarchy {
    pub fn base(&self) -> &BoomerangHierarchy {
        &self.base
    }

    pub fn eps(&self) -> &[Scalar] {
        &self.eps
    }

    pub fn levels(&self) -> usize {
        self.eps.len()
    }

    /// `n·p − offset` beyond `ε_j·|n|` for facet `f`.
    fn violates(&self, f: usize, j: usize, p: &Point) -> bool {
        let pf = p.to_f64();
        let (u, o) = self.unit[f];
        let gap = u[0] * pf[0] + u[1] * pf[1] - o - num::to_f64(&self.eps[j]);
        if gap.abs() > SCREEN * (1.0 + o.abs() + pf[0].abs() + pf[1].abs()) {
            return gap > 0.0;
        }
        let fc = &self.base.facets()[f];
        let v = fc.eval(p);
        v.is_positive() && &v * &v > &self.eps[j] * &self.eps[j] * fc.normal.norm2()
    }

    /// Whether `p` lies in `Q′_j`.
    pub fn contains(&self, j: usize, p: &Point) -> bool {
        !self.base.envelope_facets(j).into_iter().any(|f| self.violates(f, j, p))
    }

    /// Floating-point outline of `Q′_j`.
    pub fn inflated_outline(&self, j: usize) -> Vec<[f64; 2]> {
        let facets: Vec<_> = self.base.envelope_facets(j).into_iter().map(|f| self.base.facets()[f].clone()).collect();
        offset_facets(&facets, num::to_f64(&self.eps[j]))
    }

    /// Checks `Q_i ⊂ Q′_i` exactly and `Q′_{i+1} ⊂ Q′_i` on outline
    /// vertices. (`Q ⊂ Q_i` is the hierarchy's own invariant.)
    pub fn verify_nesting(&self) -> bool {
        let tol = 1e-9 * (1.0 + num::to_f64(&self.eps[0]));
        (0..self.levels()).all(|i| {
            let env = self.base.envelope_points(i);
            let inner_ok = env.iter().all(|v| self.contains(i, v));
            let outer_ok = i == 0 || {
                let outline = self.inflated_outline(i);
                let prev: Vec<_> = self.base.envelope_facets(i - 1).into_iter().map(|f| self.base.facets()[f].clone()).collect();
                let e = num::to_f64(&self.eps[i - 1]);
                outline.iter().all(|v| {
                    prev.iter().all(|f| {
                        let n = f.normal.to_f64();
                        let len = n[0].hypot(n[1]);
                        let s = f.start.to_f64();
                        (n[0] * (v[0] - s[0]) + n[1] * (v[1] - s[1])) / len <= e + tol
                    })
                })
            };
            inner_ok && outer_ok
        })
    }
}

/// The level `j` with `p ∉ Q′_j`, `p ∈ Q′_{j−1}`, and the facet of `Q_j`
/// farthest from `p` among those whose inflated line `p` has crossed.
pub fn relocate_separating_edge(ih: &InflatedHierarchy, p: &Point) -> Result<(usize, usize), HysteresisError> {
    let j = (0..ih.levels()).find(|&j| !ih.contains(j, p)).ok_or(HysteresisError::InsideInnermost)?;
    let f = farthest(&ih.base, ih.base.envelope_facets(j).into_iter().filter(|&f| ih.violates(f, j, p)), p).expect("a violated facet");
    Ok((j, f))
}

/// Facet maximizing the distance `(n·p − off)/|n|`, compared exactly.
fn farthest(h: &BoomerangHierarchy, fs: impl Iterator<Item = usize>, p: &Point) -> Option<usize> {
    let mut best: Option<(usize, Scalar, Scalar)> = None;
    for f in fs {
        let fc = &h.facets()[f];
        let v = fc.eval(p);
        let n2 = fc.normal.norm2();
        let better = match &best {
            None => true,
            // v/|n| > bv/|bn|, both positive.
            Some((_, bv, bn2)) => &v * &v * bn2 > bv * bv * &n2,
        };
        if better {
            best = Some((f, v, n2));
        }
    }
    best.map(|b| b.0)
}

/// Point-versus-polygon structure on the inflated hierarchy.
#[derive(Clone)]
pub struct InflatedKds {
    ih: Rc<InflatedHierarchy>,
    ctx: PointCtx,
    facet: usize,
    level: usize,
}

impl InflatedKds {
    /// `None` on contact at `t`.
    pub(crate) fn new(q: &ConvexPolygon, rel: Rc<Relative>, x: &Point, t: &Scalar) -> Option<Self> {
        let ih = Rc::new(build_inflated(&build_compass(q)));
        let ctx = PointCtx::new(Rc::new(ih.base.clone()), rel, x);
        let mut k = InflatedKds { ih, ctx, facet: 0, level: 0 };
        k.reselect(t).map(|_| k)
    }

    /// Picks a new certificate at `t`; `None` on contact.
    fn reselect(&mut self, t: &Scalar) -> Option<bool> {
        let p = self.ctx.pos(t);
        if let Ok((j, f)) = relocate_separating_edge(&self.ih, &p) {
            if valid_at(&self.ctx.line(f), t) {
                self.level = j;
                self.facet = f;
                return Some(true);
            }
        }
        // No margin available: any facet of the polygon still separating.
        let h = self.ih.base();
        let depth = self.ih.levels() - 1;
        let fs: Vec<usize> = (0..h.facets().len()).filter(|&f| h.facet_level(f) != NEVER).collect();
        let f = fs.into_iter().filter(|&f| h.facets()[f].eval(&p) >= Scalar::zero()).find(|&f| valid_at(&self.ctx.line(f), t))?;
        self.level = depth;
        self.facet = f;
        Some(false)
    }
}

impl Kds for InflatedKds {
    fn certificates(&self) -> Vec<Certificate> {
        vec![Certificate::new(CertKind::StabLine, self.facet, self.ctx.line(self.facet))]
    }

    fn level(&self) -> usize {
        self.level
    }

    fn handle(&mut self, _fired: &Certificate, root: &Root, t: &Scalar) -> Handled {
        let before = self.level;
        let pos = self.ctx.pos(t);
        if !self.ctx.touches(&pos) && self.reselect(t).is_some() {
            let kind = if self.level > before { EventKind::Stab } else { EventKind::Push };
            return Handled { kind, level_after: self.level, feature: self.facet, steps: self.level + 1, degenerate: false };
        }
        Handled { kind: EventKind::Collision, level_after: before, feature: self.facet, steps: 1, degenerate: !root.crossing }
    }
}

/// Movement between two consecutive events against the separation at the
/// earlier one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplacementGap {
    pub from: f64,
    pub to: f64,
    /// Arc length travelled by the point between the events.
    pub displacement: f64,
    /// Distance to the polygon at the earlier event.
    pub separation: f64,
    /// `displacement / (separation / β)`.
    pub ratio: f64,
}

/// Gaps between consecutive non-collision events of `log`, with the path
/// `path(t)` in the polygon's frame integrated over `steps` chords per gap.
pub fn min_inter_event_displacement(log: &EventLog, path: impl Fn(f64) -> [f64; 2], q: &ConvexPolygon, steps: usize) -> Vec<DisplacementGap> {
    let outline = q.to_f64();
    let times: Vec<f64> = log.events.iter().filter(|e| e.kind != EventKind::Collision).map(|e| e.time).collect();
    times
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let mut len = 0.0;
            let mut prev = path(a);
            for k in 1..=steps.max(1) {
                let p = path(a + (b - a) * k as f64 / steps.max(1) as f64);
                len += (p[0] - prev[0]).hypot(p[1] - prev[1]);
                prev = p;
            }
            let sep = crate::geometry::ops::point_polygon_dist_f64(&outline, path(a));
            DisplacementGap { from: a, to: b, displacement: len, separation: sep, ratio: len * BETA / sep }
        })
        .collect()
}
