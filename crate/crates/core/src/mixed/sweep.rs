use super::{MixedHierarchy, Side};
use crate::geometry::Point;
use crate::num::{self, Scalar};
use crate::poly::{first_root_after, sign_at_root, Poly, Root, ROOT_BITS};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

/// Result of sweeping one full relative rotation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PageTurnSweep {
    pub steps: usize,
    /// Page turns observed: passes of an envelope edge's slope over the
    /// inserted facet of a cut.
    pub page_turns: usize,
    /// Σ over cuts of the real edges in the other envelope.
    pub predicted: usize,
}

impl MixedHierarchy {
    /// Rotates `Q` once around against `P` in `steps` increments and counts
    /// how often an edge of the other envelope passes the slope of each cut's
    /// inserted facet (each pass exchanges a triangle and a parallelogram).
    pub fn page_turn_sweep(&self, steps: usize) -> PageTurnSweep {
        let mut turns = 0usize;
        for ins in &self.insertions {
            // Relative rotation of the other polygon seen from the cut's
            // polygon.
            let dir = if ins.side == Side::P { 1.0 } else { -1.0 };
            let wrap = |a: f64| {
                let r = (a + PI).rem_euclid(TAU) - PI;
                if r <= -PI {
                    r + TAU
                } else {
                    r
                }
            };
            let mut prev: Vec<f64> = ins.other_angles.iter().map(|b| wrap(b - ins.angle)).collect();
            for k in 1..=steps {
                let theta = dir * TAU * k as f64 / steps as f64;
                for (b, p) in ins.other_angles.iter().zip(prev.iter_mut()) {
                    let d = wrap(b + theta - ins.angle);
                    // A pass through zero (not the jump at ±π).
                    if (d - *p).abs() < PI && (d >= 0.0) != (*p >= 0.0) {
                        turns += 1;
                    }
                    *p = d;
                }
            }
        }
        PageTurnSweep { steps, page_turns: turns, predicted: self.insertions.iter().map(|i| i.other_real).sum() }
    }
}

fn rotation_numerators(u: &Poly) -> (Poly, Poly) {
    (Poly::constant(num::one()).sub(&u.mul(u)), u.scale(&num::int(2)))
}

fn rotate_poly(c: &Poly, s: &Poly, d: &Point) -> (Poly, Poly) {
    (c.scale(&d.x).sub(&s.scale(&d.y)), s.scale(&d.x).add(&c.scale(&d.y)))
}

/// First time in `[t_now, t_end]` at which edge direction `dp` of `P` (rotating
/// with parameter `u_p(t)`) and `dq` of `Q` (with `u_q(t)`) point the same
/// way. Rotations use the rational parametrization
/// `((1-u²)/(1+u²), 2u/(1+u²))`. Already parallel at `t_now` gives `t_now`.
pub fn next_slope_event(u_p: &Poly, u_q: &Poly, dp: &Point, dq: &Point, t_now: &Scalar, t_end: &Scalar) -> Option<Root> {
    let (cp, sp) = rotation_numerators(u_p);
    let (cq, sq) = rotation_numerators(u_q);
    let (px, py) = rotate_poly(&cp, &sp, dp);
    let (qx, qy) = rotate_poly(&cq, &sq, dq);
    let cross = px.mul(&qy).sub(&py.mul(&qx));
    let dot = px.mul(&qx).add(&py.mul(&qy));
    if cross.is_zero() {
        // Rotating in lockstep: either always parallel or never.
        return (dot.sign_at(t_now) == Ordering::Greater).then(|| exact(t_now));
    }
    if cross.sign_at(t_now) == Ordering::Equal && dot.sign_at(t_now) == Ordering::Greater {
        return Some(exact(t_now));
    }
    let mut t = t_now.clone();
    while let Some(r) = first_root_after(&cross, &t, t_end, ROOT_BITS) {
        if sign_at_root(&dot, &cross, &r) == Ordering::Greater {
            return Some(r);
        }
        t = r.hi.clone();
    }
    None
}

fn exact(t: &Scalar) -> Root {
    Root { lo: t.clone(), hi: t.clone(), exact: Some(t.clone()), crossing: false }
}
