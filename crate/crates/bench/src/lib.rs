//! Fixtures shared by the benchmarks.

use sepkds::geometry::generate::regular_polygon;
use sepkds::geometry::{ConvexPolygon, Point};
use sepkds::hierarchy::HierarchyKind;
use sepkds::kinetics::{make_motion, Body, MotionFrame, Shape, SimConfig, Structure, DEFAULT_MAX_DEGREE};
use sepkds::num;
use sepkds::poly::Poly;

/// Regular `n`-gon of radius 1000.
pub fn ngon(n: usize) -> ConvexPolygon {
    regular_polygon(n, &num::int(1000))
}

/// A point passing `q` (radius 1000, centered) along direction (2, 1) at
/// distance roughly `gap`, over `t ∈ [0, 4000]`.
pub fn fly_by(q: &ConvexPolygon, gap: i64) -> (Body, Body) {
    let off = ((1000 + gap) as f64 * 5f64.sqrt()) as i64;
    let m = make_motion(Poly::from_i64(&[-4000, 2]), Poly::from_i64(&[-2000 + off, 1]), Poly::zero(), num::zero(), num::int(4000), DEFAULT_MAX_DEGREE).unwrap();
    let moving = Body { shape: Shape::Point(Point::origin()), motion: m };
    let fixed = Body { shape: Shape::Polygon(q.clone()), motion: MotionFrame::stationary(num::zero(), num::int(4000)) };
    (moving, fixed)
}

/// Simulation settings without the oracle's background grid.
pub fn config(structure: Structure, hierarchy: HierarchyKind) -> SimConfig {
    SimConfig { structure, hierarchy, t0: num::zero(), t1: num::int(4000), oracle_samples: 0, ..Default::default() }
}
