//! Brute-force reference: exact contact tests at sample times, screened in
//! floating point.

use super::motion::Relative;
use super::simulate::Shape;
use crate::geometry::{intersects, ConvexPolygon, Point};
use crate::num::{self, Scalar};

pub struct Oracle {
    moving: Shape,
    fixed: ConvexPolygon,
    rel: Relative,
    moving_f64: Vec<[f64; 2]>,
    fixed_f64: Vec<[f64; 2]>,
    /// Diameter of the obstacle.
    pub diameter: f64,
    tol: f64,
}

impl Oracle {
    pub fn new(moving: &Shape, fixed: &ConvexPolygon, rel: Relative) -> Self {
        let moving_f64 = match moving {
            Shape::Point(p) => vec![p.to_f64()],
            Shape::Polygon(p) => p.to_f64(),
        };
        let fixed_f64 = fixed.to_f64();
        let diameter = diameter_f64(&fixed_f64).max(diameter_f64(&moving_f64));
        let reach = fixed_f64.iter().chain(&moving_f64).map(|v| v[0].abs() + v[1].abs()).fold(0.0, f64::max);
        Oracle { moving: moving.clone(), fixed: fixed.clone(), rel, moving_f64, fixed_f64, diameter, tol: 1e-9 * (diameter + reach + 1.0) }
    }

    pub fn relative(&self) -> &Relative {
        &self.rel
    }

    /// Approximate signed distance: negative when the bodies overlap.
    pub fn signed_separation_f64(&self, t: f64) -> f64 {
        let placed: Vec<[f64; 2]> = self.moving_f64.iter().map(|&v| self.rel.place_f64(v, t)).collect();
        let neg: Vec<[f64; 2]> = self.fixed_f64.iter().map(|v| [-v[0], -v[1]]).collect();
        signed_origin_distance(&minkowski_f64(&placed, &neg))
    }

    /// Exact closed intersection test.
    pub fn touching(&self, t: &Scalar) -> bool {
        match &self.moving {
            Shape::Point(p) => self.fixed.contains(&self.rel.place(p, t)),
            Shape::Polygon(p) => {
                let placed: Vec<Point> = p.vertices().iter().map(|v| self.rel.place(v, t)).collect();
                let placed = ConvexPolygon::new(placed).expect("rigid image of a convex polygon");
                intersects(&placed, &self.fixed)
            }
        }
    }

    /// Disjoint at `t`; exact whenever the floating-point distance is
    /// inconclusive.
    pub fn separated(&self, t: &Scalar) -> bool {
        let s = self.signed_separation_f64(num::to_f64(t));
        if s > self.tol {
            true
        } else if s < -self.tol {
            false
        } else {
            !self.touching(t)
        }
    }

    /// First contact among increasing sample times, refined by bisection.
    pub fn first_contact(&self, times: &[Scalar]) -> Option<Scalar> {
        let k = times.iter().position(|t| !self.separated(t))?;
        if k == 0 {
            return Some(times[0].clone());
        }
        let (mut lo, mut hi) = (times[k - 1].clone(), times[k].clone());
        let two = num::int(2);
        for _ in 0..48 {
            let mid = (&lo + &hi) / &two;
            if self.separated(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(hi)
    }
}

fn diameter_f64(v: &[[f64; 2]]) -> f64 {
    let mut d: f64 = 0.0;
    for a in v {
        for b in v {
            d = d.max((a[0] - b[0]).hypot(a[1] - b[1]));
        }
    }
    d
}

fn lowest(v: &[[f64; 2]]) -> usize {
    (0..v.len()).min_by(|&i, &j| v[i][1].total_cmp(&v[j][1]).then(v[i][0].total_cmp(&v[j][0]))).unwrap_or(0)
}

/// Minkowski sum of two counterclockwise convex loops.
fn minkowski_f64(a: &[[f64; 2]], b: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let (n, m) = (a.len(), b.len());
    let (ia, ib) = (lowest(a), lowest(b));
    let at = |i: usize| a[(ia + i) % n];
    let bt = |j: usize| b[(ib + j) % m];
    let mut out = Vec::with_capacity(n + m);
    let (mut i, mut j) = (0, 0);
    while i < n || j < m {
        let (p, q) = (at(i), bt(j));
        out.push([p[0] + q[0], p[1] + q[1]]);
        let da = [at(i + 1)[0] - p[0], at(i + 1)[1] - p[1]];
        let db = [bt(j + 1)[0] - q[0], bt(j + 1)[1] - q[1]];
        let c = da[0] * db[1] - da[1] * db[0];
        if j >= m || (i < n && c > 0.0) {
            i += 1;
        } else if i >= n || c < 0.0 {
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

fn signed_origin_distance(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    if n == 1 {
        return poly[0][0].hypot(poly[0][1]);
    }
    let mut inside = n >= 3;
    let mut depth = f64::INFINITY;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let d = [b[0] - a[0], b[1] - a[1]];
        let l2 = d[0] * d[0] + d[1] * d[1];
        if l2 == 0.0 {
            continue;
        }
        // Origin relative to the edge.
        let c = d[0] * (-a[1]) - d[1] * (-a[0]);
        if c < 0.0 {
            inside = false;
        }
        depth = depth.min(c / l2.sqrt());
        let t = ((-a[0]) * d[0] + (-a[1]) * d[1]) / l2;
        let t = t.clamp(0.0, 1.0);
        best = best.min((a[0] + t * d[0]).hypot(a[1] + t * d[1]));
    }
    if inside {
        -depth
    } else {
        best
    }
}
