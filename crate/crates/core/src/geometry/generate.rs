//! Deterministic polygon generators with exact rational vertices.

use super::point::{orient, Point};
use super::polygon::ConvexPolygon;
use crate::num::{self, Scalar};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::f64::consts::PI;

const HALF_ANGLE_BITS: u32 = 20;

/// Rational point on the circle of radius `r` near polar angle `theta`,
/// from the tangent half-angle parametrization.
pub fn circle_point(theta: f64, r: &Scalar) -> Point {
    let u = num::from_f64_dyadic((theta / 2.0).tan(), HALF_ANGLE_BITS);
    let u2 = &u * &u;
    let den = num::one() + &u2;
    let x = (num::one() - &u2) / &den * r;
    let y = (&u * num::int(2)) / &den * r;
    Point::new(x, y)
}

/// Near-regular `k`-gon inscribed in the circle of radius `r` centered at the
/// origin, with vertices exactly on the circle. Edge normals point at the
/// angles `2πj/k`; for `k` divisible by 8 the polygon has the full symmetry
/// of the square (so edges facing the axes and diagonals are exact), for
/// even `k` it is centrally symmetric.
pub fn regular_polygon(k: usize, r: &Scalar) -> ConvexPolygon {
    assert!(k >= 3);
    let angle = |j: usize| (j as f64 + 0.5) * 2.0 * PI / k as f64;
    let mut pts: Vec<Point> = Vec::with_capacity(k);
    if k.is_multiple_of(8) {
        let seeds: Vec<Point> = (0..k / 8).map(|j| circle_point(angle(j), r)).collect();
        let mut quadrant: Vec<Point> = seeds.clone();
        quadrant.extend(seeds.iter().rev().map(|p| Point::new(p.y.clone(), p.x.clone())));
        for q in 0..4 {
            for p in &quadrant {
                let mut v = p.clone();
                for _ in 0..q {
                    v = v.perp();
                }
                pts.push(v);
            }
        }
    } else if k.is_multiple_of(2) {
        let half: Vec<Point> = (0..k / 2).map(|j| circle_point(angle(j), r)).collect();
        pts.extend(half.iter().cloned());
        pts.extend(half.iter().map(|p| -p));
    } else {
        pts.extend((0..k).map(|j| circle_point(angle(j), r)));
    }
    ConvexPolygon::new(pts).expect("points on a circle in angular order are convex")
}

/// Axis-aligned octagon with vertices `(±1, ±t)`, `(±t, ±1)` scaled by `r`:
/// edges face the eight compass directions exactly. `t = 41/99` is close to
/// `√2 - 1`, the regular case.
pub fn compass_octagon(r: &Scalar) -> ConvexPolygon {
    let t = num::ratio(41, 99) * r;
    let o = r.clone();
    let pts = vec![
        Point::new(o.clone(), -t.clone()),
        Point::new(o.clone(), t.clone()),
        Point::new(t.clone(), o.clone()),
        Point::new(-t.clone(), o.clone()),
        Point::new(-o.clone(), t.clone()),
        Point::new(-o.clone(), -t.clone()),
        Point::new(-t.clone(), -o.clone()),
        Point::new(t, -o),
    ];
    ConvexPolygon::new(pts).unwrap()
}

/// Convex hull of `n` random points on the circle of diameter `d` around the
/// origin, snapped to the dyadic grid of spacing `d·2^-18`. Deterministic in
/// `seed`; the hull may have slightly fewer than `n` vertices.
pub fn random_convex(n: usize, seed: u64, d: &Scalar) -> ConvexPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 2.0 * PI).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let grid_bits = 18u32;
    let radius_units = (1u64 << (grid_bits - 1)) as f64;
    let unit = d / Scalar::from_integer(BigInt::one() << grid_bits);
    let pts: Vec<Point> = angles
        .iter()
        .map(|a| {
            let x = (radius_units * a.cos()).round() as i64;
            let y = (radius_units * a.sin()).round() as i64;
            Point::new(num::int(x) * &unit, num::int(y) * &unit)
        })
        .collect();
    ConvexPolygon::new(convex_hull(pts)).expect("hull is convex")
}

/// Andrew's monotone chain; returns the strictly convex hull in
/// counterclockwise order.
pub fn convex_hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
