use super::HysteresisError;
use crate::geometry::ops::point_polygon_dist_f64;
use crate::geometry::ConvexPolygon;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Path vertices `start..=end` covered by one disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClearDisk {
    pub start: usize,
    pub end: usize,
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub kappa: f64,
    pub disks: Vec<ClearDisk>,
}

impl Decomposition {
    pub fn size(&self) -> usize {
        self.disks.len()
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn inside(c: ([f64; 2], f64), p: [f64; 2]) -> bool {
    dist(c.0, p) <= c.1 * (1.0 + 1e-12) + 1e-300
}

fn circle2(a: [f64; 2], b: [f64; 2]) -> ([f64; 2], f64) {
    let c = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    (c, dist(a, b) / 2.0)
}

fn circle3(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> ([f64; 2], f64) {
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    if d.abs() < 1e-300 {
        // Collinear: the widest pair.
        let cands = [circle2(a, b), circle2(a, c), circle2(b, c)];
        return cands.into_iter().max_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
    }
    let (b2, c2) = (bx * bx + by * by, cx * cx + cy * cy);
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    ([a[0] + ux, a[1] + uy], ux.hypot(uy))
}

/// Smallest disk containing `pts` (Welzl's algorithm on a fixed shuffle).
pub fn smallest_enclosing_disk(pts: &[[f64; 2]]) -> ([f64; 2], f64) {
    let mut p = pts.to_vec();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let Some(&first) = p.first() else { return ([0.0, 0.0], 0.0) };
    let mut c = (first, 0.0);
    for i in 1..p.len() {
        if inside(c, p[i]) {
            continue;
        }
        c = (p[i], 0.0);
        for j in 0..i {
            if inside(c, p[j]) {
                continue;
            }
            c = circle2(p[i], p[j]);
            for k in 0..j {
                if !inside(c, p[k]) {
                    c = circle3(p[i], p[j], p[k]);
                }
            }
        }
    }
    c
}

fn clear_disk(path: &[[f64; 2]], q: &[[f64; 2]], i: usize, k: usize, kappa: f64) -> Option<ClearDisk> {
    let (center, radius) = smallest_enclosing_disk(&path[i..=k]);
    (radius * kappa <= point_polygon_dist_f64(q, center)).then_some(ClearDisk { start: i, end: k, center, radius })
}

fn check_path(path: &[[f64; 2]], q: &[[f64; 2]]) -> Result<(), HysteresisError> {
    if path.iter().any(|&p| point_polygon_dist_f64(q, p) <= 0.0) {
        return Err(HysteresisError::PathTouchesPolygon);
    }
    Ok(())
}

/// Greedy decomposition of a polyline: each piece is the longest prefix of
/// the rest whose smallest enclosing disk is `κ`-clear. Consecutive pieces
/// share a vertex.
pub fn greedy_kappa_clear(path: &[[f64; 2]], q: &ConvexPolygon, kappa: f64) -> Result<Decomposition, HysteresisError> {
    let qf = q.to_f64();
    check_path(path, &qf)?;
    let mut disks = Vec::new();
    let mut i = 0;
    let n = path.len();
    if n == 0 {
        return Ok(Decomposition { kappa, disks });
    }
    loop {
        let mut best = clear_disk(path, &qf, i, i, kappa).expect("a point is a clear disk");
        let mut k = i + 1;
        while k < n {
            match clear_disk(path, &qf, i, k, kappa) {
                Some(d) => best = d,
                None => break,
            }
            k += 1;
        }
        disks.push(best);
        if best.end + 1 >= n {
            break;
        }
        // Chord best.end → best.end+1 belongs to the next piece; if a single
        // chord is not clear the next piece starts at its far end.
        i = if best.end == i { i + 1 } else { best.end };
    }
    Ok(Decomposition { kappa, disks })
}

/// Minimum number of pieces by dynamic programming over all prefixes,
/// with the same disk test. Quadratic in the path length.
pub fn exhaustive_kappa_clear(path: &[[f64; 2]], q: &ConvexPolygon, kappa: f64) -> Result<usize, HysteresisError> {
    let qf = q.to_f64();
    check_path(path, &qf)?;
    let n = path.len();
    if n == 0 {
        return Ok(0);
    }
    // best[k]: fewest pieces covering vertices 0..=k, the last ending at k.
    let mut best = vec![usize::MAX; n];
    best[0] = 1;
    for k in 1..n {
        for i in 0..k {
            if best[i] != usize::MAX && best[i] + 1 < best[k] && clear_disk(path, &qf, i, k, kappa).is_some() {
                best[k] = if i == 0 { 1 } else { best[i] + 1 };
            }
        }
        if best[k] == usize::MAX {
            // An unclear chord is skipped, as in the greedy pass.
            best[k] = best[k - 1] + 1;
        }
    }
    Ok(best[n - 1])
}
