use super::point::{angle_cmp, point_segment_dist2, Point};
use super::polygon::{ConvexPolygon, Facet, FacetKind};
use crate::num::{self, Scalar};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Rotates a facet list so that it starts at the facet of smallest polar
/// normal angle.
fn rotate_to_first_angle(f: &mut [Facet]) {
    if let Some((i, _)) = f.iter().enumerate().min_by(|a, b| angle_cmp(&a.1.normal, &b.1.normal)) {
        f.rotate_left(i);
    }
}

/// Minkowski sum by merging the two augmented boundaries in slope order.
/// Zero-length edges of either input become zero-length edges of the sum.
pub fn minkowski_sum(p: &ConvexPolygon, q: &ConvexPolygon) -> ConvexPolygon {
    let mut fp = p.facets();
    let mut fq = q.facets();
    if fp.is_empty() && fq.is_empty() {
        return ConvexPolygon::point(&p.vertices()[0] + &q.vertices()[0]);
    }
    if fp.is_empty() {
        return q.translate(&p.vertices()[0]);
    }
    if fq.is_empty() {
        return p.translate(&q.vertices()[0]);
    }
    rotate_to_first_angle(&mut fp);
    rotate_to_first_angle(&mut fq);
    let mut cur = &fp[0].start + &fq[0].start;
    let mut verts: Vec<Point> = Vec::new();
    let mut support: Vec<Vec<Point>> = Vec::new();
    let mut pending: Vec<Point> = Vec::new();
    let mut last_edge_normal: Option<Point> = None;
    let mut first_edge_normal: Option<Point> = None;
    let (mut i, mut j) = (0, 0);
    while i < fp.len() || j < fq.len() {
        let take_p = match (fp.get(i), fq.get(j)) {
            (Some(a), Some(b)) => angle_cmp(&a.normal, &b.normal) != Ordering::Greater,
            (Some(_), None) => true,
            _ => false,
        };
        let f = if take_p {
            i += 1;
            &fp[i - 1]
        } else {
            j += 1;
            &fq[j - 1]
        };
        match f.kind {
            FacetKind::Point => {
                if last_edge_normal.as_ref() == Some(&f.normal) {
                    continue;
                }
                if !pending.iter().any(|d| d == &f.normal) {
                    pending.push(f.normal.clone());
                }
            }
            FacetKind::Edge => {
                let d = &f.end - &f.start;
                if last_edge_normal.as_ref() == Some(&f.normal) && pending.is_empty() {
                    cur = &cur + &d;
                    continue;
                }
                pending.retain(|n| n != &f.normal);
                if first_edge_normal.is_none() {
                    first_edge_normal = Some(f.normal.clone());
                }
                verts.push(cur.clone());
                support.push(std::mem::take(&mut pending));
                cur = &cur + &d;
                last_edge_normal = Some(f.normal.clone());
            }
        }
    }
    if verts.is_empty() {
        verts.push(cur);
        support.push(pending);
    } else if !pending.is_empty() {
        // Zero-length edges after the last real edge sit at the first vertex.
        let mut extra = pending;
        extra.retain(|n| Some(n) != first_edge_normal.as_ref() && Some(n) != last_edge_normal.as_ref());
        let mut s = extra;
        s.append(&mut support[0]);
        support[0] = s;
    }
    ConvexPolygon::from_parts(verts, support)
}

/// Identifies the feature of one polygon realizing a distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feature {
    Vertex(usize),
    /// Edge from vertex `i` to `i+1`.
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub dist2: Scalar,
    /// (feature of P, feature of Q); `None` when the polygons intersect.
    pub witness: Option<(Feature, Feature)>,
}

/// Exact squared distance by brute force over all feature pairs. Zero iff
/// the polygons intersect or touch.
pub fn polygon_distance(p: &ConvexPolygon, q: &ConvexPolygon) -> Separation {
    if intersects(p, q) {
        return Separation { dist2: Scalar::zero(), witness: None };
    }
    let pv = p.vertices();
    let qv = q.vertices();
    let mut best: Option<(Scalar, (Feature, Feature))> = None;
    let mut consider = |d: Scalar, w: (Feature, Feature)| match &best {
        Some((b, _)) if &d >= b => {}
        _ => best = Some((d, w)),
    };
    for (i, a) in pv.iter().enumerate() {
        for (j, b) in qv.iter().enumerate() {
            consider(a.dist2(b), (Feature::Vertex(i), Feature::Vertex(j)));
        }
    }
    let edges = |v: &[Point]| -> Vec<(usize, Point, Point)> {
        let n = v.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n).map(|i| (i, v[i].clone(), v[(i + 1) % n].clone())).collect()
    };
    for (i, a, b) in edges(pv) {
        for (j, c) in qv.iter().enumerate() {
            if interior_projection(c, &a, &b) {
                consider(point_segment_dist2(c, &a, &b), (Feature::Edge(i), Feature::Vertex(j)));
            }
        }
    }
    for (j, a, b) in edges(qv) {
        for (i, c) in pv.iter().enumerate() {
            if interior_projection(c, &a, &b) {
                consider(point_segment_dist2(c, &a, &b), (Feature::Vertex(i), Feature::Edge(j)));
            }
        }
    }
    let (dist2, w) = best.expect("nonempty polygons");
    Separation { dist2, witness: Some(w) }
}

fn interior_projection(c: &Point, a: &Point, b: &Point) -> bool {
    let d = b - a;
    let t = (c - a).dot(&d);
    t.is_positive() && t < d.norm2()
}

/// Closed intersection test through the Minkowski difference.
pub fn intersects(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    let diff = minkowski_sum(p, &q.negate());
    diff.contains(&Point::origin())
}

/// Squared distance computed from the Minkowski difference in `O(n + m)`.
/// Agrees with [`polygon_distance`]; used by the samplers.
pub fn separation2(p: &ConvexPolygon, q: &ConvexPolygon) -> Scalar {
    let diff = minkowski_sum(p, &q.negate());
    point_polygon_dist2(&diff, &Point::origin())
}

/// Exact squared distance from a point to a convex polygon (0 inside).
pub fn point_polygon_dist2(poly: &ConvexPolygon, p: &Point) -> Scalar {
    if poly.contains(p) {
        return Scalar::zero();
    }
    let v = poly.vertices();
    let n = v.len();
    if n == 1 {
        return p.dist2(&v[0]);
    }
    (0..n).map(|i| point_segment_dist2(p, &v[i], &v[(i + 1) % n])).min().unwrap()
}

/// Floating-point point-to-polygon distance for polygons given as `f64`
/// vertex loops (counterclockwise).
pub fn point_polygon_dist_f64(poly: &[[f64; 2]], p: [f64; 2]) -> f64 {
    let n = poly.len();
    if n == 1 {
        return ((p[0] - poly[0][0]).powi(2) + (p[1] - poly[0][1]).powi(2)).sqrt();
    }
    let mut inside = n >= 3;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let d = [b[0] - a[0], b[1] - a[1]];
        let ap = [p[0] - a[0], p[1] - a[1]];
        if d[0] * ap[1] - d[1] * ap[0] < 0.0 {
            inside = false;
        }
        let l2 = d[0] * d[0] + d[1] * d[1];
        let t = if l2 > 0.0 { ((ap[0] * d[0] + ap[1] * d[1]) / l2).clamp(0.0, 1.0) } else { 0.0 };
        let c = [a[0] + t * d[0] - p[0], a[1] + t * d[1] - p[1]];
        best = best.min((c[0] * c[0] + c[1] * c[1]).sqrt());
    }
    if inside {
        0.0
    } else {
        best
    }
}

/// Axis-aligned bounding rectangle (possibly degenerate to a segment or a
/// point).
pub fn bounding_rectangle(p: &ConvexPolygon) -> ConvexPolygon {
    let (lo, hi) = bounds(p);
    ConvexPolygon::new(vec![
        Point::new(lo.x.clone(), lo.y.clone()),
        Point::new(hi.x.clone(), lo.y.clone()),
        Point::new(hi.x.clone(), hi.y.clone()),
        Point::new(lo.x.clone(), hi.y.clone()),
    ])
    .expect("rectangle is convex")
}

/// (min corner, max corner) of the vertex set.
pub fn bounds(p: &ConvexPolygon) -> (Point, Point) {
    let v = p.vertices();
    let xmin = v.iter().map(|q| &q.x).min().unwrap().clone();
    let xmax = v.iter().map(|q| &q.x).max().unwrap().clone();
    let ymin = v.iter().map(|q| &q.y).min().unwrap().clone();
    let ymax = v.iter().map(|q| &q.y).max().unwrap().clone();
    (Point::new(xmin, ymin), Point::new(xmax, ymax))
}

/// Squared diameter over all vertex pairs.
pub fn diameter2(p: &ConvexPolygon) -> Scalar {
    let v = p.vertices();
    let mut best = Scalar::zero();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = v[i].dist2(&v[j]);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Outer offset of a facet loop: every supporting line moves outward by
/// `eps`, vertices are the intersections of consecutive offset lines. Vertex
/// `k` is where the lines of facets `k-1` and `k` meet, so edge `k` (from
/// vertex `k` to `k+1`) lies on the offset line of facet `k`.
///
/// Consecutive normals must turn by less than a half turn.
pub fn offset_facets(facets: &[Facet], eps: f64) -> Vec<[f64; 2]> {
    let m = facets.len();
    let lines: Vec<([f64; 2], f64)> = facets
        .iter()
        .map(|f| {
            let n = f.normal.to_f64();
            let len = (n[0] * n[0] + n[1] * n[1]).sqrt();
            // offset/|n| evaluated from the contact point to avoid huge numbers.
            let s = f.start.to_f64();
            let o = (n[0] * s[0] + n[1] * s[1]) / len;
            ([n[0] / len, n[1] / len], o + eps)
        })
        .collect();
    (0..m)
        .map(|k| {
            let (a, oa) = lines[(k + m - 1) % m];
            let (b, ob) = lines[k];
            let det = a[0] * b[1] - a[1] * b[0];
            [(oa * b[1] - ob * a[1]) / det, (a[0] * ob - b[0] * oa) / det]
        })
        .collect()
}

/// Offset polygon of `p` by `eps` (floating point; unit normals are
/// irrational). A polygon with fewer than three facets is first given the
/// four axis directions as zero-length edges.
pub fn offset_polygon(p: &ConvexPolygon, eps: f64) -> Vec<[f64; 2]> {
    let mut facets = p.facets();
    let needs_axes = facets.len() < 3
        || (0..facets.len()).any(|k| {
            let a = &facets[k].normal;
            let b = &facets[(k + 1) % facets.len()].normal;
            !a.cross(b).is_positive()
        });
    if needs_axes {
        let mut q = p.clone();
        let axes = [Point::int(1, 0), Point::int(0, 1), Point::int(-1, 0), Point::int(0, -1)];
        for i in 0..q.len() {
            let ok: Vec<Point> = axes.iter().filter(|d| q.in_normal_cone(i, d)).cloned().collect();
            q.add_support_directions(i, &ok).expect("directions filtered by cone");
        }
        facets = q.facets();
    }
    offset_facets(&facets, eps)
}

/// Minimum internal angle (radians) over the vertices of a polygon.
pub fn min_internal_angle(p: &ConvexPolygon) -> f64 {
    let v = p.to_f64();
    let n = v.len();
    if n < 3 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let a = v[(i + n - 1) % n];
            let b = v[i];
            let c = v[(i + 1) % n];
            let u = [a[0] - b[0], a[1] - b[1]];
            let w = [c[0] - b[0], c[1] - b[1]];
            ((u[0] * w[0] + u[1] * w[1]) / (u[0].hypot(u[1]) * w[0].hypot(w[1]))).clamp(-1.0, 1.0).acos()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Area (not doubled) of a polygon, exact.
pub fn area(p: &ConvexPolygon) -> Scalar {
    p.area2() * num::ratio(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generate::regular_polygon;

    fn sq(x: i64, y: i64) -> ConvexPolygon {
        ConvexPolygon::from_i64(&[(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]).unwrap()
    }

    #[test]
    fn square_plus_square() {
        let s = minkowski_sum(&sq(0, 0), &sq(0, 0));
        assert_eq!(s, ConvexPolygon::from_i64(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap());
    }

    #[test]
    fn plus_point_translates() {
        let p = regular_polygon(7, &num::int(3));
        let s = minkowski_sum(&p, &ConvexPolygon::point(Point::int(5, -2)));
        assert_eq!(s, p.translate(&Point::int(5, -2)));
    }

    #[test]
    fn hexagon_difference_support_oracle() {
        let h = regular_polygon(6, &num::int(1));
        let s = minkowski_sum(&h, &h.negate());
        assert_eq!(s.len(), 6);
        // Each sum vertex is a maximizer in its own normal cone: compare
        // against the brute-force maximum over all vertex pairs.
        let hv = h.vertices();
        let nv = h.negate();
        let sv = s.vertices();
        for k in 0..sv.len() {
            let u = &s.edge_normal((k + sv.len() - 1) % sv.len()).unwrap() + &s.edge_normal(k).unwrap();
            let brute = hv
                .iter()
                .flat_map(|a| {
                    let u = &u;
                    nv.vertices().iter().map(move |b| u.dot(&(a + b)))
                })
                .max()
                .unwrap();
            assert_eq!(u.dot(&sv[k]), brute);
        }
        // Centrally symmetric.
        for v in sv {
            assert!(sv.contains(&-v));
        }
    }

    #[test]
    fn zero_length_edges_survive_sum() {
        let mut p = sq(0, 0);
        p.add_support_directions(2, &[Point::int(1, 1)]).unwrap();
        let s = minkowski_sum(&p, &sq(0, 0));
        assert_eq!(s.facets().iter().filter(|f| f.kind == FacetKind::Point).count(), 1);
    }

    #[test]
    fn distances() {
        let d = polygon_distance(&sq(0, 0), &sq(3, 0));
        assert_eq!(d.dist2, num::int(4));
        assert_eq!(polygon_distance(&sq(0, 0), &sq(0, 0).translate(&Point::ratio(1, 2, 1, 2))).dist2, num::int(0));
        let tri = ConvexPolygon::from_i64(&[(2, 2), (3, 2), (2, 3)]).unwrap();
        let d = polygon_distance(&sq(0, 0), &tri);
        assert_eq!(d.dist2, num::int(2));
        assert_eq!(d.witness, Some((Feature::Vertex(2), Feature::Vertex(0))));
        assert_eq!(separation2(&sq(0, 0), &tri), num::int(2));
    }

    #[test]
    fn rectangles_and_diameters() {
        assert_eq!(bounding_rectangle(&sq(0, 0)), sq(0, 0));
        let tri = ConvexPolygon::from_i64(&[(0, 0), (2, 0), (1, 1)]).unwrap();
        assert_eq!(bounding_rectangle(&tri), ConvexPolygon::from_i64(&[(0, 0), (2, 0), (2, 1), (0, 1)]).unwrap());
        assert_eq!(diameter2(&sq(0, 0)), num::int(2));
        assert_eq!(diameter2(&ConvexPolygon::point(Point::int(1, 1))), num::int(0));
        assert_eq!(diameter2(&regular_polygon(16, &num::int(1))), num::int(4));
    }

    #[test]
    fn offsets() {
        let o = offset_polygon(&sq(0, 0), 1.0);
        let xs: Vec<f64> = o.iter().map(|v| v[0]).collect();
        assert!(xs.iter().all(|x| (*x + 1.0).abs() < 1e-12 || (*x - 2.0).abs() < 1e-12));
        assert_eq!(o.len(), 4);
        let mut pt = ConvexPolygon::point(Point::int(5, 5));
        pt.add_support_directions(0, &[Point::int(1, 0), Point::int(0, 1), Point::int(-1, 0), Point::int(0, -1)])
            .unwrap();
        let o = offset_polygon(&pt, 1.0);
        assert_eq!(o.len(), 4);
        for v in o {
            assert!((v[0] - 5.0).abs() == 1.0 && (v[1] - 5.0).abs() == 1.0);
        }
    }
}
