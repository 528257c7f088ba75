use super::point::{angle_cmp, orient, same_direction, strictly_between, Point};
use crate::num::{self, Scalar};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("polygon has no vertices")]
    Empty,
    #[error("vertices do not form a convex polygon (at index {0})")]
    NonConvex(usize),
    #[error("support direction at vertex {vertex} is outside its normal cone")]
    BadSupportDirection { vertex: usize },
}

/// A convex polygon in counterclockwise order with exact coordinates.
///
/// Besides its vertices a polygon may carry zero-length edges (extra outward
/// normals attached to a vertex) and degenerate vertices (vertices in the
/// interior of a straight edge). Both are only ever added explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    support: Vec<Vec<Point>>,
    degenerate: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FacetKind {
    /// Lies along an edge of positive length.
    Edge,
    /// Zero-length edge at a vertex.
    Point,
}

/// One edge of the augmented boundary: a supporting line `normal·x = offset`
/// together with the part of the polygon it touches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive integer outward normal.
    pub normal: Point,
    pub offset: Scalar,
    pub start: Point,
    pub end: Point,
    /// Number of original edges merged into this facet (collinear pieces split
    /// by degenerate vertices count separately).
    pub pieces: usize,
    pub kind: FacetKind,
}

impl Facet {
    /// Signed value of `normal·p - offset`; positive outside.
    pub fn eval(&self, p: &Point) -> Scalar {
        self.normal.dot(p) - &self.offset
    }

    pub fn tangent(&self) -> Point {
        self.normal.perp()
    }
}

pub fn edge_normal(a: &Point, b: &Point) -> Point {
    let d = b - a;
    let (x, y) = num::primitive_direction(&d.y, &(-&d.x));
    Point::new(x, y)
}

impl ConvexPolygon {
    /// Validates and normalizes a vertex list: removes duplicates and
    /// collinear middle vertices and reverses clockwise input.
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::Empty);
        }
        let mut pts: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        if pts.len() <= 2 {
            return Ok(Self::from_raw(pts));
        }
        let area = signed_area2(&pts);
        if area.is_zero() {
            let all_collinear = (2..pts.len()).all(|i| orient(&pts[0], &pts[1], &pts[i]) == Ordering::Equal);
            if !all_collinear {
                return Err(GeometryError::NonConvex(0));
            }
            let lo = pts.iter().min().unwrap().clone();
            let hi = pts.iter().max().unwrap().clone();
            return Ok(Self::from_raw(vec![lo, hi]));
        }
        if area.is_negative() {
            pts.reverse();
        }
        // Drop collinear middle vertices; a collinear reversal is a spike.
        let mut changed = true;
        while changed && pts.len() > 3 {
            changed = false;
            let n = pts.len();
            for i in 0..n {
                let a = &pts[(i + n - 1) % n];
                let b = &pts[i];
                let c = &pts[(i + 1) % n];
                if orient(a, b, c) == Ordering::Equal {
                    if (b - a).dot(&(c - b)).is_negative() {
                        return Err(GeometryError::NonConvex(i));
                    }
                    pts.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        let n = pts.len();
        for i in 0..n {
            if orient(&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]) != Ordering::Greater {
                return Err(GeometryError::NonConvex(i));
            }
        }
        // Edge directions must wind around exactly once.
        let mut wraps = 0;
        for i in 0..n {
            let d0 = &pts[(i + 1) % n] - &pts[i];
            let d1 = &pts[(i + 2) % n] - &pts[(i + 1) % n];
            if angle_cmp(&d0, &d1) != Ordering::Less {
                wraps += 1;
            }
        }
        if wraps != 1 {
            return Err(GeometryError::NonConvex(0));
        }
        Ok(Self::from_raw(pts))
    }

    fn from_raw(vertices: Vec<Point>) -> Self {
        let n = vertices.len();
        ConvexPolygon { vertices, support: vec![Vec::new(); n], degenerate: vec![false; n] }
    }

    /// Assembles a polygon from vertices already known to be strictly convex
    /// and counterclockwise, with per-vertex zero-length edge normals. The
    /// cycle is rotated to start at the smallest vertex.
    pub(crate) fn from_parts(mut vertices: Vec<Point>, mut support: Vec<Vec<Point>>) -> Self {
        let n = vertices.len();
        debug_assert_eq!(support.len(), n);
        if let Some((k, _)) = vertices.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
            vertices.rotate_left(k);
            support.rotate_left(k);
        }
        ConvexPolygon { vertices, support, degenerate: vec![false; n] }
    }

    pub fn point(p: Point) -> Self {
        Self::from_raw(vec![p])
    }

    pub fn from_i64(pts: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn support_directions(&self) -> &[Vec<Point>] {
        &self.support
    }

    pub fn is_degenerate_vertex(&self, i: usize) -> bool {
        self.degenerate[i]
    }

    /// Number of vertices (equals the number of edges for n ≥ 3).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Real (non-degenerate) vertex count.
    pub fn complexity(&self) -> usize {
        self.degenerate.iter().filter(|d| !**d).count()
    }

    /// Outward normal of edge `i` (from vertex `i` to `i+1`).
    pub fn edge_normal(&self, i: usize) -> Option<Point> {
        let n = self.vertices.len();
        if n < 2 {
            return None;
        }
        Some(edge_normal(&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Whether the direction `d` lies strictly inside the normal cone of
    /// vertex `i`.
    pub fn in_normal_cone(&self, i: usize, d: &Point) -> bool {
        let n = self.vertices.len();
        match n {
            1 => !d.is_zero(),
            _ => {
                let before = self.edge_normal((i + n - 1) % n).unwrap();
                let after = self.edge_normal(i).unwrap();
                if n == 2 || same_direction(&before, &after) {
                    // Half-plane cone of a segment end point.
                    return strictly_between(&before, d, &after);
                }
                strictly_between(&before, d, &after)
            }
        }
    }

    /// Adds zero-length edges with the given outward normals at vertex `i`.
    /// Directions parallel to an incident edge are ignored.
    pub fn add_support_directions(&mut self, i: usize, dirs: &[Point]) -> Result<(), GeometryError> {
        for d in dirs {
            let (x, y) = num::primitive_direction(&d.x, &d.y);
            let d = Point::new(x, y);
            if d.is_zero() {
                continue;
            }
            if self.vertices.len() > 1 {
                let n = self.vertices.len();
                let before = self.edge_normal((i + n - 1) % n).unwrap();
                let after = self.edge_normal(i).unwrap();
                if same_direction(&before, &d) || same_direction(&after, &d) {
                    continue;
                }
            }
            if !self.in_normal_cone(i, &d) {
                return Err(GeometryError::BadSupportDirection { vertex: i });
            }
            if !self.support[i].iter().any(|e| same_direction(e, &d)) {
                self.support[i].push(d);
            }
        }
        Ok(())
    }

    /// Inserts a degenerate vertex at `p`, which must lie in the relative
    /// interior of edge `i`. Returns the index of the new vertex.
    pub fn insert_degenerate_vertex(&mut self, i: usize, p: Point) -> usize {
        let n = self.vertices.len();
        let at = (i + 1) % n;
        let at = if at == 0 { n } else { at };
        self.vertices.insert(at, p);
        self.support.insert(at, Vec::new());
        self.degenerate.insert(at, true);
        at
    }

    /// Twice the signed area.
    pub fn area2(&self) -> Scalar {
        signed_area2(&self.vertices)
    }

    /// Closed containment test.
    pub fn contains(&self, p: &Point) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => &self.vertices[0] == p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                orient(a, b, p) == Ordering::Equal && !(p - a).dot(&(p - b)).is_positive()
            }
            n => (0..n).all(|i| orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) != Ordering::Less),
        }
    }

    /// Strict interior test.
    pub fn contains_strictly(&self, p: &Point) -> bool {
        let n = self.vertices.len();
        n >= 3 && (0..n).all(|i| orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) == Ordering::Greater)
    }

    pub fn translate(&self, t: &Point) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
            support: self.support.clone(),
            degenerate: self.degenerate.clone(),
        }
    }

    /// Rotation about the origin by the unit vector `rot`; zero-length edges
    /// and degenerate vertices are carried along.
    pub fn rotate(&self, rot: &Point) -> ConvexPolygon {
        let prim = |d: &Point| {
            let r = d.rotate(rot);
            let (x, y) = num::primitive_direction(&r.x, &r.y);
            Point::new(x, y)
        };
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| v.rotate(rot)).collect(),
            support: self.support.iter().map(|s| s.iter().map(prim).collect()).collect(),
            degenerate: self.degenerate.clone(),
        }
    }

    pub fn negate(&self) -> ConvexPolygon {
        // -P is P rotated by π, so the order stays counterclockwise.
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| -v).collect(),
            support: self.support.iter().map(|s| s.iter().map(|d| -d).collect()).collect(),
            degenerate: self.degenerate.clone(),
        }
    }

    /// Maximum of `u·v` over the vertices.
    pub fn support_value(&self, u: &Point) -> Scalar {
        self.vertices.iter().map(|v| u.dot(v)).max().expect("nonempty polygon")
    }

    pub fn to_f64(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(|p| p.to_f64()).collect()
    }

    /// The augmented boundary in counterclockwise normal order: real edges
    /// (collinear pieces merged), interleaved with zero-length edges.
    pub fn facets(&self) -> Vec<Facet> {
        let n = self.vertices.len();
        let mut out: Vec<Facet> = Vec::new();
        if n == 0 {
            return out;
        }
        let start = (0..n).find(|&i| !self.degenerate[i]).unwrap_or(0);
        for k in 0..n {
            let i = (start + k) % n;
            let v = &self.vertices[i];
            let mut dirs = self.support[i].clone();
            if n >= 2 {
                let before = self.edge_normal((i + n - 1) % n).unwrap();
                dirs.sort_by(|a, b| super::point::angle_cmp_from(&before, a, b));
            } else {
                dirs.sort_by(angle_cmp);
            }
            for d in dirs {
                out.push(Facet {
                    offset: d.dot(v),
                    normal: d,
                    start: v.clone(),
                    end: v.clone(),
                    pieces: 1,
                    kind: FacetKind::Point,
                });
            }
            if n >= 2 {
                let w = &self.vertices[(i + 1) % n];
                let normal = edge_normal(v, w);
                if let Some(last) = out.last_mut() {
                    if last.kind == FacetKind::Edge && last.normal == normal && self.degenerate[i] {
                        last.end = w.clone();
                        last.pieces += 1;
                        continue;
                    }
                }
                out.push(Facet {
                    offset: normal.dot(v),
                    normal,
                    start: v.clone(),
                    end: w.clone(),
                    pieces: 1,
                    kind: FacetKind::Edge,
                });
            }
        }
        out
    }
}

pub fn signed_area2(pts: &[Point]) -> Scalar {
    let n = pts.len();
    let terms = (0..n).map(|i| pts[i].cross(&pts[(i + 1) % n])).collect();
    num::sum_balanced(terms)
}
