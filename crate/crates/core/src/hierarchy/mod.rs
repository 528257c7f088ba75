//! Boomerang hierarchies: binary forests of triangles tiling the space
//! between a polygon and its bounding rectangle.

mod build;
mod export;

pub use build::{build_compass, build_dudley, compass_count, compass_directions, nearest_boundary_point};
pub use export::{HierarchyDump, NodeDump};

/// Meeting point of the supporting lines of facets `a` and `b` (their shared
/// vertex when they are consecutive).
pub fn facet_meet_in(h: &BoomerangHierarchy, a: usize, b: usize) -> Point {
    build::facet_meet(&h.facets, a, b)
}

use crate::geometry::point::orient;
use crate::geometry::{ConvexPolygon, Facet, FacetKind, Point};
use crate::num::{self, Scalar};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

/// Level marker for facets that never enter an envelope (zero-length edges
/// inside empty boomerangs).
pub const NEVER: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HierarchyKind {
    Compass,
    Dudley,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HierarchyError {
    #[error("level {level} out of range (depth {depth})")]
    LevelOutOfRange { level: usize, depth: usize },
}

/// The region between two consecutive envelope facets `a`, `b` and the
/// polygon's boundary chain between them.
#[derive(Clone, Debug)]
pub struct Boomerang {
    pub id: usize,
    /// Facet indices bounding the boomerang.
    pub a: usize,
    pub b: usize,
    pub level: usize,
    pub apex: Point,
    /// Squared distance from the apex to the concave chain.
    pub height2: Scalar,
    /// Triangle whose cut created this boomerang.
    pub parent: Option<usize>,
    /// Triangle cut from this boomerang, if it is not empty.
    pub triangle: Option<usize>,
}

/// A corner cut: the triangle `apex, x, y` between facets `a`, `b`, with inner
/// edge `x y` on the supporting line of facet `cut`.
#[derive(Clone, Debug)]
pub struct TriangleNode {
    pub id: usize,
    pub level: usize,
    pub boomerang: usize,
    pub a: usize,
    pub b: usize,
    pub cut: usize,
    pub apex: Point,
    /// On facet `a`'s line.
    pub x: Point,
    /// On facet `b`'s line.
    pub y: Point,
    /// Boomerangs `(a, cut)` and `(cut, b)`.
    pub children: [usize; 2],
}

impl TriangleNode {
    /// Counterclockwise vertices.
    pub fn vertices(&self) -> [Point; 3] {
        [self.x.clone(), self.apex.clone(), self.y.clone()]
    }

    pub fn contains(&self, p: &Point) -> bool {
        let [a, b, c] = self.vertices();
        orient(&a, &b, p) != Ordering::Less && orient(&b, &c, p) != Ordering::Less && orient(&c, &a, p) != Ordering::Less
    }

    pub fn area2(&self) -> Scalar {
        let [a, b, c] = self.vertices();
        (&b - &a).cross(&(&c - &a))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleLocation {
    Triangle { level: usize, node: usize },
    Outside,
    InsideBase,
}

#[derive(Clone, Debug)]
pub struct BoomerangHierarchy {
    pub kind: HierarchyKind,
    pub(crate) original: ConvexPolygon,
    pub(crate) base: ConvexPolygon,
    pub(crate) rectangle: ConvexPolygon,
    /// Augmented boundary, counterclockwise from the east axis facet.
    pub(crate) facets: Vec<Facet>,
    /// East, north, west, south facets.
    pub(crate) axis: [usize; 4],
    /// Level of the first envelope containing each facet.
    pub(crate) intro: Vec<usize>,
    pub(crate) cut_by: Vec<Option<usize>>,
    pub(crate) boomerangs: Vec<Boomerang>,
    pub(crate) triangles: Vec<TriangleNode>,
    pub(crate) roots: Vec<usize>,
    pub(crate) depth: usize,
    pub(crate) compass_k: usize,
}

impl BoomerangHierarchy {
    pub fn original(&self) -> &ConvexPolygon {
        &self.original
    }

    /// The augmented polygon (with zero-length edges and degenerate
    /// vertices).
    pub fn base(&self) -> &ConvexPolygon {
        &self.base
    }

    /// `P₀`.
    pub fn rectangle(&self) -> &ConvexPolygon {
        &self.rectangle
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn boomerangs(&self) -> &[Boomerang] {
        &self.boomerangs
    }

    pub fn triangles(&self) -> &[TriangleNode] {
        &self.triangles
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Number of triangle levels.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of compass directions (compass) or samples (Dudley).
    pub fn augmentation_size(&self) -> usize {
        self.compass_k
    }

    /// Level at which facet `f` enters the envelopes, or [`NEVER`].
    pub fn facet_level(&self, f: usize) -> usize {
        self.intro[f]
    }

    /// Triangle whose inner edge lies on facet `f`.
    pub fn triangle_cut_by(&self, f: usize) -> Option<usize> {
        self.cut_by[f]
    }

    pub fn is_axis_facet(&self, f: usize) -> bool {
        self.axis.contains(&f)
    }

    /// Facet indices of envelope `P_i`, counterclockwise. Levels at or past
    /// the depth give every facet that ever enters.
    pub fn envelope_facets(&self, i: usize) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| self.intro[f] <= i).collect()
    }

    /// Previous and next facet of `P_i` around facet `f` (which must be in
    /// `P_i`).
    pub fn envelope_neighbors(&self, f: usize, i: usize) -> (usize, usize) {
        let m = self.facets.len();
        let mut prev = (f + m - 1) % m;
        while self.intro[prev] > i {
            prev = (prev + m - 1) % m;
        }
        let mut next = (f + 1) % m;
        while self.intro[next] > i {
            next = (next + 1) % m;
        }
        (prev, next)
    }

    /// The edge of `P_i` on facet `f`: from its meet with the previous facet
    /// to its meet with the next.
    pub fn envelope_edge(&self, f: usize, i: usize) -> (Point, Point) {
        let (p, n) = self.envelope_neighbors(f, i);
        (build::facet_meet(&self.facets, p, f), build::facet_meet(&self.facets, f, n))
    }

    /// Vertices of `P_i` (duplicates removed, counterclockwise).
    pub fn envelope_points(&self, i: usize) -> Vec<Point> {
        let fs = self.envelope_facets(i);
        let k = fs.len();
        let mut pts: Vec<Point> = Vec::with_capacity(k);
        for j in 0..k {
            let p = build::facet_meet(&self.facets, fs[j], fs[(j + 1) % k]);
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        pts
    }

    /// Envelope `P_i`: `P₀` for `i = 0`, the augmented polygon for
    /// `i ≥ depth`.
    pub fn envelope_of(&self, i: usize) -> Result<ConvexPolygon, HierarchyError> {
        if i > self.depth {
            return Err(HierarchyError::LevelOutOfRange { level: i, depth: self.depth });
        }
        if i == self.depth {
            return Ok(self.base.clone());
        }
        if i == 0 {
            return Ok(self.rectangle.clone());
        }
        Ok(ConvexPolygon::new(self.envelope_points(i)).expect("envelopes are convex"))
    }

    /// Sum of triangle areas (doubled), for the tiling identity.
    pub fn tiling_area2(&self) -> Scalar {
        num::sum_balanced(self.triangles.iter().map(|t| t.area2()).collect())
    }

    /// Maximum boomerang height per level (square roots of exact squared
    /// heights).
    pub fn level_height_profile(&self) -> Vec<f64> {
        let levels = self.boomerangs.iter().map(|b| b.level).max().map_or(0, |l| l + 1);
        let mut best: Vec<Scalar> = vec![num::zero(); levels];
        for b in &self.boomerangs {
            if b.height2 > best[b.level] {
                best[b.level] = b.height2.clone();
            }
        }
        best.iter().map(|h| num::to_f64(h).sqrt()).collect()
    }

    /// Exact maximum squared height per level.
    pub fn level_height2(&self) -> Vec<Scalar> {
        let levels = self.boomerangs.iter().map(|b| b.level).max().map_or(0, |l| l + 1);
        let mut best: Vec<Scalar> = vec![num::zero(); levels];
        for b in &self.boomerangs {
            if b.height2 > best[b.level] {
                best[b.level] = b.height2.clone();
            }
        }
        best
    }

    /// Boomerangs of height at least `s`, per level.
    pub fn tall_boomerang_count(&self, s: &Scalar) -> Vec<usize> {
        let levels = self.boomerangs.iter().map(|b| b.level).max().map_or(0, |l| l + 1);
        let s2 = s * s;
        let mut out = vec![0; levels];
        for b in &self.boomerangs {
            if b.height2 >= s2 {
                out[b.level] += 1;
            }
        }
        out
    }

    fn in_boomerang(&self, b: &Boomerang, p: &Point) -> bool {
        let fa = &self.facets[b.a];
        let fb = &self.facets[b.b];
        let (apex, u, v) = (&b.apex, &fa.end, &fb.start);
        if u == v {
            return false;
        }
        // Closed triangle apex, a.end, b.start (clockwise: a.end, apex, b.start
        // is counterclockwise).
        orient(u, apex, p) != Ordering::Less && orient(apex, v, p) != Ordering::Less && orient(v, u, p) != Ordering::Less
    }

    /// The tile containing `p`; on shared boundaries the deeper tile wins.
    pub fn locate_point(&self, p: &Point) -> TriangleLocation {
        self.locate_counting(p).0
    }

    /// Like [`Self::locate_point`], also returning the number of levels
    /// walked.
    pub fn locate_counting(&self, p: &Point) -> (TriangleLocation, usize) {
        if !self.rectangle.contains(p) {
            return (TriangleLocation::Outside, 0);
        }
        if self.original.contains(p) {
            return (TriangleLocation::InsideBase, 0);
        }
        let mut cur = self.roots.iter().copied().find(|&r| self.in_boomerang(&self.boomerangs[r], p));
        let mut steps = 0;
        let mut found: Option<usize> = None;
        while let Some(bid) = cur {
            steps += 1;
            let b = &self.boomerangs[bid];
            let Some(t) = b.triangle else { break };
            let tri = &self.triangles[t];
            let cut = &self.facets[tri.cut];
            if cut.eval(p) > num::zero() {
                found = Some(t);
                break;
            }
            // Inside the cut line: one of the two children, unless on it.
            let [c0, c1] = tri.children;
            cur = [c0, c1].into_iter().find(|&c| self.in_boomerang(&self.boomerangs[c], p));
            if cur.is_none() && cut.eval(p) == num::zero() {
                found = Some(t);
            }
        }
        match found {
            Some(t) => (TriangleLocation::Triangle { level: self.triangles[t].level, node: t }, steps),
            None => (self.locate_brute(p), steps + self.triangles.len()),
        }
    }

    /// Reference scan over every tile.
    pub fn locate_brute(&self, p: &Point) -> TriangleLocation {
        if !self.rectangle.contains(p) {
            return TriangleLocation::Outside;
        }
        if self.original.contains(p) {
            return TriangleLocation::InsideBase;
        }
        let mut best: Option<&TriangleNode> = None;
        for t in &self.triangles {
            if t.contains(p) && best.is_none_or(|b| t.level > b.level) {
                best = Some(t);
            }
        }
        match best {
            Some(t) => TriangleLocation::Triangle { level: t.level, node: t.id },
            None => TriangleLocation::InsideBase,
        }
    }

    /// The same hierarchy carried along by the rotation `rot` (a rational
    /// unit vector). Facet indices, levels and tree links are unchanged; the
    /// facet list no longer starts at the east facet.
    pub fn rotated(&self, rot: &Point) -> BoomerangHierarchy {
        let mut h = self.clone();
        h.original = self.original.rotate(rot);
        h.base = self.base.rotate(rot);
        h.rectangle = self.rectangle.rotate(rot);
        for f in &mut h.facets {
            let r = f.normal.rotate(rot);
            let (x, y) = num::primitive_direction(&r.x, &r.y);
            f.normal = Point::new(x, y);
            f.start = f.start.rotate(rot);
            f.end = f.end.rotate(rot);
            f.offset = f.normal.dot(&f.start);
        }
        for b in &mut h.boomerangs {
            b.apex = b.apex.rotate(rot);
        }
        for t in &mut h.triangles {
            t.apex = t.apex.rotate(rot);
            t.x = t.x.rotate(rot);
            t.y = t.y.rotate(rot);
        }
        h
    }

    /// Real edges of the original polygon among the facets.
    pub fn is_real_facet(&self, f: usize) -> bool {
        self.facets[f].kind == FacetKind::Edge
    }
}
