//! The mixed hierarchy: a tiling of `(P₀⊕Q₀) \ (P⊕Q)` by translated
//! hierarchy triangles and parallelograms, built by interleaving the corner
//! cuts of both polygons level by level.

mod build;
mod export;
mod sweep;

pub use build::{build_mixed, build_mixed_at};
pub use export::{CellDump, MixedDump};
pub use sweep::{next_slope_event, PageTurnSweep};

use crate::geometry::point::orient;
use crate::geometry::polygon::{edge_normal, signed_area2};
use crate::geometry::{minkowski_sum, ConvexPolygon, Point};
use crate::hierarchy::{facet_meet_in, BoomerangHierarchy};
use crate::num::{self, Scalar};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MixedError {
    #[error("hierarchies of different kinds cannot be mixed")]
    IncompatibleHierarchies,
    #[error("point is not on the boundary of cell {0}")]
    NotOnBoundary(usize),
    #[error("cells {0} and {1} are not a triangle and an adjacent parallelogram of the same cut")]
    NotAdjacent(usize, usize),
    #[error("cell {0} is not degenerate at the current pose")]
    NotDegenerate(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    P,
    Q,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::P => Side::Q,
            Side::Q => Side::P,
        }
    }
}

/// Which leg of the cut triangle a parallelogram is swept along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Leg {
    /// Along facet `a` (from the apex to `x`).
    X,
    /// Along facet `b` (from the apex to `y`).
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellKind {
    /// Triangle `node` of polygon `origin`, translated by the vertex of the
    /// other envelope where facets `at[0]`, `at[1]` meet.
    Triangle { origin: Side, node: usize, at: [usize; 2] },
    /// Edge `edge` of the other envelope swept along a leg of triangle
    /// `node` of polygon `origin`.
    Parallelogram { origin: Side, node: usize, edge: usize, leg: Leg },
}

#[derive(Clone, Debug)]
pub struct MixedCell {
    pub id: usize,
    pub kind: CellKind,
    /// Level of the cut that created the cell.
    pub level: usize,
    /// Level of the other envelope at that cut.
    pub other_level: usize,
    /// Counterclockwise vertices at the current pose.
    pub vertices: Vec<Point>,
    /// Cells across each boundary edge (edge `i` runs from vertex `i`).
    pub neighbors: Vec<Vec<usize>>,
    pub alive: bool,
    /// Floating-point bounding box `[xmin, ymin, xmax, ymax]`, padded.
    pub(crate) bbox: [f64; 4],
}

impl MixedCell {
    pub fn origin(&self) -> Side {
        match self.kind {
            CellKind::Triangle { origin, .. } | CellKind::Parallelogram { origin, .. } => origin,
        }
    }

    pub fn node(&self) -> usize {
        match self.kind {
            CellKind::Triangle { node, .. } | CellKind::Parallelogram { node, .. } => node,
        }
    }

    pub fn is_triangle(&self) -> bool {
        matches!(self.kind, CellKind::Triangle { .. })
    }

    pub fn area2(&self) -> Scalar {
        signed_area2(&self.vertices)
    }

    pub fn contains(&self, p: &Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) != Ordering::Less)
    }

    fn may_contain(&self, p: [f64; 2]) -> bool {
        let b = &self.bbox;
        p[0] >= b[0] && p[0] <= b[2] && p[1] >= b[1] && p[1] <= b[3]
    }

    fn update_bbox(&mut self) {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for v in &self.vertices {
            let [x, y] = v.to_f64();
            b = [b[0].min(x), b[1].min(y), b[2].max(x), b[3].max(y)];
        }
        let pad = 1e-9 * (b[2] - b[0] + b[3] - b[1]) + 1e-300;
        self.bbox = [b[0] - pad, b[1] - pad, b[2] + pad, b[3] + pad];
    }

    fn edge_with(&self, p: &Point) -> Option<usize> {
        let n = self.vertices.len();
        (0..n).find(|&i| {
            let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            orient(a, b, p) == Ordering::Equal && !(p - a).dot(&(p - b)).is_positive()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellLocation {
    Cell(usize),
    Outside,
    /// Inside `P⊕Q`.
    InsideSum,
}

/// One corner cut in the interleaved order.
#[derive(Clone, Debug)]
pub struct Insertion {
    pub side: Side,
    pub node: usize,
    pub level: usize,
    /// Length of the opposing chain that was split.
    pub chain: usize,
    /// Chain edges on the `X` leg.
    pub split: usize,
    /// Real edges of the other envelope at this time.
    pub other_real: usize,
    /// Angle of the inserted facet's normal, in the body frame.
    pub angle: f64,
    /// Angles of the other envelope's real edge normals, in its body frame.
    pub other_angles: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct MixedHierarchy {
    pub(crate) body: [BoomerangHierarchy; 2],
    pub(crate) posed: [BoomerangHierarchy; 2],
    pub(crate) pose: [Point; 2],
    pub(crate) cells: Vec<MixedCell>,
    pub(crate) insertions: Vec<Insertion>,
    pub(crate) outer: ConvexPolygon,
    pub(crate) inner: ConvexPolygon,
}

fn idx(s: Side) -> usize {
    match s {
        Side::P => 0,
        Side::Q => 1,
    }
}

impl MixedHierarchy {
    pub fn cells(&self) -> &[MixedCell] {
        &self.cells
    }

    pub fn alive_cells(&self) -> impl Iterator<Item = &MixedCell> {
        self.cells.iter().filter(|c| c.alive)
    }

    /// Number of live cells.
    pub fn size(&self) -> usize {
        self.cells.iter().filter(|c| c.alive).count()
    }

    pub fn insertions(&self) -> &[Insertion] {
        &self.insertions
    }

    /// `P₀⊕Q₀` at the current pose.
    pub fn outer(&self) -> &ConvexPolygon {
        &self.outer
    }

    /// `P⊕Q` at the current pose.
    pub fn inner(&self) -> &ConvexPolygon {
        &self.inner
    }

    pub fn hierarchy(&self, s: Side) -> &BoomerangHierarchy {
        &self.posed[idx(s)]
    }

    /// Sum of cell areas (doubled).
    pub fn cell_area2(&self) -> Scalar {
        num::sum_balanced(self.alive_cells().map(|c| c.area2()).collect())
    }

    /// Area of the region the cells must tile (doubled).
    pub fn gap_area2(&self) -> Scalar {
        self.outer.area2() - self.inner.area2()
    }

    /// Whether every live cell is nondegenerate and the areas add up.
    pub fn area_identity_holds(&self) -> bool {
        self.alive_cells().all(|c| c.area2().is_positive()) && self.cell_area2() == self.gap_area2()
    }

    /// Recomputes cell geometry for the polygons rotated by `rot_p`, `rot_q`
    /// (rational unit vectors). The combinatorial structure is kept, so the
    /// result is a tiling only while no slope event has been passed.
    pub fn set_pose(&mut self, rot_p: &Point, rot_q: &Point) {
        self.posed = [self.body[0].rotated(rot_p), self.body[1].rotated(rot_q)];
        self.pose = [rot_p.clone(), rot_q.clone()];
        self.outer = minkowski_sum(self.posed[0].rectangle(), self.posed[1].rectangle());
        self.inner = minkowski_sum(self.posed[0].original(), self.posed[1].original());
        for i in 0..self.cells.len() {
            if self.cells[i].alive {
                self.cells[i].vertices = self.realize(&self.cells[i]);
            }
        }
        self.relink();
    }

    /// Cell geometry from its symbolic description at the current pose.
    pub(crate) fn realize(&self, c: &MixedCell) -> Vec<Point> {
        let hs = &self.posed[idx(c.origin())];
        let t = &hs.triangles()[c.node()];
        match &c.kind {
            CellKind::Triangle { origin, at, .. } => {
                let ho = &self.posed[idx(origin.other())];
                let v = facet_meet_in(ho, at[0], at[1]);
                t.vertices().iter().map(|p| p + &v).collect()
            }
            CellKind::Parallelogram { origin, edge, leg, .. } => {
                let ho = &self.posed[idx(origin.other())];
                let (s, e) = ho.envelope_edge(*edge, c.other_level);
                let w = match leg {
                    Leg::X => &t.x - &t.apex,
                    Leg::Y => &t.y - &t.apex,
                };
                parallelogram(&(&t.apex + &s), &(&e - &s), &w)
            }
        }
    }

    /// Vertices of a cell split into a body point of `P` and one of `Q`
    /// (unposed), in the cell's vertex order: vertex `i` is
    /// `R_P·parts[i][0] + R_Q·parts[i][1]`.
    pub fn cell_parts(&self, id: usize) -> Vec<[Point; 2]> {
        let c = &self.cells[id];
        let s = idx(c.origin());
        let o = 1 - s;
        let t = &self.body[s].triangles()[c.node()];
        let pairs: Vec<(Point, Point)> = match &c.kind {
            CellKind::Triangle { at, .. } => {
                let v = facet_meet_in(&self.body[o], at[0], at[1]);
                t.vertices().into_iter().map(|p| (p, v.clone())).collect()
            }
            CellKind::Parallelogram { edge, leg, .. } => {
                let (sp, ep) = self.body[o].envelope_edge(*edge, c.other_level);
                let w = match leg {
                    Leg::X => &t.x - &t.apex,
                    Leg::Y => &t.y - &t.apex,
                };
                let aw = &t.apex + &w;
                let q = (&ep - &sp).rotate(&self.pose[o]);
                let mut v = vec![(t.apex.clone(), sp.clone()), (t.apex.clone(), ep.clone()), (aw.clone(), ep), (aw, sp)];
                if q.cross(&w.rotate(&self.pose[s])).is_negative() {
                    v.reverse();
                }
                v
            }
        };
        pairs.into_iter().map(|(own, other)| if s == 0 { [own, other] } else { [other, own] }).collect()
    }

    /// Rotations applied to `P` and `Q`.
    pub fn pose(&self) -> &[Point; 2] {
        &self.pose
    }

    /// The cell containing the configuration point `c` (lowest id on shared
    /// boundaries).
    pub fn locate_configuration(&self, c: &Point) -> CellLocation {
        if !self.outer.contains(c) {
            return CellLocation::Outside;
        }
        if self.inner.contains_strictly(c) {
            return CellLocation::InsideSum;
        }
        let cf = c.to_f64();
        match self.alive_cells().find(|cell| cell.may_contain(cf) && cell.contains(c)) {
            Some(cell) => CellLocation::Cell(cell.id),
            None => CellLocation::InsideSum,
        }
    }

    /// The cell across the boundary of `cell` at `p`.
    pub fn neighbor_cell(&self, cell: usize, p: &Point) -> Result<CellLocation, MixedError> {
        let c = &self.cells[cell];
        let e = c.edge_with(p).ok_or(MixedError::NotOnBoundary(cell))?;
        if let Some(&n) = c.neighbors[e].iter().find(|&&n| self.cells[n].contains(p)) {
            return Ok(CellLocation::Cell(n));
        }
        let n = c.vertices.len();
        let (a, b) = (&c.vertices[e], &c.vertices[(e + 1) % n]);
        // A boundary edge: the outer rectangle sum or the obstacle.
        let out = edge_normal(a, b);
        let on_outer = self.outer.facets().iter().any(|f| f.normal == out && f.eval(p).is_zero());
        Ok(if on_outer { CellLocation::Outside } else { CellLocation::InsideSum })
    }

    /// Recomputes adjacency: edges on a common line with opposite
    /// orientation and overlapping extent are linked.
    pub fn relink(&mut self) {
        type Key = (Point, Scalar);
        let mut lines: HashMap<Key, Vec<(usize, usize, bool, Scalar, Scalar)>> = HashMap::new();
        for c in self.cells.iter_mut() {
            let n = c.vertices.len();
            c.neighbors = vec![Vec::new(); n];
            c.update_bbox();
            if !c.alive {
                continue;
            }
            for i in 0..n {
                let (a, b) = (&c.vertices[i], &c.vertices[(i + 1) % n]);
                let nrm = edge_normal(a, b);
                let up = nrm.y.is_positive() || (nrm.y.is_zero() && nrm.x.is_positive());
                let canon = if up { nrm.clone() } else { -&nrm };
                let tan = canon.perp();
                let (sa, sb) = (tan.dot(a), tan.dot(b));
                let (lo, hi) = if sa <= sb { (sa, sb) } else { (sb, sa) };
                let off = canon.dot(a);
                lines.entry((canon, off)).or_default().push((c.id, i, up, lo, hi));
            }
        }
        for (_, mut segs) in lines {
            segs.sort_by(|a, b| a.3.cmp(&b.3));
            for i in 0..segs.len() {
                for j in i + 1..segs.len() {
                    if segs[j].3 >= segs[i].4 {
                        break;
                    }
                    if segs[i].2 != segs[j].2 {
                        let (ci, ei) = (segs[i].0, segs[i].1);
                        let (cj, ej) = (segs[j].0, segs[j].1);
                        self.cells[ci].neighbors[ei].push(cj);
                        self.cells[cj].neighbors[ej].push(ci);
                    }
                }
            }
        }
        // Hash order is not reproducible.
        for c in self.cells.iter_mut() {
            for nb in c.neighbors.iter_mut() {
                nb.sort_unstable();
                nb.dedup();
            }
        }
    }

    /// Exchanges a triangle with the parallelogram beside it once the swept
    /// edge has become parallel to the triangle's inner edge. The
    /// parallelogram moves to the other leg; if it has no area there it is
    /// dropped. Returns the ids of the replacement cells.
    pub fn apply_page_turn(&mut self, tri: usize, para: usize) -> Result<Vec<usize>, MixedError> {
        let (t, p) = (&self.cells[tri], &self.cells[para]);
        let (CellKind::Triangle { origin, node, at }, CellKind::Parallelogram { origin: o2, node: n2, edge, leg }) =
            (&t.kind, &p.kind)
        else {
            return Err(MixedError::NotAdjacent(tri, para));
        };
        if !t.alive || !p.alive || origin != o2 || node != n2 {
            return Err(MixedError::NotAdjacent(tri, para));
        }
        let (origin, node, edge, leg) = (*origin, *node, *edge, *leg);
        let ho = &self.posed[idx(origin.other())];
        let (prev, next) = ho.envelope_neighbors(edge, p.other_level);
        let new_at = match leg {
            Leg::X if *at == [edge, next] => [prev, edge],
            Leg::Y if *at == [prev, edge] => [edge, next],
            _ => return Err(MixedError::NotAdjacent(tri, para)),
        };
        let tn = &self.posed[idx(origin)].triangles()[node];
        let (s, e) = ho.envelope_edge(edge, p.other_level);
        if !(&e - &s).cross(&(&tn.y - &tn.x)).is_zero() {
            return Err(MixedError::NotDegenerate(para));
        }
        let (level, other_level) = (t.level, t.other_level);
        let new_leg = match leg {
            Leg::X => Leg::Y,
            Leg::Y => Leg::X,
        };
        self.cells[tri].alive = false;
        self.cells[para].alive = false;
        let mut out = Vec::new();
        for kind in [
            CellKind::Triangle { origin, node, at: new_at },
            CellKind::Parallelogram { origin, node, edge, leg: new_leg },
        ] {
            let mut c = MixedCell { id: self.cells.len(), kind, level, other_level, vertices: Vec::new(), neighbors: Vec::new(), alive: true, bbox: [0.0; 4] };
            c.vertices = self.realize(&c);
            if signed_area2(&c.vertices).is_zero() {
                continue;
            }
            out.push(c.id);
            self.cells.push(c);
        }
        self.relink();
        Ok(out)
    }

    /// Removes a parallelogram whose sides have become parallel.
    pub fn collapse(&mut self, cell: usize) -> Result<(), MixedError> {
        let c = &self.cells[cell];
        if !c.alive || c.is_triangle() || !c.area2().is_zero() {
            return Err(MixedError::NotDegenerate(cell));
        }
        self.cells[cell].alive = false;
        self.relink();
        Ok(())
    }

    /// Removes every degenerate parallelogram; returns how many went.
    pub fn collapse_degenerate(&mut self) -> usize {
        let dead: Vec<usize> = self.alive_cells().filter(|c| !c.is_triangle() && c.area2().is_zero()).map(|c| c.id).collect();
        for &d in &dead {
            self.cells[d].alive = false;
        }
        if !dead.is_empty() {
            self.relink();
        }
        dead.len()
    }
}

/// Counterclockwise parallelogram `base, base+q, base+q+w, base+w`.
pub(crate) fn parallelogram(base: &Point, q: &Point, w: &Point) -> Vec<Point> {
    let b1 = base + q;
    let b2 = &b1 + w;
    let b3 = base + w;
    let mut v = vec![base.clone(), b1, b2, b3];
    if q.cross(w).is_negative() {
        v.reverse();
    }
    v
}
