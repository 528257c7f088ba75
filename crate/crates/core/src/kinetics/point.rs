//! A moving point against a polygon's boomerang hierarchy.

use super::engine::{valid_at, CertKind, Certificate, Handled, Kds};
use super::log::EventKind;
use super::motion::{KVec, Relative};
use crate::geometry::Point;
use crate::hierarchy::{BoomerangHierarchy, TriangleLocation, NEVER};
use crate::num::Scalar;
use crate::poly::{Poly, Root};
use std::rc::Rc;

#[derive(Clone)]
pub(crate) struct PointCtx {
    pub h: Rc<BoomerangHierarchy>,
    pub rel: Rc<Relative>,
    pub p: KVec,
}

impl PointCtx {
    pub fn new(h: Rc<BoomerangHierarchy>, rel: Rc<Relative>, body_point: &Point) -> Self {
        let p = rel.moving_point(body_point);
        PointCtx { h, rel, p }
    }

    /// `n_f · p − offset_f` over the frame denominator.
    pub fn line(&self, f: usize) -> Poly {
        let fc = &self.h.facets()[f];
        self.p.x.scale(&fc.normal.x).add(&self.p.y.scale(&fc.normal.y)).sub(&self.rel.w.scale(&fc.offset))
    }

    pub fn pos(&self, t: &Scalar) -> Point {
        let w = self.rel.w.eval(t);
        let r = self.p.eval_raw(t);
        Point::new(r.x / &w, r.y / &w)
    }

    pub fn touches(&self, pos: &Point) -> bool {
        self.h.original().contains(pos)
    }

    fn collision(&self, root: &Root, level: usize, feature: usize) -> Handled {
        Handled { kind: EventKind::Collision, level_after: level, feature, steps: 1, degenerate: !root.crossing }
    }
}

/// Descent cost through `d` levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Descent {
    #[default]
    LevelByLevel,
    /// Binary search over the levels still to descend.
    Binary,
}

impl Descent {
    fn cost(self, d: usize) -> usize {
        match self {
            Descent::LevelByLevel => d.max(1),
            Descent::Binary => (usize::BITS - d.leading_zeros()).max(1) as usize,
        }
    }
}

/// The lazy structure: one separating facet `f`, held at the level where it
/// first appears.
#[derive(Clone)]
pub(crate) struct PointLazy {
    ctx: PointCtx,
    facet: usize,
}

impl PointLazy {
    /// `None` if the point touches the polygon at `t`.
    pub fn new(ctx: PointCtx, t: &Scalar) -> Option<Self> {
        let mut s = PointLazy { ctx, facet: 0 };
        s.facet = s.fallback(t)?;
        Some(s)
    }

    fn level_of(&self, f: usize) -> usize {
        self.ctx.h.facet_level(f)
    }

    fn valid(&self, f: usize, t: &Scalar) -> bool {
        valid_at(&self.ctx.line(f), t)
    }

    /// Coarsest facet that certifies separation at `t`.
    fn fallback(&self, t: &Scalar) -> Option<usize> {
        let h = &self.ctx.h;
        let mut fs: Vec<usize> = (0..h.facets().len()).filter(|&f| h.facet_level(f) != NEVER).collect();
        fs.sort_by_key(|&f| (h.facet_level(f), f));
        let pos = self.ctx.pos(t);
        fs.into_iter().find(|&f| h.facets()[f].eval(&pos) >= Scalar::from_integer(0.into()) && self.valid(f, t))
    }

    fn settle(&mut self, f: usize, kind: EventKind, t: &Scalar, root: &Root, before: usize) -> Handled {
        let f = if self.valid(f, t) { Some(f) } else { self.fallback(t) };
        match f {
            Some(f) => {
                self.facet = f;
                let after = self.level_of(f);
                Handled { kind, level_after: after, feature: f, steps: after.abs_diff(before) + 1, degenerate: false }
            }
            None => self.ctx.collision(root, before, self.facet),
        }
    }
}

impl Kds for PointLazy {
    fn certificates(&self) -> Vec<Certificate> {
        vec![Certificate::new(CertKind::StabLine, self.facet, self.ctx.line(self.facet))]
    }

    fn level(&self) -> usize {
        self.level_of(self.facet)
    }

    fn handle(&mut self, _fired: &Certificate, root: &Root, t: &Scalar) -> Handled {
        let pos = self.ctx.pos(t);
        let level = self.level();
        if self.ctx.touches(&pos) {
            return self.ctx.collision(root, level, self.facet);
        }
        let h = Rc::clone(&self.ctx.h);
        let f = self.facet;
        let (s, e) = h.envelope_edge(f, level);
        let d = h.facets()[f].normal.perp();
        let tau = d.dot(&pos);
        let (prev, next) = h.envelope_neighbors(f, level);
        if tau < d.dot(&s) {
            self.settle(prev, EventKind::Push, t, root, level)
        } else if tau > d.dot(&e) {
            self.settle(next, EventKind::Push, t, root, level)
        } else {
            match h.locate_point(&pos) {
                TriangleLocation::Triangle { node, .. } => {
                    let cut = h.triangles()[node].cut;
                    self.settle(cut, EventKind::Stab, t, root, level)
                }
                TriangleLocation::InsideBase => self.ctx.collision(root, level, f),
                TriangleLocation::Outside => self.settle(f, EventKind::Stab, t, root, level),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Active {
    Tile(usize),
    /// Outside the bounding rectangle, beyond an axis facet.
    Outside(usize),
}

/// The active-triangle structure: the tile holding the point.
#[derive(Clone)]
pub(crate) struct PointActive {
    ctx: PointCtx,
    state: Active,
    descent: Descent,
}

impl PointActive {
    pub fn new(ctx: PointCtx, t: &Scalar, descent: Descent) -> Option<Self> {
        let mut s = PointActive { ctx, state: Active::Outside(0), descent };
        s.state = s.relocate(t)?;
        Some(s)
    }

    fn certs_of(&self, a: Active) -> Vec<Certificate> {
        match a {
            Active::Outside(f) => vec![Certificate::new(CertKind::CellBoundary, 3, self.ctx.line(f))],
            Active::Tile(n) => {
                let tri = &self.ctx.h.triangles()[n];
                vec![
                    Certificate::new(CertKind::CellBoundary, 0, self.ctx.line(tri.a).neg()),
                    Certificate::new(CertKind::CellBoundary, 1, self.ctx.line(tri.b).neg()),
                    Certificate::new(CertKind::StabLine, 2, self.ctx.line(tri.cut)),
                ]
            }
        }
    }

    fn valid(&self, a: Active, t: &Scalar) -> bool {
        self.certs_of(a).iter().all(|c| c.valid_at(t))
    }

    fn level_of(&self, a: Active) -> usize {
        match a {
            Active::Outside(_) => 0,
            Active::Tile(n) => self.ctx.h.triangles()[n].level + 1,
        }
    }

    fn feature_of(a: Active) -> usize {
        match a {
            Active::Outside(f) | Active::Tile(f) => f,
        }
    }

    /// Point location from scratch; `None` on contact.
    fn relocate(&self, t: &Scalar) -> Option<Active> {
        let h = &self.ctx.h;
        let pos = self.ctx.pos(t);
        if self.ctx.touches(&pos) {
            return None;
        }
        if let TriangleLocation::Triangle { node, .. } = h.locate_point(&pos) {
            if self.valid(Active::Tile(node), t) {
                return Some(Active::Tile(node));
            }
        }
        // On a tile boundary: any tile or outside region the point is about
        // to enter.
        let mut tiles: Vec<usize> = h.triangles().iter().filter(|tr| tr.contains(&pos)).map(|tr| tr.id).collect();
        tiles.sort_by_key(|&n| std::cmp::Reverse(h.triangles()[n].level));
        if let Some(n) = tiles.into_iter().find(|&n| self.valid(Active::Tile(n), t)) {
            return Some(Active::Tile(n));
        }
        (0..h.facets().len()).filter(|&f| h.is_axis_facet(f)).map(Active::Outside).find(|&a| self.valid(a, t))
    }

    fn settle(&mut self, cand: Option<Active>, kind: EventKind, t: &Scalar, root: &Root, cost: Option<usize>) -> Handled {
        let before = self.level();
        let next = match cand {
            Some(a) if self.valid(a, t) => Some(a),
            _ => self.relocate(t),
        };
        match next {
            Some(a) => {
                self.state = a;
                let after = self.level_of(a);
                let steps = cost.unwrap_or_else(|| self.descent.cost(after.abs_diff(before)));
                Handled { kind, level_after: after, feature: Self::feature_of(a), steps, degenerate: false }
            }
            None => self.ctx.collision(root, before, Self::feature_of(self.state)),
        }
    }
}

impl Kds for PointActive {
    fn certificates(&self) -> Vec<Certificate> {
        self.certs_of(self.state)
    }

    fn level(&self) -> usize {
        self.level_of(self.state)
    }

    fn handle(&mut self, fired: &Certificate, root: &Root, t: &Scalar) -> Handled {
        let pos = self.ctx.pos(t);
        if self.ctx.touches(&pos) {
            return self.ctx.collision(root, self.level(), Self::feature_of(self.state));
        }
        let h = Rc::clone(&self.ctx.h);
        match (self.state, fired.id) {
            (Active::Outside(_), _) => self.settle(None, EventKind::CellExit, t, root, None),
            (Active::Tile(n), 0 | 1) => {
                let tri = &h.triangles()[n];
                let side = if fired.id == 0 { tri.a } else { tri.b };
                let cand = match h.triangle_cut_by(side) {
                    Some(m) => Active::Tile(m),
                    None => Active::Outside(side),
                };
                self.settle(Some(cand), EventKind::CellExit, t, root, Some(1))
            }
            (Active::Tile(_), _) => {
                let cand = match h.locate_point(&pos) {
                    TriangleLocation::Triangle { node, .. } => Some(Active::Tile(node)),
                    _ => None,
                };
                self.settle(cand, EventKind::Stab, t, root, None)
            }
        }
    }
}
