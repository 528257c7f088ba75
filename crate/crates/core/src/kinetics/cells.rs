//! The configuration point `c(t)` (the moving body's origin in the obstacle
//! frame) tracked through the mixed hierarchy of `Q` and `−P`.

use super::engine::{CertKind, Certificate, Handled, Kds};
use super::log::EventKind;
use super::motion::{KVec, Relative};
use super::pair::{PairCtx, SumFacet};
use crate::geometry::point::angle_cmp_from;
use crate::geometry::Point;
use crate::hierarchy::BoomerangHierarchy;
use crate::mixed::{build_mixed_at, CellLocation, MixedHierarchy, Side};
use crate::num::Scalar;
use crate::poly::Root;
use std::cmp::Ordering;
use std::rc::Rc;

const SLOPE_BASE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Cell(usize),
    /// The bounding rectangles are disjoint.
    Outside(SumFacet),
}

#[derive(Clone)]
pub(crate) struct CellKds {
    /// Obstacle (mixed side `P`) and the negated moving body (side `Q`).
    hq: Rc<BoomerangHierarchy>,
    hn: Rc<BoomerangHierarchy>,
    rel: Rc<Relative>,
    rects: PairCtx,
    m: Rc<MixedHierarchy>,
    state: State,
    span: Scalar,
}

impl CellKds {
    /// `None` on contact at `t`.
    pub fn new(hq: Rc<BoomerangHierarchy>, hn: Rc<BoomerangHierarchy>, rects: PairCtx, rel: Rc<Relative>, t: &Scalar, span: Scalar) -> Option<Self> {
        let m = Rc::new(build_mixed_at(&hq, &hn, &Point::int(1, 0), &rel.rotation_at(t)).expect("same hierarchy kind"));
        let mut k = CellKds { hq, hn, rel, rects, m, state: State::Cell(0), span };
        let (m, s) = k.relocate(t)?;
        k.m = m;
        k.state = s;
        Some(k)
    }

    fn config(&self) -> &KVec {
        &self.rel.shift
    }

    fn config_at(&self, t: &Scalar) -> Point {
        self.rel.offset_at(t)
    }

    fn kdir(&self, side: Side, d: &Point) -> KVec {
        match side {
            Side::P => self.rel.fixed_dir(d),
            Side::Q => self.rel.moving_dir(d),
        }
    }

    fn cell_certs(&self, m: &MixedHierarchy, id: usize) -> Vec<Certificate> {
        let verts: Vec<KVec> = m.cell_parts(id).iter().map(|[a, b]| self.rel.fixed_point(a).add(&self.rel.moving_dir(b))).collect();
        let n = verts.len();
        let c = self.config();
        let mut out: Vec<Certificate> = (0..n)
            .map(|i| {
                let (a, b) = (&verts[i], &verts[(i + 1) % n]);
                Certificate::new(CertKind::CellBoundary, i, b.sub(a).cross(&c.sub(a)))
            })
            .collect();
        if self.rel.rigid {
            out.extend(self.slope_certs(m, id));
        }
        out
    }

    /// Slope order of the cut triangle's three facets against their
    /// neighbours in the other envelope.
    fn slope_certs(&self, m: &MixedHierarchy, id: usize) -> Vec<Certificate> {
        let cell = &m.cells()[id];
        let (s, o) = (cell.origin(), cell.origin().other());
        let (hs, ho) = (m.hierarchy(s), m.hierarchy(o));
        let body = |side: Side| -> &BoomerangHierarchy {
            match side {
                Side::P => &self.hq,
                Side::Q => &self.hn,
            }
        };
        let tri = &hs.triangles()[cell.node()];
        let env = ho.envelope_facets(cell.other_level);
        let mut out = Vec::new();
        for (j, x) in [tri.a, tri.b, tri.cut].into_iter().enumerate() {
            let nx = &hs.facets()[x].normal;
            let ahead = |k: &usize| angle_cmp_from(nx, &ho.facets()[*k].normal, nx) != Ordering::Equal;
            let mut others: Vec<usize> = env.iter().copied().filter(ahead).collect();
            others.sort_by(|&u, &v| angle_cmp_from(nx, &ho.facets()[u].normal, &ho.facets()[v].normal));
            let (Some(&next), Some(&prev)) = (others.first(), others.last()) else { continue };
            let kx = self.kdir(s, &body(s).facets()[x].normal);
            let kp = self.kdir(o, &body(o).facets()[prev].normal);
            let kn = self.kdir(o, &body(o).facets()[next].normal);
            out.push(Certificate::new(CertKind::SlopeOrder, SLOPE_BASE + 2 * j, kp.cross(&kx)));
            out.push(Certificate::new(CertKind::SlopeOrder, SLOPE_BASE + 2 * j + 1, kx.cross(&kn)));
        }
        out
    }

    fn certs_in(&self, m: &MixedHierarchy, s: State) -> Vec<Certificate> {
        match s {
            State::Cell(id) => self.cell_certs(m, id),
            State::Outside(sf) => self.rects.certs(&sf),
        }
    }

    fn holds(&self, m: &MixedHierarchy, s: State, t: &Scalar) -> bool {
        match s {
            State::Cell(_) => self.certs_in(m, s).iter().all(|c| c.valid_at(t)),
            State::Outside(sf) => self.rects.holds(&sf, t),
        }
    }

    fn level_in(m: &MixedHierarchy, s: State) -> usize {
        match s {
            State::Cell(id) => m.cells()[id].level + 1,
            State::Outside(_) => 0,
        }
    }

    /// Locates `c(t)` from scratch, rebuilding the mixed hierarchy at the
    /// current rotation when rotating. `None` on contact.
    fn relocate(&self, t: &Scalar) -> Option<(Rc<MixedHierarchy>, State)> {
        let poses: Vec<Scalar> = if self.rel.rigid {
            // At a slope tie the order just after `t` is wanted.
            let mut v = vec![t.clone()];
            for k in [80u32, 64, 48, 32, 20] {
                v.push(t + &self.span / Scalar::from_integer(num_bigint::BigInt::from(1u8) << k));
            }
            v
        } else {
            vec![t.clone()]
        };
        let c = self.config_at(t);
        for tp in poses {
            let m = if self.rel.rigid {
                Rc::new(build_mixed_at(&self.hq, &self.hn, &Point::int(1, 0), &self.rel.rotation_at(&tp)).expect("same hierarchy kind"))
            } else {
                Rc::clone(&self.m)
            };
            if let Some(s) = self.find(&m, &c, t) {
                return Some((m, s));
            }
        }
        None
    }

    fn find(&self, m: &MixedHierarchy, c: &Point, t: &Scalar) -> Option<State> {
        match m.locate_configuration(c) {
            CellLocation::InsideSum => return None,
            CellLocation::Cell(id) if self.holds(m, State::Cell(id), t) => return Some(State::Cell(id)),
            _ => {}
        }
        let cf = c.to_f64();
        for cell in m.alive_cells() {
            let [x0, y0, x1, y1] = cell.bbox;
            if cf[0] >= x0 && cf[0] <= x1 && cf[1] >= y0 && cf[1] <= y1 && cell.contains(c) && self.holds(m, State::Cell(cell.id), t) {
                return Some(State::Cell(cell.id));
            }
        }
        self.rects.certify(t, 0, 0).map(State::Outside)
    }

    fn collision(&self, root: &Root) -> Handled {
        Handled { kind: EventKind::Collision, level_after: self.level(), feature: 0, steps: 1, degenerate: !root.crossing }
    }

    fn settle(&mut self, cand: Option<State>, kind: EventKind, t: &Scalar, root: &Root) -> Handled {
        if let Some(s) = cand {
            if self.holds(&self.m, s, t) {
                self.state = s;
                return Handled { kind, level_after: self.level(), feature: self.feature(), steps: 1, degenerate: false };
            }
        }
        match self.relocate(t) {
            Some((m, s)) => {
                self.m = m;
                self.state = s;
                let level = self.level();
                Handled { kind, level_after: level, feature: self.feature(), steps: level + 1, degenerate: false }
            }
            None => self.collision(root),
        }
    }

    fn feature(&self) -> usize {
        match self.state {
            State::Cell(id) => id,
            State::Outside(sf) => sf.f,
        }
    }
}

impl Kds for CellKds {
    fn certificates(&self) -> Vec<Certificate> {
        self.certs_in(&self.m, self.state)
    }

    fn level(&self) -> usize {
        Self::level_in(&self.m, self.state)
    }

    fn handle(&mut self, fired: &Certificate, root: &Root, t: &Scalar) -> Handled {
        match (self.state, fired.kind) {
            (State::Outside(_), _) => self.settle(None, EventKind::CellExit, t, root),
            (State::Cell(id), CertKind::CellBoundary) => {
                let nbs = self.m.cells()[id].neighbors[fired.id].clone();
                let cand = nbs.into_iter().map(State::Cell).find(|&s| self.holds(&self.m, s, t));
                self.settle(cand, EventKind::CellExit, t, root)
            }
            (State::Cell(id), _) => {
                let j = (fired.id - SLOPE_BASE) / 2;
                let ahead = (fired.id - SLOPE_BASE) % 2 == 1;
                let kind = match (j, ahead) {
                    (2, _) => EventKind::PageTurn,
                    (0, true) | (1, false) => EventKind::Collapse,
                    _ => EventKind::Expand,
                };
                let level = self.m.cells()[id].level + 1;
                match self.relocate(t) {
                    Some((m, s)) => {
                        self.m = m;
                        self.state = s;
                        Handled { kind, level_after: self.level(), feature: self.feature(), steps: level, degenerate: false }
                    }
                    None => self.collision(root),
                }
            }
        }
    }
}
