//! Two moving polygons certified by a separating facet of one envelope and
//! the extreme vertex of the other, at a common hierarchy level.

use super::engine::{valid_at, CertKind, Certificate, Handled, Kds};
use super::log::EventKind;
use super::motion::{KVec, Relative};
use crate::geometry::point::angle_cmp_from;
use crate::geometry::Point;
use crate::hierarchy::{facet_meet_in, BoomerangHierarchy};
use crate::num::{self, Scalar};
use crate::poly::Root;
use num_traits::Signed;
use std::cmp::Ordering;
use std::rc::Rc;

/// Facet `f` of body `owner` against the vertex where facets `g`, `h` of
/// the other body meet, both taken from envelopes of level `level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SumFacet {
    pub owner: usize,
    pub f: usize,
    pub g: usize,
    pub h: usize,
    pub level: usize,
}

/// Body 0 moves (its points go through [`Relative`]), body 1 is the frame.
#[derive(Clone)]
pub(crate) struct PairCtx {
    pub h: [Rc<BoomerangHierarchy>; 2],
    pub rel: Rc<Relative>,
}

impl PairCtx {
    pub fn new(moving: Rc<BoomerangHierarchy>, fixed: Rc<BoomerangHierarchy>, rel: Rc<Relative>) -> Self {
        PairCtx { h: [moving, fixed], rel }
    }

    pub fn max_level(&self) -> usize {
        self.h[0].depth().max(self.h[1].depth())
    }

    fn kpoint(&self, s: usize, x: &Point) -> KVec {
        if s == 0 {
            self.rel.moving_point(x)
        } else {
            self.rel.fixed_point(x)
        }
    }

    fn kdir(&self, s: usize, d: &Point) -> KVec {
        if s == 0 {
            self.rel.moving_dir(d)
        } else {
            self.rel.fixed_dir(d)
        }
    }

    /// Exact position of a body point in the frame at `t`.
    fn place(&self, s: usize, x: &Point, rot: &Point, off: &Point) -> Point {
        if s == 0 {
            off + &x.rotate(rot)
        } else {
            x.clone()
        }
    }

    fn place_dir(&self, s: usize, d: &Point, rot: &Point) -> Point {
        if s == 0 {
            d.rotate(rot)
        } else {
            d.clone()
        }
    }

    pub fn coarsen(&self, mut sf: SumFacet) -> SumFacet {
        let o = 1 - sf.owner;
        sf.level = self.h[sf.owner].facet_level(sf.f).max(self.h[o].facet_level(sf.g)).max(self.h[o].facet_level(sf.h));
        sf
    }

    pub fn certs(&self, sf: &SumFacet) -> Vec<Certificate> {
        let o = 1 - sf.owner;
        let fc = &self.h[sf.owner].facets()[sf.f];
        let n = self.kdir(sf.owner, &fc.normal);
        let a = self.kpoint(sf.owner, &fc.start);
        let v = self.kpoint(o, &facet_meet_in(&self.h[o], sf.g, sf.h));
        let mut out = vec![Certificate::new(CertKind::StabLine, 0, n.dot(&v.sub(&a)))];
        if self.rel.rigid {
            let ng = self.kdir(o, &self.h[o].facets()[sf.g].normal);
            let nh = self.kdir(o, &self.h[o].facets()[sf.h].normal);
            out.push(Certificate::new(CertKind::RollParallel, 1, n.cross(&ng)));
            out.push(Certificate::new(CertKind::RollParallel, 2, nh.cross(&n)));
        }
        out
    }

    /// The certificates of `sf` hold from `t` on.
    pub fn holds(&self, sf: &SumFacet, t: &Scalar) -> bool {
        let certs = self.certs(sf);
        if !valid_at(&certs[0].poly, t) {
            return false;
        }
        if self.rel.rigid {
            return certs[1..].iter().all(|c| c.valid_at(t));
        }
        // Translation: the cone condition is static and may hold with
        // equality.
        let o = 1 - sf.owner;
        let n = &self.h[sf.owner].facets()[sf.f].normal;
        let ng = &self.h[o].facets()[sf.g].normal;
        let nh = &self.h[o].facets()[sf.h].normal;
        !n.cross(ng).is_negative() && !nh.cross(n).is_negative()
    }

    /// A valid sum facet at the first level in `from..=to` whose envelopes
    /// are disjoint, trying the widest f64 gaps first.
    pub fn certify(&self, t: &Scalar, from: usize, to: usize) -> Option<SumFacet> {
        let tf = num::to_f64(t);
        for level in from..=to {
            let env = [self.h[0].envelope_facets(level), self.h[1].envelope_facets(level)];
            // Envelope vertices in the frame, f64: vertex i joins facets i, i+1.
            let verts: Vec<Vec<[f64; 2]>> = (0..2)
                .map(|s| {
                    let e = &env[s];
                    (0..e.len())
                        .map(|i| {
                            let p = facet_meet_in(&self.h[s], e[i], e[(i + 1) % e.len()]).to_f64();
                            if s == 0 {
                                self.rel.place_f64(p, tf)
                            } else {
                                p
                            }
                        })
                        .collect()
                })
                .collect();
            let (rc, rs) = {
                let w = self.rel.w.eval_f64(tf);
                (self.rel.a.eval_f64(tf) / w, self.rel.b.eval_f64(tf) / w)
            };
            let mut cands: Vec<(f64, usize, usize, usize)> = Vec::new();
            for s in 0..2 {
                let o = 1 - s;
                for (i, &f) in env[s].iter().enumerate() {
                    let fc = &self.h[s].facets()[f];
                    let [mut nx, mut ny] = fc.normal.to_f64();
                    if s == 0 {
                        (nx, ny) = (rc * nx - rs * ny, rs * nx + rc * ny);
                    }
                    let len = nx.hypot(ny);
                    // Anchor: the envelope vertex ending this facet.
                    let a = verts[s][i];
                    let (k, gap) = verts[o]
                        .iter()
                        .enumerate()
                        .map(|(k, v)| (k, (nx * (v[0] - a[0]) + ny * (v[1] - a[1])) / len))
                        .min_by(|x, y| x.1.total_cmp(&y.1))
                        .expect("nonempty envelope");
                    cands.push((gap, s, f, k));
                }
            }
            cands.sort_by(|x, y| y.0.total_cmp(&x.0));
            let scale = verts.iter().flatten().map(|v| v[0].abs() + v[1].abs()).fold(1.0, f64::max);
            for &(gap, s, f, k) in cands.iter().take(8) {
                if gap < -1e-9 * scale {
                    break;
                }
                let o = 1 - s;
                let e = &env[o];
                let m = e.len();
                for dk in [0, m - 1, 1] {
                    let kk = (k + dk) % m;
                    let sf = SumFacet { owner: s, f, g: e[kk], h: e[(kk + 1) % m], level };
                    if self.holds(&sf, t) {
                        return Some(sf);
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone)]
pub(crate) struct PairLazy {
    ctx: PairCtx,
    sf: SumFacet,
}

impl PairLazy {
    /// `None` when the polygons touch at `t`.
    pub fn new(ctx: PairCtx, t: &Scalar) -> Option<Self> {
        let sf = ctx.certify(t, 0, ctx.max_level())?;
        Some(PairLazy { ctx, sf })
    }

    fn collision(&self, root: &Root) -> Handled {
        Handled { kind: EventKind::Collision, level_after: self.sf.level, feature: self.sf.f, steps: 1, degenerate: !root.crossing }
    }

    fn finish(&mut self, kind: EventKind, cand: Option<SumFacet>, t: &Scalar, root: &Root) -> Handled {
        let before = self.sf.level;
        let next = match cand.map(|c| self.ctx.coarsen(c)) {
            Some(c) if self.ctx.holds(&c, t) => Some(c),
            _ => self.ctx.certify(t, 0, self.ctx.max_level()),
        };
        match next {
            Some(sf) => {
                self.sf = sf;
                Handled { kind, level_after: sf.level, feature: sf.f, steps: sf.level.abs_diff(before) + 1, degenerate: false }
            }
            None => self.collision(root),
        }
    }

    /// The sum facet after (`forward`) or before the current one in slope
    /// order, at the current level.
    fn slide(&self, forward: bool, rot: &Point) -> SumFacet {
        let SumFacet { owner, f, g, h, level } = self.sf;
        let o = 1 - owner;
        let c = &self.ctx;
        let (fp, fnx) = c.h[owner].envelope_neighbors(f, level);
        let nf = c.place_dir(owner, &c.h[owner].facets()[f].normal, rot);
        let normal = |s: usize, k: usize| c.place_dir(s, &c.h[s].facets()[k].normal, rot);
        if forward {
            // Next sum normal: owner's next facet or the other's facet `h`
            // (negated), whichever comes first counterclockwise.
            let own = normal(owner, fnx);
            let theirs = Point::origin() - normal(o, h);
            if angle_cmp_from(&nf, &own, &theirs) != Ordering::Greater {
                SumFacet { owner, f: fnx, g, h, level }
            } else {
                SumFacet { owner: o, f: h, g: f, h: fnx, level }
            }
        } else {
            let own = normal(owner, fp);
            let theirs = Point::origin() - normal(o, g);
            if angle_cmp_from(&nf, &own, &theirs) != Ordering::Less {
                SumFacet { owner, f: fp, g, h, level }
            } else {
                SumFacet { owner: o, f: g, g: fp, h: f, level }
            }
        }
    }
}

impl Kds for PairLazy {
    fn certificates(&self) -> Vec<Certificate> {
        self.ctx.certs(&self.sf)
    }

    fn level(&self) -> usize {
        self.sf.level
    }

    fn handle(&mut self, fired: &Certificate, root: &Root, t: &Scalar) -> Handled {
        let SumFacet { owner, f, g, h, level } = self.sf;
        let o = 1 - owner;
        let c = self.ctx.clone();
        match fired.id {
            1 => {
                let (gp, _) = c.h[o].envelope_neighbors(g, level);
                self.finish(EventKind::Roll, Some(SumFacet { owner, f, g: gp, h: g, level }), t, root)
            }
            2 => {
                let (_, hn) = c.h[o].envelope_neighbors(h, level);
                self.finish(EventKind::Roll, Some(SumFacet { owner, f, g: h, h: hn, level }), t, root)
            }
            _ => {
                let rot = c.rel.rotation_at(t);
                let off = c.rel.offset_at(t);
                let (s, e) = c.h[owner].envelope_edge(f, level);
                let (s, e) = (c.place(owner, &s, &rot, &off), c.place(owner, &e, &rot, &off));
                let v = c.place(o, &facet_meet_in(&c.h[o], g, h), &rot, &off);
                let d = c.place_dir(owner, &c.h[owner].facets()[f].normal, &rot).perp();
                let tau = d.dot(&v);
                if tau < d.dot(&s) {
                    let cand = self.slide(false, &rot);
                    self.finish(EventKind::Push, Some(cand), t, root)
                } else if tau > d.dot(&e) {
                    let cand = self.slide(true, &rot);
                    self.finish(EventKind::Push, Some(cand), t, root)
                } else {
                    let max = c.max_level();
                    match c.certify(t, (level + 1).min(max), max) {
                        Some(sf) => {
                            self.sf = sf;
                            Handled { kind: EventKind::Stab, level_after: sf.level, feature: sf.f, steps: sf.level.saturating_sub(level).max(1), degenerate: false }
                        }
                        None => self.collision(root),
                    }
                }
            }
        }
    }
}
