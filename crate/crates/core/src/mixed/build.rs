use super::{idx, CellKind, Insertion, Leg, MixedCell, MixedError, MixedHierarchy, Side};
use crate::geometry::point::angle_cmp;
use crate::geometry::{minkowski_sum, FacetKind, Point};
use crate::hierarchy::{BoomerangHierarchy, NEVER};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Builds the mixed hierarchy of `hp` and `hq` at their current positions.
/// Corner cuts are interleaved by level; within a level all cuts of `P` come
/// before those of `Q`. Slope ties between the polygons order `P` first.
pub fn build_mixed(hp: &BoomerangHierarchy, hq: &BoomerangHierarchy) -> Result<MixedHierarchy, MixedError> {
    if hp.kind != hq.kind {
        return Err(MixedError::IncompatibleHierarchies);
    }
    let hs = [hp, hq];
    // Global slope order of all facets.
    let mut all: Vec<(usize, usize)> = Vec::new();
    for (s, h) in hs.iter().enumerate() {
        all.extend((0..h.facets().len()).map(|f| (s, f)));
    }
    all.sort_by(|&(s1, f1), &(s2, f2)| angle_cmp(&hs[s1].facets()[f1].normal, &hs[s2].facets()[f2].normal).then(s1.cmp(&s2)));
    let total = all.len();
    let mut rank = [vec![0; hp.facets().len()], vec![0; hq.facets().len()]];
    for (r, &(s, f)) in all.iter().enumerate() {
        rank[s][f] = r;
    }
    let mut env: [BTreeMap<usize, usize>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for s in 0..2 {
        for f in 0..hs[s].facets().len() {
            if hs[s].facet_level(f) == 0 {
                env[s].insert(rank[s][f], f);
            }
        }
    }
    let mut m = MixedHierarchy {
        body: [hp.clone(), hq.clone()],
        posed: [hp.clone(), hq.clone()],
        pose: [Point::int(1, 0), Point::int(1, 0)],
        cells: Vec::new(),
        insertions: Vec::new(),
        outer: minkowski_sum(hp.rectangle(), hq.rectangle()),
        inner: minkowski_sum(hp.original(), hq.original()),
    };
    let depth = hp.depth().max(hq.depth());
    for level in 0..depth {
        for side in [Side::P, Side::Q] {
            let s = idx(side);
            let o = 1 - s;
            let other_level = if side == Side::P { level } else { level + 1 };
            for t in hs[s].triangles().iter().filter(|t| t.level == level) {
                let (ra, rb, re) = (rank[s][t.a], rank[s][t.b], rank[s][t.cut]);
                let off = |r: usize| (r + total - ra) % total;
                // Other envelope in slope order starting just after `a`.
                let ring: Vec<usize> = env[o].range(ra + 1..).chain(env[o].range(..ra)).map(|(_, &f)| f).collect();
                let k = ring.iter().take_while(|&&f| off(rank[o][f]) < off(rb)).count();
                let pred = *ring.last().unwrap();
                let succ = if k < ring.len() { ring[k] } else { ring[0] };
                let chain = &ring[..k];
                let split = chain.iter().filter(|&&f| off(rank[o][f]) < off(re)).count();
                let mut seq = vec![pred];
                seq.extend_from_slice(chain);
                seq.push(succ);
                let ho = hs[o];
                let other_angles: Vec<f64> = env[o]
                    .values()
                    .filter(|&&f| ho.facets()[f].kind == FacetKind::Edge)
                    .map(|&f| normal_angle(&ho.facets()[f].normal))
                    .collect();
                m.insertions.push(Insertion {
                    side,
                    node: t.id,
                    level,
                    chain: k,
                    split,
                    other_real: other_angles.len(),
                    angle: normal_angle(&hs[s].facets()[t.cut].normal),
                    other_angles,
                });
                let mut push = |kind: CellKind| {
                    let mut c = MixedCell { id: m.cells.len(), kind, level, other_level, vertices: Vec::new(), neighbors: Vec::new(), alive: true, bbox: [0.0; 4] };
                    c.vertices = m.realize(&c);
                    if !c.area2().is_zero() {
                        m.cells.push(c);
                    }
                };
                push(CellKind::Triangle { origin: side, node: t.id, at: [seq[split], seq[split + 1]] });
                for (i, &g) in chain.iter().enumerate() {
                    let leg = if i < split { Leg::X } else { Leg::Y };
                    push(CellKind::Parallelogram { origin: side, node: t.id, edge: g, leg });
                }
                env[s].insert(re, t.cut);
            }
        }
    }
    debug_assert!(env.iter().zip(hs).all(|(e, h)| e.len() == (0..h.facets().len()).filter(|&f| h.facet_level(f) != NEVER).count()));
    m.relink();
    Ok(m)
}

/// [`build_mixed`] for the polygons turned by the rational unit vectors
/// `rot_p`, `rot_q`, remembering the unposed hierarchies.
pub fn build_mixed_at(hp: &BoomerangHierarchy, hq: &BoomerangHierarchy, rot_p: &Point, rot_q: &Point) -> Result<MixedHierarchy, MixedError> {
    let mut m = build_mixed(&hp.rotated(rot_p), &hq.rotated(rot_q))?;
    m.body = [hp.clone(), hq.clone()];
    m.pose = [rot_p.clone(), rot_q.clone()];
    Ok(m)
}

pub(crate) fn normal_angle(n: &Point) -> f64 {
    let [x, y] = n.to_f64();
    let a = y.atan2(x);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}
