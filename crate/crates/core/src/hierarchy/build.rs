use super::{Boomerang, BoomerangHierarchy, HierarchyKind, TriangleNode, NEVER};
use crate::geometry::generate::circle_point;
use crate::geometry::ops::{bounding_rectangle, bounds, diameter2};
use crate::geometry::point::{angle_cmp, closest_on_segment, line_intersection, point_segment_dist2, same_direction};
use crate::geometry::{ConvexPolygon, Facet, FacetKind, Point};
use crate::num::{self, Scalar};
use std::cmp::Ordering;
use std::collections::VecDeque;
use std::f64::consts::PI;

const DIRECTION_BITS: u32 = 20;

/// Smallest power of two ≥ max(4, n).
pub fn compass_count(n: usize) -> usize {
    n.max(4).next_power_of_two()
}

/// The `k` compass directions as primitive integer vectors, counterclockwise
/// from east. Multiples of 45° are exact; the rest are dyadic approximations
/// with the full symmetry of the square.
pub fn compass_directions(k: usize) -> Vec<Point> {
    assert!(k >= 4 && k.is_power_of_two());
    let eighth = k / 8;
    let mut quadrant: Vec<Point> = Vec::with_capacity(k / 4);
    if k == 4 {
        quadrant.push(Point::int(1, 0));
    } else {
        let scale = num_bigint::BigInt::from(1u64 << DIRECTION_BITS);
        let mut first: Vec<Point> = Vec::with_capacity(eighth);
        for j in 0..eighth {
            let theta = 2.0 * PI * j as f64 / k as f64;
            let t = num::from_f64_dyadic(theta.tan(), DIRECTION_BITS);
            let (x, y) = num::primitive_direction(&Scalar::from_integer(scale.clone()), &(t * Scalar::from_integer(scale.clone())));
            first.push(Point::new(x, y));
        }
        quadrant.extend(first.iter().cloned());
        quadrant.push(Point::int(1, 1));
        quadrant.extend(first.iter().skip(1).rev().map(|p| Point::new(p.y.clone(), p.x.clone())));
    }
    let mut out = Vec::with_capacity(k);
    for q in 0..4 {
        for p in &quadrant {
            let mut v = p.clone();
            for _ in 0..q {
                v = v.perp();
            }
            out.push(v);
        }
    }
    out
}

/// Adds zero-length edges with the given outward directions, each at the
/// vertex whose normal cone contains it. Directions that coincide with a
/// real edge normal are skipped.
pub(crate) fn augment_with_directions(p: &mut ConvexPolygon, dirs: &[Point]) {
    let n = p.len();
    if n == 1 {
        p.add_support_directions(0, dirs).expect("a point supports every direction");
        return;
    }
    // Edges in angular order of their normals.
    let normals: Vec<Point> = (0..n).map(|i| p.edge_normal(i).unwrap()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| angle_cmp(&normals[i], &normals[j]));
    let mut per_vertex: Vec<Vec<Point>> = vec![Vec::new(); n];
    for d in dirs {
        // First edge whose normal is at or after d.
        let pos = order.partition_point(|&i| angle_cmp(&normals[i], d) == Ordering::Less);
        let e = order[pos % n];
        if same_direction(&normals[e], d) {
            continue;
        }
        per_vertex[e].push(d.clone());
    }
    for (v, ds) in per_vertex.iter().enumerate() {
        if !ds.is_empty() {
            p.add_support_directions(v, ds).expect("direction lies in the normal cone");
        }
    }
}

fn axis_directions() -> [Point; 4] {
    [Point::int(1, 0), Point::int(0, 1), Point::int(-1, 0), Point::int(0, -1)]
}

pub fn build_compass(p: &ConvexPolygon) -> BoomerangHierarchy {
    let n = p.len();
    let k = compass_count(n);
    let dirs = compass_directions(k);
    let mut aug = p.clone();
    augment_with_directions(&mut aug, &dirs);
    let compass_levels = (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize; // ⌈log₂ n⌉
    let mut h = Skeleton::new(HierarchyKind::Compass, p, aug);
    let compass_index: Vec<Option<usize>> =
        h.facets.iter().map(|f| dirs.iter().position(|d| d == &f.normal)).collect();
    h.grow(|facets, a, b, level| {
        if level < compass_levels {
            if let (Some(ja), Some(jb)) = (compass_index[a], compass_index[b]) {
                let gap = (jb + k - ja) % k;
                if gap >= 2 {
                    let jc = (ja + gap / 2) % k;
                    let c = compass_index.iter().position(|x| *x == Some(jc)).expect("compass facet");
                    return c;
                }
            }
        }
        median_facet(facets, a, b, level)
    });
    h.finish(k)
}

pub fn build_dudley(p: &ConvexPolygon) -> BoomerangHierarchy {
    let n = p.len();
    let mut aug = p.clone();
    if n >= 2 {
        let (lo, hi) = bounds(p);
        let center = lo.midpoint(&hi);
        let radius = num::int(2) * num::sqrt_upper(&diameter2(p), 30);
        let mut on_edge: Vec<Vec<Point>> = vec![Vec::new(); n];
        let mut at_vertex: Vec<Vec<Point>> = vec![Vec::new(); n];
        for j in 0..n {
            let x = &center + &circle_point(2.0 * PI * j as f64 / n as f64, &radius);
            let (edge, q) = nearest_boundary_point(p, &x);
            let verts = p.vertices();
            let (a, b) = (&verts[edge], &verts[(edge + 1) % n]);
            if &q == a {
                at_vertex[edge].push(&x - &q);
            } else if &q == b {
                at_vertex[(edge + 1) % n].push(&x - &q);
            } else if !on_edge[edge].contains(&q) {
                on_edge[edge].push(q);
            }
        }
        for (v, ds) in at_vertex.iter().enumerate() {
            let ds: Vec<Point> = ds
                .iter()
                .filter(|d| {
                    // Normals on the cone boundary duplicate a real edge.
                    let before = p.edge_normal((v + n - 1) % n).unwrap();
                    let after = p.edge_normal(v).unwrap();
                    let (x, y) = num::primitive_direction(&d.x, &d.y);
                    let d = Point::new(x, y);
                    !same_direction(&d, &before) && !same_direction(&d, &after)
                })
                .cloned()
                .collect();
            if !ds.is_empty() {
                aug.add_support_directions(v, &ds).expect("nearest-point normal lies in the cone");
            }
        }
        augment_with_directions(&mut aug, &axis_directions());
        // Degenerate vertices, inserted from the last edge backwards so
        // earlier indices stay valid.
        for e in (0..n).rev() {
            let a = p.vertices()[e].clone();
            let mut pts = on_edge[e].clone();
            pts.sort_by_key(|u| u.dist2(&a));
            for (k, q) in pts.into_iter().enumerate() {
                aug.insert_degenerate_vertex(e + k, q);
            }
        }
    } else {
        augment_with_directions(&mut aug, &axis_directions());
    }
    let mut h = Skeleton::new(HierarchyKind::Dudley, p, aug);
    h.grow(median_facet);
    h.finish(n)
}

/// Nearest point of the boundary of `p` to `x` and the edge realizing it;
/// ties go to the lowest edge index.
pub fn nearest_boundary_point(p: &ConvexPolygon, x: &Point) -> (usize, Point) {
    let v = p.vertices();
    let n = v.len();
    // Floating-point screen, then exact comparison among near-ties.
    let vf: Vec<[f64; 2]> = v.iter().map(|q| q.to_f64()).collect();
    let xf = x.to_f64();
    let approx: Vec<f64> = (0..n).map(|i| seg_dist2_f64(xf, vf[i], vf[(i + 1) % n])).collect();
    let lo = approx.iter().cloned().fold(f64::INFINITY, f64::min);
    let slack = lo * 1e-6 + 1e-9 * (xf[0].abs() + xf[1].abs() + 1.0).powi(2);
    let mut best: Option<(Scalar, usize)> = None;
    for i in 0..n {
        if approx[i] > lo + slack {
            continue;
        }
        let d = point_segment_dist2(x, &v[i], &v[(i + 1) % n]);
        if best.as_ref().is_none_or(|(bd, _)| &d < bd) {
            best = Some((d, i));
        }
    }
    let (_, i) = best.expect("nonempty polygon");
    (i, closest_on_segment(x, &v[i], &v[(i + 1) % n]))
}

fn seg_dist2_f64(x: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let l = dx * dx + dy * dy;
    let t = if l > 0.0 { (((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / l).clamp(0.0, 1.0) } else { 0.0 };
    let (px, py) = (a[0] + t * dx - x[0], a[1] + t * dy - x[1]);
    px * px + py * py
}

/// Facet holding the median piece of the chain strictly between `a` and
/// `b`; zero-length edges count as one piece, lower median on ties.
pub(crate) fn median_facet(facets: &[Facet], a: usize, b: usize, _level: usize) -> usize {
    let m = facets.len();
    let chain: Vec<usize> = chain_between(m, a, b);
    let total: usize = chain.iter().map(|&f| facets[f].pieces).sum();
    let target = (total - 1) / 2;
    let mut acc = 0;
    for &f in &chain {
        acc += facets[f].pieces;
        if acc > target {
            return f;
        }
    }
    unreachable!("nonempty chain")
}

pub(crate) fn chain_between(m: usize, a: usize, b: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut f = (a + 1) % m;
    while f != b {
        out.push(f);
        f = (f + 1) % m;
    }
    out
}

/// Intersection of the supporting lines of two facets; adjacent facets meet
/// at their shared point.
pub(crate) fn facet_meet(facets: &[Facet], a: usize, b: usize) -> Point {
    let m = facets.len();
    if (a + 1) % m == b {
        return facets[a].end.clone();
    }
    let (fa, fb) = (&facets[a], &facets[b]);
    line_intersection(&fa.normal, &fa.offset, &fb.normal, &fb.offset).expect("consecutive facets are not parallel")
}

fn chain_height2(facets: &[Facet], a: usize, b: usize, apex: &Point) -> Scalar {
    let m = facets.len();
    let mut best: Option<Scalar> = None;
    let mut consider = |d: Scalar| {
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    };
    consider(apex.dist2(&facets[a].end));
    for f in chain_between(m, a, b) {
        let fc = &facets[f];
        if fc.kind == FacetKind::Edge {
            consider(point_segment_dist2(apex, &fc.start, &fc.end));
        }
    }
    best.unwrap()
}

struct Skeleton {
    h: BoomerangHierarchy,
    facets: Vec<Facet>,
}

impl Skeleton {
    fn new(kind: HierarchyKind, original: &ConvexPolygon, aug: ConvexPolygon) -> Self {
        let mut facets = aug.facets();
        if facets.is_empty() {
            // A bare point: the four axis directions were added, so this
            // only happens for callers that bypass augmentation.
            panic!("augmented polygon has no facets");
        }
        let e = facets.iter().position(|f| f.normal == Point::int(1, 0)).expect("east facet");
        facets.rotate_left(e);
        let find = |d: Point| facets.iter().position(|f| f.normal == d).expect("axis facet");
        let axis = [find(Point::int(1, 0)), find(Point::int(0, 1)), find(Point::int(-1, 0)), find(Point::int(0, -1))];
        let m = facets.len();
        let h = BoomerangHierarchy {
            kind,
            original: original.clone(),
            base: aug,
            rectangle: bounding_rectangle(original),
            facets: facets.clone(),
            axis,
            intro: vec![NEVER; m],
            cut_by: vec![None; m],
            boomerangs: Vec::new(),
            triangles: Vec::new(),
            roots: Vec::new(),
            depth: 0,
            compass_k: 0,
        };
        Skeleton { h, facets }
    }

    fn grow(&mut self, mut choose: impl FnMut(&[Facet], usize, usize, usize) -> usize) {
        let facets = &self.facets;
        let h = &mut self.h;
        for &f in &h.axis {
            h.intro[f] = 0;
        }
        let mut queue: VecDeque<(usize, usize, usize, Option<usize>)> = VecDeque::new();
        for r in 0..4 {
            queue.push_back((h.axis[r], h.axis[(r + 1) % 4], 0, None));
        }
        while let Some((a, b, level, parent)) = queue.pop_front() {
            let apex = facet_meet(facets, a, b);
            let id = h.boomerangs.len();
            let empty = facets[a].end == facets[b].start;
            let height2 = if empty { num::zero() } else { chain_height2(facets, a, b, &apex) };
            h.boomerangs.push(Boomerang {
                id,
                a,
                b,
                level,
                apex: apex.clone(),
                height2,
                parent,
                triangle: None,
            });
            if parent.is_none() {
                h.roots.push(id);
            }
            if empty {
                continue;
            }
            let c = choose(facets, a, b, level);
            let x = facet_meet(facets, a, c);
            let y = facet_meet(facets, c, b);
            let t = h.triangles.len();
            h.triangles.push(TriangleNode {
                id: t,
                level,
                boomerang: id,
                a,
                b,
                cut: c,
                apex,
                x,
                y,
                children: [usize::MAX; 2],
            });
            h.boomerangs[id].triangle = Some(t);
            h.intro[c] = level + 1;
            h.cut_by[c] = Some(t);
            h.depth = h.depth.max(level + 1);
            queue.push_back((a, c, level + 1, Some(t)));
            queue.push_back((c, b, level + 1, Some(t)));
        }
        // Children links (boomerang ids) for each triangle.
        for bmr in &h.boomerangs {
            if let Some(t) = bmr.parent {
                let tri = &mut h.triangles[t];
                if tri.children[0] == usize::MAX {
                    tri.children[0] = bmr.id;
                } else {
                    tri.children[1] = bmr.id;
                }
            }
        }
    }

    fn finish(mut self, k: usize) -> BoomerangHierarchy {
        self.h.compass_k = k;
        self.h
    }
}
