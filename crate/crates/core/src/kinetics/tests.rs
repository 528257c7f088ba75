use super::*;
use crate::geometry::generate::regular_polygon;
use crate::geometry::{ConvexPolygon, Point};
use crate::hierarchy::HierarchyKind;
use crate::num::{self, Scalar};
use crate::poly::Poly;
use std::f64::consts::PI;

fn horizon(t1: i64) -> (Scalar, Scalar) {
    (num::zero(), num::int(t1))
}

/// `o(t) = (x0 + vx·t, y0 + vy·t)`, rotation parameter `u(t) = w·t`.
fn linear(x0: i64, vx: i64, y0: i64, vy: i64, w: Scalar, t1: i64) -> MotionFrame {
    let (a, b) = horizon(t1);
    let u = Poly::new(vec![num::zero(), w]);
    make_motion(Poly::from_i64(&[x0, vx]), Poly::from_i64(&[y0, vy]), u, a, b, DEFAULT_MAX_DEGREE).unwrap()
}

fn still(t1: i64) -> MotionFrame {
    let (a, b) = horizon(t1);
    MotionFrame::stationary(a, b)
}

fn square(r: i64) -> ConvexPolygon {
    ConvexPolygon::from_i64(&[(-r, -r), (r, -r), (r, r), (-r, r)]).unwrap()
}

fn cfg(structure: Structure, t1: i64) -> SimConfig {
    SimConfig { structure, t1: num::int(t1), oracle_samples: 512, ..Default::default() }
}

fn point_body(x: i64, y: i64, m: MotionFrame) -> Body {
    Body { shape: Shape::Point(Point::int(0, 0)), motion: shifted(m, x, y) }
}

fn shifted(mut m: MotionFrame, x: i64, y: i64) -> MotionFrame {
    m.ox = m.ox.add(&Poly::from_i64(&[x]));
    m.oy = m.oy.add(&Poly::from_i64(&[y]));
    m
}

fn obstacle(q: ConvexPolygon, t1: i64) -> Body {
    Body { shape: Shape::Polygon(q), motion: still(t1) }
}

/// First sign change of `p` after `t0` found by scanning a fine grid and
/// bisecting in f64.
fn scan_root(p: &Poly, t0: f64, t1: f64) -> Option<f64> {
    let n = 20_000;
    let f = |t: f64| p.eval_f64(t);
    let mut prev = t0;
    for i in 1..=n {
        let t = t0 + (t1 - t0) * i as f64 / n as f64;
        if f(t) <= 0.0 {
            let (mut lo, mut hi) = (prev, t);
            for _ in 0..80 {
                let m = 0.5 * (lo + hi);
                if f(m) > 0.0 {
                    lo = m
                } else {
                    hi = m
                }
            }
            return Some(hi);
        }
        prev = t;
    }
    None
}

#[test]
fn certificate_failure_times() {
    let c = Certificate::new(CertKind::StabLine, 0, Poly::from_i64(&[3, -1]));
    let r = next_certificate_failure(&c, &num::zero(), &num::int(10)).unwrap();
    assert_eq!(r.time(), num::int(3));

    let c = Certificate::new(CertKind::StabLine, 0, Poly::from_i64(&[1, 0, 1]));
    assert!(next_certificate_failure(&c, &num::zero(), &num::int(10)).is_none());

    let p = Poly::from_i64(&[-1, 1]).mul(&Poly::from_i64(&[-2, 1])).mul(&Poly::from_i64(&[-5, 1]));
    let c = Certificate::new(CertKind::StabLine, 0, p.clone());
    let r = next_certificate_failure(&c, &num::ratio(3, 2), &num::int(10)).unwrap();
    let scanned = scan_root(&p, 1.5, 10.0).unwrap();
    assert!((num::to_f64(&r.time()) - scanned).abs() < 1e-9);
    assert_eq!(r.time(), num::int(2));
}

#[test]
fn motion_classes() {
    let (a, b) = horizon(4);
    let m = |ox: &[i64], oy: &[i64], u: &[i64]| {
        make_motion(Poly::from_i64(ox), Poly::from_i64(oy), Poly::from_i64(u), a.clone(), b.clone(), DEFAULT_MAX_DEGREE).unwrap().class
    };
    assert_eq!(m(&[1], &[2], &[0]), MotionClass::Static);
    assert_eq!(m(&[0, 1], &[0, 2], &[0]), MotionClass::LinearTranslation);
    assert_eq!(m(&[0, 1], &[0, 0, 1], &[0]), MotionClass::ConvexTranslation);
    assert_eq!(m(&[0, 1], &[-8, 12, -6, 1], &[0]), MotionClass::GeneralTranslation);
    assert_eq!(m(&[0], &[0], &[0, 1]), MotionClass::Rigid);
    let err = make_motion(Poly::from_i64(&[0; 10].map(|_| 1)), Poly::zero(), Poly::zero(), a.clone(), b.clone(), 8);
    assert!(matches!(err, Err(MotionError::DegreeTooHigh { degree: 9, cap: 8 })));
    assert_eq!(make_motion(Poly::zero(), Poly::zero(), Poly::zero(), b.clone(), a.clone(), 8), Err(MotionError::EmptyHorizon));
}

#[test]
fn point_head_on_collides_at_exact_time() {
    let p = point_body(-10, 0, linear(0, 1, 0, 0, num::zero(), 20));
    for s in [Structure::Lazy, Structure::ActiveTriangle, Structure::Inflated] {
        let log = simulate(&p, &obstacle(square(1), 20), &cfg(s, 20)).unwrap();
        let last = log.events.last().unwrap();
        assert_eq!(last.kind, EventKind::Collision, "{s:?}");
        assert_eq!(last.time_exact, "9", "{s:?}");
        assert!(log.stats.oracle_agrees, "{s:?}: {:?}", log.stats.first_disagreement);
    }
}

#[test]
fn static_point_has_no_events() {
    let p = point_body(5, 7, still(10));
    let log = simulate(&p, &obstacle(square(1), 10), &cfg(Structure::Lazy, 10)).unwrap();
    assert!(log.events.is_empty());
    assert!(log.stats.oracle_agrees);
}

#[test]
fn point_inside_is_rejected() {
    let p = point_body(0, 0, still(10));
    assert_eq!(simulate(&p, &obstacle(square(1), 10), &cfg(Structure::Lazy, 10)).unwrap_err(), KineticsError::PointInsidePolygon);
}

#[test]
fn point_fly_by_lazy_and_active() {
    let q = regular_polygon(64, &num::int(1000));
    let depth = crate::hierarchy::build_compass(&q).depth();
    // Diagonal pass at distance 1500/√2 from the center.
    let p = point_body(-3000, -1500, linear(0, 1, 0, 1, num::zero(), 6000));
    for s in [Structure::Lazy, Structure::ActiveTriangle] {
        let log = simulate(&p, &obstacle(q.clone(), 6000), &cfg(s, 6000)).unwrap();
        assert!(log.stats.oracle_agrees, "{s:?}: {:?}", log.stats.first_disagreement);
        assert!(log.collision().is_none(), "{s:?}");
        assert!(!log.events.is_empty(), "{s:?}");
        assert!(log.events.iter().all(|e| e.level_after <= depth + 1), "{s:?}");
    }
}

#[test]
fn squares_approaching_collide() {
    let p = Body { shape: Shape::Polygon(square(1)), motion: linear(-10, 1, 0, 0, num::zero(), 20) };
    for s in [Structure::Lazy, Structure::Mixed] {
        let log = simulate(&p, &obstacle(square(1), 20), &cfg(s, 20)).unwrap();
        assert_eq!(log.collision().map(|e| e.time_exact.clone()), Some("8".to_string()), "{s:?}");
        assert!(log.stats.oracle_agrees, "{s:?}: {:?}", log.stats.first_disagreement);
    }
}

#[test]
fn fly_by_clears_the_obstacle() {
    let q = regular_polygon(32, &num::int(100));
    let p = Body { shape: Shape::Polygon(regular_polygon(16, &num::int(50))), motion: linear(-1000, 1, 200, 0, num::zero(), 2000) };
    for s in [Structure::Lazy, Structure::Mixed] {
        let log = simulate(&p, &obstacle(q.clone(), 2000), &cfg(s, 2000)).unwrap();
        assert!(log.collision().is_none(), "{s:?}");
        assert!(log.stats.oracle_agrees, "{s:?}: {:?}", log.stats.first_disagreement);
        // Flat edges face each other: the gap is 200 minus both apothems.
        let gap = 200.0 - 100.0 * (PI / 32.0).cos() - 50.0 * (PI / 16.0).cos();
        assert!((log.stats.min_separation - gap).abs() < 1e-3, "{} vs {gap}", log.stats.min_separation);
    }
}

#[test]
fn spinning_in_place_never_stabs() {
    let p = Body { shape: Shape::Polygon(square(1)), motion: shifted(linear(0, 0, 0, 0, num::ratio(1, 4), 8), 10, 0) };
    let log = simulate(&p, &obstacle(square(1), 8), &cfg(Structure::Lazy, 8)).unwrap();
    assert!(log.stats.oracle_agrees, "{:?}", log.stats.first_disagreement);
    assert!(log.count(EventKind::Roll) > 0);
    assert!(log.events.iter().all(|e| matches!(e.kind, EventKind::Roll | EventKind::Push)), "{:?}", log.counts);
}

#[test]
fn rigid_and_mixed_agree_with_oracle() {
    let q = regular_polygon(16, &num::int(30));
    let p = Body { shape: Shape::Polygon(regular_polygon(8, &num::int(20))), motion: linear(-200, 4, 5, 0, num::ratio(1, 20), 100) };
    for s in [Structure::Lazy, Structure::Mixed] {
        let log = simulate(&p, &obstacle(q.clone(), 100), &cfg(s, 100)).unwrap();
        assert!(log.stats.oracle_agrees, "{s:?}: {:?}", log.stats.first_disagreement);
        assert!(log.collision().is_some(), "{s:?}");
    }
}

#[test]
fn skipped_event_is_caught() {
    let q = regular_polygon(32, &num::int(100));
    let p = point_body(-1000, -850, linear(0, 1, 0, 1, num::zero(), 2000));
    let mut c = cfg(Structure::Lazy, 2000);
    let clean = simulate(&p, &obstacle(q.clone(), 2000), &c).unwrap();
    assert!(clean.stats.oracle_agrees);
    c.fault = Some(Fault::SkipEvent);
    let bad = simulate(&p, &obstacle(q, 2000), &c).unwrap();
    assert!(!bad.stats.oracle_agrees);
}

#[test]
fn runs_are_deterministic() {
    let q = regular_polygon(24, &num::int(40));
    let p = Body { shape: Shape::Polygon(regular_polygon(12, &num::int(15))), motion: linear(-300, 5, 20, 0, num::ratio(1, 30), 120) };
    for s in [Structure::Lazy, Structure::Mixed] {
        let a = simulate(&p, &obstacle(q.clone(), 120), &cfg(s, 120)).unwrap();
        let b = simulate(&p, &obstacle(q.clone(), 120), &cfg(s, 120)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}

#[test]
fn dudley_hierarchy_also_works() {
    let q = regular_polygon(32, &num::int(100));
    let p = point_body(-1000, 0, linear(0, 1, 30, 0, num::zero(), 2000));
    let mut c = cfg(Structure::Lazy, 2000);
    c.hierarchy = HierarchyKind::Dudley;
    let log = simulate(&p, &obstacle(q, 2000), &c).unwrap();
    assert!(log.stats.oracle_agrees, "{:?}", log.stats.first_disagreement);
    assert!(log.collision().is_some());
}
