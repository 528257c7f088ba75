use crate::geometry::Point;
use crate::num::{self, Scalar};
use crate::poly::{keeps_sign_on, Poly};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

/// Default cap on the degree of motion polynomials.
pub const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotionError {
    #[error("motion polynomial of degree {degree} exceeds the cap {cap}")]
    DegreeTooHigh { degree: usize, cap: usize },
    #[error("empty time horizon")]
    EmptyHorizon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MotionClass {
    Static,
    LinearTranslation,
    /// The path turns one way only (`o' × o''` keeps its sign).
    ConvexTranslation,
    GeneralTranslation,
    Rigid,
}

/// A rigid motion: body point `X` sits at `o(t) + R(u(t))·X` where
/// `R(u) = [[1-u², -2u], [2u, 1-u²]] / (1+u²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionFrame {
    pub ox: Poly,
    pub oy: Poly,
    pub u: Poly,
    pub t0: Scalar,
    pub t1: Scalar,
    pub class: MotionClass,
}

pub fn make_motion(ox: Poly, oy: Poly, u: Poly, t0: Scalar, t1: Scalar, max_degree: usize) -> Result<MotionFrame, MotionError> {
    if t1 <= t0 {
        return Err(MotionError::EmptyHorizon);
    }
    for p in [&ox, &oy, &u] {
        let d = p.degree().unwrap_or(0);
        if d > max_degree {
            return Err(MotionError::DegreeTooHigh { degree: d, cap: max_degree });
        }
    }
    let class = classify(&ox, &oy, &u, &t0, &t1);
    Ok(MotionFrame { ox, oy, u, t0, t1, class })
}

fn classify(ox: &Poly, oy: &Poly, u: &Poly, t0: &Scalar, t1: &Scalar) -> MotionClass {
    if !u.is_constant() {
        return MotionClass::Rigid;
    }
    if ox.is_constant() && oy.is_constant() {
        return MotionClass::Static;
    }
    let (dx, dy) = (ox.derivative(), oy.derivative());
    let turn = dx.mul(&oy.derivative().derivative()).sub(&dy.mul(&ox.derivative().derivative()));
    if turn.is_zero() {
        // Straight path; it is linear unless the speed varies, which does
        // not change the path's shape.
        return MotionClass::LinearTranslation;
    }
    if keeps_sign_on(&turn, t0, t1, Ordering::Greater) || keeps_sign_on(&turn, t0, t1, Ordering::Less) {
        MotionClass::ConvexTranslation
    } else {
        MotionClass::GeneralTranslation
    }
}

impl MotionFrame {
    pub fn stationary(t0: Scalar, t1: Scalar) -> Self {
        MotionFrame { ox: Poly::zero(), oy: Poly::zero(), u: Poly::zero(), t0, t1, class: MotionClass::Static }
    }

    /// Largest degree among the motion polynomials.
    pub fn degree(&self) -> usize {
        [&self.ox, &self.oy, &self.u].iter().map(|p| p.degree().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn is_rotating(&self) -> bool {
        !self.u.is_constant()
    }

    /// `(1-u², 2u, 1+u²)`.
    pub fn rotation_polys(&self) -> (Poly, Poly, Poly) {
        let u2 = self.u.mul(&self.u);
        let one = Poly::constant(num::one());
        (one.sub(&u2), self.u.scale(&num::int(2)), one.add(&u2))
    }

    /// Unit rotation vector at `t`.
    pub fn rotation_at(&self, t: &Scalar) -> Point {
        let u = self.u.eval(t);
        let u2 = &u * &u;
        let w = num::one() + &u2;
        Point::new((num::one() - &u2) / &w, &u * num::int(2) / &w)
    }

    pub fn offset_at(&self, t: &Scalar) -> Point {
        Point::new(self.ox.eval(t), self.oy.eval(t))
    }

    /// World position of body point `x` at `t`.
    pub fn position(&self, x: &Point, t: &Scalar) -> Point {
        &self.offset_at(t) + &x.rotate(&self.rotation_at(t))
    }

    pub fn rotation_at_f64(&self, t: f64) -> [f64; 2] {
        let u = self.u.eval_f64(t);
        let w = 1.0 + u * u;
        [(1.0 - u * u) / w, 2.0 * u / w]
    }

    pub fn position_f64(&self, x: [f64; 2], t: f64) -> [f64; 2] {
        let [c, s] = self.rotation_at_f64(t);
        [self.ox.eval_f64(t) + c * x[0] - s * x[1], self.oy.eval_f64(t) + s * x[0] + c * x[1]]
    }
}

/// A vector-valued rational function `(x(t), y(t)) / W(t)` over the common
/// denominator of a [`Relative`] frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVec {
    pub x: Poly,
    pub y: Poly,
}

impl KVec {
    pub fn constant(p: &Point) -> Self {
        KVec { x: Poly::constant(p.x.clone()), y: Poly::constant(p.y.clone()) }
    }

    pub fn add(&self, o: &KVec) -> KVec {
        KVec { x: self.x.add(&o.x), y: self.y.add(&o.y) }
    }

    pub fn sub(&self, o: &KVec) -> KVec {
        KVec { x: self.x.sub(&o.x), y: self.y.sub(&o.y) }
    }

    pub fn neg(&self) -> KVec {
        KVec { x: self.x.neg(), y: self.y.neg() }
    }

    pub fn dot(&self, o: &KVec) -> Poly {
        self.x.mul(&o.x).add(&self.y.mul(&o.y))
    }

    pub fn cross(&self, o: &KVec) -> Poly {
        self.x.mul(&o.y).sub(&self.y.mul(&o.x))
    }

    /// Numerator values at `t` (not divided by the denominator).
    pub fn eval_raw(&self, t: &Scalar) -> Point {
        Point::new(self.x.eval(t), self.y.eval(t))
    }
}

/// The moving body `P` seen from the frame of the obstacle `Q`. Positions of
/// `P`'s body points are `KVec`s over the denominator `w = W_Q·W_P > 0`;
/// `Q`'s points are constants scaled by `w`.
#[derive(Clone, Debug)]
pub struct Relative {
    pub w: Poly,
    /// Rotation numerator `[[a, -b], [b, a]]` taking `P`'s body frame into
    /// `Q`'s.
    pub a: Poly,
    pub b: Poly,
    pub shift: KVec,
    pub rigid: bool,
}

impl Relative {
    pub fn new(p: &MotionFrame, q: &MotionFrame) -> Self {
        let (cp, sp, wp) = p.rotation_polys();
        let (cq, sq, wq) = q.rotation_polys();
        let a = cq.mul(&cp).add(&sq.mul(&sp));
        let b = cq.mul(&sp).sub(&sq.mul(&cp));
        let dx = p.ox.sub(&q.ox);
        let dy = p.oy.sub(&q.oy);
        let shift = KVec { x: wp.mul(&cq.mul(&dx).add(&sq.mul(&dy))), y: wp.mul(&cq.mul(&dy).sub(&sq.mul(&dx))) };
        Relative { w: wq.mul(&wp), a, b, shift, rigid: p.is_rotating() || q.is_rotating() }
    }

    /// Rotation-only part applied to a body vector of `P`.
    pub fn moving_dir(&self, d: &Point) -> KVec {
        KVec { x: self.a.scale(&d.x).sub(&self.b.scale(&d.y)), y: self.b.scale(&d.x).add(&self.a.scale(&d.y)) }
    }

    pub fn moving_point(&self, x: &Point) -> KVec {
        self.shift.add(&self.moving_dir(x))
    }

    pub fn fixed_point(&self, q: &Point) -> KVec {
        KVec { x: self.w.scale(&q.x), y: self.w.scale(&q.y) }
    }

    pub fn fixed_dir(&self, d: &Point) -> KVec {
        KVec::constant(d)
    }

    /// Relative rotation (unit vector) at `t`.
    pub fn rotation_at(&self, t: &Scalar) -> Point {
        let w = self.w.eval(t);
        Point::new(self.a.eval(t) / &w, self.b.eval(t) / &w)
    }

    /// Position in `Q`'s frame of `P`'s body origin at `t`.
    pub fn offset_at(&self, t: &Scalar) -> Point {
        let w = self.w.eval(t);
        let s = self.shift.eval_raw(t);
        Point::new(s.x / &w, s.y / &w)
    }

    /// `Q`-frame position of `P`'s body point `x` at `t`.
    pub fn place(&self, x: &Point, t: &Scalar) -> Point {
        &self.offset_at(t) + &x.rotate(&self.rotation_at(t))
    }

    pub fn place_f64(&self, x: [f64; 2], t: f64) -> [f64; 2] {
        let w = self.w.eval_f64(t);
        let (a, b) = (self.a.eval_f64(t) / w, self.b.eval_f64(t) / w);
        [self.shift.x.eval_f64(t) / w + a * x[0] - b * x[1], self.shift.y.eval_f64(t) / w + b * x[0] + a * x[1]]
    }
}
