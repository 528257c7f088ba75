use crate::num::{self, Scalar};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A point or direction vector with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(num::int(x), num::int(y))
    }

    pub fn ratio(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(num::ratio(xn, xd), num::ratio(yn, yd))
    }

    pub fn origin() -> Self {
        Point::new(Scalar::zero(), Scalar::zero())
    }

    pub fn dot(&self, o: &Point) -> Scalar {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Scalar {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, s: &Scalar) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [num::to_f64(&self.x), num::to_f64(&self.y)]
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        let h = num::ratio(1, 2);
        Point::new((&self.x + &o.x) * &h, (&self.y + &o.y) * &h)
    }

    /// Image under the rotation `(c, s)` (a unit vector: `c² + s² = 1`).
    pub fn rotate(&self, rot: &Point) -> Point {
        Point::new(&rot.x * &self.x - &rot.y * &self.y, &rot.y * &self.x + &rot.x * &self.y)
    }

    pub fn dist2(&self, o: &Point) -> Scalar {
        (self - o).norm2()
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

/// Sign of the orientation of the triple `(a, b, c)`; `Greater` is a left
/// (counterclockwise) turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    num::sign(&(b - a).cross(&(c - a)))
}

fn half(v: &Point) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Total order of nonzero directions by polar angle in `[0, 2π)`.
pub fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| num::sign(&v.cross(u)))
}

/// Order of `u` and `v` by counterclockwise angle measured from `base`;
/// `base` itself sorts first.
pub fn angle_cmp_from(base: &Point, u: &Point, v: &Point) -> Ordering {
    let ru = rel_key(base, u);
    let rv = rel_key(base, v);
    ru.0.cmp(&rv.0).then_with(|| {
        if ru.0 == 0 {
            Ordering::Equal
        } else {
            num::sign(&v.cross(u))
        }
    })
}

// (bucket, ..): 0 = same direction as base, 1 = (0, π), 2 = π, 3 = (π, 2π).
fn rel_key(base: &Point, v: &Point) -> (u8,) {
    let c = base.cross(v);
    if c.is_zero() {
        if base.dot(v).is_positive() {
            (0,)
        } else {
            (2,)
        }
    } else if c.is_positive() {
        (1,)
    } else {
        (3,)
    }
}

/// True when `v` lies strictly inside the counterclockwise angular interval
/// from `a` to `b` (exclusive at both ends). When `a` and `b` coincide the
/// interval is the full turn minus `a`.
pub fn strictly_between(a: &Point, v: &Point, b: &Point) -> bool {
    if angle_cmp_from(a, v, a) == Ordering::Equal {
        return false;
    }
    if angle_cmp_from(a, b, a) == Ordering::Equal {
        return true;
    }
    angle_cmp_from(a, v, b) == Ordering::Less
}

/// Same direction (positively parallel).
pub fn same_direction(u: &Point, v: &Point) -> bool {
    u.cross(v).is_zero() && u.dot(v).is_positive()
}

/// Intersection of the lines `n1·x = o1` and `n2·x = o2`. `None` when parallel.
pub fn line_intersection(n1: &Point, o1: &Scalar, n2: &Point, o2: &Scalar) -> Option<Point> {
    let det = n1.cross(n2);
    if det.is_zero() {
        return None;
    }
    let x = (o1 * &n2.y - o2 * &n1.y) / &det;
    let y = (&n1.x * o2 - &n2.x * o1) / &det;
    Some(Point::new(x, y))
}

/// Squared distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_dist2(p: &Point, a: &Point, b: &Point) -> Scalar {
    let d = b - a;
    let l2 = d.norm2();
    if l2.is_zero() {
        return p.dist2(a);
    }
    let t = (p - a).dot(&d);
    if !t.is_positive() {
        return p.dist2(a);
    }
    if t >= l2 {
        return p.dist2(b);
    }
    // |ap|^2 - (ap·d)^2/|d|^2
    let ap2 = (p - a).norm2();
    ap2 - &t * &t / l2
}

/// Closest point of the closed segment `[a, b]` to `p`.
pub fn closest_on_segment(p: &Point, a: &Point, b: &Point) -> Point {
    let d = b - a;
    let l2 = d.norm2();
    if l2.is_zero() {
        return a.clone();
    }
    let t = (p - a).dot(&d);
    if !t.is_positive() {
        return a.clone();
    }
    if t >= l2 {
        return b.clone();
    }
    a + &d.scale(&(t / l2))
}

/// Something whose position can be tested against a linear form. A plain
/// [`Point`] answers directly; kinetic points answer for the instant just
/// after an event.
pub trait PointProbe {
    /// Sign of `a·p - b`.
    fn side(&self, a: &Point, b: &Scalar) -> Ordering;

    /// Orientation of `(u, v, p)`.
    fn orient_from(&self, u: &Point, v: &Point) -> Ordering {
        let d = v - u;
        // cross(d, p - u) = (-d.y, d.x)·p - cross(d, u)
        let a = Point::new(-&d.y, d.x.clone());
        self.side(&a, &d.cross(u))
    }
}

impl PointProbe for Point {
    fn side(&self, a: &Point, b: &Scalar) -> Ordering {
        num::sign(&(a.dot(self) - b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_order_is_polar() {
        let dirs = [
            Point::int(1, 0),
            Point::int(1, 1),
            Point::int(0, 1),
            Point::int(-1, 1),
            Point::int(-1, 0),
            Point::int(-1, -1),
            Point::int(0, -1),
            Point::int(1, -1),
        ];
        for i in 0..dirs.len() {
            for j in 0..dirs.len() {
                assert_eq!(angle_cmp(&dirs[i], &dirs[j]), i.cmp(&j), "{i} {j}");
            }
        }
        assert!(strictly_between(&dirs[7], &dirs[0], &dirs[1]));
        assert!(!strictly_between(&dirs[0], &dirs[0], &dirs[1]));
        assert!(strictly_between(&dirs[6], &dirs[1], &dirs[2]));
        assert!(!strictly_between(&dirs[6], &dirs[3], &dirs[2]));
    }

    #[test]
    fn segment_distance() {
        let a = Point::int(0, 0);
        let b = Point::int(2, 0);
        assert_eq!(point_segment_dist2(&Point::int(1, 3), &a, &b), num::int(9));
        assert_eq!(point_segment_dist2(&Point::int(3, 1), &a, &b), num::int(2));
        assert_eq!(point_segment_dist2(&Point::int(-1, 0), &a, &b), num::int(1));
    }

    #[test]
    fn lines_meet() {
        let p = line_intersection(&Point::int(1, 0), &num::int(2), &Point::int(1, 1), &num::int(5)).unwrap();
        assert_eq!(p, Point::int(2, 3));
        assert!(line_intersection(&Point::int(1, 0), &num::int(2), &Point::int(2, 0), &num::int(5)).is_none());
    }

    #[test]
    fn probe_orientation_matches_orient() {
        let u = Point::int(0, 0);
        let v = Point::int(4, 1);
        for p in [Point::int(1, 5), Point::int(2, -3), Point::int(8, 2)] {
            assert_eq!(p.orient_from(&u, &v), orient(&u, &v, &p));
        }
    }
}
