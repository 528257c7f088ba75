//! Univariate polynomials over the rationals, with exact real-root
//! isolation. Certificates reduce to sign conditions on these.

use crate::num::{self, Scalar};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Coefficients from the constant term up; never has a zero leading
/// coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}·t"),
                _ => format!("{c}·t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(v: Scalar) -> Self {
        Self::new(vec![v])
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![num::zero(), num::one()])
    }

    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| num::int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    fn lead(&self) -> &Scalar {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = num::zero();
        for c in self.c.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn sign_at(&self, t: &Scalar) -> Ordering {
        num::sign(&self.eval(t))
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.c.iter().rev() {
            acc = acc * t + num::to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.c.iter().enumerate().skip(1).map(|(i, c)| c * num::int(i as i64)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.c.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = num::zero();
        Poly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = num::zero();
        Poly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![num::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::constant(num::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![num::zero(); r.len() - dd];
        let inv = num::one() / d.lead();
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &inv;
            if !coef.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * dc;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = num::one() / self.lead();
        self.scale(&inv)
    }

    /// Clears denominators and common content, keeping the sign of the
    /// leading coefficient. Keeps Sturm sequences from bloating.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        if self.is_zero() {
            return Poly::zero();
        }
        let mut l = num_bigint::BigInt::one();
        for c in &self.c {
            l = l.lcm(c.denom());
        }
        let ints: Vec<num_bigint::BigInt> = self.c.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let mut g = num_bigint::BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if g.is_zero() {
            return Poly::zero();
        }
        Poly::new(ints.into_iter().map(|v| Scalar::from_integer(v / &g)).collect())
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part: same roots, all simple.
    pub fn squarefree(&self) -> Poly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.primitive();
        }
        self.div_rem(&g).0.primitive()
    }

    /// Coefficients of `self(t + h)` as a polynomial in `h`.
    pub fn taylor_at(&self, t: &Scalar) -> Vec<Scalar> {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let add = &c[j + 1] * t;
                c[j] += add;
            }
        }
        c
    }

    /// Sign on `(t, t + δ)` for all small enough `δ > 0`.
    pub fn sign_after(&self, t: &Scalar) -> Ordering {
        self.taylor_at(t).iter().find(|c| !c.is_zero()).map(num::sign).unwrap_or(Ordering::Equal)
    }

    /// Sign on `(t - δ, t)` for all small enough `δ > 0`.
    pub fn sign_before(&self, t: &Scalar) -> Ordering {
        match self.taylor_at(t).iter().enumerate().find(|(_, c)| !c.is_zero()) {
            None => Ordering::Equal,
            Some((k, c)) => {
                let s = num::sign(c);
                if k % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
        }
    }
}

/// Sturm sequence of a square-free polynomial.
pub struct Sturm {
    seq: Vec<Poly>,
}

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![p.clone()];
        if p.is_constant() {
            return Sturm { seq };
        }
        seq.push(p.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps the signs of the remainder sequence.
            let r = r.neg();
            let r = {
                let pr = r.primitive();
                if num::sign(pr.lead()) == num::sign(r.lead()) {
                    pr
                } else {
                    pr.neg()
                }
            };
            seq.push(r);
        }
        Sturm { seq }
    }

    fn variations(&self, t: &Scalar) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for p in &self.seq {
            let s = p.sign_at(t);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Scalar, b: &Scalar) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// An isolated real root `α` of a polynomial with `lo < α ≤ hi`, or known
/// exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub lo: Scalar,
    pub hi: Scalar,
    /// Set when the root is rational and was hit exactly.
    pub exact: Option<Scalar>,
    /// Whether the polynomial changes sign at the root.
    pub crossing: bool,
}

impl Root {
    /// A rational time at or just after the root; the value used to process
    /// the event.
    pub fn time(&self) -> Scalar {
        self.exact.clone().unwrap_or_else(|| self.hi.clone())
    }

    pub fn midpoint(&self) -> Scalar {
        match &self.exact {
            Some(t) => t.clone(),
            None => (&self.lo + &self.hi) / num::int(2),
        }
    }

    pub fn width(&self) -> Scalar {
        if self.exact.is_some() {
            num::zero()
        } else {
            &self.hi - &self.lo
        }
    }
}

/// Default relative width of a root's isolating interval, as a power of two.
pub const ROOT_BITS: u32 = 60;

/// Smallest root of `p` in `(t0, t1]`, isolated to an interval narrower than
/// `2^-bits · (t1 - t0)`. `None` if there is none or `p` is identically zero.
pub fn first_root_after(p: &Poly, t0: &Scalar, t1: &Scalar, bits: u32) -> Option<Root> {
    if p.is_constant() || t0 >= t1 {
        return None;
    }
    let q = p.squarefree();
    let st = Sturm::new(&q);
    if st.count(t0, t1) == 0 {
        return None;
    }
    let (mut lo, mut hi) = (t0.clone(), t1.clone());
    let two = num::int(2);
    // Narrow to an interval holding only the smallest root.
    while st.count(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / &two;
        if st.count(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let tol = (t1 - t0) / Scalar::from_integer(num_bigint::BigInt::one() << bits);
    let mut exact = None;
    if q.degree() == Some(1) {
        let c = q.coeffs();
        exact = Some(-&c[0] / &c[1]);
    } else if q.sign_at(&hi) == Ordering::Equal {
        exact = Some(hi.clone());
    } else {
        let s_hi = q.sign_at(&hi);
        while &hi - &lo >= tol {
            let mid = (&lo + &hi) / &two;
            let s = q.sign_at(&mid);
            if s == Ordering::Equal {
                exact = Some(mid);
                break;
            }
            if s == s_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if exact.is_none() {
            // Rational roots are usually simple fractions; try the simplest
            // rational in the interval.
            let c = num::simplest_between(&lo, &hi);
            if q.sign_at(&c) == Ordering::Equal {
                exact = Some(c);
            }
        }
    }
    let crossing = match &exact {
        Some(r) => p.sign_before(r) != p.sign_after(r),
        None => p.sign_after(&lo) != p.sign_at(&hi),
    };
    if let Some(r) = &exact {
        lo = r.clone();
        hi = r.clone();
    }
    Some(Root { lo, hi, exact, crossing })
}

/// Sign of `g` at the root `r` of `p`, decided exactly: refines `r` until
/// `g` has constant sign on it, or detects a common root.
pub fn sign_at_root(g: &Poly, p: &Poly, r: &Root) -> Ordering {
    if let Some(t) = &r.exact {
        return g.sign_at(t);
    }
    if g.is_zero() {
        return Ordering::Equal;
    }
    let common = p.squarefree().gcd(g);
    if !common.is_constant() && Sturm::new(&common.squarefree()).count(&r.lo, &r.hi) > 0 {
        return Ordering::Equal;
    }
    let q = p.squarefree();
    let sg = Sturm::new(&g.squarefree());
    let (mut lo, mut hi) = (r.lo.clone(), r.hi.clone());
    let s_hi = q.sign_at(&hi);
    let two = num::int(2);
    for _ in 0..4096 {
        if sg.count(&lo, &hi) == 0 && g.sign_at(&hi) != Ordering::Equal {
            return g.sign_at(&hi);
        }
        let mid = (&lo + &hi) / &two;
        let s = q.sign_at(&mid);
        if s == Ordering::Equal {
            return g.sign_at(&mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    g.sign_at(&hi)
}

/// Whether `p` keeps strictly the sign `s` on the open interval `(a, b)`.
pub fn keeps_sign_on(p: &Poly, a: &Scalar, b: &Scalar, s: Ordering) -> bool {
    if a >= b {
        return true;
    }
    if p.is_zero() {
        return s == Ordering::Equal;
    }
    if p.sign_after(a) != s {
        return false;
    }
    let q = p.squarefree();
    let st = Sturm::new(&q);
    // Roots in (a, b) are roots in (a, b] minus a possible root at b.
    let n = st.count(a, b) - usize::from(q.sign_at(b) == Ordering::Equal);
    n == 0
}
