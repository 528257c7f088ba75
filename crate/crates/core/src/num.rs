//! Exact rational scalars and the handful of conversions the rest of the
//! crate needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Arbitrary-precision rational. Always kept in canonical form by
/// `num_rational`.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn to_f64(v: &Scalar) -> f64 {
    match v.to_f64() {
        Some(x) => x,
        None => {
            // Huge numerator and denominator: scale both down first.
            let n = v.numer();
            let d = v.denom();
            let shift = n.bits().max(d.bits()).saturating_sub(900);
            let n = (n >> shift).to_f64().unwrap_or(0.0);
            let d = (d >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Nearest dyadic rational with denominator `2^bits`.
pub fn from_f64_dyadic(v: f64, bits: u32) -> Scalar {
    let scale = (bits as f64).exp2();
    let n = (v * scale).round();
    Scalar::new(BigInt::from(n as i128), BigInt::one() << bits)
}

/// Exact conversion of a finite `f64`.
pub fn from_f64_exact(v: f64) -> Option<Scalar> {
    Scalar::from_float(v)
}

pub fn sign(v: &Scalar) -> Ordering {
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Parses `"-12.375"`, `"7"`, or `"3/4"` exactly.
pub fn parse_decimal(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Scalar::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return None;
    }
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", whole, frac);
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let v = Scalar::new(n, d);
    Some(if neg { -v } else { v })
}

/// Smallest rational `r` with `r >= sqrt(v)` on a dyadic grid of `2^-bits`
/// relative to the magnitude of `v`. Used where an upper bound on a length is
/// needed from an exact squared length.
pub fn sqrt_upper(v: &Scalar, bits: u32) -> Scalar {
    if !v.is_positive() {
        return zero();
    }
    let approx = to_f64(v).sqrt();
    let scale_bits = bits as i32 - approx.log2().ceil() as i32;
    let mut r = if scale_bits >= 0 {
        let s = BigInt::one() << scale_bits as u32;
        Scalar::new(BigInt::from((approx * (scale_bits as f64).exp2()).ceil() as i128), s)
    } else {
        Scalar::from_integer(BigInt::from(approx.ceil() as i128))
    };
    let step = if scale_bits >= 0 {
        Scalar::new(BigInt::one(), BigInt::one() << scale_bits as u32)
    } else {
        one()
    };
    while &(&r * &r) < v {
        r += &step;
    }
    r
}

/// Largest dyadic rational below `sqrt(v)`, mirror of [`sqrt_upper`].
pub fn sqrt_lower(v: &Scalar, bits: u32) -> Scalar {
    if !v.is_positive() {
        return zero();
    }
    let approx = to_f64(v).sqrt();
    let scale_bits = (bits as i32 - approx.log2().ceil() as i32).max(0) as u32;
    let den = BigInt::one() << scale_bits;
    let mut r = Scalar::new(
        BigInt::from((approx * (scale_bits as f64).exp2()).floor() as i128),
        den.clone(),
    );
    let step = Scalar::new(BigInt::one(), den);
    while &(&r * &r) > v {
        r -= &step;
    }
    r
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction.
pub fn primitive_direction(x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
    let l = x.denom().lcm(y.denom());
    let xi = x.numer() * (&l / x.denom());
    let yi = y.numer() * (&l / y.denom());
    let g = xi.gcd(&yi);
    if g.is_zero() {
        return (zero(), zero());
    }
    (Scalar::from_integer(xi / &g), Scalar::from_integer(yi / &g))
}

/// Balanced pairwise sum. Keeps intermediate denominators small when adding
/// many unrelated fractions.
pub fn sum_balanced(mut terms: Vec<Scalar>) -> Scalar {
    if terms.is_empty() {
        return zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (continued-fraction descent).
pub fn simplest_between(lo: &Scalar, hi: &Scalar) -> Scalar {
    assert!(lo <= hi);
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if &(&fl + one()) <= hi {
        return fl + one();
    }
    // lo and hi share the integer part; recurse on reciprocals of the
    // fractional parts (order flips).
    let a = lo - &fl;
    let b = hi - &fl;
    let inner = simplest_between(&(one() / b), &(one() / a));
    fl + one() / inner
}
