//! Scenario files: one JSON document naming two bodies, their motions and
//! the structure to run.
//!
//! Every number that reaches the geometry is exact. A rational literal is
//! a JSON integer, a pair `[num, den]`, or a string such as `"-0.125"` or
//! `"3/8"`; JSON floats are rejected.

use super::ParseError;
use crate::geometry::generate::{random_convex, regular_polygon};
use crate::geometry::{ConvexPolygon, Point};
use crate::hierarchy::HierarchyKind;
use crate::kinetics::{make_motion, Body, Descent, Fault, Shape, SimConfig, Structure, DEFAULT_MAX_DEGREE};
use crate::num::{self, Scalar};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::Deserialize;
use std::fmt;

/// An exact rational read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer, [num, den], or an exact decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(num::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(Scalar::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
                Err(E::custom(format!("inexact number {v}; write it as [num, den] or \"{v}\"")))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Rational, E> {
                num::parse_decimal(s).map(Rational).ok_or_else(|| E::custom(format!("not an exact rational: {s:?}")))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Rational, A::Error> {
                let n: BigInt = seq.next_element::<IntLit>()?.ok_or_else(|| de::Error::invalid_length(0, &self))?.0;
                let d: BigInt = seq.next_element::<IntLit>()?.ok_or_else(|| de::Error::invalid_length(1, &self))?.0;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::custom("a rational pair has exactly two entries"));
                }
                if d.is_zero() {
                    return Err(de::Error::custom("zero denominator"));
                }
                Ok(Rational(Scalar::new(n, d)))
            }
        }
        d.deserialize_any(V)
    }
}

/// An integer, possibly given as a digit string.
struct IntLit(BigInt);

impl<'de> Deserialize<'de> for IntLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntLit;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<IntLit, E> {
                Ok(IntLit(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<IntLit, E> {
                Ok(IntLit(v.into()))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<IntLit, E> {
                s.trim().parse().map(IntLit).map_err(|_| E::custom(format!("not an integer: {s:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Polynomial coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyLit(pub Poly);

impl Default for PolyLit {
    fn default() -> Self {
        PolyLit(Poly::zero())
    }
}

impl<'de> Deserialize<'de> for PolyLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c: Vec<Rational> = Vec::deserialize(d)?;
        if c.len() > DEFAULT_MAX_DEGREE + 1 {
            return Err(de::Error::custom(format!("polynomial of degree {} exceeds the cap {DEFAULT_MAX_DEGREE}", c.len() - 1)));
        }
        Ok(PolyLit(Poly::new(c.into_iter().map(|r| r.0).collect())))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum ShapeSpec {
    Point([Rational; 2]),
    Vertices(Vec<[Rational; 2]>),
    Regular { k: usize, radius: Rational },
    /// Uses the scenario seed when `seed` is absent.
    Random { n: usize, diameter: Rational, seed: Option<u64> },
}

/// `o(t) = (o[0](t), o[1](t))`; `u(t)` is the rotation parameter.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionSpec {
    #[serde(default)]
    pub o: [PolyLit; 2],
    #[serde(default)]
    pub u: PolyLit,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodySpec {
    #[serde(default)]
    pub name: Option<String>,
    pub shape: ShapeSpec,
    #[serde(default)]
    pub motion: MotionSpec,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    SimConfig::default().oracle_samples
}

impl Default for OracleSpec {
    fn default() -> Self {
        OracleSpec { samples: default_samples() }
    }
}

/// Structure names accepted in files: the four structures, plus `compass`
/// and `dudley` as shorthands for the lazy structure on that hierarchy.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum StructureName {
    Lazy,
    ActiveTriangle,
    #[serde(alias = "mixed-cell")]
    Mixed,
    Inflated,
    Compass,
    Dudley,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    name: Option<String>,
    #[serde(alias = "bodies")]
    polygons: Vec<BodySpec>,
    #[serde(default)]
    horizon: Option<[Rational; 2]>,
    structure: StructureName,
    #[serde(default)]
    hierarchy: Option<HierarchyKind>,
    #[serde(default)]
    descent: Descent,
    #[serde(default)]
    oracle: OracleSpec,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    fault: Option<Fault>,
    #[serde(default)]
    max_events: Option<usize>,
}

/// A validated scenario. Body 0 moves against body 1, which must be a
/// polygon.
#[derive(Clone, Debug, Deserialize)]
#[serde(try_from = "RawScenario")]
pub struct Scenario {
    pub name: Option<String>,
    pub bodies: [BodySpec; 2],
    pub t0: Scalar,
    pub t1: Scalar,
    pub structure: Structure,
    pub hierarchy: HierarchyKind,
    pub descent: Descent,
    pub oracle_samples: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
    pub max_events: usize,
}

impl TryFrom<RawScenario> for Scenario {
    type Error = String;

    fn try_from(r: RawScenario) -> Result<Self, String> {
        let (structure, implied) = match r.structure {
            StructureName::Lazy => (Structure::Lazy, None),
            StructureName::ActiveTriangle => (Structure::ActiveTriangle, None),
            StructureName::Mixed => (Structure::Mixed, None),
            StructureName::Inflated => (Structure::Inflated, Some(HierarchyKind::Compass)),
            StructureName::Compass => (Structure::Lazy, Some(HierarchyKind::Compass)),
            StructureName::Dudley => (Structure::Lazy, Some(HierarchyKind::Dudley)),
        };
        let hierarchy = match (implied, r.hierarchy) {
            (Some(a), Some(b)) if a != b => return Err(format!("structure {:?} needs the {a:?} hierarchy, not {b:?}", r.structure)),
            (a, b) => a.or(b).unwrap_or(HierarchyKind::Compass),
        };
        let bodies: [BodySpec; 2] = r
            .polygons
            .try_into()
            .map_err(|v: Vec<BodySpec>| format!("expected two bodies (moving, obstacle), found {}", v.len()))?;
        if matches!(bodies[1].shape, ShapeSpec::Point(_)) {
            return Err("the obstacle (second body) must be a polygon".into());
        }
        let point = matches!(bodies[0].shape, ShapeSpec::Point(_));
        match (point, structure) {
            (true, Structure::Mixed) => return Err("the mixed structure needs two polygons".into()),
            (false, Structure::ActiveTriangle | Structure::Inflated) => {
                return Err(format!("structure {} is for a point against a polygon", structure.name()))
            }
            _ => {}
        }
        let [t0, t1] = r.horizon.map(|[a, b]| [a.0, b.0]).unwrap_or([num::zero(), num::one()]);
        if t1 <= t0 {
            return Err("empty horizon".into());
        }
        Ok(Scenario {
            name: r.name,
            bodies,
            t0,
            t1,
            structure,
            hierarchy,
            descent: r.descent,
            oracle_samples: r.oracle.samples,
            seed: r.seed,
            fault: r.fault,
            max_events: r.max_events.unwrap_or(SimConfig::default().max_events),
        })
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError { line: e.line(), column: e.column(), message: strip_position(&e) })
    }

    pub fn config(&self) -> SimConfig {
        SimConfig {
            structure: self.structure,
            hierarchy: self.hierarchy,
            t0: self.t0.clone(),
            t1: self.t1.clone(),
            oracle_samples: self.oracle_samples,
            fault: self.fault,
            max_events: self.max_events,
            descent: self.descent,
        }
    }

    /// Instantiates body `i`.
    pub fn body(&self, i: usize) -> Result<Body, ParseError> {
        let spec = &self.bodies[i];
        let shape = match &spec.shape {
            ShapeSpec::Point([x, y]) => Shape::Point(Point::new(x.0.clone(), y.0.clone())),
            s => Shape::Polygon(self.polygon(s)?),
        };
        let m = &spec.motion;
        let motion = make_motion(m.o[0].0.clone(), m.o[1].0.clone(), m.u.0.clone(), self.t0.clone(), self.t1.clone(), DEFAULT_MAX_DEGREE)
            .map_err(|e| ParseError::semantic(format!("body {i}: {e}")))?;
        Ok(Body { shape, motion })
    }

    pub fn polygon_of(&self, i: usize) -> Option<Result<ConvexPolygon, ParseError>> {
        match &self.bodies[i].shape {
            ShapeSpec::Point(_) => None,
            s => Some(self.polygon(s)),
        }
    }

    fn polygon(&self, s: &ShapeSpec) -> Result<ConvexPolygon, ParseError> {
        match s {
            ShapeSpec::Point(_) => unreachable!("points are not polygons"),
            ShapeSpec::Vertices(vs) => {
                let pts = vs.iter().map(|[x, y]| Point::new(x.0.clone(), y.0.clone())).collect();
                ConvexPolygon::new(pts).map_err(|e| ParseError::semantic(e.to_string()))
            }
            ShapeSpec::Regular { k, radius } => {
                if *k < 3 || radius.0 <= num::zero() {
                    return Err(ParseError::semantic("a regular polygon needs k >= 3 and a positive radius"));
                }
                Ok(regular_polygon(*k, &radius.0))
            }
            ShapeSpec::Random { n, diameter, seed } => {
                if *n < 3 || diameter.0 <= num::zero() {
                    return Err(ParseError::semantic("a random polygon needs n >= 3 and a positive diameter"));
                }
                Ok(random_convex(*n, seed.unwrap_or(self.seed), &diameter.0))
            }
        }
    }
}

/// serde_json appends " at line L column C"; the position is kept
/// separately.
fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) if e.line() > 0 => s[..i].to_string(),
        _ => s,
    }
}
