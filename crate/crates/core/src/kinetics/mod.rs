//! Kinetic separation structures: motions, certificates and the event loop
//! for point/polygon and polygon/polygon pairs.

mod cells;
mod engine;
mod log;
mod motion;
mod oracle;
mod pair;
mod point;
mod simulate;

pub use engine::{next_certificate_failure, CertKind, Certificate};
pub use log::{EventKind, EventLog, EventRecord, SeparationStats};
pub use motion::{make_motion, KVec, MotionClass, MotionError, MotionFrame, Relative, DEFAULT_MAX_DEGREE};
pub use oracle::Oracle;
pub use point::Descent;
pub use simulate::{hierarchy_of, simulate, Body, Fault, Shape, SimConfig, Structure};

pub(crate) use engine::{valid_at, Handled, Kds};
pub(crate) use point::PointCtx;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KineticsError {
    #[error("the point starts inside the polygon")]
    PointInsidePolygon,
    #[error("the polygons overlap at the start")]
    InitialOverlap,
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

#[cfg(test)]
mod tests;
