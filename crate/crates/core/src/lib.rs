pub mod geometry;
pub mod harness;
pub mod hierarchy;
pub mod hysteresis;
pub mod kinetics;
pub mod mixed;
pub mod num;
pub mod poly;
