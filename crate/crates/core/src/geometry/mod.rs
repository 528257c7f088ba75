//! Exact convex polygon primitives.

pub mod generate;
pub mod ops;
pub mod point;
pub mod polygon;

pub use ops::{
    bounding_rectangle, diameter2, intersects, minkowski_sum, offset_polygon, point_polygon_dist2, polygon_distance,
    separation2, Feature, Separation,
};
pub use point::{orient, Point, PointProbe};
pub use polygon::{ConvexPolygon, Facet, FacetKind, GeometryError};
