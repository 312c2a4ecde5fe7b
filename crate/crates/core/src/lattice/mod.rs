//! Lattice points, walks, polygons and the text codec.

pub mod codec;
mod point;
mod polygon;
mod prob;
mod walk;

pub use point::{lex_compare_points, LatticePoint, Step};
pub(crate) use point::Coords;
pub use polygon::{Edge, Polygon};
pub use prob::ExactProb;
pub use walk::{distinguished_axis, Walk};
