//! Euler characteristic curves (ECCs) of straight-line plane graphs.
//!
//! * [`ecc`] computes lower-star ECCs in exact rational arithmetic and the
//!   per-vertex change oracle [`ecc::delta_chi`].
//! * [`reconstruct`] recovers the vertex set of a graph with no degree-2
//!   vertex from six ECCs.
//! * [`deg2`] analyses from which directions a degree-2 vertex is visible.
//! * [`dirplan`] builds and independently verifies a set of `3n` directions
//!   whose witness lines meet three at a time exactly at the vertices.
//! * [`gen`] produces seeded random graphs in general position and the
//!   hand-built gadgets used throughout the tests.

pub mod deg2;
pub mod dirplan;
pub mod ecc;
pub mod error;
pub mod gen;
pub mod geom;
pub mod io;
pub mod reconstruct;
pub mod scalar;
pub mod svg;

pub use ecc::{
    compute_ecc, delta_chi, witness_heights, witnessed_vertices, StepFunction, WitnessLineSet,
};
pub use error::*;
pub use geom::{height, quadrant, Direction, PlaneGraph, Point, Violation};
pub use scalar::ExactScalar;
