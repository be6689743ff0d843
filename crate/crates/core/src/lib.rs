//! Exact stair-convexity, stretched grids, weak epsilon-net constructions,
//! interval-chain stabbing and thin triangle families.
//!
//! All geometry runs on arbitrary-precision rationals ([`Scalar`]); nothing
//! is rounded except where a function explicitly returns a directed
//! enclosure.

pub mod boxes;
pub mod chains;
pub mod combinatorics;
pub mod convex;
pub mod enclosure;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod linalg;
pub mod nets;
pub mod scalar;
pub mod selection;
pub mod stair;

pub use boxes::BoxUnion;
pub use convex::{conv_contains, conv_intersects};
pub use error::{Error, Result};
pub use geometry::{AxisBox, Point, PointSet};
pub use grid::{build_grid, GridSpec};
pub use scalar::Scalar;
pub use stair::{
    point_types, sconv_box_union, sconv_contains, sconv_intersection_witness, sconv_intersects,
    stair_path, StairPath,
};
