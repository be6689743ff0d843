pub mod bench;
pub mod chains;
pub mod grid;
pub mod net;
pub mod triangles;
pub mod viz;

use anyhow::anyhow;
use stairnet::scalar::parse_scalar;
use stairnet::{Point, Scalar};

/// Clap parser for exact rationals written as `p/q`, integers or decimals.
pub fn scalar_arg(s: &str) -> anyhow::Result<Scalar> {
    parse_scalar(s).map_err(|e| anyhow!("{e}"))
}

pub fn point_arg(s: &str) -> anyhow::Result<Point> {
    Point::parse(s).map_err(|e| anyhow!("{e}"))
}

