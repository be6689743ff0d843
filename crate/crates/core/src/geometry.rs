//! Points, point sets and closed axis-parallel boxes.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::scalar::{format_scalar, parse_scalar_list, serde_scalar_vec, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    #[serde(with = "serde_scalar_vec")]
    coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| crate::scalar::int(c)).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Point::new(parse_scalar_list(text)?))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn with_coord(&self, axis: usize, value: Scalar) -> Point {
        let mut coords = self.coords.clone();
        coords[axis] = value;
        Point { coords }
    }

    pub fn translate(&self, by: &Point) -> Point {
        debug_assert_eq!(self.dim(), by.dim());
        Point::new(self.coords.iter().zip(&by.coords).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Index<usize> for Point {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite set of points of a common dimension. Duplicates are dropped on
/// construction; the first occurrence keeps its position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

#[derive(Deserialize)]
struct RawPointSet {
    dim: usize,
    points: Vec<Point>,
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPointSet::deserialize(d)?;
        PointSet::new(raw.dim, raw.points).map_err(serde::de::Error::custom)
    }
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be at least 1".into()));
        }
        let mut seen = HashSet::with_capacity(points.len());
        let mut kept = Vec::with_capacity(points.len());
        for p in points {
            check_dim(dim, p.dim())?;
            if seen.insert(p.clone()) {
                kept.push(p);
            }
        }
        Ok(PointSet { dim, points: kept })
    }

    /// Infers the dimension from the first point.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let dim = points
            .first()
            .map(Point::dim)
            .ok_or_else(|| Error::Precondition("cannot infer dimension of an empty set".into()))?;
        PointSet::new(dim, points)
    }

    pub fn empty(dim: usize) -> Self {
        PointSet { dim, points: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("point sets always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Closed box `[lo_1, hi_1] x ... x [lo_d, hi_d]` with `lo_i <= hi_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AxisBox {
    lo: Point,
    hi: Point,
}

#[derive(Deserialize)]
struct RawBox {
    lo: Point,
    hi: Point,
}

impl<'de> Deserialize<'de> for AxisBox {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawBox::deserialize(d)?;
        AxisBox::new(raw.lo, raw.hi).map_err(serde::de::Error::custom)
    }
}

impl AxisBox {
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        check_dim(lo.dim(), hi.dim())?;
        if let Some(i) = (0..lo.dim()).find(|&i| lo[i] > hi[i]) {
            return Err(Error::Precondition(format!(
                "box side {i} is empty: {} > {}",
                format_scalar(&lo[i]),
                format_scalar(&hi[i])
            )));
        }
        Ok(AxisBox { lo, hi })
    }

    pub fn unit(dim: usize) -> Self {
        AxisBox {
            lo: Point::new(vec![crate::scalar::int(0); dim]),
            hi: Point::new(vec![crate::scalar::int(1); dim]),
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn lo(&self) -> &Point {
        &self.lo
    }

    pub fn hi(&self) -> &Point {
        &self.hi
    }

    pub fn volume(&self) -> Scalar {
        (0..self.dim())
            .map(|i| &self.hi[i] - &self.lo[i])
            .fold(crate::scalar::int(1), |acc, s| acc * s)
    }

    pub fn contains(&self, p: &Point) -> bool {
        (0..self.dim()).all(|i| self.lo[i] <= p[i] && p[i] <= self.hi[i])
    }

    pub fn interior_contains(&self, p: &Point) -> bool {
        (0..self.dim()).all(|i| self.lo[i] < p[i] && p[i] < self.hi[i])
    }

    pub fn contains_box(&self, other: &AxisBox) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    pub fn intersection(&self, other: &AxisBox) -> Option<AxisBox> {
        let lo: Vec<Scalar> = (0..self.dim())
            .map(|i| self.lo[i].clone().max(other.lo[i].clone()))
            .collect();
        let hi: Vec<Scalar> = (0..self.dim())
            .map(|i| self.hi[i].clone().min(other.hi[i].clone()))
            .collect();
        AxisBox::new(Point::new(lo), Point::new(hi)).ok()
    }
}
