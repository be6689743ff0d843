//! The stretched grid: `d` integer coordinate sequences, each growing fast
//! enough that consecutive values on axis `i` differ by at least a factor
//! `K_i`, with `K_1 = 2^d` and `K_i = 2^d * x_{(i-1)m}`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::combinatorics::for_each_combination;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{AxisBox, Point, PointSet};
use crate::linalg::det_sign;
use crate::scalar::{big, floor_int, int, Scalar};

/// Default cap on the bit length of the largest grid coordinate.
pub const DEFAULT_BIT_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    d: usize,
    m: usize,
    k: Vec<BigInt>,
    xs: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    d: usize,
    m: usize,
    #[serde(rename = "K")]
    k: Vec<String>,
    #[serde(rename = "X")]
    xs: Vec<Vec<String>>,
}

impl Serialize for GridSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GridJson {
            d: self.d,
            m: self.m,
            k: self.k.iter().map(ToString::to_string).collect(),
            xs: self
                .xs
                .iter()
                .map(|axis| axis.iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GridJson::deserialize(d)?;
        let xs = raw
            .xs
            .iter()
            .map(|axis| {
                axis.iter()
                    .map(|t| t.parse::<BigInt>().map_err(D::Error::custom))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let spec = GridSpec::from_coordinates(xs).map_err(D::Error::custom)?;
        if spec.d != raw.d || spec.m != raw.m {
            return Err(D::Error::custom("grid header disagrees with coordinates"));
        }
        let k: Vec<String> = spec.k.iter().map(ToString::to_string).collect();
        if k != raw.k {
            return Err(D::Error::custom("grid constants disagree with coordinates"));
        }
        Ok(spec)
    }
}

/// The minimal stretched grid, `x_ij = K_i^(j-1)`.
pub fn build_grid(d: usize, m: usize) -> Result<GridSpec> {
    build_grid_with(d, m, 1, DEFAULT_BIT_CAP)
}

/// A stretched grid with `x_ij = K_i^(gap (j-1))`; `gap = 1` is the minimal
/// grid. Larger gaps leave room for points far apart from every grid point
/// strictly between grid lines.
pub fn build_grid_with(d: usize, m: usize, gap: u32, bit_cap: u64) -> Result<GridSpec> {
    if d == 0 || m < 2 || gap == 0 {
        return Err(Error::Precondition(format!(
            "grid needs d >= 1, m >= 2, gap >= 1 (got d={d}, m={m}, gap={gap})"
        )));
    }
    // every constant and coordinate is a power of two; track exponents first
    let mut k_exp = Vec::with_capacity(d);
    let mut prev_top: u128 = 0;
    for _ in 0..d {
        let ke = d as u128 + prev_top;
        let top = ke
            .checked_mul(u128::from(gap) * (m as u128 - 1))
            .filter(|&t| t < u128::from(u64::MAX))
            .ok_or_else(|| Error::guard("grid coordinate bit length", "overflow", bit_cap))?;
        if top + 1 > u128::from(bit_cap) {
            return Err(Error::guard("grid coordinate bit length", top + 1, bit_cap));
        }
        k_exp.push(ke);
        prev_top = top;
    }
    let k: Vec<BigInt> = k_exp.iter().map(|&e| BigInt::one() << e as u64).collect();
    let xs = k_exp
        .iter()
        .map(|&ke| {
            (0..m)
                .map(|j| BigInt::one() << (ke * u128::from(gap) * j as u128) as u64)
                .collect()
        })
        .collect();
    Ok(GridSpec { d, m, k, xs })
}

impl GridSpec {
    /// Validates user-supplied coordinates: `x_i1 = 1`, equal lengths, and
    /// `K_i x_ij <= x_i(j+1)` with the constants derived from the lists.
    pub fn from_coordinates(xs: Vec<Vec<BigInt>>) -> Result<GridSpec> {
        let d = xs.len();
        if d == 0 {
            return Err(Error::Precondition("grid needs at least one axis".into()));
        }
        let m = xs[0].len();
        if m < 2 {
            return Err(Error::Precondition("grid needs m >= 2".into()));
        }
        let two_d = BigInt::one() << d;
        let mut k = Vec::with_capacity(d);
        for (i, axis) in xs.iter().enumerate() {
            check_dim(m, axis.len())?;
            if !axis[0].is_one() {
                return Err(Error::Precondition(format!("axis {i} must start at 1")));
            }
            let ki = if i == 0 {
                two_d.clone()
            } else {
                &two_d * &xs[i - 1][m - 1]
            };
            for j in 0..m - 1 {
                if &ki * &axis[j] > axis[j + 1] {
                    return Err(Error::Precondition(format!(
                        "axis {i}: K * x_{j} exceeds x_{}",
                        j + 1
                    )));
                }
            }
            k.push(ki);
        }
        Ok(GridSpec { d, m, k, xs })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self, axis: usize) -> &BigInt {
        &self.k[axis]
    }

    pub fn constants(&self) -> &[BigInt] {
        &self.k
    }

    /// `x_{axis, j}` with 0-based `j`.
    pub fn coord(&self, axis: usize, j: usize) -> &BigInt {
        &self.xs[axis][j]
    }

    pub fn axis(&self, axis: usize) -> &[BigInt] {
        &self.xs[axis]
    }

    pub fn max_bits(&self) -> u64 {
        self.xs.iter().map(|a| a[self.m - 1].bits()).max().unwrap_or(0)
    }

    /// The grid point with 0-based indices `idx`.
    pub fn point(&self, idx: &[usize]) -> Point {
        Point::new(
            idx.iter()
                .enumerate()
                .map(|(i, &j)| big(self.xs[i][j].clone()))
                .collect(),
        )
    }

    /// All `m^d` grid points, first axis varying fastest.
    pub fn points(&self) -> PointSet {
        let mut pts = Vec::new();
        crate::combinatorics::for_each_product(&vec![self.m; self.d], |idx| {
            pts.push(self.point(idx));
            true
        });
        PointSet::new(self.d, pts).expect("grid points share the dimension")
    }

    pub fn bounding_box(&self) -> AxisBox {
        AxisBox::new(
            Point::new(vec![int(1); self.d]),
            Point::new(self.xs.iter().map(|a| big(a[self.m - 1].clone())).collect()),
        )
        .expect("grid coordinates increase")
    }

    fn check_in_box(&self, p: &Point) -> Result<()> {
        check_dim(self.d, p.dim())?;
        if self.bounding_box().contains(p) {
            Ok(())
        } else {
            Err(Error::OutOfDomain(format!("{p} lies outside the grid box")))
        }
    }

    /// `K_i min(p_i, q_i) <= max(p_i, q_i)` on every axis.
    pub fn far_apart(&self, p: &Point, q: &Point) -> Result<bool> {
        self.check_in_box(p)?;
        self.check_in_box(q)?;
        Ok(self.far_apart_unchecked(p, q))
    }

    pub(crate) fn far_apart_unchecked(&self, p: &Point, q: &Point) -> bool {
        (0..self.d).all(|i| {
            let (lo, hi) = if p[i] <= q[i] { (&p[i], &q[i]) } else { (&q[i], &p[i]) };
            big(self.k[i].clone()) * lo <= *hi
        })
    }

    pub fn far_apart_sets(&self, p: &PointSet, q: &PointSet) -> Result<bool> {
        for a in p {
            self.check_in_box(a)?;
        }
        for b in q {
            self.check_in_box(b)?;
        }
        Ok(p.iter().all(|a| q.iter().all(|b| self.far_apart_unchecked(a, b))))
    }

    /// Order-preserving map of the grid box onto `[0,1]^d`, affine between
    /// consecutive grid coordinates; grid points land on `{0, 1/(m-1), ..., 1}^d`.
    pub fn pi_map(&self, p: &Point) -> Result<Point> {
        self.check_in_box(p)?;
        let last = int(self.m as i64 - 1);
        Ok(Point::new(
            (0..self.d)
                .map(|i| {
                    let axis = &self.xs[i];
                    let v = &p[i];
                    // largest j with x_ij <= v, capped so that j + 1 exists
                    let j = axis
                        .partition_point(|x| big(x.clone()) <= *v)
                        .saturating_sub(1)
                        .min(self.m - 2);
                    let lo = big(axis[j].clone());
                    let hi = big(axis[j + 1].clone());
                    (int(j as i64) + (v - &lo) / (hi - lo)) / &last
                })
                .collect(),
        ))
    }

    pub fn pi_inverse(&self, u: &Point) -> Result<Point> {
        check_dim(self.d, u.dim())?;
        if !AxisBox::unit(self.d).contains(u) {
            return Err(Error::OutOfDomain(format!("{u} lies outside the unit cube")));
        }
        let last = int(self.m as i64 - 1);
        Ok(Point::new(
            (0..self.d)
                .map(|i| {
                    let t = &u[i] * &last;
                    let j = floor_int(&t).to_usize().unwrap_or(0).min(self.m - 2);
                    let lo = big(self.xs[i][j].clone());
                    let hi = big(self.xs[i][j + 1].clone());
                    &lo + (t - int(j as i64)) * (hi - &lo)
                })
                .collect(),
        ))
    }

    /// The first `n` diagonal points `(x_1j, ..., x_dj)`.
    pub fn diagonal(&self, n: usize) -> Result<Diagonal> {
        if n > self.m {
            return Err(Error::Precondition(format!("diagonal length {n} exceeds m = {}", self.m)));
        }
        let points = (0..n).map(|j| self.point(&vec![j; self.d])).collect();
        Ok(Diagonal {
            points: PointSet::new(self.d, points)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grids always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    points: PointSet,
}

impl Diagonal {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn check_curve_position(&self) -> Result<bool> {
        check_curve_position(&self.points)
    }
}

/// True iff no `d + 1` of the points lie on a common hyperplane.
pub fn check_curve_position(pts: &PointSet) -> Result<bool> {
    let d = pts.dim();
    if pts.len() < d + 1 {
        return Err(Error::Precondition(format!(
            "need at least {} points, got {}",
            d + 1,
            pts.len()
        )));
    }
    let rows: Vec<Vec<Scalar>> = pts
        .iter()
        .map(|p| {
            let mut r = p.coords().to_vec();
            r.push(int(1));
            r
        })
        .collect();
    Ok(for_each_combination(pts.len(), d + 1, |idx| {
        let m: Vec<Vec<Scalar>> = idx.iter().map(|&i| rows[i].clone()).collect();
        det_sign(&m) != 0
    }))
}
