//! Stair-paths, point types and stair-convex hulls.
//!
//! The stair-path from `a` to `b` first moves along the last axis, then
//! recursively along the remaining ones. A point `x` lies in the stair-convex
//! hull of `X` exactly when `X` has a point of every type `0..=d` with respect
//! to `x`, which makes hull membership a linear scan.

use serde::{Deserialize, Serialize};

use crate::boxes::BoxUnion;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{AxisBox, Point, PointSet};
use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
}

impl Segment {
    /// Axis along which the segment varies.
    pub fn axis(&self) -> usize {
        (0..self.from.dim())
            .find(|&i| self.from[i] != self.to[i])
            .expect("stair-path segments have positive length")
    }

    pub fn contains(&self, p: &Point) -> bool {
        (0..p.dim()).all(|i| {
            let (lo, hi) = min_max(&self.from[i], &self.to[i]);
            lo <= &p[i] && &p[i] <= hi
        })
    }
}

fn min_max<'a>(a: &'a Scalar, b: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StairPath {
    pub start: Point,
    pub end: Point,
    pub segments: Vec<Segment>,
}

impl StairPath {
    /// Vertex sequence from start to end.
    pub fn vertices(&self) -> Vec<Point> {
        let mut out = vec![self.start.clone()];
        out.extend(self.segments.iter().map(|s| s.to.clone()));
        out
    }

    pub fn contains(&self, p: &Point) -> bool {
        if self.segments.is_empty() {
            return *p == self.start;
        }
        self.segments.iter().any(|s| s.contains(p))
    }
}

fn path_vertices(a: &Point, b: &Point, axes: usize, out: &mut Vec<Point>) {
    if axes == 0 {
        out.push(a.clone());
        return;
    }
    let k = axes - 1;
    if a[k] <= b[k] {
        out.push(a.clone());
        let raised = a.with_coord(k, b[k].clone());
        path_vertices(&raised, b, k, out);
    } else {
        let mut rev = Vec::new();
        path_vertices(b, a, axes, &mut rev);
        rev.reverse();
        out.extend(rev);
    }
}

pub fn stair_path(a: &Point, b: &Point) -> Result<StairPath> {
    check_dim(a.dim(), b.dim())?;
    let mut verts = Vec::with_capacity(a.dim() + 2);
    path_vertices(a, b, a.dim(), &mut verts);
    verts.dedup();
    let segments = verts
        .windows(2)
        .map(|w| Segment {
            from: w[0].clone(),
            to: w[1].clone(),
        })
        .collect();
    Ok(StairPath {
        start: a.clone(),
        end: b.clone(),
        segments,
    })
}

/// Bitmask of the types of `b` with respect to `a` (bit `j` set for type `j`).
///
/// Type 0 means `b <= a` coordinatewise; type `j >= 1` means `b_j >= a_j`
/// and `b_i <= a_i` for all `i > j` (1-based axes).
pub(crate) fn type_mask(b: &Point, a: &Point) -> u64 {
    let d = a.dim();
    let mut mask = 0u64;
    // scan from the top axis down; `all_le` tracks b_i <= a_i for every i above
    let mut all_le = true;
    for j in (1..=d).rev() {
        if !all_le {
            break;
        }
        let (bj, aj) = (&b[j - 1], &a[j - 1]);
        if bj >= aj {
            mask |= 1 << j;
        }
        all_le = bj <= aj;
    }
    if all_le {
        mask |= 1;
    }
    mask
}

pub fn point_types(b: &Point, a: &Point) -> Result<Vec<usize>> {
    check_dim(a.dim(), b.dim())?;
    let mask = type_mask(b, a);
    Ok((0..=a.dim()).filter(|&j| mask >> j & 1 == 1).collect())
}

fn full_mask(d: usize) -> u64 {
    if d + 1 >= 64 {
        u64::MAX
    } else {
        (1u64 << (d + 1)) - 1
    }
}

pub(crate) fn sconv_contains_points<'a>(xs: impl IntoIterator<Item = &'a Point>, x: &Point) -> bool {
    let full = full_mask(x.dim());
    let mut seen = 0u64;
    for p in xs {
        seen |= type_mask(p, x);
        if seen == full {
            return true;
        }
    }
    false
}

/// Membership of `x` in the stair-convex hull of `X` (closed).
pub fn sconv_contains(xs: &PointSet, x: &Point) -> Result<bool> {
    check_dim(xs.dim(), x.dim())?;
    if xs.is_empty() {
        return Err(Error::Precondition("stair-convex hull of an empty set".into()));
    }
    Ok(sconv_contains_points(xs, x))
}

fn check_no_shared_coordinate(p: &PointSet, q: &PointSet) -> Result<()> {
    for i in 0..p.dim() {
        let mut values: Vec<&Scalar> = p.iter().map(|a| &a[i]).collect();
        values.sort();
        for b in q {
            if values.binary_search(&&b[i]).is_ok() {
                return Err(Error::SharedCoordinate {
                    axis: i,
                    value: format_scalar(&b[i]),
                });
            }
        }
    }
    Ok(())
}

/// Calls `f` with every pair of index subsets `(ps, qs)`, both nonempty,
/// with `|ps| + |qs| = total`. Stops early when `f` returns `Some`.
fn for_each_subpair<T>(
    s: usize,
    t: usize,
    total: usize,
    mut f: impl FnMut(&[usize], &[usize]) -> Option<T>,
) -> Option<T> {
    for a in 1..total {
        let b = total - a;
        if a > s || b > t {
            continue;
        }
        let mut found = None;
        crate::combinatorics::for_each_combination(s, a, |ps| {
            crate::combinatorics::for_each_combination(t, b, |qs| {
                found = f(ps, qs);
                found.is_none()
            });
            found.is_none()
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Finds a point of `sconv(P) ∩ sconv(Q)` for sets that share no coordinate.
///
/// Only sub-pairs of total size `d + 2` are examined, and a witness for such
/// a pair must take each coordinate from one of its points, so the search is
/// finite: at most `(d + 2)^d` candidates per sub-pair.
pub fn sconv_intersection_witness(p: &PointSet, q: &PointSet) -> Result<Option<Point>> {
    check_dim(p.dim(), q.dim())?;
    if p.is_empty() || q.is_empty() {
        return Err(Error::Precondition("stair-convex hull of an empty set".into()));
    }
    check_no_shared_coordinate(p, q)?;
    let d = p.dim();
    if p.len() + q.len() < d + 2 {
        return Ok(None);
    }
    let found = for_each_subpair(p.len(), q.len(), d + 2, |ps, qs| {
        let pp: Vec<&Point> = ps.iter().map(|&i| &p.points()[i]).collect();
        let qq: Vec<&Point> = qs.iter().map(|&i| &q.points()[i]).collect();
        let mut axes: Vec<Vec<&Scalar>> = (0..d)
            .map(|i| pp.iter().chain(&qq).map(|x| &x[i]).collect())
            .collect();
        for values in &mut axes {
            values.sort();
            values.dedup();
        }
        let mut found = None;
        crate::combinatorics::for_each_product(&axes.iter().map(Vec::len).collect::<Vec<_>>(), |idx| {
            let c = Point::new(idx.iter().enumerate().map(|(i, &k)| axes[i][k].clone()).collect());
            if sconv_contains_points(pp.iter().copied(), &c) && sconv_contains_points(qq.iter().copied(), &c) {
                found = Some(c);
                return false;
            }
            true
        });
        found
    });
    Ok(found)
}

pub fn sconv_intersects(p: &PointSet, q: &PointSet) -> Result<bool> {
    Ok(sconv_intersection_witness(p, q)?.is_some())
}

/// The stair-convex hull of a finite set as a union of boxes.
///
/// Sorting the distinct last coordinates `h_1 < ... < h_r`, the hull is the
/// union over `i` of `sconv(proj X_{<= h_i}) x [h_i, h_r]`.
pub fn sconv_box_union(xs: &PointSet) -> BoxUnion {
    let d = xs.dim();
    let boxes = hull_boxes(&xs.points().iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(), d);
    BoxUnion::new(
        d,
        boxes
            .into_iter()
            .map(|(lo, hi)| AxisBox::new(Point::new(lo), Point::new(hi)).expect("hull boxes are ordered"))
            .collect(),
    )
    .expect("hull boxes share the set dimension")
}

type RawBox = (Vec<Scalar>, Vec<Scalar>);

fn hull_boxes(pts: &[Vec<Scalar>], d: usize) -> Vec<RawBox> {
    if pts.is_empty() {
        return Vec::new();
    }
    let k = d - 1;
    let mut heights: Vec<&Scalar> = pts.iter().map(|p| &p[k]).collect();
    heights.sort();
    heights.dedup();
    let top = heights[heights.len() - 1].clone();
    if d == 1 {
        return vec![(vec![heights[0].clone()], vec![top])];
    }
    let mut out = Vec::new();
    for h in &heights {
        let below: Vec<Vec<Scalar>> = pts
            .iter()
            .filter(|p| &&p[k] <= h)
            .map(|p| p[..k].to_vec())
            .collect();
        for (mut lo, mut hi) in hull_boxes(&below, k) {
            lo.push((*h).clone());
            hi.push(top.clone());
            out.push((lo, hi));
        }
    }
    out
}
