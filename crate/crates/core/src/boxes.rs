//! Finite unions of closed axis-parallel boxes.
//!
//! Exact set operations go through a face grid: the sorted box endpoints on
//! each axis cut the line into points `c_a` and open intervals
//! `(c_a, c_{a+1})`, and products of these pieces are the faces. A union of
//! closed boxes is exactly a union of faces, so membership, volume, erosion
//! and the stair-convexity test become finite bit-array computations.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::geometry::{AxisBox, Point, PointSet};
use crate::scalar::{int, ratio, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxUnion {
    dim: usize,
    boxes: Vec<AxisBox>,
}

#[derive(Deserialize)]
struct RawUnion {
    dim: usize,
    boxes: Vec<AxisBox>,
}

impl<'de> Deserialize<'de> for BoxUnion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawUnion::deserialize(d)?;
        BoxUnion::new(raw.dim, raw.boxes).map_err(serde::de::Error::custom)
    }
}

impl BoxUnion {
    pub fn new(dim: usize, boxes: Vec<AxisBox>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be at least 1".into()));
        }
        for b in &boxes {
            check_dim(dim, b.dim())?;
        }
        Ok(BoxUnion { dim, boxes })
    }

    pub fn empty(dim: usize) -> Self {
        BoxUnion { dim, boxes: Vec::new() }
    }

    pub fn from_box(b: AxisBox) -> Self {
        BoxUnion {
            dim: b.dim(),
            boxes: vec![b],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[AxisBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn union(&self, other: &BoxUnion) -> Result<BoxUnion> {
        check_dim(self.dim, other.dim)?;
        let mut boxes = self.boxes.clone();
        boxes.extend(other.boxes.iter().cloned());
        Ok(BoxUnion { dim: self.dim, boxes })
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.boxes.iter().any(|b| b.contains(p))
    }

    /// Whether some point of `pts` lies in the (closed) union.
    pub fn hits(&self, pts: &PointSet) -> bool {
        pts.iter().any(|p| self.contains(p))
    }

    /// Sorted distinct box endpoints on every axis.
    pub fn breakpoints(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim)
            .map(|i| {
                let mut v: Vec<Scalar> = self
                    .boxes
                    .iter()
                    .flat_map(|b| [b.lo()[i].clone(), b.hi()[i].clone()])
                    .collect();
                v.sort();
                v.dedup();
                v
            })
            .collect()
    }

    /// Exact volume of the union.
    pub fn volume(&self) -> Scalar {
        if self.is_empty() {
            return int(0);
        }
        let g = FaceGrid::build(self, self.breakpoints());
        let mut total = int(0);
        g.for_each_cell(|idx, inside| {
            if inside && idx.iter().all(|e| e % 2 == 1) {
                let mut v = int(1);
                for (k, &e) in idx.iter().enumerate() {
                    v *= g.piece_length(k, e);
                }
                total += v;
            }
        });
        total
    }

    /// Number of points of `{0, 1/(m-1), ..., 1}^d` in the union.
    pub fn grid_count(&self, m: u64) -> Result<u64> {
        if m < 2 {
            return Err(Error::Precondition(format!("grid side must be at least 2, got {m}")));
        }
        if self.is_empty() {
            return Ok(0);
        }
        let g = FaceGrid::build(self, self.breakpoints());
        let per_axis: Vec<Vec<u64>> = (0..self.dim)
            .map(|k| {
                let mut counts = vec![0u64; g.sizes[k]];
                for t in 0..m {
                    let x = ratio(t as i64, (m - 1) as i64);
                    if let Some(e) = piece_of(&g.breaks[k], &x) {
                        counts[e] += 1;
                    }
                }
                counts
            })
            .collect();
        let mut total = 0u64;
        g.for_each_cell(|idx, inside| {
            if inside {
                total += idx
                    .iter()
                    .enumerate()
                    .map(|(k, &e)| per_axis[k][e])
                    .product::<u64>();
            }
        });
        Ok(total)
    }

    /// `{p in S : p + [0, delta]^d ⊆ S}`.
    pub fn erode(&self, delta: &Scalar) -> Result<BoxUnion> {
        if *delta <= int(0) {
            return Err(Error::Precondition("erosion width must be positive".into()));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let mut g = FaceGrid::build(self, self.breakpoints());
        for axis in 0..self.dim {
            g = g.erode_axis(axis, delta);
        }
        Ok(g.to_union())
    }

    /// Stair-convexity, checked slice by slice along the last axis: every
    /// slice is stair-convex, the nonempty slices occupy an interval of
    /// heights, and they grow monotonically with height.
    pub fn is_stair_convex(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let g = FaceGrid::build(self, self.breakpoints());
        stair_convex_cells(&g.cells, &g.sizes)
    }

    /// Equality as point sets.
    pub fn set_eq(&self, other: &BoxUnion) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let mut breaks = self.breakpoints();
        for (k, extra) in other.breakpoints().into_iter().enumerate() {
            breaks[k].extend(extra);
            breaks[k].sort();
            breaks[k].dedup();
        }
        FaceGrid::build(self, breaks.clone()).cells == FaceGrid::build(other, breaks).cells
    }

    /// A union with the same point set and (usually) fewer boxes.
    pub fn simplified(&self) -> BoxUnion {
        if self.is_empty() {
            return self.clone();
        }
        FaceGrid::build(self, self.breakpoints()).to_union()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("box unions always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Piece index of `x` among the pieces cut by `breaks`, if inside their span.
fn piece_of(breaks: &[Scalar], x: &Scalar) -> Option<usize> {
    match breaks.binary_search(x) {
        Ok(i) => Some(2 * i),
        Err(0) => None,
        Err(i) if i == breaks.len() => None,
        Err(i) => Some(2 * i - 1),
    }
}

fn piece_count(breaks: &[Scalar]) -> usize {
    (2 * breaks.len()).saturating_sub(1)
}

struct FaceGrid {
    breaks: Vec<Vec<Scalar>>,
    sizes: Vec<usize>,
    strides: Vec<usize>,
    cells: Vec<bool>,
}

impl FaceGrid {
    fn empty_with(breaks: Vec<Vec<Scalar>>) -> Self {
        let sizes: Vec<usize> = breaks.iter().map(|b| piece_count(b)).collect();
        let mut strides = Vec::with_capacity(sizes.len());
        let mut acc = 1usize;
        for &s in &sizes {
            strides.push(acc);
            acc *= s;
        }
        FaceGrid {
            breaks,
            sizes,
            strides,
            cells: vec![false; acc],
        }
    }

    /// Marks the faces of `u`; every box endpoint must be in `breaks`.
    fn build(u: &BoxUnion, breaks: Vec<Vec<Scalar>>) -> Self {
        let mut g = FaceGrid::empty_with(breaks);
        for b in &u.boxes {
            let ranges: Vec<(usize, usize)> = (0..u.dim)
                .map(|k| {
                    let lo = piece_of(&g.breaks[k], &b.lo()[k]).expect("endpoint is a breakpoint");
                    let hi = piece_of(&g.breaks[k], &b.hi()[k]).expect("endpoint is a breakpoint");
                    (lo, hi)
                })
                .collect();
            let spans: Vec<usize> = ranges.iter().map(|(lo, hi)| hi - lo + 1).collect();
            let strides = g.strides.clone();
            crate::combinatorics::for_each_product(&spans, |off| {
                let flat: usize = off
                    .iter()
                    .enumerate()
                    .map(|(k, &o)| (ranges[k].0 + o) * strides[k])
                    .sum();
                g.cells[flat] = true;
                true
            });
        }
        g
    }

    fn for_each_cell(&self, mut f: impl FnMut(&[usize], bool)) {
        let mut flat = 0usize;
        crate::combinatorics::for_each_product(&self.sizes, |idx| {
            f(idx, self.cells[flat]);
            flat += 1;
            true
        });
    }

    fn piece_length(&self, axis: usize, e: usize) -> Scalar {
        if e % 2 == 0 {
            int(0)
        } else {
            &self.breaks[axis][e / 2 + 1] - &self.breaks[axis][e / 2]
        }
    }

    fn piece_bounds(&self, axis: usize, e: usize) -> (Scalar, Scalar) {
        let b = &self.breaks[axis];
        if e % 2 == 0 {
            (b[e / 2].clone(), b[e / 2].clone())
        } else {
            (b[e / 2].clone(), b[e / 2 + 1].clone())
        }
    }

    /// Refines `axis` with the points `c - delta`, then keeps along each
    /// line through that axis only the points `x` with `[x, x + delta]`
    /// inside the set.
    fn erode_axis(&self, axis: usize, delta: &Scalar) -> FaceGrid {
        let old = &self.breaks[axis];
        let mut refined: Vec<Scalar> = old.iter().flat_map(|c| [c.clone(), c - delta]).collect();
        refined.sort();
        refined.dedup();
        let sample = |e: usize| -> Scalar {
            if e % 2 == 0 {
                refined[e / 2].clone()
            } else {
                (&refined[e / 2] + &refined[e / 2 + 1]) / int(2)
            }
        };
        let old_piece: Vec<Option<usize>> = (0..piece_count(&refined))
            .map(|e| piece_of(old, &sample(e)))
            .collect();

        let mut breaks = self.breaks.clone();
        breaks[axis] = refined.clone();
        let mut g = FaceGrid::empty_with(breaks);
        let n_axis = g.sizes[axis];
        let others: Vec<usize> = (0..self.sizes.len())
            .map(|k| if k == axis { 1 } else { self.sizes[k] })
            .collect();
        let mut line = vec![false; n_axis];
        crate::combinatorics::for_each_product(&others, |idx| {
            let base_old: usize = idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum();
            let base_new: usize = idx.iter().zip(&g.strides).map(|(i, s)| i * s).sum();
            for (e, slot) in line.iter_mut().enumerate() {
                *slot = old_piece[e]
                    .map(|o| self.cells[base_old + o * self.strides[axis]])
                    .unwrap_or(false);
            }
            let mut e = 0;
            while e < n_axis {
                if !line[e] {
                    e += 1;
                    continue;
                }
                let start = e;
                while e + 1 < n_axis && line[e + 1] {
                    e += 1;
                }
                let end = e;
                debug_assert!(start % 2 == 0 && end % 2 == 0, "closed runs");
                let limit = &refined[end / 2] - delta;
                let last = 2 * refined
                    .binary_search(&limit)
                    .expect("run ends are refined by delta");
                if last >= start {
                    for k in start..=last {
                        g.cells[base_new + k * g.strides[axis]] = true;
                    }
                }
                e += 1;
            }
            true
        });
        g
    }

    fn to_union(&self) -> BoxUnion {
        let d = self.sizes.len();
        let mut boxes: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        let mut flat = 0usize;
        crate::combinatorics::for_each_product(&self.sizes, |idx| {
            let here = flat;
            flat += 1;
            if !self.cells[here] {
                return true;
            }
            let maximal = (0..d).all(|k| {
                if idx[k] % 2 == 1 {
                    return true;
                }
                let below = idx[k] > 0 && self.cells[here - self.strides[k]];
                let above = idx[k] + 1 < self.sizes[k] && self.cells[here + self.strides[k]];
                !below && !above
            });
            if maximal {
                let (lo, hi) = (0..d).map(|k| self.piece_bounds(k, idx[k])).unzip();
                boxes.push((lo, hi));
            }
            true
        });
        merge_boxes(&mut boxes, d);
        BoxUnion {
            dim: d,
            boxes: boxes
                .into_iter()
                .map(|(lo, hi)| AxisBox::new(Point::new(lo), Point::new(hi)).expect("ordered face bounds"))
                .collect(),
        }
    }
}

/// Repeatedly fuses boxes that agree off one axis and touch along it.
fn merge_boxes(boxes: &mut Vec<(Vec<Scalar>, Vec<Scalar>)>, d: usize) {
    loop {
        let before = boxes.len();
        for axis in 0..d {
            let key = |b: &(Vec<Scalar>, Vec<Scalar>)| {
                let mut k: Vec<Scalar> = Vec::with_capacity(2 * d);
                for i in (0..d).filter(|&i| i != axis) {
                    k.push(b.0[i].clone());
                    k.push(b.1[i].clone());
                }
                k
            };
            boxes.sort_by(|a, b| key(a).cmp(&key(b)).then_with(|| a.0[axis].cmp(&b.0[axis])));
            let mut out: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::with_capacity(boxes.len());
            for b in boxes.drain(..) {
                if let Some(last) = out.last_mut() {
                    if key(last) == key(&b) && b.0[axis] <= last.1[axis] {
                        if b.1[axis] > last.1[axis] {
                            last.1[axis] = b.1[axis].clone();
                        }
                        continue;
                    }
                }
                out.push(b);
            }
            *boxes = out;
        }
        if boxes.len() == before {
            boxes.sort();
            return;
        }
    }
}

fn stair_convex_cells(cells: &[bool], sizes: &[usize]) -> bool {
    let d = sizes.len();
    let layers = sizes[d - 1];
    let stride = cells.len() / layers.max(1);
    if layers == 0 {
        return true;
    }
    let slice = |e: usize| &cells[e * stride..(e + 1) * stride];
    let nonempty: Vec<usize> = (0..layers).filter(|&e| slice(e).iter().any(|&c| c)).collect();
    let Some((&first, &last)) = nonempty.first().zip(nonempty.last()) else {
        return true;
    };
    if last - first + 1 != nonempty.len() {
        return false;
    }
    if d == 1 {
        return true;
    }
    for e in first..=last {
        if !stair_convex_cells(slice(e), &sizes[..d - 1]) {
            return false;
        }
        if e < last {
            let (lower, upper) = (slice(e), slice(e + 1));
            if lower.iter().zip(upper).any(|(&a, &b)| a && !b) {
                return false;
            }
        }
    }
    true
}
