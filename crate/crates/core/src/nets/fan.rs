//! Box types, normal boxes, fans and the fan-based refuter.
//!
//! For a point set `N` of size `n` in the unit cube, every normal box has
//! volume `2^-k` with `2^(d+1) n <= 2^k < 2^(d+2) n`. A random anchor in
//! `V = [1/2, 1]^d` leaves each normal box empty with probability at least
//! one half, so some anchor has many empty boxes, and their union is an
//! empty stair-convex set of volume `Omega(log^(d-1) n / n)`.

use std::cmp::Ordering;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boxes::BoxUnion;
use crate::combinatorics::{binomial_u64, compositions};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{AxisBox, Point, PointSet};
use crate::scalar::{int, pow2, ratio, serde_scalar, Scalar};

/// Default number of random anchors tried by [`refute_net`].
pub const DEFAULT_TRIALS: usize = 200;

/// The smallest `k` with `2^(d+1) n <= 2^k`, which also gives `2^k < 2^(d+2) n`.
pub fn choose_k(n: u64, d: usize) -> usize {
    assert!(n >= 1, "choose_k needs n >= 1");
    let ceil_log = 64 - (n - 1).leading_zeros() as usize;
    d + 1 + ceil_log
}

/// A composition `t_1 + ... + t_d = k` with positive parts; the normal box
/// of this type has side `2^-t_i` on axis `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoxType(Vec<usize>);

impl BoxType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Precondition(format!("box type parts must be positive: {parts:?}")));
        }
        Ok(BoxType(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn k(&self) -> usize {
        self.0.iter().sum()
    }
}

/// All `binomial(k-1, d-1)` box types, in lexicographic order.
pub fn box_types(k: usize, d: usize) -> Result<Vec<BoxType>> {
    if d == 0 || k < d {
        return Err(Error::Precondition(format!("box types need k >= d >= 1, got k = {k}, d = {d}")));
    }
    Ok(compositions(k, d).into_iter().map(BoxType).collect())
}

fn check_anchor(p: &Point) -> Result<()> {
    let half = ratio(1, 2);
    let one = int(1);
    if p.coords().iter().all(|c| *c >= half && *c <= one) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("anchor {p} lies outside [1/2, 1]^d")))
    }
}

/// `B_t(p) = prod [p_i - 2^-t_i, p_i]`.
pub fn normal_box(t: &BoxType, p: &Point) -> Result<AxisBox> {
    check_dim(t.dim(), p.dim())?;
    check_anchor(p)?;
    Ok(normal_box_unchecked(t, p))
}

fn normal_box_unchecked(t: &BoxType, p: &Point) -> AxisBox {
    let lo = Point::new(
        t.0.iter()
            .zip(p.coords())
            .map(|(&ti, pi)| pi - pow2(-(ti as i64)))
            .collect(),
    );
    AxisBox::new(lo, p.clone()).expect("normal boxes are well formed")
}

/// The box `[a_i, a_i + s_i/2]` at the low corner of `[a_i, a_i + s_i]`.
pub fn lower_subbox(b: &AxisBox) -> AxisBox {
    let half = ratio(1, 2);
    let hi = Point::new(
        b.lo()
            .coords()
            .iter()
            .zip(b.hi().coords())
            .map(|(a, h)| a + (h - a) * &half)
            .collect(),
    );
    AxisBox::new(b.lo().clone(), hi).expect("sub-box of a valid box")
}

/// The anchors `p` in `V` whose normal box of type `t` contains `x`, which
/// is the box `[x_i, x_i + 2^-t_i]` clipped to `V`; `None` when empty.
pub fn anchor_region(t: &BoxType, x: &Point) -> Result<Option<AxisBox>> {
    check_dim(t.dim(), x.dim())?;
    let lo = Point::new(
        x.coords().iter().map(|c| c.clone().max(ratio(1, 2))).collect(),
    );
    let hi = Point::new(
        t.0.iter()
            .zip(x.coords())
            .map(|(&ti, c)| (c + pow2(-(ti as i64))).min(int(1)))
            .collect(),
    );
    if (0..t.dim()).any(|i| lo[i] > hi[i]) {
        return Ok(None);
    }
    Ok(Some(AxisBox::new(lo, hi)?))
}

/// The normal boxes of every type anchored at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    anchor: Point,
    types: Vec<BoxType>,
    boxes: Vec<AxisBox>,
}

impl Fan {
    pub fn new(k: usize, anchor: Point) -> Result<Fan> {
        check_anchor(&anchor)?;
        let types = box_types(k, anchor.dim())?;
        let boxes = types.iter().map(|t| normal_box_unchecked(t, &anchor)).collect();
        Ok(Fan { anchor, types, boxes })
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn types(&self) -> &[BoxType] {
        &self.types
    }

    pub fn boxes(&self) -> &[AxisBox] {
        &self.boxes
    }

    pub fn to_union(&self) -> BoxUnion {
        BoxUnion::new(self.anchor.dim(), self.boxes.clone()).expect("fan boxes share a dimension")
    }
}

/// Points sorted on the first axis, for closed-box emptiness queries.
struct SortedPoints<'a> {
    pts: Vec<&'a Point>,
}

impl<'a> SortedPoints<'a> {
    fn new(set: &'a PointSet) -> Self {
        let mut pts: Vec<&Point> = set.iter().collect();
        pts.sort_by(|a, b| a[0].cmp(&b[0]));
        SortedPoints { pts }
    }

    fn closed_box_empty(&self, b: &AxisBox) -> bool {
        let start = self.pts.partition_point(|p| p[0] < b.lo()[0]);
        !self.pts[start..]
            .iter()
            .take_while(|p| p[0] <= b.hi()[0])
            .any(|p| b.contains(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefuteWitness {
    pub anchor: Point,
    pub k: usize,
    #[serde(rename = "T")]
    pub total_types: usize,
    pub count: usize,
    pub empty_types: Vec<BoxType>,
    #[serde(rename = "S")]
    pub s: BoxUnion,
    #[serde(with = "serde_scalar")]
    pub vol_lb: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefuteOutcome {
    Witness(RefuteWitness),
    /// No anchor reached a quarter of the box types empty.
    Failure {
        best_count: usize,
        total_types: usize,
        trials: usize,
    },
}

impl RefuteOutcome {
    pub fn witness(&self) -> Option<&RefuteWitness> {
        match self {
            RefuteOutcome::Witness(w) => Some(w),
            RefuteOutcome::Failure { .. } => None,
        }
    }
}

/// Anchor coordinates `1/2 + r/2^64` with `r` a 63-bit draw.
fn sample_anchors(d: usize, trials: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let base = pow2(-64);
    (0..trials)
        .map(|_| {
            Point::new(
                (0..d)
                    .map(|_| {
                        let r = (rng.next_u64() >> 1) | (1u64 << 63);
                        Scalar::from_integer(r.into()) * &base
                    })
                    .collect(),
            )
        })
        .collect()
}

fn lex_cmp(a: &Point, b: &Point) -> Ordering {
    a.coords().cmp(b.coords())
}

/// Searches `trials` seeded anchors for a fan with at least `T/4` boxes
/// empty of `N` (closed boxes). The result does not depend on the number of
/// worker threads.
pub fn refute_net(net: &PointSet, trials: usize, seed: u64) -> Result<RefuteOutcome> {
    if net.is_empty() {
        return Err(Error::Precondition("refute_net needs a nonempty point set".into()));
    }
    let d = net.dim();
    let unit = AxisBox::unit(d);
    if let Some(p) = net.iter().find(|p| !unit.contains(p)) {
        return Err(Error::OutOfDomain(format!("{p} lies outside the unit cube")));
    }
    let k = choose_k(net.len() as u64, d);
    let types = box_types(k, d)?;
    let total = types.len();
    debug_assert_eq!(total as u64, binomial_u64(k as u64 - 1, d as u64 - 1));

    let index = SortedPoints::new(net);
    let anchors = sample_anchors(d, trials, seed);
    let counts: Vec<usize> = anchors
        .par_iter()
        .map(|p| {
            types
                .iter()
                .filter(|t| index.closed_box_empty(&normal_box_unchecked(t, p)))
                .count()
        })
        .collect();

    let best = anchors
        .iter()
        .zip(&counts)
        .max_by(|(pa, ca), (pb, cb)| ca.cmp(cb).then_with(|| lex_cmp(pb, pa)));
    let Some((anchor, &count)) = best else {
        return Ok(RefuteOutcome::Failure { best_count: 0, total_types: total, trials });
    };
    if 4 * count < total {
        return Ok(RefuteOutcome::Failure { best_count: count, total_types: total, trials });
    }

    let (empty_types, boxes): (Vec<BoxType>, Vec<AxisBox>) = types
        .iter()
        .map(|t| (t.clone(), normal_box_unchecked(t, anchor)))
        .filter(|(_, b)| index.closed_box_empty(b))
        .unzip();
    let vol_lb = int(count as i64) * pow2(-((d + k) as i64));
    Ok(RefuteOutcome::Witness(RefuteWitness {
        anchor: anchor.clone(),
        k,
        total_types: total,
        count,
        empty_types,
        s: BoxUnion::new(d, boxes)?,
        vol_lb,
    }))
}
