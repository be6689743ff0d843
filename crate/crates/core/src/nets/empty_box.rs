//! The largest axis-parallel box in the unit cube whose interior avoids a
//! point set.
//!
//! Coordinates are scaled to integers by the common denominator first, so
//! the searches run on machine integers whenever volumes fit in `i128`.
//! In the plane a quadratic sweep is used; other dimensions enumerate the
//! intervals spanned by point coordinates on all axes but the last and take
//! the widest gap on the last axis.

use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{AxisBox, Point, PointSet};
use crate::scalar::{big, lcm_of_denominators, Scalar};

/// Default cap on the number of interval combinations enumerated outside the plane.
pub const DEFAULT_EMPTY_BOX_CAP: u64 = 20_000_000;

trait Coord: Clone + Ord + Zero + One + Sub<Output = Self> + Mul<Output = Self> {}
impl<T: Clone + Ord + Zero + One + Sub<Output = T> + Mul<Output = T>> Coord for T {}

struct Found<T> {
    vol: T,
    lo: Vec<T>,
    hi: Vec<T>,
}

impl<T: Coord> Found<T> {
    fn offer(&mut self, vol: T, lo: Vec<T>, hi: Vec<T>) {
        if vol > self.vol {
            *self = Found { vol, lo, hi };
        }
    }
}

pub fn largest_empty_box(net: &PointSet) -> Result<(AxisBox, Scalar)> {
    largest_empty_box_capped(net, DEFAULT_EMPTY_BOX_CAP)
}

pub fn largest_empty_box_capped(net: &PointSet, cap: u64) -> Result<(AxisBox, Scalar)> {
    let d = net.dim();
    let unit = AxisBox::unit(d);
    if let Some(p) = net.iter().find(|p| !unit.contains(p)) {
        return Err(Error::OutOfDomain(format!("{p} lies outside the unit cube")));
    }
    let scale = lcm_of_denominators(net.iter().flat_map(|p| p.coords()));
    let scaled: Vec<Vec<BigInt>> = net
        .iter()
        .map(|p| p.coords().iter().map(|c| c.numer() * (&scale / c.denom())).collect())
        .collect();

    let fits = (scale.bits() as usize) * d <= 120;
    let (lo, hi) = if fits {
        let small: Vec<Vec<i128>> = scaled
            .iter()
            .map(|p| p.iter().map(|c| c.to_i128().expect("checked bit length")).collect())
            .collect();
        let one = scale.to_i128().expect("checked bit length");
        let found = search(&small, d, one, cap)?;
        (
            found.lo.into_iter().map(BigInt::from).collect::<Vec<_>>(),
            found.hi.into_iter().map(BigInt::from).collect::<Vec<_>>(),
        )
    } else {
        let found = search(&scaled, d, scale.clone(), cap)?;
        (found.lo, found.hi)
    };
    let unscale = |v: Vec<BigInt>| Point::new(v.into_iter().map(|c| big(c) / big(scale.clone())).collect());
    let bx = AxisBox::new(unscale(lo), unscale(hi))?;
    let vol = bx.volume();
    Ok((bx, vol))
}

fn search<T: Coord>(pts: &[Vec<T>], d: usize, one: T, cap: u64) -> Result<Found<T>> {
    if d == 2 {
        return Ok(sweep_plane(pts, one));
    }
    let mut candidates: Vec<Vec<T>> = (0..d.saturating_sub(1))
        .map(|i| {
            let mut c: Vec<T> = pts.iter().map(|p| p[i].clone()).collect();
            c.push(T::zero());
            c.push(one.clone());
            c.sort();
            c.dedup();
            c
        })
        .collect();
    let work = candidates.iter().fold(1u64, |acc, c| {
        let n = c.len() as u64;
        acc.saturating_mul(n * (n - 1) / 2)
    });
    if work > cap {
        return Err(Error::guard("empty-box interval combinations", work, cap));
    }
    let mut found = Found {
        vol: T::zero(),
        lo: vec![T::zero(); d],
        hi: vec![one.clone(); d],
    };
    let all: Vec<&Vec<T>> = pts.iter().collect();
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    recurse(&mut candidates, &all, &one, T::one(), &mut lo, &mut hi, &mut found);
    Ok(found)
}

/// Fixes the interval on axis `lo.len()` and recurses; on the last axis the
/// widest gap among the surviving points is optimal.
fn recurse<T: Coord>(
    candidates: &mut [Vec<T>],
    alive: &[&Vec<T>],
    one: &T,
    partial: T,
    lo: &mut Vec<T>,
    hi: &mut Vec<T>,
    found: &mut Found<T>,
) {
    let axis = lo.len();
    if axis == candidates.len() {
        let mut last: Vec<T> = alive.iter().map(|p| p[axis].clone()).collect();
        last.push(T::zero());
        last.push(one.clone());
        last.sort();
        let (a, b) = last
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .max_by(|x, y| (x.1.clone() - x.0.clone()).cmp(&(y.1.clone() - y.0.clone())).then(y.0.cmp(&x.0)))
            .expect("at least two values");
        let vol = partial * (b.clone() - a.clone());
        let mut l = lo.clone();
        l.push(a);
        let mut h = hi.clone();
        h.push(b);
        found.offer(vol, l, h);
        return;
    }
    let remaining_axes = candidates.len() - axis;
    let bound_rest = (0..remaining_axes).fold(T::one(), |acc, _| acc * one.clone());
    let values = std::mem::take(&mut candidates[axis]);
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let (a, b) = (&values[i], &values[j]);
            let next = partial.clone() * (b.clone() - a.clone());
            if next.clone() * bound_rest.clone() <= found.vol {
                continue;
            }
            let inside: Vec<&Vec<T>> = alive.iter().copied().filter(|p| *a < p[axis] && p[axis] < *b).collect();
            lo.push(a.clone());
            hi.push(b.clone());
            recurse(candidates, &inside, one, next, lo, hi, found);
            lo.pop();
            hi.pop();
        }
    }
    candidates[axis] = values;
}

fn sweep_plane<T: Coord>(pts: &[Vec<T>], one: T) -> Found<T> {
    let mut found = Found {
        vol: T::zero(),
        lo: vec![T::zero(); 2],
        hi: vec![one.clone(); 2],
    };
    if pts.is_empty() {
        found.vol = one.clone() * one;
        return found;
    }
    let mut ys: Vec<T> = pts.iter().map(|p| p[1].clone()).collect();
    ys.push(T::zero());
    ys.push(one.clone());
    ys.sort();
    for w in ys.windows(2) {
        let vol = one.clone() * (w[1].clone() - w[0].clone());
        found.offer(vol, vec![T::zero(), w[0].clone()], vec![one.clone(), w[1].clone()]);
    }

    let mut forward: Vec<(T, T)> = pts.iter().map(|p| (p[0].clone(), p[1].clone())).collect();
    forward.sort();
    sweep_from_left_edges(&forward, &one, false, &mut found);
    let mut mirrored: Vec<(T, T)> = pts.iter().map(|p| (one.clone() - p[0].clone(), p[1].clone())).collect();
    mirrored.sort();
    sweep_from_left_edges(&mirrored, &one, true, &mut found);
    found
}

/// Rectangles whose left edge passes through a point `p`: sweeping right,
/// the open vertical range around `p.y` shrinks at each point met.
fn sweep_from_left_edges<T: Coord>(sorted: &[(T, T)], one: &T, mirrored: bool, found: &mut Found<T>) {
    let offer = |x0: &T, x1: &T, bot: &T, top: &T, found: &mut Found<T>| {
        let vol = (x1.clone() - x0.clone()) * (top.clone() - bot.clone());
        let (a, b) = if mirrored {
            (one.clone() - x1.clone(), one.clone() - x0.clone())
        } else {
            (x0.clone(), x1.clone())
        };
        found.offer(vol, vec![a, bot.clone()], vec![b, top.clone()]);
    };
    for (i, (px, py)) in sorted.iter().enumerate() {
        let mut top = one.clone();
        let mut bot = T::zero();
        let mut j = sorted[i..].partition_point(|q| q.0 <= *px) + i;
        let mut blocked = false;
        while j < sorted.len() {
            let qx = sorted[j].0.clone();
            offer(px, &qx, &bot, &top, found);
            while j < sorted.len() && sorted[j].0 == qx {
                let qy = &sorted[j].1;
                match qy.cmp(py) {
                    std::cmp::Ordering::Greater => top = top.min(qy.clone()),
                    std::cmp::Ordering::Less => bot = bot.max(qy.clone()),
                    std::cmp::Ordering::Equal => blocked = true,
                }
                j += 1;
            }
            if blocked {
                break;
            }
        }
        if !blocked {
            offer(px, one, &bot, &top, found);
        }
    }
}
