//! Ordinary convex-hull membership and intersection, decided exactly.
//!
//! Both tests search for a basic feasible solution: a linearly independent
//! set of columns whose unique solution is nonnegative. By Caratheodory and
//! Kirchberger it is enough to look at supports of size `d + 1` (membership)
//! and `d + 2` (intersection).

use num_traits::Signed;

use crate::combinatorics::for_each_combination;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{Point, PointSet};
use crate::linalg::{solve_columns, Solution};
use crate::scalar::{int, Scalar};

/// Default cap on the number of points handed to the subset enumerations.
pub const DEFAULT_CONV_CAP: usize = 24;

fn lifted(p: &Point, tail: &[i64], negate: bool) -> Vec<Scalar> {
    let mut col: Vec<Scalar> = if negate {
        p.coords().iter().map(|c| -c).collect()
    } else {
        p.coords().to_vec()
    };
    col.extend(tail.iter().map(|&t| int(t)));
    col
}

fn nonnegative_solution(cols: &[Vec<Scalar>], rhs: &[Scalar]) -> bool {
    match solve_columns(cols, rhs) {
        Solution::Unique(x) => x.iter().all(|v| !v.is_negative()),
        _ => false,
    }
}

pub fn conv_contains(xs: &PointSet, x: &Point) -> Result<bool> {
    conv_contains_capped(xs, x, DEFAULT_CONV_CAP)
}

pub fn conv_contains_capped(xs: &PointSet, x: &Point, cap: usize) -> Result<bool> {
    check_dim(xs.dim(), x.dim())?;
    if xs.is_empty() {
        return Err(Error::Precondition("convex hull of an empty set".into()));
    }
    if xs.len() > cap {
        return Err(Error::guard("convex membership input size", xs.len(), cap));
    }
    Ok(conv_contains_points(&xs.points().iter().collect::<Vec<_>>(), x))
}

/// Unguarded membership test over a slice of point references.
pub(crate) fn conv_contains_points(xs: &[&Point], x: &Point) -> bool {
    let d = x.dim();
    let cols: Vec<Vec<Scalar>> = xs.iter().map(|p| lifted(p, &[1], false)).collect();
    let rhs = lifted(x, &[1], false);
    (1..=(d + 1).min(xs.len())).any(|size| {
        !for_each_combination(xs.len(), size, |idx| {
            let chosen: Vec<Vec<Scalar>> = idx.iter().map(|&i| cols[i].clone()).collect();
            !nonnegative_solution(&chosen, &rhs)
        })
    })
}

pub fn conv_intersects(p: &PointSet, q: &PointSet) -> Result<bool> {
    conv_intersects_capped(p, q, DEFAULT_CONV_CAP)
}

/// Decides `conv(P) ∩ conv(Q) ≠ ∅` by solving
/// `sum λ_i p_i = sum μ_j q_j`, `sum λ = sum μ = 1`, `λ, μ >= 0`.
pub fn conv_intersects_capped(p: &PointSet, q: &PointSet, cap: usize) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    if p.is_empty() || q.is_empty() {
        return Err(Error::Precondition("convex hull of an empty set".into()));
    }
    if p.len() + q.len() > cap {
        return Err(Error::guard("convex intersection input size", p.len() + q.len(), cap));
    }
    let d = p.dim();
    let pc: Vec<Vec<Scalar>> = p.iter().map(|x| lifted(x, &[1, 0], false)).collect();
    let qc: Vec<Vec<Scalar>> = q.iter().map(|x| lifted(x, &[0, 1], true)).collect();
    let mut rhs = vec![int(0); d];
    rhs.extend([int(1), int(1)]);
    for a in 1..=(d + 1).min(p.len()) {
        for b in 1..=(d + 2 - a).min(q.len()) {
            let mut hit = false;
            for_each_combination(p.len(), a, |ps| {
                for_each_combination(q.len(), b, |qs| {
                    let cols: Vec<Vec<Scalar>> = ps
                        .iter()
                        .map(|&i| pc[i].clone())
                        .chain(qs.iter().map(|&j| qc[j].clone()))
                        .collect();
                    hit = nonnegative_solution(&cols, &rhs);
                    !hit
                });
                !hit
            });
            if hit {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
