//! Exhaustive weak-net checks for small point sets.
//!
//! `N` is a weak net for `X` at threshold `t` when every convex set holding
//! at least `t` points of `X` meets `N`. It is enough to test the hulls of
//! the `t`-subsets of `X`. By Caratheodory a net point lies in such a hull
//! exactly when it lies in the hull of at most `d + 1` of its points, so each
//! net point is reduced once to its minimal hitting subsets, stored as
//! bitmasks over `X`.

use crate::combinatorics::for_each_combination;
use crate::convex::conv_contains_points;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{Point, PointSet};
use crate::scalar::{ceil_int, int, Scalar};

/// Default cap on `|X|` for the exhaustive checks.
pub const DEFAULT_WEAK_NET_CAP: usize = 20;

/// `ceil(|X| / r)`.
pub fn threshold_for(x_len: usize, r: &Scalar) -> Result<usize> {
    if r < &int(1) {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let t = ceil_int(&(int(x_len as i64) / r));
    Ok(t.try_into().expect("threshold is at most |X|"))
}

fn check_sizes(x: &PointSet, cap: usize) -> Result<()> {
    let limit = cap.min(64);
    if x.len() > limit {
        return Err(Error::guard("weak-net ground set size", x.len(), limit));
    }
    Ok(())
}

/// Minimal subsets of `X` (as bitmasks, at most `d + 1` points each) whose
/// hull contains `y`.
fn hit_masks(x: &[&Point], y: &Point) -> Vec<u64> {
    let d = y.dim();
    let mut masks: Vec<u64> = Vec::new();
    for size in 1..=(d + 1).min(x.len()) {
        for_each_combination(x.len(), size, |idx| {
            let mask = idx.iter().fold(0u64, |m, &i| m | (1 << i));
            if masks.iter().all(|&h| h & !mask != 0) {
                let chosen: Vec<&Point> = idx.iter().map(|&i| x[i]).collect();
                if conv_contains_points(&chosen, y) {
                    masks.push(mask);
                }
            }
            true
        });
    }
    masks
}

fn ground(x: &PointSet) -> Vec<&Point> {
    x.points().iter().collect()
}

/// Checks the weak-net property at the threshold `ceil(|X| / r)`.
pub fn brute_force_weak_net_check(x: &PointSet, net: &PointSet, r: &Scalar) -> Result<bool> {
    let t = threshold_for(x.len(), r)?;
    Ok(find_unhit_subset(x, net, t, DEFAULT_WEAK_NET_CAP)?.is_none())
}

/// The first `t`-subset of `X` (in lexicographic order of indices) whose hull
/// misses every point of `N`.
pub fn find_unhit_subset(x: &PointSet, net: &PointSet, t: usize, cap: usize) -> Result<Option<Vec<usize>>> {
    check_dim(x.dim(), net.dim())?;
    check_sizes(x, cap)?;
    if t == 0 {
        return Err(Error::Precondition("threshold must be at least 1".into()));
    }
    if t > x.len() {
        return Ok(None);
    }
    let pts = ground(x);
    let masks: Vec<u64> = net.iter().flat_map(|y| hit_masks(&pts, y)).collect();
    let mut unhit = None;
    for_each_combination(x.len(), t, |idx| {
        let s = idx.iter().fold(0u64, |m, &i| m | (1 << i));
        if masks.iter().any(|&h| h & !s == 0) {
            true
        } else {
            unhit = Some(idx.to_vec());
            false
        }
    });
    Ok(unhit)
}

/// A smallest subset of `pool` that is a weak net for `X` at threshold `t`,
/// or `None` when even the whole pool is not.
pub fn min_weak_net_from_pool(x: &PointSet, pool: &PointSet, t: usize, cap: usize) -> Result<Option<PointSet>> {
    check_dim(x.dim(), pool.dim())?;
    check_sizes(x, cap)?;
    if pool.len() > 64 {
        return Err(Error::guard("weak-net candidate pool", pool.len(), 64));
    }
    if t == 0 {
        return Err(Error::Precondition("threshold must be at least 1".into()));
    }
    if t > x.len() {
        return Ok(Some(PointSet::empty(x.dim())));
    }
    let pts = ground(x);
    let per_pool: Vec<Vec<u64>> = pool.iter().map(|y| hit_masks(&pts, y)).collect();

    // For each t-subset, the pool points whose hull test hits it.
    let mut constraints: Vec<u64> = Vec::new();
    for_each_combination(x.len(), t, |idx| {
        let s = idx.iter().fold(0u64, |m, &i| m | (1 << i));
        let hitters = per_pool
            .iter()
            .enumerate()
            .filter(|(_, masks)| masks.iter().any(|&h| h & !s == 0))
            .fold(0u64, |m, (j, _)| m | (1 << j));
        constraints.push(hitters);
        true
    });
    if constraints.contains(&0) {
        return Ok(None);
    }
    constraints.sort_by_key(|c| c.count_ones());
    constraints.dedup();
    let mut reduced: Vec<u64> = Vec::new();
    for c in constraints {
        if reduced.iter().all(|&r| r & !c != 0) {
            reduced.push(c);
        }
    }
    let chosen = (0..=pool.len())
        .find_map(|size| hitting_set(&reduced, 0, size))
        .expect("the whole pool hits every constraint");
    let picked = (0..pool.len())
        .filter(|j| chosen & (1 << j) != 0)
        .map(|j| pool.points()[j].clone())
        .collect();
    Ok(Some(PointSet::new(x.dim(), picked)?))
}

/// Depth-limited search for a set of at most `budget` pool indices meeting
/// every constraint, branching on the constraint with the fewest members.
fn hitting_set(constraints: &[u64], chosen: u64, budget: usize) -> Option<u64> {
    let open = constraints
        .iter()
        .filter(|&&c| c & chosen == 0)
        .min_by_key(|c| c.count_ones());
    let Some(&branch) = open else {
        return Some(chosen);
    };
    if budget == 0 {
        return None;
    }
    let mut rest = branch;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest &= rest - 1;
        if let Some(found) = hitting_set(constraints, chosen | bit, budget - 1) {
            return Some(found);
        }
    }
    None
}
