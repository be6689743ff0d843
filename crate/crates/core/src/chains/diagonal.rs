//! Translating between weak nets for the diagonal of the stretched grid and
//! families of tuples stabbing interval chains.
//!
//! Both directions cut the diagonal into blocks of consecutive points. In
//! the constructive direction a separator pair of adjacent points sits
//! between consecutive blocks, and a tuple of separators becomes the point
//! whose `i`-th coordinate lies between the `i`-th coordinates of the pair
//! named by its `i`-th entry. In the other direction the blocks avoiding
//! the neighbours of every net point are kept, and each net point is read
//! back as the tuple of gaps its coordinates fall into.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::chains::stabbing::{enumerate_chains, min_stabbing, stabs, IntervalChain, StabFamily};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{Point, PointSet};
use crate::grid::Diagonal;
use crate::scalar::{ceil_int, floor_int, format_scalar, int, ratio, Scalar};

/// Blocks of consecutive diagonal indices, with an adjacent separator pair
/// between consecutive blocks. Leftover points go to the last block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub blocks: Vec<Range<usize>>,
    pub separators: Vec<(usize, usize)>,
}

/// `ell` blocks of size `floor((n - 2(ell-1)) / ell)` separated by pairs.
pub fn separated_blocks(n: usize, ell: usize) -> Result<BlockPartition> {
    if ell == 0 || n < 2 * (ell - 1) + ell {
        return Err(Error::Infeasible(format!(
            "{n} diagonal points cannot host {ell} nonempty blocks and their separator pairs"
        )));
    }
    let size = (n - 2 * (ell - 1)) / ell;
    let mut blocks = Vec::with_capacity(ell);
    let mut separators = Vec::with_capacity(ell - 1);
    let mut start = 0;
    for i in 0..ell {
        let end = if i + 1 == ell { n } else { start + size };
        blocks.push(start..end);
        if i + 1 < ell {
            separators.push((end, end + 1));
        }
        start = end + 2;
    }
    Ok(BlockPartition { blocks, separators })
}

/// `floor(ell / r) - 1`, the chain length the separator family must stab.
pub fn chain_length_for(ell: usize, r: &Scalar) -> Result<usize> {
    let k = floor_int(&(int(ell as i64) / r)) - 1;
    usize::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::Precondition(format!("floor({ell}/{}) - 1 is below 1", format_scalar(r))))
}

/// The weak net built from a separator family `Z`: each tuple becomes the
/// point whose `i`-th coordinate is the mean of the `i`-th coordinates of
/// the separator pair named by its `i`-th entry.
pub fn diag_net_from_stabbing(diag: &Diagonal, r: &Scalar, ell: usize, z: &StabFamily) -> Result<PointSet> {
    let pts = diag.points();
    let d = pts.dim();
    let k = chain_length_for(ell, r)?;
    let partition = separated_blocks(diag.len(), ell)?;
    if z.j != d || z.n != ell - 1 {
        return Err(Error::Precondition(format!(
            "family has j = {}, n = {} but needs j = {d}, n = {}",
            z.j,
            z.n,
            ell - 1
        )));
    }
    let family = StabFamily::new(z.j, z.n, z.tuples.clone())?;
    if let Some(c) = family.first_unstabbed(k) {
        return Err(Error::Precondition(format!("the family misses the {k}-chain {:?}", c.breakpoints())));
    }
    let half = ratio(1, 2);
    let net = family
        .tuples
        .iter()
        .map(|t| {
            Point::new(
                t.iter()
                    .enumerate()
                    .map(|(i, &a)| {
                        let (y, y2) = partition.separators[a - 1];
                        (&pts.points()[y][i] + &pts.points()[y2][i]) * &half
                    })
                    .collect(),
            )
        })
        .collect();
    PointSet::new(d, net)
}

/// The `(k-1)`-chain of separators spanned by good blocks `i_1 < ... < i_k`
/// (1-based): `[i_1, i_2 - 1][i_2, i_3 - 1]...[i_(k-1), i_k - 1]`.
pub fn block_chain(blocks: &[usize]) -> Result<IntervalChain> {
    if blocks.len() < 2 {
        return Err(Error::Precondition("a chain needs at least two blocks".into()));
    }
    let mut b = vec![blocks[0]];
    b.extend(blocks[1..].iter().map(|&i| i - 1));
    IntervalChain::new(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetTuple {
    pub tuple: Vec<usize>,
    /// Some coordinate fell outside every gap between good blocks.
    pub clamped: bool,
    pub increasing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabReduction {
    pub ell: usize,
    /// `ceil(4 d ell / r)`.
    pub k: usize,
    pub blocks: Vec<Range<usize>>,
    pub bad: Vec<usize>,
    /// Indices into `blocks` of the good blocks used, in order.
    pub good: Vec<usize>,
    pub tuples: Vec<NetTuple>,
    /// Tuples that are increasing and unclamped, over separators `1..=2 d ell - 1`.
    pub family: StabFamily,
}

/// Reads a weak net for the diagonal back as a family of separator tuples.
pub fn net_to_stabbing(diag: &Diagonal, net: &PointSet, r: &Scalar) -> Result<StabReduction> {
    let pts = diag.points();
    let d = pts.dim();
    check_dim(d, net.dim())?;
    let n = diag.len();
    let ell = net.len();
    if ell == 0 {
        return Err(Error::Precondition("the net is empty".into()));
    }
    let count = 4 * d * ell;
    if n < count {
        return Err(Error::Infeasible(format!("{n} diagonal points cannot form {count} blocks")));
    }
    let size = n / count;
    let blocks: Vec<Range<usize>> = (0..count)
        .map(|i| i * size..if i + 1 == count { n } else { (i + 1) * size })
        .collect();

    let mut is_bad = vec![false; n];
    for x in net.iter() {
        for axis in 0..d {
            let below = pts.points().partition_point(|p| p[axis] <= x[axis]);
            let above = pts.points().partition_point(|p| p[axis] < x[axis]);
            if below > 0 {
                is_bad[below - 1] = true;
            }
            if above < n {
                is_bad[above] = true;
            }
        }
    }
    let good: Vec<usize> = (0..count)
        .filter(|&b| blocks[b].clone().all(|i| !is_bad[i]))
        .take(2 * d * ell)
        .collect();
    if good.len() < 2 * d * ell {
        return Err(Error::Infeasible("fewer good blocks than needed".into()));
    }
    let last_sep = 2 * d * ell - 1;

    let mut tuples = Vec::with_capacity(ell);
    let mut family = Vec::new();
    for x in net.iter() {
        let mut clamped = false;
        let tuple: Vec<usize> = (0..d)
            .map(|axis| {
                let below = good
                    .iter()
                    .filter(|&&b| pts.points()[blocks[b].end - 1][axis] < x[axis])
                    .count();
                if below == 0 || below > last_sep {
                    clamped = true;
                }
                below.clamp(1, last_sep)
            })
            .collect();
        let increasing = tuple.windows(2).all(|w| w[0] < w[1]);
        if increasing && !clamped && !family.contains(&tuple) {
            family.push(tuple.clone());
        }
        tuples.push(NetTuple { tuple, clamped, increasing });
    }
    family.sort();
    let k = ceil_int(&(int(count as i64) / r));
    Ok(StabReduction {
        ell,
        k: usize::try_from(k).map_err(|_| Error::Precondition("r must be positive".into()))?,
        blocks,
        bad: (0..n).filter(|&i| is_bad[i]).collect(),
        good,
        tuples,
        family: StabFamily::new(d, last_sep, family)?,
    })
}

/// Whether `ell >= z^(d)_k(ell)` with `k = ceil(4 d ell / r)`; an
/// unstabbable chain length counts as an infinite minimum.
pub fn net_size_covers_stabbing(d: usize, ell: usize, r: &Scalar) -> Result<bool> {
    let k = ceil_int(&(int((4 * d * ell) as i64) / r));
    let k = usize::try_from(k).map_err(|_| Error::Precondition("r must be positive".into()))?;
    Ok(match min_stabbing(d, k, ell)? {
        Some(f) => ell >= f.len(),
        None => false,
    })
}

/// Every `k`-chain on the separators `[1, n]` stabbed by `tuple`.
pub fn chains_stabbed_by(tuple: &[usize], k: usize, n: usize) -> Vec<IntervalChain> {
    enumerate_chains(k, n).into_iter().filter(|c| stabs(tuple, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::for_each_combination;
    use crate::convex::conv_contains;
    use crate::grid::build_grid;
    use crate::nets::weak_net::brute_force_weak_net_check;

    #[test]
    fn partition_layout() {
        let p = separated_blocks(18, 6).unwrap();
        assert_eq!(p.blocks, vec![0..1, 3..4, 6..7, 9..10, 12..13, 15..18]);
        assert_eq!(p.separators, vec![(1, 2), (4, 5), (7, 8), (10, 11), (13, 14)]);
        assert!(separated_blocks(9, 4).is_err());
        let q = separated_blocks(10, 1).unwrap();
        assert_eq!(q.blocks, vec![0..10]);
    }

    #[test]
    fn chain_length_contract() {
        assert_eq!(chain_length_for(6, &int(3)).unwrap(), 1);
        assert_eq!(chain_length_for(12, &int(3)).unwrap(), 3);
        assert!(chain_length_for(6, &int(6)).is_err());
        assert!(chain_length_for(4, &int(6)).is_err());
    }

    #[test]
    fn block_chains() {
        assert_eq!(block_chain(&[1, 3, 4]).unwrap().breakpoints(), &[1, 2, 3]);
        assert!(block_chain(&[2]).is_err());
    }

    #[test]
    fn constructed_net_is_a_weak_net_in_the_plane() {
        // ell = 4, r = 4/3: blocks of 3, 3, 3, 5 points and a family stabbing
        // every 2-chain on 3 separators; any 15 of the 20 points meet 3 blocks.
        let spec = build_grid(2, 20).unwrap();
        let diag = spec.diagonal(20).unwrap();
        let r = ratio(4, 3);
        let z = min_stabbing(2, 2, 3).unwrap().unwrap();
        let net = diag_net_from_stabbing(&diag, &r, 4, &z).unwrap();
        assert_eq!(net.len(), z.len());
        assert!(brute_force_weak_net_check(diag.points(), &net, &r).unwrap());
    }

    #[test]
    fn constructed_net_rejects_bad_families() {
        let spec = build_grid(2, 12).unwrap();
        let diag = spec.diagonal(12).unwrap();
        let empty = StabFamily::new(2, 3, vec![]).unwrap();
        assert!(matches!(
            diag_net_from_stabbing(&diag, &int(1), 4, &empty),
            Err(Error::Precondition(_))
        ));
        assert!(diag_net_from_stabbing(&diag, &int(4), 4, &empty).is_err());
    }

    #[test]
    fn reduction_tuples_stab_the_chains_of_witness_blocks() {
        let spec = build_grid(2, 24).unwrap();
        let diag = spec.diagonal(24).unwrap();
        let pts = diag.points();
        // between diagonal points 5 and 6 on axis 0 and between 14 and 15 on axis 1
        let mid = |i: usize, axis: usize| (&pts.points()[i][axis] + &pts.points()[i + 1][axis]) * ratio(1, 2);
        let x = Point::new(vec![mid(5, 0), mid(14, 1)]);
        let net = PointSet::new(2, vec![x.clone()]).unwrap();
        let red = net_to_stabbing(&diag, &net, &int(1)).unwrap();
        assert_eq!(red.blocks.len(), 8);
        assert_eq!(red.good.len(), 4);
        assert_eq!(red.bad, vec![5, 6, 14, 15]);
        assert_eq!(red.good, vec![0, 3, 6, 7]);
        let t = &red.tuples[0];
        assert_eq!(t.tuple, vec![1, 2]);
        assert!(!t.clamped && t.increasing);
        let mut witnessed = 0;
        for size in 3..=4 {
            for_each_combination(red.good.len(), size, |idx| {
                let members: Vec<usize> = idx.iter().flat_map(|&g| red.blocks[red.good[g]].clone()).collect();
                if conv_contains(&pts.subset(&members), &x).unwrap() {
                    let one_based: Vec<usize> = idx.iter().map(|&i| i + 1).collect();
                    assert!(stabs(&t.tuple, &block_chain(&one_based).unwrap()));
                    witnessed += 1;
                }
                true
            });
        }
        assert!(witnessed > 0);
    }

    #[test]
    fn reduction_flags_points_outside_the_diagonal_range() {
        let spec = build_grid(2, 16).unwrap();
        let diag = spec.diagonal(16).unwrap();
        let far = Point::new(vec![int(0), int(0)]);
        let net = PointSet::new(2, vec![far]).unwrap();
        let red = net_to_stabbing(&diag, &net, &int(1)).unwrap();
        assert!(red.tuples[0].clamped);
        assert!(red.family.is_empty());
        let whole = diag.points().clone();
        assert!(matches!(net_to_stabbing(&diag, &whole, &int(1)), Err(Error::Infeasible(_))));
    }

    #[test]
    fn net_size_covers_stabbing_on_tiny_parameters() {
        assert!(net_size_covers_stabbing(3, 2, &int(3)).unwrap());
        assert!(net_size_covers_stabbing(2, 3, &int(8)).unwrap());
    }
}
