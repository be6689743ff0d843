//! Interval chains and exact minimum stabbing families.
//!
//! A `k`-chain in `[1, n]` is `[a_1, a_2][a_2+1, a_3]...[a_k+1, a_(k+1)]`
//! with `a_1 <= a_2 < ... < a_(k+1)`. A `j`-tuple `p_1 < ... < p_j` stabs a
//! chain when its entries fall in `j` different intervals. The minimum
//! number of `j`-tuples stabbing every `k`-chain in `[1, n]` is found by
//! branch-and-bound set cover.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial_u64, for_each_combination};
use crate::error::{Error, Result};

/// Default cap on the number of candidate tuples `binomial(n, j)`.
pub const DEFAULT_TUPLE_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntervalChain {
    breakpoints: Vec<usize>,
}

impl TryFrom<Vec<usize>> for IntervalChain {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        IntervalChain::new(v)
    }
}

impl From<IntervalChain> for Vec<usize> {
    fn from(c: IntervalChain) -> Self {
        c.breakpoints
    }
}

impl IntervalChain {
    /// Breakpoints `a_1 <= a_2 < a_3 < ... < a_(k+1)`, with `a_1 >= 1`.
    pub fn new(breakpoints: Vec<usize>) -> Result<Self> {
        let ok = breakpoints.len() >= 2
            && breakpoints[0] >= 1
            && breakpoints[0] <= breakpoints[1]
            && breakpoints[1..].windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::Precondition(format!("invalid chain breakpoints {breakpoints:?}")));
        }
        Ok(IntervalChain { breakpoints })
    }

    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    /// Number of intervals.
    pub fn k(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// Closed integer intervals `(lo, hi)`.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let a = &self.breakpoints;
        (0..self.k())
            .map(|i| (if i == 0 { a[0] } else { a[i] + 1 }, a[i + 1]))
            .collect()
    }

    /// Index of the interval containing `p`.
    pub fn interval_of(&self, p: usize) -> Option<usize> {
        let a = &self.breakpoints;
        if p < a[0] || p > a[self.k()] {
            return None;
        }
        Some(a[1..].partition_point(|&b| b < p))
    }
}

/// All `k`-chains in `[1, n]`, in lexicographic order of breakpoints.
pub fn enumerate_chains(k: usize, n: usize) -> Vec<IntervalChain> {
    let mut out = Vec::new();
    if k == 0 || n < k {
        return out;
    }
    // a_1 <= a_2 < ... < a_(k+1) in [1, n] corresponds to a_1 < a_2 + 1 < ... shifted
    for_each_combination(n + 1, k + 1, |idx| {
        let mut b: Vec<usize> = idx.iter().map(|&i| i + 1).collect();
        b[0] = idx[0] + 1;
        for v in b[1..].iter_mut() {
            *v -= 1;
        }
        out.push(IntervalChain { breakpoints: b });
        true
    });
    out
}

/// True iff the entries of `tuple` fall in distinct intervals of `chain`.
pub fn stabs(tuple: &[usize], chain: &IntervalChain) -> bool {
    let mut last: Option<usize> = None;
    for &p in tuple {
        match chain.interval_of(p) {
            Some(i) if last.map_or(true, |l| i > l) => last = Some(i),
            _ => return false,
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabFamily {
    pub j: usize,
    pub n: usize,
    pub tuples: Vec<Vec<usize>>,
}

impl StabFamily {
    pub fn new(j: usize, n: usize, tuples: Vec<Vec<usize>>) -> Result<Self> {
        for t in &tuples {
            let ok = t.len() == j && t.first().map_or(true, |&x| x >= 1) && t.last().map_or(true, |&x| x <= n)
                && t.windows(2).all(|w| w[0] < w[1]);
            if !ok {
                return Err(Error::Precondition(format!("tuple {t:?} is not increasing within [1, {n}]")));
            }
        }
        Ok(StabFamily { j, n, tuples })
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// The first `k`-chain in `[1, n]` that no tuple stabs.
    pub fn first_unstabbed(&self, k: usize) -> Option<IntervalChain> {
        enumerate_chains(k, self.n)
            .into_iter()
            .find(|c| !self.tuples.iter().any(|t| stabs(t, c)))
    }

    pub fn stabs_all(&self, k: usize) -> bool {
        self.first_unstabbed(k).is_none()
    }
}

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn and_count(&self, other: &Bits) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn remove(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Set-cover instance after dominance reduction: `cover[t]` is the set of
/// chains stabbed by tuple `t`, `stabbers[c]` the tuples stabbing chain `c`.
struct Instance {
    tuples: Vec<Vec<usize>>,
    cover: Vec<Bits>,
    stabbers: Vec<Bits>,
    chains: usize,
}

impl Instance {
    fn build(j: usize, k: usize, n: usize) -> Option<Instance> {
        let chains = enumerate_chains(k, n);
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        for_each_combination(n, j, |idx| {
            tuples.push(idx.iter().map(|&i| i + 1).collect());
            true
        });
        let mut cover: Vec<Bits> = tuples
            .iter()
            .map(|t| {
                let mut b = Bits::new(chains.len());
                for (ci, c) in chains.iter().enumerate() {
                    if stabs(t, c) {
                        b.set(ci);
                    }
                }
                b
            })
            .collect();

        // Drop tuples whose cover is inside another tuple's cover.
        let mut keep = vec![true; tuples.len()];
        for a in 0..tuples.len() {
            if cover[a].is_zero() {
                keep[a] = false;
                continue;
            }
            for b in 0..tuples.len() {
                if a != b && keep[b] && cover[a].subset_of(&cover[b]) && (!cover[b].subset_of(&cover[a]) || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut kept = 0;
        for i in 0..tuples.len() {
            if keep[i] {
                tuples.swap(kept, i);
                cover.swap(kept, i);
                kept += 1;
            }
        }
        tuples.truncate(kept);
        cover.truncate(kept);

        let mut stabbers: Vec<Bits> = (0..chains.len()).map(|_| Bits::new(tuples.len())).collect();
        for (t, c) in cover.iter().enumerate() {
            for ci in c.ones() {
                stabbers[ci].set(t);
            }
        }
        if stabbers.iter().any(Bits::is_zero) {
            return None;
        }

        // A chain whose stabbers include all stabbers of another chain is
        // covered whenever that one is.
        let mut needed = vec![true; chains.len()];
        for a in 0..chains.len() {
            for b in 0..chains.len() {
                if a != b && needed[b] && stabbers[b].subset_of(&stabbers[a]) && (!stabbers[a].subset_of(&stabbers[b]) || b < a) {
                    needed[a] = false;
                    break;
                }
            }
        }
        let kept_chains: Vec<usize> = (0..chains.len()).filter(|&c| needed[c]).collect();
        let stabbers: Vec<Bits> = kept_chains.iter().map(|&c| stabbers[c].clone()).collect();
        let cover: Vec<Bits> = (0..tuples.len())
            .map(|t| {
                let mut b = Bits::new(kept_chains.len());
                for (i, s) in stabbers.iter().enumerate() {
                    if s.get(t) {
                        b.set(i);
                    }
                }
                b
            })
            .collect();
        Some(Instance {
            tuples,
            cover,
            stabbers,
            chains: kept_chains.len(),
        })
    }

    fn all_chains(&self) -> Bits {
        let mut b = Bits::new(self.chains);
        for c in 0..self.chains {
            b.set(c);
        }
        b
    }

    fn greedy(&self) -> Vec<usize> {
        let mut open = self.all_chains();
        let mut picked = Vec::new();
        while !open.is_zero() {
            let best = (0..self.tuples.len())
                .max_by_key(|&t| (self.cover[t].and_count(&open), std::cmp::Reverse(t)))
                .expect("every chain has a stabber");
            open.remove(&self.cover[best]);
            picked.push(best);
        }
        picked
    }

    /// Open chains with pairwise disjoint stabber sets each need their own tuple.
    fn packing_bound(&self, open: &Bits) -> usize {
        let mut order: Vec<usize> = open.ones().collect();
        order.sort_by_key(|&c| self.stabbers[c].count());
        let mut used = Bits::new(self.tuples.len());
        let mut count = 0;
        for c in order {
            if !self.stabbers[c].intersects(&used) {
                used.union_with(&self.stabbers[c]);
                count += 1;
            }
        }
        count
    }

    fn search(&self, open: &Bits, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if open.is_zero() {
            if chosen.len() < best.len() {
                *best = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.packing_bound(open) >= best.len() {
            return;
        }
        let branch = open
            .ones()
            .min_by_key(|&c| self.stabbers[c].count())
            .expect("open set is nonempty");
        let mut options: Vec<usize> = self.stabbers[branch].ones().collect();
        options.sort_by_key(|&t| std::cmp::Reverse(self.cover[t].and_count(open)));
        for t in options {
            let mut next = open.clone();
            next.remove(&self.cover[t]);
            chosen.push(t);
            self.search(&next, chosen, best);
            chosen.pop();
        }
    }
}

/// A minimum family of `j`-tuples stabbing every `k`-chain in `[1, n]`, or
/// `None` when no family exists (some chain has fewer than `j` intervals).
pub fn min_stabbing(j: usize, k: usize, n: usize) -> Result<Option<StabFamily>> {
    min_stabbing_capped(j, k, n, DEFAULT_TUPLE_CAP)
}

pub fn min_stabbing_capped(j: usize, k: usize, n: usize, cap: u64) -> Result<Option<StabFamily>> {
    if j == 0 || k == 0 {
        return Err(Error::Precondition(format!("need j, k >= 1, got j = {j}, k = {k}")));
    }
    if n < k {
        return Ok(Some(StabFamily { j, n, tuples: Vec::new() }));
    }
    if j > k {
        return Ok(None);
    }
    let size = binomial_u64(n as u64, j as u64);
    if size > cap {
        return Err(Error::guard("stabbing tuple candidates", size, cap));
    }
    let Some(inst) = Instance::build(j, k, n) else {
        return Ok(None);
    };
    let mut best = inst.greedy();
    let mut chosen = Vec::new();
    inst.search(&inst.all_chains(), &mut chosen, &mut best);
    let mut tuples: Vec<Vec<usize>> = best.iter().map(|&t| inst.tuples[t].clone()).collect();
    tuples.sort();
    Ok(Some(StabFamily { j, n, tuples }))
}
