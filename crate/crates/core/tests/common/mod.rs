//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

/// Every `k`-chain in `[1, n]` as its list of closed intervals.
pub fn naive_chains(k: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    fn extend(k: usize, n: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        let start = acc.last().map_or(1, |&(_, hi)| hi + 1);
        let firsts: Vec<usize> = if acc.is_empty() { (1..=n).collect() } else { vec![start] };
        for lo in firsts {
            for hi in lo..=n {
                acc.push((lo, hi));
                extend(k, n, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        extend(k, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Each entry in a different interval of the chain.
pub fn naive_stabs(tuple: &[usize], chain: &[(usize, usize)]) -> bool {
    let mut used = vec![false; chain.len()];
    for &p in tuple {
        match chain.iter().position(|&(lo, hi)| lo <= p && p <= hi) {
            Some(i) if !used[i] => used[i] = true,
            _ => return false,
        }
    }
    true
}

/// Increasing `j`-tuples in `[1, n]`.
pub fn naive_tuples(j: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..j {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                let from = t.last().map_or(1, |&l| l + 1);
                (from..=n).map(move |v| {
                    let mut u = t.clone();
                    u.push(v);
                    u
                })
            })
            .collect();
    }
    out
}

/// Size of a smallest family of `j`-tuples stabbing every `k`-chain in
/// `[1, n]`, by iterative deepening over the first unstabbed chain; `None`
/// when some chain cannot be stabbed at all.
pub fn naive_min_stabbing(j: usize, k: usize, n: usize) -> Option<usize> {
    let chains = naive_chains(k, n);
    let tuples = naive_tuples(j, n);
    let covers: Vec<Vec<usize>> = chains
        .iter()
        .map(|c| (0..tuples.len()).filter(|&t| naive_stabs(&tuples[t], c)).collect())
        .collect();
    if covers.iter().any(Vec::is_empty) {
        return None;
    }
    fn search(covers: &[Vec<usize>], chosen: &mut Vec<usize>, budget: usize) -> bool {
        let open = covers.iter().find(|c| !c.iter().any(|t| chosen.contains(t)));
        let Some(open) = open else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for &t in open {
            chosen.push(t);
            if search(covers, chosen, budget - 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    (0..).find(|&size| search(&covers, &mut Vec::new(), size))
}

/// A family of `k`-chains whose stabber sets are pairwise disjoint, so any
/// stabbing family needs at least one tuple per chain. Chains are taken
/// greedily in order of their number of stabbers.
pub fn disjoint_chain_packing(j: usize, k: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    let tuples = naive_tuples(j, n);
    let mut chains: Vec<(Vec<usize>, Vec<(usize, usize)>)> = naive_chains(k, n)
        .into_iter()
        .map(|c| ((0..tuples.len()).filter(|&t| naive_stabs(&tuples[t], &c)).collect(), c))
        .collect();
    chains.sort_by_key(|(s, _)| s.len());
    let mut used = vec![false; tuples.len()];
    let mut packing = Vec::new();
    for (stabbers, chain) in chains {
        if stabbers.iter().all(|&t| !used[t]) {
            for &t in &stabbers {
                used[t] = true;
            }
            packing.push(chain);
        }
    }
    packing
}
