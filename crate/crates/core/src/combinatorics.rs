//! Small enumeration helpers.

use num_bigint::BigUint;

/// Visits the `k`-subsets of `0..n` in lexicographic order. The callback
/// returns `false` to stop.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return true;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Visits every index vector of the product `0..sizes[0] x ... `.
pub fn for_each_product(sizes: &[usize], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if sizes.iter().any(|&s| s == 0) {
        return true;
    }
    let mut idx = vec![0usize; sizes.len()];
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == sizes.len() {
                return true;
            }
            idx[i] += 1;
            if idx[i] < sizes[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `binomial(n, k)` saturating at `u64::MAX`.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    u64::try_from(binomial(n, k)).unwrap_or(u64::MAX)
}

/// All compositions of `k` into `d` positive parts, in lexicographic order.
pub fn compositions(k: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d == 0 || k < d {
        return out;
    }
    let mut cur = Vec::with_capacity(d);
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    rec(k, d, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_complete_and_ordered() {
        let mut seen = Vec::new();
        for_each_combination(5, 3, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));

        let mut count = 0;
        for_each_combination(4, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
        for_each_combination(2, 3, |_| panic!("no 3-subsets of 2 elements"));
    }

    #[test]
    fn early_stop() {
        let mut count = 0;
        let finished = for_each_combination(6, 2, |_| {
            count += 1;
            count < 4
        });
        assert!(!finished);
        assert_eq!(count, 4);
    }

    #[test]
    fn products() {
        let mut seen = Vec::new();
        for_each_product(&[2, 3], |i| {
            seen.push(i.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 0]);
    }

    #[test]
    fn binomials_and_compositions() {
        assert_eq!(binomial_u64(5, 2), 10);
        assert_eq!(binomial_u64(3, 5), 0);
        assert_eq!(binomial_u64(900, 3), 121_095_300);
        for k in 1..9 {
            for d in 1..=k {
                assert_eq!(compositions(k, d).len() as u64, binomial_u64(k as u64 - 1, d as u64 - 1));
            }
        }
        assert_eq!(compositions(5, 2), vec![vec![1, 4], vec![2, 3], vec![3, 2], vec![4, 1]]);
    }
}
