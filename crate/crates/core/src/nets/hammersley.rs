//! Hammersley point sets.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::scalar::{ratio, Scalar};

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut n = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0) {
            primes.push(n);
        }
        n += 1;
    }
    primes
}

/// Digits of `i` in `base` mirrored about the radix point.
pub fn radical_inverse(mut i: u64, base: u64) -> Scalar {
    let mut num = BigInt::from(0);
    let mut den = BigInt::from(1);
    while i > 0 {
        num = num * base + i % base;
        den *= base;
        i /= base;
    }
    Scalar::new(num, den)
}

/// `(i/s, phi_2(i), phi_3(i), ...)` for `i = 0..s`, using the first `d - 1`
/// primes as radical-inverse bases.
pub fn hammersley(s: usize, d: usize) -> Result<PointSet> {
    if s == 0 || d == 0 {
        return Err(Error::Precondition(format!("hammersley needs s, d >= 1, got s = {s}, d = {d}")));
    }
    let bases = first_primes(d - 1);
    let points = (0..s as u64)
        .map(|i| {
            let mut coords = vec![ratio(i as i64, s as i64)];
            coords.extend(bases.iter().map(|&b| radical_inverse(i, b)));
            Point::new(coords)
        })
        .collect();
    PointSet::new(d, points)
}
