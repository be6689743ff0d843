//! Directed rational enclosures of `e`, `ln` and `log2`.
//!
//! Each function returns `[lo, hi]` with `lo <= true value <= hi`, both
//! endpoints dyadic rationals. Series tails are bounded explicitly, so the
//! enclosures are certified rather than approximate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{big, ceil_dyadic, exact_log2, floor_dyadic, int, pow2, ratio, Scalar};

/// Default precision (fractional bits) for enclosures.
pub const DEFAULT_BITS: u32 = 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Enclosure {
    pub fn exact(x: Scalar) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    fn rounded(lo: &Scalar, hi: &Scalar, bits: u32) -> Self {
        Enclosure {
            lo: floor_dyadic(lo, bits),
            hi: ceil_dyadic(hi, bits),
        }
    }
}

/// `e = sum 1/k!`, with the tail after `K` terms bounded by `2/(K+1)!`.
pub fn e_enclosure(bits: u32) -> Enclosure {
    let target = pow2(-(i64::from(bits) + 4));
    let mut sum = int(0);
    let mut term = int(1);
    let mut k = 0i64;
    loop {
        sum += &term;
        k += 1;
        term /= int(k);
        let tail = &term * int(2);
        if tail < target {
            return Enclosure::rounded(&sum, &(&sum + tail), bits);
        }
    }
}

/// Bounds `atanh(z) = sum z^(2i+1)/(2i+1)` for `0 <= z <= 1/3`; the tail
/// from index `i` on is at most `z^(2i+1) / ((2i+1)(1 - z^2)) <= 9/8 z^(2i+1)/(2i+1)`.
fn atanh_bounds(z: &Scalar, bits: u32) -> (Scalar, Scalar) {
    debug_assert!(!z.is_negative() && *z <= ratio(1, 3));
    let target = pow2(-(i64::from(bits) + 6));
    let z2 = z * z;
    let mut sum = int(0);
    let mut power = z.clone();
    let mut i = 0i64;
    loop {
        sum += &power / int(2 * i + 1);
        power *= &z2;
        i += 1;
        let tail = &power * ratio(9, 8) / int(2 * i + 1);
        if tail < target || power.is_zero() {
            return (sum.clone(), sum + tail);
        }
        // keep denominators bounded
        if i % 8 == 0 {
            power = ceil_dyadic(&power, bits + 32);
        }
    }
}

pub fn ln2_enclosure(bits: u32) -> Enclosure {
    let (lo, hi) = atanh_bounds(&ratio(1, 3), bits + 4);
    Enclosure::rounded(&(lo * int(2)), &(hi * int(2)), bits)
}

/// Enclosure of the natural logarithm of a positive rational.
pub fn ln_enclosure(x: &Scalar, bits: u32) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(Error::OutOfDomain(format!("ln of non-positive value {x}")));
    }
    if *x < int(1) {
        let inv = ln_enclosure(&x.recip(), bits)?;
        return Ok(Enclosure {
            lo: -inv.hi,
            hi: -inv.lo,
        });
    }
    // x = 2^a * y with y in [1, 2)
    let a = (x.numer().bits() as i64) - (x.denom().bits() as i64);
    let mut a = a.max(0);
    while x < &pow2(a) {
        a -= 1;
    }
    while x >= &pow2(a + 1) {
        a += 1;
    }
    let y = x / pow2(a);
    let work = bits + 8 + 64 - (a.max(1) as u64).leading_zeros();
    let y_lo = floor_dyadic(&y, work + 4);
    let y_hi = ceil_dyadic(&y, work + 4).min(int(2));
    let z = |y: &Scalar| (y - int(1)) / (y + int(1));
    let (lo_y, _) = atanh_bounds(&z(&y_lo), work);
    let (_, hi_y) = atanh_bounds(&z(&y_hi), work);
    let ln2 = ln2_enclosure(work);
    let lo = &ln2.lo * int(a) + lo_y * int(2);
    let hi = &ln2.hi * int(a) + hi_y * int(2);
    Ok(Enclosure::rounded(&lo, &hi, bits))
}

/// Enclosure of `log2(n)` for a positive integer; exact for powers of two.
pub fn log2_enclosure(n: &BigInt, bits: u32) -> Result<Enclosure> {
    if let Some(k) = exact_log2(n) {
        return Ok(Enclosure::exact(int(k as i64)));
    }
    let ln_n = ln_enclosure(&big(n.clone()), bits + 8)?;
    let ln2 = ln2_enclosure(bits + 8);
    if ln_n.lo.is_negative() {
        return Err(Error::OutOfDomain(format!("log2 of {n}")));
    }
    Ok(Enclosure::rounded(
        &(&ln_n.lo / &ln2.hi),
        &(&ln_n.hi / &ln2.lo),
        bits,
    ))
}

/// Decides `x < e^-1`, `x > e^-1` exactly by refining until the enclosure
/// separates (a rational never equals `1/e`).
pub fn compare_with_inverse_e(x: &Scalar) -> std::cmp::Ordering {
    let mut bits = 32;
    loop {
        let e = e_enclosure(bits);
        if x * &e.hi < Scalar::one() {
            return std::cmp::Ordering::Less;
        }
        if x * &e.lo > Scalar::one() {
            return std::cmp::Ordering::Greater;
        }
        bits *= 2;
    }
}
