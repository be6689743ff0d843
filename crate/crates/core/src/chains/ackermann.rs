//! The Ackermann hierarchy, its inverses and the derived bound `beta_d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enclosure::{log2_enclosure, Enclosure, DEFAULT_BITS};
use crate::error::{Error, Result};
use crate::scalar::{big, ceil_int, format_scalar, int, Scalar};

/// Default cap on the bit length of hierarchy values.
pub const DEFAULT_ACK_BITS: u64 = 1 << 20;

/// `A_k(n)`: `A_1(n) = 2n`, `A_k(0) = 1`, `A_k(n) = A_(k-1)(A_k(n-1))`.
pub fn ackermann_a(k: u32, n: u64) -> Result<BigInt> {
    ackermann_a_capped(k, n, DEFAULT_ACK_BITS)
}

pub fn ackermann_a_capped(k: u32, n: u64, bit_cap: u64) -> Result<BigInt> {
    match k {
        0 => Err(Error::Precondition("hierarchy levels start at 1".into())),
        1 => Ok(BigInt::from(n) * 2),
        2 => {
            if n >= bit_cap {
                return Err(Error::guard("Ackermann value bits", n + 1, bit_cap));
            }
            Ok(BigInt::one() << n)
        }
        _ => {
            let mut v = BigInt::one();
            for _ in 0..n {
                let arg = v
                    .to_u64()
                    .ok_or_else(|| Error::guard("Ackermann argument bits", v.bits(), 64))?;
                v = ackermann_a_capped(k - 1, arg, bit_cap)?;
            }
            Ok(v)
        }
    }
}

/// `A(n) = A_n(3)`.
pub fn ackermann(n: u32) -> Result<BigInt> {
    ackermann_a(n, 3)
}

/// `alpha_k` on integers, iterating the lower level until the value drops to 1.
fn alpha_k_int(k: u32, x: &BigInt) -> BigInt {
    match k {
        1 => x.div_ceil(&BigInt::from(2)),
        _ if x <= &BigInt::one() => BigInt::zero(),
        2 => BigInt::from((x - 1u32).bits()),
        _ => {
            let mut count = BigInt::zero();
            let mut v = x.clone();
            while v > BigInt::one() {
                v = alpha_k_int(k - 1, &v);
                count += 1;
            }
            count
        }
    }
}

/// `alpha_k(x) = min { n : A_k(n) >= x }`, evaluated through the recursive
/// form; since `A_k` is integer valued this equals `alpha_k(ceil x)`.
pub fn alpha_k(k: u32, x: &Scalar) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::Precondition("hierarchy levels start at 1".into()));
    }
    if x.is_negative() {
        return Err(Error::OutOfDomain(format!("alpha of negative {}", format_scalar(x))));
    }
    Ok(alpha_k_int(k, &ceil_int(x)))
}

/// `alpha(x) = min { k : alpha_k(x) <= 3 }`.
pub fn alpha(x: &Scalar) -> Result<u32> {
    if x.is_negative() {
        return Err(Error::OutOfDomain(format!("alpha of negative {}", format_scalar(x))));
    }
    let c = ceil_int(x);
    let three = BigInt::from(3);
    Ok((1..).find(|&k| alpha_k_int(k, &c) <= three).expect("levels eventually drop below 4"))
}

/// `alpha(x)` as `min { n : A(n) >= x }`; values of `A(n)` too large to
/// represent count as exceeding `x`.
pub fn alpha_via_ackermann(x: &Scalar) -> Result<u32> {
    if x.is_negative() {
        return Err(Error::OutOfDomain(format!("alpha of negative {}", format_scalar(x))));
    }
    for n in 1.. {
        match ackermann(n) {
            Ok(a) => {
                if big(a) >= *x {
                    return Ok(n);
                }
            }
            Err(e) if e.is_guard() => return Ok(n),
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

/// `beta_d(r) = alpha^t / t!` for even `d` and `alpha^t log2(alpha) / t!`
/// for odd `d`, with `t = floor(d/2) - 1` and `alpha = alpha(r)`.
pub fn beta_d(d: usize, r: &Scalar) -> Result<Enclosure> {
    if d < 3 {
        return Err(Error::Precondition(format!("beta_d needs d >= 3, got {d}")));
    }
    if r < &int(1) {
        return Err(Error::Precondition(format!("beta_d needs r >= 1, got {}", format_scalar(r))));
    }
    let t = d / 2 - 1;
    let a = alpha(r)?;
    let factorial: u64 = (1..=t as u64).product();
    let base = big(BigInt::from(a).pow(t as u32)) / int(factorial as i64);
    if d % 2 == 0 {
        return Ok(Enclosure::exact(base));
    }
    let log = log2_enclosure(&BigInt::from(a), DEFAULT_BITS)?;
    Ok(Enclosure {
        lo: &base * log.lo,
        hi: &base * log.hi,
    })
}

/// Evaluates both sides of `alpha_(alpha(x)-3)(x) > A(alpha(x) - 2)`.
pub fn check_lemma10(x: &Scalar) -> Result<bool> {
    let a = alpha(x)?;
    if a < 4 {
        return Err(Error::Precondition(format!(
            "alpha({}) = {a} is below 4",
            format_scalar(x)
        )));
    }
    let lhs = alpha_k(a - 3, x)?;
    let rhs = ackermann(a - 2)?;
    Ok(lhs > rhs)
}

/// `Q_3(m) = 2m + 1`.
pub fn q3(m: u64) -> Result<u64> {
    if m < 3 {
        return Err(Error::Precondition(format!("q3 needs m >= 3, got {m}")));
    }
    Ok(2 * m + 1)
}

/// `P_3(m) = 2m`.
pub fn p3(m: u64) -> Result<u64> {
    if m < 3 {
        return Err(Error::Precondition(format!("p3 needs m >= 3, got {m}")));
    }
    Ok(2 * m)
}

/// Growth of the chain-length thresholds for `j >= 4`; only the asymptotic
/// form is known, so no numeric evaluator exists.
pub fn threshold_asymptotics(j: usize) -> &'static str {
    match (j, j % 2) {
        (0..=2, _) => "undefined below j = 3",
        (3, _) => "Q_3(m) = 2m + 1, P_3(m) = 2m",
        (4, _) => "Q_4(m) = Omega(2^m), P_4(m) = O(2^m)",
        (_, 0) => "Q_j(m), P_j(m) = 2^((1/t!) m^t +- O(m^(t-1))), t = floor(j/2) - 1",
        _ => "Q_j(m), P_j(m) = 2^((1/t!) m^t log2 m +- O(m^t)), t = floor(j/2) - 1",
    }
}
