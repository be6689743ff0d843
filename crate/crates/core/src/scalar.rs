//! Exact rational scalars and their text encoding.
//!
//! Every real quantity in the crate is a [`Scalar`], an arbitrary-precision
//! rational kept in canonical form (reduced, positive denominator). The text
//! encoding used by all JSON artifacts is `"num/den"`, always with an
//! explicit denominator, so a round trip is bit-exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Scalar {
    Scalar::from_integer(n)
}

/// `num/den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Scalar {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        big(p)
    } else {
        Scalar::new(BigInt::one(), p)
    }
}

pub fn ceil_int(x: &Scalar) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_int(x: &Scalar) -> BigInt {
    x.floor().to_integer()
}

/// Canonical `"num/den"` encoding.
pub fn format_scalar(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.125"`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Scalar::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mag: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        let value = Scalar::new(mag, den);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(big(n))
}

/// Parses a comma-separated coordinate list such as `"1/2,3,0.25"`.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Scalar>> {
    text.split(',').map(parse_scalar).collect()
}

/// Rounds `x` down to a multiple of `2^-bits`.
pub fn floor_dyadic(x: &Scalar, bits: u32) -> Scalar {
    let scale = BigInt::one() << bits;
    let scaled = x * big(scale.clone());
    Scalar::new(floor_int(&scaled), scale)
}

/// Rounds `x` up to a multiple of `2^-bits`.
pub fn ceil_dyadic(x: &Scalar, bits: u32) -> Scalar {
    let scale = BigInt::one() << bits;
    let scaled = x * big(scale.clone());
    Scalar::new(ceil_int(&scaled), scale)
}

/// Binary logarithm of a positive integer, if it is an exact power of two.
pub fn exact_log2(n: &BigInt) -> Option<u64> {
    if !n.is_positive() {
        return None;
    }
    let bits = n.bits() - 1;
    if (BigInt::one() << bits) == *n {
        Some(bits)
    } else {
        None
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub(crate) mod serde_scalar {
    use super::{format_scalar, parse_scalar, Scalar};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(D::Error::custom)
    }
}

pub(crate) mod serde_scalar_vec {
    use super::{format_scalar, parse_scalar, Scalar};
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_scalar(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_scalar(t).map_err(D::Error::custom))
            .collect()
    }
}
