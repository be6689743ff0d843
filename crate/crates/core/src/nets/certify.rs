//! Certified epsilon-nets for stair-convex sets.
//!
//! A stair-convex set in the unit cube that contains no axis-parallel box of
//! volume above `v <= 1/e` has volume at most `e v ln^(d-1)(1/v)`. With `v`
//! the exact largest empty box of `N`, an outward-rounded bound below `eps`
//! proves that `N` meets every stair-convex set of volume `eps`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::enclosure::{compare_with_inverse_e, e_enclosure, ln_enclosure};
use crate::geometry::{AxisBox, PointSet};
use crate::nets::empty_box::largest_empty_box;
use crate::nets::hammersley::hammersley;
use crate::scalar::{ceil_dyadic, ceil_int, format_scalar, int, serde_scalar, Scalar};

/// Fractional bits used for the enclosures of `e` and `ln`.
const BOUND_BITS: u32 = 40;

/// Default number of doublings tried by [`build_stair_net`].
pub const DEFAULT_MAX_DOUBLINGS: usize = 16;

/// Outward-rounded upper bound on `e v ln^(d-1)(1/v)`, within `2^-20` of
/// the true value for `v` not too close to zero.
pub fn stair_volume_bound(v: &Scalar, d: usize) -> Result<Scalar> {
    if v <= &int(0) {
        return Err(Error::OutOfDomain(format!("box volume {} must be positive", format_scalar(v))));
    }
    if d == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    if compare_with_inverse_e(v) == Ordering::Greater {
        return Err(Error::Precondition(format!(
            "box volume {} exceeds 1/e",
            format_scalar(v)
        )));
    }
    let e = e_enclosure(BOUND_BITS);
    let mut bound = e.hi * v;
    if d > 1 {
        let ln = ln_enclosure(&v.recip(), BOUND_BITS)?;
        for _ in 1..d {
            bound *= &ln.hi;
        }
    }
    Ok(ceil_dyadic(&bound, BOUND_BITS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetCertificate {
    pub net: PointSet,
    #[serde(with = "serde_scalar")]
    pub epsilon: Scalar,
    /// Volume of the largest box whose interior avoids the net.
    #[serde(with = "serde_scalar")]
    pub v: Scalar,
    pub empty_box: AxisBox,
    #[serde(with = "serde_scalar")]
    pub bound: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certified(NetCertificate),
    /// The volume lemma does not apply or its bound is too weak. This says
    /// nothing about whether the set is a net.
    Failed { v: Scalar, bound: Option<Scalar> },
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&NetCertificate> {
        match self {
            CertifyOutcome::Certified(c) => Some(c),
            CertifyOutcome::Failed { .. } => None,
        }
    }
}

pub fn certify_stair_net(net: &PointSet, eps: &Scalar) -> Result<CertifyOutcome> {
    let (empty_box, v) = largest_empty_box(net)?;
    if compare_with_inverse_e(&v) == Ordering::Greater {
        return Ok(CertifyOutcome::Failed { v, bound: None });
    }
    let bound = stair_volume_bound(&v, net.dim())?;
    if &bound >= eps {
        return Ok(CertifyOutcome::Failed { v, bound: Some(bound) });
    }
    Ok(CertifyOutcome::Certified(NetCertificate {
        net: net.clone(),
        epsilon: eps.clone(),
        v,
        empty_box,
        bound,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltNet {
    pub certificate: NetCertificate,
    /// Every size tried, with its largest empty-box volume.
    pub attempts: Vec<(usize, Scalar)>,
}

impl BuiltNet {
    pub fn net(&self) -> &PointSet {
        &self.certificate.net
    }
}

/// Doubles the Hammersley size from `ceil(r)` until the set certifies as a
/// `1/r`-net.
pub fn build_stair_net(r: &Scalar, d: usize) -> Result<BuiltNet> {
    build_stair_net_capped(r, d, DEFAULT_MAX_DOUBLINGS)
}

pub fn build_stair_net_capped(r: &Scalar, d: usize, max_doublings: usize) -> Result<BuiltNet> {
    if r < &int(1) {
        return Err(Error::Precondition(format!("r = {} must be at least 1", format_scalar(r))));
    }
    let eps = r.recip();
    let mut s: usize = ceil_int(r)
        .try_into()
        .map_err(|_| Error::guard("initial net size", r, usize::MAX))?;
    let mut attempts = Vec::new();
    for _ in 0..=max_doublings {
        let net = hammersley(s, d)?;
        let outcome = certify_stair_net(&net, &eps)?;
        match outcome {
            CertifyOutcome::Certified(certificate) => {
                attempts.push((s, certificate.v.clone()));
                return Ok(BuiltNet { certificate, attempts });
            }
            CertifyOutcome::Failed { v, .. } => attempts.push((s, v)),
        }
        s *= 2;
    }
    Err(Error::guard("stair-net doublings", max_doublings + 1, max_doublings))
}
