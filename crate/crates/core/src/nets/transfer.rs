//! Moving nets between the unit cube and the stretched grid.
//!
//! The map `pi` sends the grid box onto the unit cube preserving order on
//! every axis. A stair-convex `eps`-net of size `s` for the cube pulls back
//! to a weak `eps'`-net for the grid and conversely, where
//! `eps' = eps + 2d(s+1)/m`. The converse direction reuses the constant of
//! the forward one.

use crate::error::{check_dim, Result};
use crate::geometry::PointSet;
use crate::grid::GridSpec;
use crate::scalar::{int, Scalar};

/// `eps + 2d(s+1)/m`.
pub fn transferred_epsilon(eps: &Scalar, s: usize, spec: &GridSpec) -> Scalar {
    eps + int(2 * spec.d() as i64 * (s as i64 + 1)) / int(spec.m() as i64)
}

/// `pi^-1(N)` and the weak-net parameter it achieves on the grid.
pub fn transfer_to_weak_net(net: &PointSet, eps: &Scalar, spec: &GridSpec) -> Result<(PointSet, Scalar)> {
    check_dim(spec.d(), net.dim())?;
    let pulled = net.iter().map(|u| spec.pi_inverse(u)).collect::<Result<Vec<_>>>()?;
    Ok((PointSet::new(spec.d(), pulled)?, transferred_epsilon(eps, net.len(), spec)))
}

/// `pi(N)` for a weak net inside the grid box, as a stair-convex net for the cube.
pub fn transfer_from_weak_net(net: &PointSet, eps: &Scalar, spec: &GridSpec) -> Result<(PointSet, Scalar)> {
    check_dim(spec.d(), net.dim())?;
    let pushed = net.iter().map(|p| spec.pi_map(p)).collect::<Result<Vec<_>>>()?;
    Ok((PointSet::new(spec.d(), pushed)?, transferred_epsilon(eps, net.len(), spec)))
}
