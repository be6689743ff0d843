//! Guard caps, overridable through environment variables.

use std::str::FromStr;

use anyhow::{anyhow, Result};

fn read<T: FromStr>(var: &str, default: T) -> Result<T> {
    match std::env::var(var) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("{var} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(default),
    }
}

pub fn grid_bits() -> Result<u64> {
    read("STAIRNET_GRID_BIT_CAP", stairnet::grid::DEFAULT_BIT_CAP)
}

pub fn family_size() -> Result<usize> {
    read("STAIRNET_FAMILY_CAP", stairnet::selection::DEFAULT_FAMILY_CAP)
}

pub fn tuples() -> Result<u64> {
    read("STAIRNET_TUPLE_CAP", stairnet::chains::stabbing::DEFAULT_TUPLE_CAP)
}

pub fn doublings() -> Result<usize> {
    read("STAIRNET_MAX_DOUBLINGS", stairnet::nets::certify::DEFAULT_MAX_DOUBLINGS)
}

pub fn ackermann_bits() -> Result<u64> {
    read("STAIRNET_ACK_BITS", stairnet::chains::ackermann::DEFAULT_ACK_BITS)
}

/// One line per cap, for `--help`.
pub const HELP: &str = "Guard caps (exit code 3 when tripped) can be raised through\n\
STAIRNET_GRID_BIT_CAP, STAIRNET_FAMILY_CAP, STAIRNET_TUPLE_CAP,\n\
STAIRNET_MAX_DOUBLINGS and STAIRNET_ACK_BITS.";
