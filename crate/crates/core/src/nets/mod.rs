//! Epsilon-nets for stair-convex sets and their transfer to weak nets.
//!
//! The refuter searches for a large empty stair-convex set built from a fan
//! of equal-volume boxes; the certificate bounds every empty stair-convex
//! set through the largest empty axis-parallel box.

pub mod certify;
pub mod empty_box;
pub mod fan;
pub mod hammersley;
pub mod transfer;
pub mod weak_net;

pub use certify::{build_stair_net, certify_stair_net, stair_volume_bound, CertifyOutcome, NetCertificate};
pub use empty_box::largest_empty_box;
pub use fan::{box_types, choose_k, normal_box, refute_net, BoxType, Fan, RefuteOutcome, RefuteWitness};
pub use hammersley::hammersley;
pub use transfer::{transfer_from_weak_net, transfer_to_weak_net};
pub use weak_net::brute_force_weak_net_check;
