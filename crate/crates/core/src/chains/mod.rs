//! The Ackermann hierarchy, interval chains and their link to weak nets for
//! the diagonal of the stretched grid.

pub mod ackermann;
pub mod diagonal;
pub mod stabbing;

pub use ackermann::{ackermann, ackermann_a, alpha, alpha_k, beta_d, check_lemma10, p3, q3};
pub use diagonal::{diag_net_from_stabbing, net_to_stabbing, BlockPartition, StabReduction};
pub use stabbing::{enumerate_chains, min_stabbing, stabs, IntervalChain, StabFamily};
