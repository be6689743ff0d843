use anyhow::Result;
use clap::Subcommand;
use stairnet::chains::ackermann::{ackermann_a_capped, alpha, alpha_k, beta_d};
use stairnet::chains::stabbing::min_stabbing_capped;
use stairnet::scalar::format_scalar;
use stairnet::Scalar;

use super::scalar_arg;
use crate::{caps, io};

#[derive(Subcommand)]
pub enum ChainsCmd {
    /// Smallest family of increasing j-tuples in [1, n] stabbing every k-chain.
    Z {
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Print the family as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Inverse Ackermann alpha(x), or alpha_k(x) with `--k`.
    Alpha {
        #[arg(long, value_parser = scalar_arg)]
        x: Scalar,
        #[arg(long)]
        k: Option<u32>,
    },
    /// A(n) = A_n(3), or A_k(n) with `--k`.
    Ackermann {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Enclosure of beta_d(r).
    Beta {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = scalar_arg)]
        r: Scalar,
    },
}

pub fn run(cmd: ChainsCmd) -> Result<()> {
    let text = match cmd {
        ChainsCmd::Z { j, k, n, json } => match min_stabbing_capped(j, k, n, caps::tuples()?)? {
            Some(f) if json => io::json(&f)?,
            Some(f) => {
                let tuples: Vec<String> = f
                    .tuples
                    .iter()
                    .map(|t| format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                format!("{}\n{{{}}}\n", f.len(), tuples.join(", "))
            }
            None => {
                eprintln!("no family exists: a {k}-chain has fewer than {j} intervals");
                if json {
                    "null\n".to_string()
                } else {
                    "none\n".to_string()
                }
            }
        },
        ChainsCmd::Alpha { x, k } => match k {
            Some(k) => format!("{}\n", alpha_k(k, &x)?),
            None => format!("{}\n", alpha(&x)?),
        },
        ChainsCmd::Ackermann { n, k } => {
            let level = match k {
                Some(k) => k,
                None => u32::try_from(n)?,
            };
            let arg = if k.is_some() { n } else { 3 };
            format!("{}\n", ackermann_a_capped(level, arg, caps::ackermann_bits()?)?)
        }
        ChainsCmd::Beta { d, r } => {
            let e = beta_d(d, &r)?;
            format!("{} {}\n", format_scalar(&e.lo), format_scalar(&e.hi))
        }
    };
    io::emit(None, &text)
}
