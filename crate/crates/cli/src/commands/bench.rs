use std::path::PathBuf;

use anyhow::Result;
use clap::Subcommand;
use stairnet::nets::fan::choose_k;
use stairnet::nets::{hammersley, refute_net, RefuteOutcome};
use stairnet::scalar::format_scalar;

use crate::io;

#[derive(Subcommand)]
pub enum BenchCmd {
    /// Run the refuter on Hammersley sets of several sizes.
    Refuter {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = stairnet::nets::fan::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(cmd: BenchCmd) -> Result<()> {
    match cmd {
        BenchCmd::Refuter { d, sizes, seed, trials, out } => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "k", "T", "best_count", "vol_lb"])?;
            for &n in &sizes {
                let net = hammersley(usize::try_from(n)?, d)?;
                let row = match refute_net(&net, trials, seed)? {
                    RefuteOutcome::Witness(w) => {
                        [n.to_string(), w.k.to_string(), w.total_types.to_string(), w.count.to_string(), format_scalar(&w.vol_lb)]
                    }
                    RefuteOutcome::Failure { best_count, total_types, .. } => {
                        [n.to_string(), choose_k(n, d).to_string(), total_types.to_string(), best_count.to_string(), String::new()]
                    }
                };
                w.write_record(&row)?;
            }
            io::emit(out.as_deref(), &String::from_utf8(w.into_inner()?)?)
        }
    }
}
