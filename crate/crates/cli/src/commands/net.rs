use std::path::PathBuf;

use anyhow::Result;
use clap::Subcommand;
use serde_json::json;
use stairnet::nets::certify::build_stair_net_capped;
use stairnet::nets::{certify_stair_net, hammersley, refute_net, CertifyOutcome, RefuteOutcome};
use stairnet::scalar::format_scalar;
use stairnet::Scalar;

use super::scalar_arg;
use crate::{caps, io};

#[derive(Subcommand)]
pub enum NetCmd {
    /// Write the Hammersley set of `s` points in `[0,1)^d`.
    Hammersley {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search seeded anchors for a large empty stair-convex fan.
    Refute {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = stairnet::nets::fan::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a point set as a stair-convex epsilon-net through its largest empty box.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = scalar_arg)]
        eps: Scalar,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grow a Hammersley set until it certifies as a `1/r`-net.
    Build {
        #[arg(long, value_parser = scalar_arg)]
        r: Scalar,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(cmd: NetCmd) -> Result<()> {
    match cmd {
        NetCmd::Hammersley { s, d, out } => io::emit(out.as_deref(), &io::json(&hammersley(s, d)?)?),
        NetCmd::Refute { input, trials, seed, out } => {
            let net = io::read_points(&input)?;
            let text = match refute_net(&net, trials, seed)? {
                RefuteOutcome::Witness(w) => {
                    eprintln!(
                        "witness: {} of {} box types empty, vol_lb = {}",
                        w.count,
                        w.total_types,
                        format_scalar(&w.vol_lb)
                    );
                    io::json(&w)?
                }
                RefuteOutcome::Failure { best_count, total_types, trials } => {
                    eprintln!("no witness: best anchor left {best_count} of {total_types} box types empty");
                    io::json(&json!({ "witness": null, "best_count": best_count, "T": total_types, "trials": trials }))?
                }
            };
            io::emit(out.as_deref(), &text)
        }
        NetCmd::Certify { input, eps, out } => {
            let net = io::read_points(&input)?;
            let text = match certify_stair_net(&net, &eps)? {
                CertifyOutcome::Certified(c) => {
                    eprintln!("certified: bound {} < eps {}", format_scalar(&c.bound), format_scalar(&eps));
                    io::json(&json!({ "certified": true, "certificate": c }))?
                }
                CertifyOutcome::Failed { v, bound } => {
                    eprintln!("not certified: largest empty box has volume {}", format_scalar(&v));
                    io::json(&json!({
                        "certified": false,
                        "v": format_scalar(&v),
                        "bound": bound.as_ref().map(format_scalar),
                    }))?
                }
            };
            io::emit(out.as_deref(), &text)
        }
        NetCmd::Build { r, d, out } => {
            let built = build_stair_net_capped(&r, d, caps::doublings()?)?;
            eprintln!("certified net of {} points", built.net().len());
            let attempts: Vec<_> = built
                .attempts
                .iter()
                .map(|(s, v)| json!({ "size": s, "v": format_scalar(v) }))
                .collect();
            io::emit(
                out.as_deref(),
                &io::json(&json!({ "certificate": built.certificate, "attempts": attempts }))?,
            )
        }
    }
}
