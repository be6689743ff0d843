use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::Subcommand;
use stairnet::grid::build_grid_with;

use super::point_arg;
use crate::{caps, io};

#[derive(Subcommand)]
pub enum GridCmd {
    /// Build the stretched grid and write it as JSON.
    Build {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        /// Ratio exponent between consecutive coordinates; 1 gives the minimal grid.
        #[arg(long, default_value_t = 1)]
        gap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Map a point to the unit cube, or back with `--inverse`.
    Pi {
        /// `d,m` or a grid JSON file.
        #[arg(long)]
        grid: String,
        #[arg(long, value_parser = point_arg)]
        point: stairnet::Point,
        #[arg(long)]
        inverse: bool,
    },
    /// Write the first `n` diagonal points as a point set.
    Diagonal {
        #[arg(long)]
        grid: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(cmd: GridCmd, cache_dir: &Path) -> Result<()> {
    match cmd {
        GridCmd::Build { d, m, gap, out } => {
            if gap == 0 {
                bail!("--gap must be at least 1");
            }
            let g = build_grid_with(d, m, gap, caps::grid_bits()?)?;
            io::emit(out.as_deref(), &format!("{}\n", g.to_json()))
        }
        GridCmd::Pi { grid, point, inverse } => {
            let g = io::load_grid(&grid, cache_dir)?;
            let p = if inverse { g.pi_inverse(&point)? } else { g.pi_map(&point)? };
            io::emit(None, &format!("{}\n", io::fmt_point(&p)))
        }
        GridCmd::Diagonal { grid, n, out } => {
            let g = io::load_grid(&grid, cache_dir)?;
            io::emit(out.as_deref(), &io::json(g.diagonal(n)?.points())?)
        }
    }
}
