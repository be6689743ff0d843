mod caps;
mod commands;
mod io;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::bench::BenchCmd;
use commands::chains::ChainsCmd;
use commands::grid::GridCmd;
use commands::net::NetCmd;
use commands::triangles::TrianglesCmd;
use commands::viz::VizCmd;

/// Exact stair-convexity, stretched grids, weak epsilon-nets and thin triangles.
#[derive(Parser)]
#[command(name = "stairnet", version, after_help = caps::HELP)]
struct Cli {
    /// Worker threads for parallel kernels; defaults to one per core.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Directory for grids built from `--grid d,m`.
    #[arg(long, global = true, default_value = ".stairnet-cache")]
    cache_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stretched grids and the map to the unit cube.
    #[command(subcommand)]
    Grid(GridCmd),
    /// Stair-convex epsilon-nets: construction, certification, refutation.
    #[command(subcommand)]
    Net(NetCmd),
    /// Interval-chain stabbing and the Ackermann hierarchy.
    #[command(subcommand)]
    Chains(ChainsCmd),
    /// Thin triangle families on the planar grid.
    #[command(subcommand)]
    Triangles(TrianglesCmd),
    /// SVG pictures in the unit square.
    #[command(subcommand)]
    Viz(VizCmd),
    /// Experiment tables.
    #[command(subcommand)]
    Bench(BenchCmd),
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.into()).build_global()?;
    }
    match cli.command {
        Command::Grid(c) => commands::grid::run(c, &cli.cache_dir),
        Command::Net(c) => commands::net::run(c),
        Command::Chains(c) => commands::chains::run(c),
        Command::Triangles(c) => commands::triangles::run(c),
        Command::Viz(c) => commands::viz::run(c, &cli.cache_dir),
        Command::Bench(c) => commands::bench::run(c),
    }
}

/// 3 for guard trips, 1 for I/O failures, 2 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<stairnet::Error>() {
            return if e.is_guard() { 3 } else { 2 };
        }
        if cause.is::<std::io::Error>() {
            return 1;
        }
    }
    2
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = exit_code(&err);
            if code == 3 {
                eprintln!("{}", caps::HELP);
            }
            ExitCode::from(code)
        }
    }
}
