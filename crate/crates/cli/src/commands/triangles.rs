use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use stairnet::grid::build_grid_with;
use stairnet::scalar::{format_scalar, int, ratio};
use stairnet::selection::{class_bound, gen_thin_triangles_capped, probe_all, rho_for, Dims, TriangleFamily};
use stairnet::{Point, Scalar};

use super::scalar_arg;
use crate::{caps, io};

/// Random probes are dyadic with this many fractional bits before lifting.
const PROBE_BITS: u32 = 20;

#[derive(Clone, Copy, ValueEnum)]
pub enum Report {
    Csv,
    Json,
}

#[derive(Subcommand)]
pub enum TrianglesCmd {
    /// Generate the thin increasing triangles of the planar grid.
    Gen {
        #[arg(long)]
        m: usize,
        /// Thinness parameter; alternatively derive it from `--t` and `--c`.
        #[arg(long, value_parser = scalar_arg, conflicts_with_all = ["t", "c"], required_unless_present = "t")]
        rho: Option<Scalar>,
        /// Target number of triangles containing a point, used with `--c`.
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, value_parser = scalar_arg, requires = "t")]
        c: Option<Scalar>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count the family's triangles containing each probe, by dimension class.
    Probe {
        #[arg(long)]
        fam: PathBuf,
        /// Probe points as a point-set JSON file.
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        points: Option<PathBuf>,
        /// Draw this many probes uniformly in the unit square and lift them to the grid.
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        report: Report,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ClassRow {
    #[serde(flatten)]
    dims: Dims,
    count: u64,
    bound: u64,
}

#[derive(Serialize)]
struct ProbeRow {
    probe: usize,
    point: Vec<String>,
    total: u64,
    within_bound: bool,
    classes: Vec<ClassRow>,
}

pub fn run(cmd: TrianglesCmd) -> Result<()> {
    match cmd {
        TrianglesCmd::Gen { m, rho, t, c, out } => {
            let rho = match (rho, t) {
                (Some(r), _) => r,
                (None, Some(t)) => rho_for((m * m) as u64, t, &c.unwrap_or_else(|| int(1)))?,
                (None, None) => bail!("one of --rho or --t is required"),
            };
            let spec = build_grid_with(2, m, 1, caps::grid_bits()?)?;
            let fam = gen_thin_triangles_capped(&spec, &rho, caps::family_size()?)?;
            eprintln!("m = {m}, rho = {}, {} triangles", format_scalar(&rho), fam.len());
            io::emit(out.as_deref(), &io::json(&fam)?)
        }
        TrianglesCmd::Probe { fam, points, random, seed, report, out } => {
            let family: TriangleFamily = serde_json::from_str(&io::read(&fam)?)?;
            family.validate()?;
            let probes = match (points, random) {
                (Some(p), _) => io::read_points(&p)?.points().to_vec(),
                (None, Some(count)) => random_probes(&family, count, seed.expect("clap requires --seed"))?,
                (None, None) => bail!("one of --points or --random is required"),
            };
            let m = family.spec.m();
            let rows: Vec<ProbeRow> = probe_all(&family, &probes)?
                .into_iter()
                .zip(&probes)
                .enumerate()
                .map(|(i, (counts, q))| {
                    let classes: Vec<ClassRow> = counts
                        .by_class
                        .iter()
                        .map(|(&dims, &count)| ClassRow { dims, count, bound: class_bound(dims, m) })
                        .collect();
                    ProbeRow {
                        probe: i,
                        point: q.coords().iter().map(format_scalar).collect(),
                        total: counts.total,
                        within_bound: classes.iter().all(|c| c.count <= c.bound),
                        classes,
                    }
                })
                .collect();
            let violations = rows.iter().filter(|r| !r.within_bound).count();
            eprintln!("{} probes, {violations} over the class bound", rows.len());
            let text = match report {
                Report::Json => io::json(&rows)?,
                Report::Csv => csv_report(&rows)?,
            };
            io::emit(out.as_deref(), &text)
        }
    }
}

fn random_probes(family: &TriangleFamily, count: usize, seed: u64) -> Result<Vec<Point>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let den = 1i64 << PROBE_BITS;
    (0..count)
        .map(|_| {
            let u = Point::new((0..2).map(|_| ratio(rng.gen_range(1..den), den)).collect());
            Ok(family.spec.pi_inverse(&u)?)
        })
        .collect()
}

/// One line per probe, reporting the class with the most containing triangles.
fn csv_report(rows: &[ProbeRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["probe", "x", "y", "total", "classes", "max_class", "max_count", "max_bound", "within_bound"])?;
    for r in rows {
        let top = r.classes.iter().max_by_key(|c| c.count);
        let (class, count, bound) = match top {
            Some(c) => (
                format!("{}:{}:{}:{}", c.dims.h12, c.dims.h23, c.dims.v12, c.dims.v23),
                c.count.to_string(),
                c.bound.to_string(),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        w.write_record([
            r.probe.to_string(),
            r.point[0].clone(),
            r.point[1].clone(),
            r.total.to_string(),
            r.classes.len().to_string(),
            class,
            count,
            bound,
            r.within_bound.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
