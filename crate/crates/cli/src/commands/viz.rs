use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::Subcommand;
use stairnet::nets::fan::{Fan, RefuteWitness};
use stairnet::scalar::ratio;
use num_traits::ToPrimitive;
use stairnet::{sconv_box_union, stair_path, BoxUnion, Point, PointSet, Scalar};

use super::point_arg;
use crate::io;
use crate::svg::Canvas;

#[derive(Subcommand)]
pub enum VizCmd {
    /// Draw the stair-path between two planar points.
    Stairpath {
        #[arg(long, value_parser = point_arg)]
        a: Point,
        #[arg(long, value_parser = point_arg)]
        b: Point,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw the normal boxes of the fan at an anchor.
    Fan {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = point_arg)]
        anchor: Point,
        /// Overlay a point set.
        #[arg(long)]
        net: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw a refuter witness, optionally over the refuted net.
    Witness {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        net: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rasterize the stair-convex hull of a planar point set.
    Hull {
        #[arg(long)]
        points: PathBuf,
        /// Map the points to the unit square through this grid (`d,m` or JSON file) first.
        #[arg(long)]
        grid: Option<String>,
        /// Raster cells per side.
        #[arg(long, default_value_t = 128)]
        res: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

fn planar(p: &Point) -> Result<()> {
    if p.dim() != 2 {
        bail!("pictures are planar; got a point of dimension {}", p.dim());
    }
    Ok(())
}

fn overlay(canvas: &mut Canvas, net: Option<&Path>) -> Result<()> {
    if let Some(path) = net {
        let pts = io::read_points(path)?;
        for p in pts.iter() {
            planar(p)?;
            canvas.dot("net", p, "black");
        }
    }
    Ok(())
}

pub fn run(cmd: VizCmd, cache_dir: &Path) -> Result<()> {
    let (svg, out) = match cmd {
        VizCmd::Stairpath { a, b, out } => {
            planar(&a)?;
            planar(&b)?;
            let path = stair_path(&a, &b)?;
            let mut c = Canvas::covering(&[&a, &b]);
            for s in &path.segments {
                c.line("segment", &s.from, &s.to);
            }
            for v in path.vertices() {
                c.dot("vertex", &v, "red");
            }
            (c.finish(), out)
        }
        VizCmd::Fan { k, anchor, net, out } => {
            planar(&anchor)?;
            let fan = Fan::new(k, anchor)?;
            let mut c = Canvas::unit();
            for b in fan.boxes() {
                c.axis_box("box", b, "steelblue", 0.15);
            }
            c.dot("anchor", fan.anchor(), "red");
            overlay(&mut c, net.as_deref())?;
            (c.finish(), out)
        }
        VizCmd::Witness { input, net, out } => {
            let w: RefuteWitness = serde_json::from_str(&io::read(&input)?)?;
            planar(&w.anchor)?;
            let mut c = Canvas::unit();
            for b in w.s.boxes() {
                c.axis_box("box", b, "seagreen", 0.3);
            }
            c.dot("anchor", &w.anchor, "red");
            overlay(&mut c, net.as_deref())?;
            (c.finish(), out)
        }
        VizCmd::Hull { points, grid, res, out } => {
            let pts = io::read_points(&points)?;
            if pts.dim() != 2 {
                bail!("pictures are planar; got a point set of dimension {}", pts.dim());
            }
            if res == 0 {
                bail!("--res must be positive");
            }
            let pts = match grid {
                Some(g) => {
                    let g = io::load_grid(&g, cache_dir)?;
                    PointSet::new(2, pts.iter().map(|p| g.pi_map(p)).collect::<Result<_, _>>()?)?
                }
                None => pts,
            };
            let hull = sconv_box_union(&pts);
            let mut c = Canvas::covering(&pts.iter().collect::<Vec<_>>());
            raster(&mut c, &hull, &pts, res);
            for p in pts.iter() {
                c.dot("point", p, "black");
            }
            (c.finish(), out)
        }
    };
    io::emit(Some(&out), &svg)
}

/// Fills each cell of a `res x res` raster over the points' bounding box
/// whose center lies in the hull, merging horizontal runs.
fn raster(c: &mut Canvas, hull: &BoxUnion, pts: &PointSet, res: u32) {
    let bounds = |axis: usize| -> Option<(Scalar, Scalar)> {
        let lo = pts.iter().map(|p| &p[axis]).min()?.clone();
        let hi = pts.iter().map(|p| &p[axis]).max()?.clone();
        Some((lo, hi))
    };
    let (Some((x0, x1)), Some((y0, y1))) = (bounds(0), bounds(1)) else {
        return;
    };
    let n = i64::from(res);
    // edge `i` of the raster along one axis, and the center of cell `i`
    let edge = |lo: &Scalar, hi: &Scalar, i: i64| lo + (hi - lo) * ratio(i, n);
    let center = |lo: &Scalar, hi: &Scalar, i: i64| lo + (hi - lo) * ratio(2 * i + 1, 2 * n);
    let f = |x: Scalar| x.to_f64().unwrap_or(0.0);
    for row in 0..n {
        let yc = center(&y0, &y1, row);
        let mut start: Option<i64> = None;
        for col in 0..=n {
            let inside = col < n && hull.contains(&Point::new(vec![center(&x0, &x1, col), yc.clone()]));
            match (inside, start) {
                (true, None) => start = Some(col),
                (false, Some(s)) => {
                    c.rect(
                        "hull",
                        [f(edge(&x0, &x1, s)), f(edge(&y0, &y1, row))],
                        [f(edge(&x0, &x1, col)), f(edge(&y0, &y1, row + 1))],
                        "orange",
                        0.6,
                    );
                    start = None;
                }
                _ => {}
            }
        }
    }
}
