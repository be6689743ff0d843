use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use stairnet::scalar::format_scalar;
use stairnet::{GridSpec, Point, PointSet};

use crate::caps;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    Ok(PointSet::from_json(&read(path)?)?)
}

pub fn fmt_point(p: &Point) -> String {
    p.coords().iter().map(format_scalar).collect::<Vec<_>>().join(",")
}

/// Resolves `--grid`, either `d,m` (built on first use and cached under
/// `cache_dir`) or a path to a grid JSON file.
pub fn load_grid(arg: &str, cache_dir: &Path) -> Result<GridSpec> {
    if let Some((d, m)) = parse_dims(arg) {
        let cached = cache_path(cache_dir, d, m);
        if let Ok(text) = fs::read_to_string(&cached) {
            if let Ok(g) = GridSpec::from_json(&text) {
                if g.d() == d && g.m() == m {
                    return Ok(g);
                }
            }
        }
        let g = stairnet::grid::build_grid_with(d, m, 1, caps::grid_bits()?)?;
        fs::create_dir_all(cache_dir).with_context(|| format!("creating {}", cache_dir.display()))?;
        fs::write(&cached, g.to_json()).with_context(|| format!("writing {}", cached.display()))?;
        return Ok(g);
    }
    Ok(GridSpec::from_json(&read(Path::new(arg))?)?)
}

fn parse_dims(arg: &str) -> Option<(usize, usize)> {
    let (d, m) = arg.split_once(',')?;
    Some((d.trim().parse().ok()?, m.trim().parse().ok()?))
}

fn cache_path(dir: &Path, d: usize, m: usize) -> PathBuf {
    dir.join(format!("grid-d{d}-m{m}.json"))
}
