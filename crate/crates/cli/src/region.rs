use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use atddg_core::region::{self, RegionBoundary};
use serde_json::json;

use crate::config::Config;
use crate::output::{csv_row, field, print_json, rounded};
use crate::CliError;

const KEYS: [&str; 4] = ["x_A", "y_min", "y_max", "n"];
const DEFAULT_SAMPLES: usize = 201;

pub fn run(path: &Path, out_dir: Option<&Path>) -> Result<ExitCode, CliError> {
    let config = Config::load(path)?;
    config.allow(&[], &KEYS)?;
    let alpha = config.alpha()?;
    let x_as = config.grid("x_A")?;
    let y_min = config.require_f64("y_min")?;
    let y_max = config.require_f64("y_max")?;
    let n = config.usize("n")?.unwrap_or(DEFAULT_SAMPLES);

    let boundaries = x_as
        .iter()
        .map(|&x_a| region::boundary_samples(alpha, x_a, y_min, y_max, n))
        .collect::<Result<Vec<_>, _>>()?;

    match out_dir {
        None if boundaries.len() == 1 => {
            let stdout = std::io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            write_csv(&mut out, &boundaries[0])?;
            out.flush()?;
        }
        None => return Err(CliError::input("several x_A values need --out-dir")),
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let mut files = Vec::new();
            for b in &boundaries {
                let name = format!("boundary_xA_{}.csv", field(b.x_a));
                let mut out = BufWriter::new(File::create(dir.join(&name))?);
                write_csv(&mut out, b)?;
                out.flush()?;
                files.push(json!({ "x_A": b.x_a, "file": name }));
            }
            print_json(&rounded(&json!({
                "alpha": alpha,
                "asymptote_slope": region::asymptote_slope(alpha),
                "files": files,
            })))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_csv(out: &mut impl Write, b: &RegionBoundary) -> std::io::Result<()> {
    writeln!(out, "x,y")?;
    for p in &b.samples {
        csv_row(out, &[p.x, p.y])?;
    }
    Ok(())
}
