use std::io::{BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use atddg_core::game::{self, GameSolution};
use atddg_core::ReducedState;
use rayon::prelude::*;

use crate::config::Config;
use crate::output::field;
use crate::CliError;

const KEYS: [&str; 3] = ["x_A", "x_T", "y_T"];

/// Grid point `(alpha, x_A, x_T, y_T)`.
type Point4 = [f64; 4];

pub fn run(path: &Path) -> Result<ExitCode, CliError> {
    let config = Config::load(path)?;
    config.allow(&[], &KEYS)?;
    let alphas = if config.has("alpha") {
        config.grid("alpha")?
    } else {
        vec![config.alpha()?]
    };
    let (x_as, x_ts, y_ts) = (config.grid("x_A")?, config.grid("x_T")?, config.grid("y_T")?);

    let mut points: Vec<Point4> = Vec::with_capacity(alphas.len() * x_as.len() * x_ts.len() * y_ts.len());
    for &alpha in &alphas {
        for &x_a in &x_as {
            for &x_t in &x_ts {
                for &y_t in &y_ts {
                    points.push([alpha, x_a, x_t, y_t]);
                }
            }
        }
    }

    let pool = thread_pool()?;
    let rows: Vec<String> = pool.install(|| points.par_iter().map(row).collect());

    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    writeln!(out, "alpha,x_A,x_T,y_T,alpha_bar,y_star,J_star,outcome")?;
    for r in rows {
        writeln!(out, "{r}")?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ATDDG_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::input(format!("ATDDG_THREADS must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::input(e.to_string()))
}

/// One CSV row; points the solver rejects get an `Error` outcome and empty results.
fn row(&[alpha, x_a, x_t, y_t]: &Point4) -> String {
    let inputs = [alpha, x_a, x_t, y_t].map(field).join(",");
    let solved = ReducedState::normalized(x_a, x_t, y_t, alpha).and_then(|s| game::solve(&s));
    match solved {
        Ok(GameSolution { alpha_bar, y_star, j_star, outcome, .. }) => {
            let opt = |v: Option<f64>| v.map_or(String::new(), field);
            format!("{inputs},{},{},{},{}", field(alpha_bar), opt(y_star), opt(j_star), outcome)
        }
        Err(_) => format!("{inputs},,,,Error"),
    }
}
