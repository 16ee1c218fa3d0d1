use std::path::Path;
use std::process::ExitCode;

use atddg_core::game::{self, GameSolution, Outcome};
use serde_json::{json, Value};

use crate::config::{Config, Scenario, SCENARIO_KEYS};
use crate::output::{print_json, rounded};
use crate::CliError;

pub fn run(path: &Path) -> Result<ExitCode, CliError> {
    let config = Config::load(path)?;
    config.allow(&SCENARIO_KEYS, &[])?;
    let scenario = config.scenario()?;
    let solution = game::solve(&scenario.state)?;
    print_json(&rounded(&record(&scenario, &solution)))?;
    Ok(exit_code(solution.outcome))
}

pub fn exit_code(outcome: Outcome) -> ExitCode {
    match outcome {
        Outcome::Capture => ExitCode::from(2),
        Outcome::Escape | Outcome::Boundary | Outcome::TrivialEscape => ExitCode::SUCCESS,
    }
}

/// Solution fields plus the reduced state, and the aimpoint and headings in
/// the config's own plane when it was given in realistic coordinates.
pub fn record(scenario: &Scenario, solution: &GameSolution) -> Value {
    let mut v = serde_json::to_value(solution).unwrap_or(Value::Null);
    let s = &scenario.state;
    v["state"] = json!({ "x_A": s.x_a, "x_T": s.x_t, "y_T": s.y_t, "alpha": s.alpha });
    if scenario.realistic {
        let pose = &scenario.pose;
        let heading = |h: Option<f64>| h.map(|h| pose.heading_to_realistic(h));
        v["realistic"] = json!({
            "aimpoint": solution.aimpoint().map(|p| pose.invert(p)),
            "capture_point": solution.capture_point.map(|p| pose.invert(p)),
            "heading_T": heading(solution.heading_t),
            "heading_A": heading(solution.heading_a),
            "heading_D": heading(solution.heading_d),
        });
    }
    v
}
