use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use atddg_core::frame::FramePose;
use atddg_core::game::{self, Outcome};
use atddg_core::sim::{self, SimConfig, Strategy, StrategySet};
use atddg_core::Point;
use serde_json::json;

use crate::config::{Config, Scenario, SCENARIO_KEYS};
use crate::output::{csv_row, print_json, rounded};
use crate::CliError;

const KEYS: [&str; 4] = ["dt", "eps", "t_max", "strategies"];

/// Times in the config (`dt`, `t_max`, output `t`) are in the config's own
/// units; the solver runs with unit pursuer speed, so they scale by `v_A`.
pub fn run(path: &Path, trajectory: Option<&Path>) -> Result<ExitCode, CliError> {
    let config = Config::load(path)?;
    config.allow(&SCENARIO_KEYS, &KEYS)?;
    let scenario = config.scenario()?;
    let Scenario { state, pose, v_a, .. } = scenario;
    let strategies = to_solver_frame(config.strategies()?, &pose);

    let defaults = SimConfig::default_for(&state);
    let sim_config = SimConfig {
        dt: config.f64("dt")?.map_or(defaults.dt, |dt| dt * v_a),
        eps: config.f64("eps")?.unwrap_or(defaults.eps),
        t_max: config.f64("t_max")?.map_or(defaults.t_max, |t| t * v_a),
    };
    let solution = game::solve(&state)?;
    let outcome = sim::simulate(&state, &strategies, &solution, &sim_config)?;

    if let Some(path) = trajectory {
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "t,xT,yT,xA,yA,xD,yD")?;
        for s in &outcome.trajectory {
            let [t, a, d] = [s.target, s.attacker, s.defender].map(|p| pose.invert(p));
            csv_row(&mut out, &[s.t / v_a, t.x, t.y, a.x, a.y, d.x, d.y])?;
        }
        out.flush()?;
    }

    let [h_t, h_a, h_d] = outcome.headings.map(|h| pose.heading_to_realistic(h));
    let mut record = json!({
        "event": outcome.event,
        "t_event": outcome.t_event / v_a,
        "intercept_point": outcome.intercept_point.map(|p| pose.invert(p)),
        "terminal_AT_separation": outcome.terminal_at_separation,
        "heading_T": h_t,
        "heading_A": h_a,
        "heading_D": h_d,
        "samples": outcome.trajectory.len(),
        "J_star": solution.j_star,
        "y_star": solution.y_star,
        "outcome": solution.outcome,
    });
    let escape = matches!(solution.outcome, Outcome::Escape | Outcome::Boundary);
    if strategies == StrategySet::OPTIMAL && escape {
        // Reduced-frame residuals; lengths are frame-independent.
        let mut report = sim::validate(&outcome, &solution, &state, sim_config.eps, sim_config.dt);
        report.interception_time.value /= v_a;
        report.interception_time.tolerance /= v_a;
        record["validation"] = serde_json::to_value(report).unwrap_or_default();
    }
    print_json(&rounded(&record))?;
    Ok(ExitCode::SUCCESS)
}

/// Fixed headings are given in the config's plane. Fixed aimpoints are
/// ordinates on the solver's Y-axis (the Attacker-Defender bisector).
fn to_solver_frame(mut set: StrategySet, pose: &FramePose) -> StrategySet {
    let convert = |s: Strategy| match s {
        Strategy::FixedHeading(theta) => {
            let dir = pose.apply(pose.translation + Point::from_angle(theta));
            Strategy::FixedHeading(dir.angle())
        }
        other => other,
    };
    set.target = convert(set.target);
    set.attacker = convert(set.attacker);
    set.defender = convert(set.defender);
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heading_conversion_inverts_pose() {
        let pose = FramePose { translation: Point::new(3.0, -1.0), rotation_angle: 0.7, reflect_y: true };
        for theta in [-2.5, -0.3, 0.0, 1.1, 3.0] {
            let Strategy::FixedHeading(reduced) =
                to_solver_frame(StrategySet { target: Strategy::FixedHeading(theta), ..StrategySet::OPTIMAL }, &pose)
                    .target
            else {
                unreachable!()
            };
            let back = pose.heading_to_realistic(reduced);
            assert!((Point::from_angle(back) - Point::from_angle(theta)).norm() < 1e-12);
        }
    }
}
