//! Flat JSON scenario configs.
//!
//! A config names the speeds either as `alpha` or as `v_T`, `v_A`, `v_D`,
//! and the geometry either in the reduced frame (`x_A`, `x_T`, `y_T`) or in
//! the realistic plane (`T`, `A`, `D` as `[x, y]`). Each subcommand accepts
//! its own extra keys; anything else is rejected.

use std::path::Path;

use atddg_core::frame::{self, FramePose, RealisticScenario};
use atddg_core::sim::{Strategy, StrategySet};
use atddg_core::{Point, ReducedState};
use serde_json::{Map, Value};

use crate::CliError;

const SPEED_KEYS: [&str; 4] = ["alpha", "v_T", "v_A", "v_D"];
const REDUCED_KEYS: [&str; 3] = ["x_A", "x_T", "y_T"];
const REALISTIC_KEYS: [&str; 3] = ["T", "A", "D"];

pub struct Config {
    keys: Map<String, Value>,
}

impl Config {
    /// Reads `path`, or stdin when `path` is `-`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = if path == Path::new("-") {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(path)
        }
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        match serde_json::from_str(text) {
            Ok(Value::Object(keys)) => Ok(Self { keys }),
            Ok(_) => Err(CliError::input("config must be a JSON object")),
            Err(e) => Err(CliError::input(format!("invalid JSON: {e}"))),
        }
    }

    /// Rejects keys outside the speed keys, `geometry` and `extra`.
    pub fn allow(&self, geometry: &[&str], extra: &[&str]) -> Result<(), CliError> {
        for key in self.keys.keys() {
            let known = SPEED_KEYS.contains(&key.as_str())
                || geometry.contains(&key.as_str())
                || extra.contains(&key.as_str());
            if !known {
                return Err(CliError::input(format!("unknown field {key}")));
            }
        }
        Ok(())
    }

    pub fn has(&self, key: &str) -> bool {
        self.keys.contains_key(key)
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.keys.get(key).map(|v| number(key, v)).transpose()
    }

    pub fn require_f64(&self, key: &str) -> Result<f64, CliError> {
        self.f64(key)?.ok_or_else(|| missing(key))
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.keys.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|n| Some(n as usize))
                .ok_or_else(|| CliError::input(format!("field {key} must be a non-negative integer"))),
        }
    }

    fn point(&self, key: &str) -> Result<Point, CliError> {
        let bad = || CliError::input(format!("field {key} must be [x, y]"));
        let v = self.keys.get(key).ok_or_else(|| missing(key))?;
        match v.as_array().map(Vec::as_slice) {
            Some([x, y]) => Ok(Point::new(
                x.as_f64().ok_or_else(bad)?,
                y.as_f64().ok_or_else(bad)?,
            )),
            _ => Err(bad()),
        }
    }

    /// A scalar, a list, or `{"start", "stop", "n"}` (inclusive, evenly spaced).
    pub fn grid(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let v = self.keys.get(key).ok_or_else(|| missing(key))?;
        let values = match v {
            Value::Array(items) => items.iter().map(|x| number(key, x)).collect::<Result<_, _>>()?,
            Value::Object(range) => {
                let get = |k: &str| {
                    range
                        .get(k)
                        .and_then(Value::as_f64)
                        .ok_or_else(|| CliError::input(format!("range {key} needs numeric {k}")))
                };
                let (start, stop, n) = (get("start")?, get("stop")?, get("n")?);
                if !(n >= 1.0 && n.fract() == 0.0) {
                    return Err(CliError::input(format!("range {key} needs integer n >= 1")));
                }
                let n = n as usize;
                if n == 1 {
                    vec![start]
                } else {
                    let step = (stop - start) / (n - 1) as f64;
                    (0..n)
                        .map(|i| if i == n - 1 { stop } else { start + step * i as f64 })
                        .collect()
                }
            }
            other => vec![number(key, other)?],
        };
        if values.is_empty() {
            return Err(CliError::input(format!("field {key} is empty")));
        }
        Ok(values)
    }

    /// Speed ratio from `alpha` alone or from the three speeds.
    pub fn alpha(&self) -> Result<f64, CliError> {
        Ok(self.speeds()?.alpha())
    }

    fn speeds(&self) -> Result<Speeds, CliError> {
        let given: Vec<_> = ["v_T", "v_A", "v_D"].into_iter().filter(|k| self.has(k)).collect();
        match (self.f64("alpha")?, given.is_empty()) {
            (Some(_), false) => Err(CliError::input("give either alpha or v_T, v_A, v_D, not both")),
            (Some(alpha), true) => Ok(Speeds { v_t: alpha, v_a: 1.0, v_d: 1.0 }),
            (None, true) => Err(missing("alpha")),
            (None, false) => Ok(Speeds {
                v_t: self.require_f64("v_T")?,
                v_a: self.require_f64("v_A")?,
                v_d: self.require_f64("v_D")?,
            }),
        }
    }

    /// The game state plus the map back to the config's own coordinates.
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let reduced = REDUCED_KEYS.iter().any(|k| self.has(k));
        let realistic = REALISTIC_KEYS.iter().any(|k| self.has(k));
        let speeds = self.speeds()?;
        let (target_pos, attacker_pos, defender_pos) = match (reduced, realistic) {
            (true, true) => {
                return Err(CliError::input("mix of reduced (x_A, x_T, y_T) and realistic (T, A, D) fields"))
            }
            (false, true) => (self.point("T")?, self.point("A")?, self.point("D")?),
            _ => {
                let x_a = self.require_f64("x_A")?;
                (
                    Point::new(self.require_f64("x_T")?, self.require_f64("y_T")?),
                    Point::new(x_a, 0.0),
                    Point::new(-x_a, 0.0),
                )
            }
        };
        let sc = RealisticScenario {
            target_pos,
            attacker_pos,
            defender_pos,
            v_t: speeds.v_t,
            v_a: speeds.v_a,
            v_d: speeds.v_d,
        };
        let (state, pose) = if realistic {
            frame::to_reduced(&sc)?
        } else {
            sc.validate()?;
            let state = ReducedState::normalized(attacker_pos.x, target_pos.x, target_pos.y, sc.alpha())?;
            let pose = FramePose { reflect_y: target_pos.y < 0.0, ..FramePose::IDENTITY };
            (state, pose)
        };
        Ok(Scenario { state, pose, realistic, v_a: speeds.v_a })
    }

    /// `strategies: {"target": ..., "attacker": ..., "defender": ...}`; omitted
    /// agents play optimally.
    pub fn strategies(&self) -> Result<StrategySet, CliError> {
        let mut set = StrategySet::OPTIMAL;
        let Some(v) = self.keys.get("strategies") else {
            return Ok(set);
        };
        let map = v
            .as_object()
            .ok_or_else(|| CliError::input("field strategies must be an object"))?;
        for (agent, spec) in map {
            let strategy: Strategy = serde_json::from_value(spec.clone())
                .map_err(|e| CliError::input(format!("strategies.{agent}: {e}")))?;
            match agent.as_str() {
                "target" => set.target = strategy,
                "attacker" => set.attacker = strategy,
                "defender" => set.defender = strategy,
                _ => return Err(CliError::input(format!("unknown agent strategies.{agent}"))),
            }
        }
        Ok(set)
    }
}

struct Speeds {
    v_t: f64,
    v_a: f64,
    v_d: f64,
}

impl Speeds {
    fn alpha(&self) -> f64 {
        self.v_t / self.v_a
    }
}

pub struct Scenario {
    pub state: ReducedState,
    /// Realistic (or reflected reduced) coordinates to the solver's frame.
    pub pose: FramePose,
    pub realistic: bool,
    /// Attacker speed; solver time is config time times `v_a`.
    pub v_a: f64,
}

pub const SCENARIO_KEYS: [&str; 6] = ["x_A", "x_T", "y_T", "T", "A", "D"];

fn number(key: &str, v: &Value) -> Result<f64, CliError> {
    v.as_f64()
        .ok_or_else(|| CliError::input(format!("field {key} must be a number")))
}

fn missing(key: &str) -> CliError {
    CliError::input(format!("missing field {key}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Config {
        Config::parse(text).unwrap()
    }

    #[test]
    fn reduced_and_realistic_agree() {
        let a = parse(r#"{"alpha": 0.5, "x_A": 6, "x_T": 3, "y_T": 2}"#).scenario().unwrap();
        let b = parse(r#"{"v_T": 1, "v_A": 2, "v_D": 2, "T": [13, 12], "A": [16, 10], "D": [4, 10]}"#)
            .scenario()
            .unwrap();
        assert_eq!(a.state, ReducedState::new(6.0, 3.0, 2.0, 0.5).unwrap());
        assert!((b.state.x_a - 6.0).abs() < 1e-12 && (b.state.x_t - 3.0).abs() < 1e-12);
        assert!((b.state.y_t - 2.0).abs() < 1e-12);
        assert_eq!(b.v_a, 2.0);
    }

    #[test]
    fn reports_missing_and_conflicting_fields() {
        let msg = |text: &str| parse(text).scenario().err().unwrap().message;
        assert_eq!(msg(r#"{"alpha": 0.5, "x_T": 3, "y_T": 2}"#), "missing field x_A");
        assert_eq!(msg(r#"{"x_A": 6, "x_T": 3, "y_T": 2}"#), "missing field alpha");
        assert!(msg(r#"{"alpha": 0.5, "v_A": 1, "x_A": 6, "x_T": 3, "y_T": 2}"#).contains("not both"));
        assert!(msg(r#"{"alpha": 0.5, "x_A": 6, "x_T": 3, "y_T": 2, "T": [0, 0]}"#).contains("mix"));
    }

    #[test]
    fn negative_y_t_is_reflected() {
        let s = parse(r#"{"alpha": 0.5, "x_A": 6, "x_T": 3, "y_T": -2}"#).scenario().unwrap();
        assert_eq!(s.state.y_t, 2.0);
        assert_eq!(s.pose.invert(Point::new(3.0, 2.0)), Point::new(3.0, -2.0));
    }

    #[test]
    fn grids() {
        let c = parse(r#"{"a": 2, "b": [1, 3], "c": {"start": 0, "stop": 1, "n": 5}, "d": []}"#);
        assert_eq!(c.grid("a").unwrap(), [2.0]);
        assert_eq!(c.grid("b").unwrap(), [1.0, 3.0]);
        assert_eq!(c.grid("c").unwrap(), [0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(c.grid("d").is_err());
    }

    #[test]
    fn strategies_default_to_optimal() {
        let c = parse(r#"{"strategies": {"attacker": {"fixed_aimpoint": 3.0}}}"#);
        let s = c.strategies().unwrap();
        assert_eq!(s.attacker, Strategy::FixedAimpoint(3.0));
        assert_eq!(s.target, Strategy::OptimalAimpoint);
        assert!(parse(r#"{"strategies": {"x": "optimal_aimpoint"}}"#).strategies().is_err());
    }
}
