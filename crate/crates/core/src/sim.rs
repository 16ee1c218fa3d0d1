//! Engagement simulator with simple-motion agents.
//!
//! Every strategy resolves to a constant heading, so positions are
//! propagated in closed form and `dt` only sets the trajectory sampling
//! interval. Capture events are located by solving for the exact time the
//! pairwise separation first reaches `eps`.

use serde::{Deserialize, Serialize};

use crate::frame::ReducedState;
use crate::game::{GameSolution, Outcome};
use crate::geometry::Point;
use crate::{Error, Result};

/// Attacker and Defender speed in the reduced frame.
pub const PURSUER_SPEED: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// The agent's game-optimal heading, held constant.
    OptimalAimpoint,
    /// Head for `(0, y)` on the Y-axis.
    FixedAimpoint(f64),
    /// Constant heading in radians.
    FixedHeading(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategySet {
    pub target: Strategy,
    pub attacker: Strategy,
    pub defender: Strategy,
}

impl StrategySet {
    pub const OPTIMAL: StrategySet = StrategySet {
        target: Strategy::OptimalAimpoint,
        attacker: Strategy::OptimalAimpoint,
        defender: Strategy::OptimalAimpoint,
    };
}

impl Default for StrategySet {
    fn default() -> Self {
        Self::OPTIMAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub eps: f64,
    pub t_max: f64,
}

impl SimConfig {
    pub const DEFAULT_DT: f64 = 1e-3;
    pub const DEFAULT_EPS: f64 = 1e-6;

    pub fn default_for(state: &ReducedState) -> Self {
        Self {
            dt: Self::DEFAULT_DT,
            eps: Self::DEFAULT_EPS,
            t_max: 10.0 * (state.x_a + state.x_t.abs() + state.y_t),
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("dt", self.dt), ("eps", self.eps), ("t_max", self.t_max)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Event {
    DefenderInterceptsAttacker,
    AttackerCapturesTarget,
    Timeout,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub target: Point,
    pub attacker: Point,
    pub defender: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngagementOutcome {
    pub event: Event,
    pub t_event: f64,
    /// Attacker position at the event; absent on timeout.
    pub intercept_point: Option<Point>,
    #[serde(rename = "terminal_AT_separation")]
    pub terminal_at_separation: f64,
    /// Resolved constant headings `(target, attacker, defender)`.
    pub headings: [f64; 3],
    pub trajectory: Vec<Sample>,
}

/// Constant-velocity agent.
#[derive(Debug, Clone, Copy)]
struct Mover {
    start: Point,
    velocity: Point,
}

impl Mover {
    fn at(&self, t: f64) -> Point {
        self.start + t * self.velocity
    }
}

fn heading_towards(from: Point, to: Point, who: &str) -> Result<f64> {
    (to - from)
        .unit()
        .map(Point::angle)
        .ok_or_else(|| Error::InvalidStrategy(format!("{who} aimpoint coincides with its position")))
}

fn fixed(strategy: Strategy, from: Point, who: &str) -> Option<Result<f64>> {
    match strategy {
        Strategy::OptimalAimpoint => None,
        Strategy::FixedAimpoint(y) => Some(heading_towards(from, Point::new(0.0, y), who)),
        Strategy::FixedHeading(theta) if theta.is_finite() => Some(Ok(theta)),
        Strategy::FixedHeading(theta) => {
            Some(Err(Error::InvalidStrategy(format!("{who} heading {theta} is not finite"))))
        }
    }
}

/// Resolves the three strategies to constant headings in the reduced frame.
///
/// Optimal resolutions:
/// * Target heads for `(0, y*)`; with `alpha >= 1` it flees along the
///   Attacker-Target line.
/// * Attacker heads for `(0, y*)`, or for the Apollonius capture point when
///   the Target is doomed; with `alpha >= 1` it heads at the Target.
/// * Defender heads for wherever the Attacker's path crosses the Y-axis,
///   falling back to `(0, y*)` and then to the Attacker's start.
pub fn resolve_headings(
    state: &ReducedState,
    strategies: &StrategySet,
    solution: &GameSolution,
) -> Result<[f64; 3]> {
    let (t0, a0, d0) = (state.target(), state.attacker(), state.defender());
    let trivial = solution.outcome == Outcome::TrivialEscape;

    let target = match fixed(strategies.target, t0, "target") {
        Some(h) => h?,
        None if trivial => heading_towards(a0, t0, "target")?,
        None => solution.heading_t.ok_or_else(|| {
            Error::InvalidStrategy("target already sits on its optimal aimpoint".into())
        })?,
    };

    let attacker = match fixed(strategies.attacker, a0, "attacker") {
        Some(h) => h?,
        None if trivial => heading_towards(a0, t0, "attacker")?,
        None => match (solution.outcome, solution.capture_point) {
            (Outcome::Capture, Some(p)) => heading_towards(a0, p, "attacker")?,
            _ => solution
                .heading_a
                .ok_or_else(|| Error::InvalidStrategy("attacker heading undefined".into()))?,
        },
    };

    let defender = match fixed(strategies.defender, d0, "defender") {
        Some(h) => h?,
        None => {
            let dir = Point::from_angle(attacker);
            let crossing = (dir.x < 0.0).then(|| a0.y + dir.y * (-a0.x / dir.x));
            match crossing.or(solution.y_star) {
                Some(y) => heading_towards(d0, Point::new(0.0, y), "defender")?,
                None => heading_towards(d0, a0, "defender")?,
            }
        }
    };
    Ok([target, attacker, defender])
}

/// Earliest `s` in `[0, h]` with `|r0 + w s| <= eps`.
fn first_contact(r0: Point, w: Point, eps: f64, h: f64) -> Option<f64> {
    let c = r0.dot(r0) - eps * eps;
    if c <= 0.0 {
        return Some(0.0);
    }
    let a = w.dot(w);
    let b = 2.0 * r0.dot(w);
    if a == 0.0 || b >= 0.0 {
        return None;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    // Smaller root, written to avoid cancellation since b < 0.
    let s = 2.0 * c / (-b + disc.sqrt());
    (s <= h).then_some(s)
}

/// Runs one engagement from `state` with speeds `V_A = V_D = 1`, `V_T = alpha`.
pub fn simulate(
    state: &ReducedState,
    strategies: &StrategySet,
    solution: &GameSolution,
    config: &SimConfig,
) -> Result<EngagementOutcome> {
    config.validate()?;
    let headings = resolve_headings(state, strategies, solution)?;
    let speeds = [state.alpha, PURSUER_SPEED, PURSUER_SPEED];
    let starts = [state.target(), state.attacker(), state.defender()];
    let [tgt, att, def]: [Mover; 3] = std::array::from_fn(|i| Mover {
        start: starts[i],
        velocity: speeds[i] * Point::from_angle(headings[i]),
    });
    let sample = |t: f64| Sample {
        t,
        target: tgt.at(t),
        attacker: att.at(t),
        defender: def.at(t),
    };

    let mut trajectory = vec![sample(0.0)];
    let mut k: u64 = 0;
    loop {
        let t0 = k as f64 * config.dt;
        let t1 = ((k + 1) as f64 * config.dt).min(config.t_max);
        let h = t1 - t0;
        let intercept = first_contact(
            att.at(t0) - def.at(t0),
            att.velocity - def.velocity,
            config.eps,
            h,
        );
        let capture = first_contact(
            tgt.at(t0) - att.at(t0),
            tgt.velocity - att.velocity,
            config.eps,
            h,
        );
        let event = match (intercept, capture) {
            (Some(si), Some(sc)) if sc < si => Some((Event::AttackerCapturesTarget, sc)),
            (Some(si), _) => Some((Event::DefenderInterceptsAttacker, si)),
            (None, Some(sc)) => Some((Event::AttackerCapturesTarget, sc)),
            (None, None) => None,
        };
        if let Some((event, s)) = event {
            let t = t0 + s;
            if t > trajectory.last().map_or(0.0, |p| p.t) {
                trajectory.push(sample(t));
            }
            let p = sample(t);
            return Ok(EngagementOutcome {
                event,
                t_event: t,
                intercept_point: Some(p.attacker),
                terminal_at_separation: p.attacker.distance(p.target),
                headings,
                trajectory,
            });
        }
        if t1 >= config.t_max {
            let p = sample(config.t_max);
            trajectory.push(p);
            return Ok(EngagementOutcome {
                event: Event::Timeout,
                t_event: config.t_max,
                intercept_point: None,
                terminal_at_separation: p.attacker.distance(p.target),
                headings,
                trajectory,
            });
        }
        trajectory.push(sample(t1));
        k += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Residual {
    fn new(value: f64, tolerance: f64) -> Self {
        Self {
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

/// Simulated-versus-analytic comparison for an all-optimal run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub event_is_interception: bool,
    pub separation: Residual,
    pub intercept_point: Residual,
    pub interception_time: Residual,
    pub pass: bool,
}

/// Compares a simulated engagement against the analytic solution.
///
/// Every residual is held to `eps + 2 dt max_speed`.
pub fn validate(
    outcome: &EngagementOutcome,
    solution: &GameSolution,
    state: &ReducedState,
    eps: f64,
    dt: f64,
) -> ResidualReport {
    let max_speed = state.alpha.max(PURSUER_SPEED);
    let tol = eps + 2.0 * dt * max_speed;
    let nan = f64::NAN;
    let (y_star, j_star) = (solution.y_star.unwrap_or(nan), solution.j_star.unwrap_or(nan));
    let sep = (outcome.terminal_at_separation - j_star).abs();
    let point = outcome
        .intercept_point
        .map_or(nan, |p| p.distance(Point::new(0.0, y_star)));
    let time = (outcome.t_event - state.x_a.hypot(y_star)).abs();

    let separation = Residual::new(sep, tol);
    let intercept_point = Residual::new(point, tol);
    let interception_time = Residual::new(time, tol);
    let event_is_interception = outcome.event == Event::DefenderInterceptsAttacker;
    ResidualReport {
        event_is_interception,
        separation,
        intercept_point,
        interception_time,
        pass: event_is_interception && separation.pass && intercept_point.pass && interception_time.pass,
    }
}
