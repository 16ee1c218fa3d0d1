//! Optimal play for the three-agent game.
//!
//! With the Defender matching the Attacker's aimpoint, the max-min over the
//! three aimpoints reduces to maximising the one-variable payoff
//!
//! ```text
//! J(y) = alpha * sqrt(x_A^2 + y^2) - sqrt((y - y_T)^2 + x_T^2)
//! ```
//!
//! over the common aimpoint `(0, y)` on the Y-axis. `J` is the signed
//! Attacker-Target separation at the moment the Defender intercepts the
//! Attacker.

use serde::{Deserialize, Serialize};

use crate::apollonius::{self, ApolloniusCircle};
use crate::frame::ReducedState;
use crate::geometry::Point;
use crate::quartic::{self, QuarticCoeffs, QuarticRoots};
use crate::{Error, Result};

/// `|J*| <= BOUNDARY_TOLERANCE * x_A` is classified as [`Outcome::Boundary`].
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// Relative slack allowed on the bound and second-order checks.
pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Escape,
    Capture,
    Boundary,
    TrivialEscape,
}

impl Outcome {
    pub fn classify(j_star: f64, x_a: f64) -> Self {
        if j_star.abs() <= BOUNDARY_TOLERANCE * x_a {
            Outcome::Boundary
        } else if j_star > 0.0 {
            Outcome::Escape
        } else {
            Outcome::Capture
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Escape => "Escape",
            Outcome::Capture => "Capture",
            Outcome::Boundary => "Boundary",
            Outcome::TrivialEscape => "TrivialEscape",
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which upper limit bracketed the selected quartic root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UpperBracket {
    /// `y_T / (1 - alpha^2)`.
    Escape,
    /// The second-order bound `y_T / (1 - (alpha x_T / x_A)^(2/3))`.
    Curvature,
    /// Neither bound bracketed the root; found by doubling.
    Expanded,
}

/// Diagnostic bounds around the optimal aimpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    /// Lower Y-axis intersection of the Apollonius circle.
    pub y_lower: Option<f64>,
    /// Upper Y-axis intersection of the Apollonius circle.
    pub y_upper: Option<f64>,
    /// `y_T / (1 - alpha^2)`.
    pub escape_bound: f64,
    /// `y_T / (1 - (alpha x_T / x_A)^(2/3))`, defined only when `alpha x_T < x_A`.
    pub curvature_bound: Option<f64>,
    pub upper_bracket: Option<UpperBracket>,
}

/// Outcome of the aimpoint search, before headings and payoff are assembled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AimpointSelection {
    pub y_star: f64,
    pub roots: Option<QuarticRoots>,
    pub bounds: Bounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameSolution {
    /// Ordinate of the common aimpoint `I = (0, y*)`.
    pub y_star: Option<f64>,
    /// Signed terminal Attacker-Target separation.
    #[serde(rename = "J_star")]
    pub j_star: Option<f64>,
    pub alpha_bar: f64,
    pub outcome: Outcome,
    #[serde(rename = "heading_T")]
    pub heading_t: Option<f64>,
    #[serde(rename = "heading_A")]
    pub heading_a: Option<f64>,
    #[serde(rename = "heading_D")]
    pub heading_d: Option<f64>,
    pub roots: Option<QuarticRoots>,
    pub bounds: Option<Bounds>,
    /// Capture outcomes only: where the Target's ray toward `I` leaves the
    /// Apollonius circle. The Attacker can meet the Target there. This is a
    /// diagnostic; the doomed Target's own objective is not modelled.
    pub capture_point: Option<Point>,
}

impl GameSolution {
    pub fn aimpoint(&self) -> Option<Point> {
        self.y_star.map(|y| Point::new(0.0, y))
    }

    /// Time for the Attacker (unit speed) to reach the aimpoint.
    pub fn interception_time(&self, state: &ReducedState) -> Option<f64> {
        self.y_star.map(|y| state.x_a.hypot(y))
    }
}

/// Distance between the Target's terminal position and the interception
/// point `(0, u)` when the Attacker (and Defender) aim at `u` and the Target
/// aims at `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviationPayoff {
    pub u: f64,
    pub v: f64,
    pub value: f64,
}

/// Speed ratio below which the Apollonius circle misses the Y-axis.
pub fn critical_speed_ratio(state: &ReducedState) -> f64 {
    if state.x_t <= 0.0 {
        return 0.0;
    }
    let far = (state.x_a + state.x_t).hypot(state.y_t);
    let near = (state.x_a - state.x_t).hypot(state.y_t);
    (far - near) / (2.0 * state.x_a)
}

pub fn payoff(state: &ReducedState, y: f64) -> f64 {
    state.alpha * state.x_a.hypot(y) - (y - state.y_t).hypot(state.x_t)
}

fn check_singular(state: &ReducedState, y: f64) -> Result<()> {
    if state.x_t == 0.0 && y == state.y_t {
        Err(Error::SingularPoint(y))
    } else {
        Ok(())
    }
}

pub fn payoff_derivative(state: &ReducedState, y: f64) -> Result<f64> {
    check_singular(state, y)?;
    let dy = y - state.y_t;
    Ok(state.alpha * y / state.x_a.hypot(y) - dy / dy.hypot(state.x_t))
}

pub fn payoff_second_derivative(state: &ReducedState, y: f64) -> Result<f64> {
    check_singular(state, y)?;
    let xa2 = state.x_a * state.x_a;
    let xt2 = state.x_t * state.x_t;
    let dy = y - state.y_t;
    Ok(state.alpha * xa2 / (xa2 + y * y).powf(1.5) - xt2 / (dy * dy + xt2).powf(1.5))
}

/// Payoff at a stationary point of `J`:
/// `(1/alpha) sqrt(x_A^2 + y^2) (y_T / y - (1 - alpha^2))`.
///
/// Only meaningful where the first-order condition holds and `y > 0`.
pub fn stationary_payoff(state: &ReducedState, y: f64) -> f64 {
    let a = state.alpha;
    state.x_a.hypot(y) * (state.y_t / y - (1.0 - a * a)) / a
}

/// Second-order condition for a maximum at `y > y_T` (requires `x_T != 0`):
/// `(x_A / x_T)^2 / alpha^2 < (y / (y - y_T))^3`.
pub fn second_order_holds(state: &ReducedState, y: f64) -> bool {
    let lhs = (state.x_a / state.x_t).powi(2) / (state.alpha * state.alpha);
    let rhs = (y / (y - state.y_t)).powi(3);
    lhs < rhs * (1.0 + CHECK_TOLERANCE)
}

fn bounds_for(state: &ReducedState, circle: Option<&ApolloniusCircle>) -> Bounds {
    let a = state.alpha;
    let escape_bound = state.y_t / (1.0 - a * a);
    let ratio = a * state.x_t / state.x_a;
    let curvature_bound =
        (state.x_t > 0.0 && ratio < 1.0).then(|| state.y_t / (1.0 - ratio.powf(2.0 / 3.0)));
    let (y_lower, y_upper) = match circle.and_then(|c| apollonius::y_axis_intersections(c, state)) {
        Some((lo, hi)) => (Some(lo), Some(hi)),
        None => (None, None),
    };
    Bounds {
        y_lower,
        y_upper,
        escape_bound,
        curvature_bound,
        upper_bracket: None,
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// Selects the Target's optimal aimpoint ordinate `y*`.
///
/// * `x_T > 0`: the upper quartic root `y2 > y_T`.
/// * `x_T < 0`: the lower root `y1 < y_T`.
/// * `x_T = 0`: `y_T` itself (double root).
/// * `y_T = 0`: the quartic degenerates; the best of `y = 0` and the
///   remaining symmetric root is taken.
pub fn optimal_aimpoint(state: &ReducedState) -> Result<AimpointSelection> {
    check_alpha(state.alpha)?;
    let circle = apollonius::circle(state).ok();
    let mut bounds = bounds_for(state, circle.as_ref());
    let q = quartic::game_quartic(state)?;

    if state.x_t == 0.0 {
        let roots = (state.y_t > 0.0).then_some(QuarticRoots {
            y1: state.y_t,
            y2: state.y_t,
        });
        return Ok(AimpointSelection {
            y_star: state.y_t,
            roots,
            bounds,
        });
    }

    if state.y_t == 0.0 {
        return Ok(AimpointSelection {
            y_star: on_axis_aimpoint(state),
            roots: None,
            bounds,
        });
    }

    if state.x_t < 0.0 {
        let hi = quartic::expand_upper_bracket(&q, bounds.escape_bound)
            .ok_or_else(|| Error::BracketFailure("no sign change above y_T".into()))?;
        let roots = quartic::real_roots_within(&q, state.y_t, hi)?;
        bounds.upper_bracket = Some(if hi == bounds.escape_bound {
            UpperBracket::Escape
        } else {
            UpperBracket::Expanded
        });
        return Ok(AimpointSelection {
            y_star: roots.y1,
            roots: Some(roots),
            bounds,
        });
    }

    let (roots, which) = upper_root(&q, state.y_t, &bounds)?;
    bounds.upper_bracket = Some(which);
    let y2 = roots.y2;

    if !second_order_holds(state, y2) {
        return Err(Error::BoundViolation {
            check: "second-order condition",
            value: y2,
            bound: bounds.curvature_bound.unwrap_or(f64::INFINITY),
        });
    }
    let j = stationary_payoff(state, y2);
    if Outcome::classify(j, state.x_a) == Outcome::Escape {
        let slack = |b: f64| CHECK_TOLERANCE * b.abs().max(state.y_t);
        if y2 > bounds.escape_bound + slack(bounds.escape_bound) {
            return Err(Error::BoundViolation {
                check: "escape bound",
                value: y2,
                bound: bounds.escape_bound,
            });
        }
        if let (Some(lo), Some(hi)) = (bounds.y_lower, bounds.y_upper) {
            if y2 < lo - slack(lo) {
                return Err(Error::BoundViolation {
                    check: "Apollonius lower intersection",
                    value: y2,
                    bound: lo,
                });
            }
            if y2 > hi + slack(hi) {
                return Err(Error::BoundViolation {
                    check: "Apollonius upper intersection",
                    value: y2,
                    bound: hi,
                });
            }
        }
    }
    Ok(AimpointSelection {
        y_star: y2,
        roots: Some(roots),
        bounds,
    })
}

/// Brackets the upper root with the tightest applicable bound, falling back
/// to the curvature bound alone and then to doubling.
fn upper_root(q: &QuarticCoeffs, y_t: f64, bounds: &Bounds) -> Result<(QuarticRoots, UpperBracket)> {
    let (tight, which) = match bounds.curvature_bound {
        Some(c) if c < bounds.escape_bound => (c, UpperBracket::Curvature),
        _ => (bounds.escape_bound, UpperBracket::Escape),
    };
    match quartic::real_roots_within(q, y_t, tight) {
        Ok(r) => return Ok((r, which)),
        Err(Error::BracketFailure(_)) => {}
        Err(e) => return Err(e),
    }
    if let Some(c) = bounds.curvature_bound {
        if let Ok(r) = quartic::real_roots_within(q, y_t, c) {
            return Ok((r, UpperBracket::Curvature));
        }
    }
    let start = bounds.curvature_bound.unwrap_or(bounds.escape_bound).max(bounds.escape_bound);
    let hi = quartic::expand_upper_bracket(q, start)
        .ok_or_else(|| Error::BracketFailure("no sign change above y_T".into()))?;
    Ok((quartic::real_roots_within(q, y_t, hi)?, UpperBracket::Expanded))
}

/// Aimpoint for a Target on the X-axis.
fn on_axis_aimpoint(state: &ReducedState) -> f64 {
    if state.x_t <= 0.0 {
        return 0.0;
    }
    // Remaining roots satisfy (1 - a^2) y^2 = a^2 x_T^2 - x_A^2.
    let a2 = state.alpha * state.alpha;
    let y2 = (a2 * state.x_t * state.x_t - state.x_a * state.x_a) / (1.0 - a2);
    if y2 > 0.0 {
        let y = y2.sqrt();
        if payoff(state, y) > payoff(state, 0.0) {
            return y;
        }
    }
    0.0
}

/// Full solution: aimpoint, payoff, classification and headings.
pub fn solve(state: &ReducedState) -> Result<GameSolution> {
    let alpha_bar = critical_speed_ratio(state);
    if state.alpha >= 1.0 {
        return Ok(GameSolution {
            y_star: None,
            j_star: None,
            alpha_bar,
            outcome: Outcome::TrivialEscape,
            heading_t: None,
            heading_a: None,
            heading_d: None,
            roots: None,
            bounds: None,
            capture_point: None,
        });
    }

    let sel = optimal_aimpoint(state)?;
    let y_star = sel.y_star;
    let j_star = if y_star > 0.0 {
        stationary_payoff(state, y_star)
    } else if state.x_t < 0.0 {
        // Limit of the stationary form as y_T -> 0 along the lower root.
        state.alpha * state.x_a - state.x_t
    } else {
        payoff(state, y_star)
    };
    let outcome = Outcome::classify(j_star, state.x_a);
    let aim = Point::new(0.0, y_star);
    let heading = |from: Point| (aim - from).unit().map(Point::angle);

    let capture_point = if outcome == Outcome::Capture {
        apollonius::circle(state)
            .ok()
            .and_then(|c| c.ray_exit(state.target(), aim - state.target()))
    } else {
        None
    };

    Ok(GameSolution {
        y_star: Some(y_star),
        j_star: Some(j_star),
        alpha_bar,
        outcome,
        heading_t: heading(state.target()),
        heading_a: heading(state.attacker()),
        heading_d: heading(state.defender()),
        roots: sel.roots,
        bounds: Some(sel.bounds),
        capture_point,
    })
}

/// Geometric miss distance when the Attacker and Defender aim at `(0, u)`
/// and the Target aims at `(0, v)`.
///
/// The Defender intercepts at `(0, u)` after `sqrt(x_A^2 + u^2)` (unit
/// Attacker speed); by then the Target has covered `alpha` times that along
/// its constant heading.
pub fn deviation_payoff(state: &ReducedState, u: f64, v: f64) -> DeviationPayoff {
    let t = state.target();
    let travel = state.alpha * state.x_a.hypot(u);
    let to_aim = Point::new(0.0, v) - t;
    let terminal = match to_aim.unit() {
        Some(dir) => t + travel * dir,
        None => t,
    };
    DeviationPayoff {
        u,
        v,
        value: terminal.distance(Point::new(0.0, u)),
    }
}
