//! Brute-force checks that do not go through the quartic.
//!
//! [`brute_force_maxmin`] searches the Attacker/Target aimpoint grid
//! directly on the geometric miss distance; [`finite_difference_check`]
//! compares the analytic payoff derivatives against central differences.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::frame::ReducedState;
use crate::game::{self, GameSolution};
use crate::geometry::Point;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxMin {
    pub u_best: f64,
    pub v_best: f64,
    pub value: f64,
    /// Grid spacing `(y_hi - y_lo) / (n - 1)`.
    pub step: f64,
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// Row evaluator for the miss distance with `v` fixed.
struct Row {
    target: Point,
    dir: Point,
}

impl Row {
    fn new(state: &ReducedState, v: f64) -> Self {
        let target = state.target();
        let dir = (Point::new(0.0, v) - target).unit().unwrap_or(Point::ORIGIN);
        Self { target, dir }
    }

    /// `travel` is the Target's path length up to interception at `(0, u)`.
    fn distance(&self, u: f64, travel: f64) -> f64 {
        let x = self.target.x + travel * self.dir.x;
        let y = self.target.y + travel * self.dir.y - u;
        (x * x + y * y).sqrt()
    }
}

/// `max_v min_u` of the miss distance over an `n x n` aimpoint grid on
/// `[y_lo, y_hi]`. Rows are evaluated in parallel.
pub fn brute_force_maxmin(state: &ReducedState, y_lo: f64, y_hi: f64, n: usize) -> Result<MaxMin> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("grid needs n >= 3, got {n}")));
    }
    if !(y_lo < y_hi) {
        return Err(Error::InvalidParameter(format!("empty grid [{y_lo}, {y_hi}]")));
    }
    let ys = grid(y_lo, y_hi, n);
    let travel: Vec<f64> = ys.iter().map(|&u| state.alpha * state.x_a.hypot(u)).collect();

    let rows: Vec<(f64, f64, f64)> = ys
        .par_iter()
        .map(|&v| {
            let row = Row::new(state, v);
            let (mut u_best, mut best) = (ys[0], f64::INFINITY);
            for (&u, &l) in ys.iter().zip(&travel) {
                let d = row.distance(u, l);
                if d < best {
                    best = d;
                    u_best = u;
                }
            }
            (v, u_best, best)
        })
        .collect();

    // Ties resolve to the lowest v for determinism.
    let (v_best, u_best, value) = rows
        .into_iter()
        .fold((f64::NAN, f64::NAN, f64::NEG_INFINITY), |acc, r| if r.2 > acc.2 { r } else { acc });
    Ok(MaxMin {
        u_best,
        v_best,
        value,
        step: (y_hi - y_lo) / (n - 1) as f64,
    })
}

/// Attacker's best response to a Target aimpoint `v`: the `u` in `[lo, hi]`
/// minimising the miss distance, located by a grid scan refined with
/// golden-section search.
pub fn attacker_best_response(state: &ReducedState, v: f64, lo: f64, hi: f64) -> (f64, f64) {
    const SCAN: usize = 401;
    let f = |u: f64| game::deviation_payoff(state, u, v).value;
    let ys = grid(lo, hi, SCAN);
    let (i_best, _) = ys
        .iter()
        .enumerate()
        .map(|(i, &u)| (i, f(u)))
        .fold((0, f64::INFINITY), |acc, (i, d)| if d < acc.1 { (i, d) } else { acc });
    let mut a = ys[i_best.saturating_sub(1)];
    let mut b = ys[(i_best + 1).min(SCAN - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if b - a <= 1e-13 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mut best = (ys[i_best], f(ys[i_best]));
    for u in [a, b, 0.5 * (a + b)] {
        let val = f(u);
        if val < best.1 {
            best = (u, val);
        }
    }
    best
}

/// Unilateral-deviation check around the optimal aimpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddleReport {
    pub j_star: f64,
    /// `J* - min_u D(u, y*)`: how much an Attacker deviation could gain.
    pub attacker_gain: f64,
    pub attacker_argmin: f64,
    /// `max_v min_u D(u, v) - J*`: how much a Target deviation could gain
    /// against a best-responding Attacker.
    pub target_gain: f64,
    pub target_argmax: f64,
    pub grid_step: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Saddle-point check on an `n`-point deviation grid over `[y_lower, y_upper]`.
///
/// Only meaningful for escape outcomes; the caller supplies the interval.
pub fn saddle_check(
    state: &ReducedState,
    solution: &GameSolution,
    y_lower: f64,
    y_upper: f64,
    n: usize,
    tolerance: f64,
) -> Result<SaddleReport> {
    let (Some(y_star), Some(j_star)) = (solution.y_star, solution.j_star) else {
        return Err(Error::InvalidParameter("solution has no aimpoint".into()));
    };
    if n < 2 || !(y_lower < y_upper) {
        return Err(Error::InvalidParameter("bad deviation grid".into()));
    }
    let ys = grid(y_lower, y_upper, n);
    let width = y_upper - y_lower;

    let (attacker_argmin, att_min) = ys
        .iter()
        .map(|&u| (u, game::deviation_payoff(state, u, y_star).value))
        .fold((f64::NAN, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });

    let (target_argmax, tgt_max) = ys
        .par_iter()
        .map(|&v| {
            let (_, val) = attacker_best_response(state, v, y_lower - width, y_upper + width);
            (v, val)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((f64::NAN, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });

    let attacker_gain = j_star - att_min;
    let target_gain = tgt_max - j_star;
    Ok(SaddleReport {
        j_star,
        attacker_gain,
        attacker_argmin,
        target_gain,
        target_argmax,
        grid_step: width / (n - 1) as f64,
        tolerance,
        pass: attacker_gain <= tolerance && target_gain <= tolerance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdComparison {
    pub fd_value: f64,
    pub analytic_value: f64,
    pub abs_error: f64,
}

impl FdComparison {
    fn new(fd_value: f64, analytic_value: f64) -> Self {
        Self {
            fd_value,
            analytic_value,
            abs_error: (fd_value - analytic_value).abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdCheck {
    pub first: FdComparison,
    pub second: FdComparison,
}

/// Step for central differences at `y`: `1e-5` times the shorter of the two
/// distances inside the payoff radicals.
///
/// The payoff bends on the scale of those distances, so a step tied to `|y|`
/// alone overshoots when the Target sits close to the aimpoint.
pub fn fd_step(state: &ReducedState, y: f64) -> f64 {
    let near_target = (y - state.y_t).hypot(state.x_t);
    let near_attacker = state.x_a.hypot(y);
    1e-5 * near_target.min(near_attacker)
}

/// Central differences of the payoff at `y` with step `h`.
pub fn finite_difference_check(state: &ReducedState, y: f64, h: f64) -> Result<FdCheck> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let analytic_first = game::payoff_derivative(state, y)?;
    let analytic_second = game::payoff_second_derivative(state, y)?;
    for probe in [y - h, y + h] {
        game::payoff_derivative(state, probe)?;
    }
    let j = |y| game::payoff(state, y);
    let (jm, j0, jp) = (j(y - h), j(y), j(y + h));
    Ok(FdCheck {
        first: FdComparison::new((jp - jm) / (2.0 * h), analytic_first),
        second: FdComparison::new((jp - 2.0 * j0 + jm) / (h * h), analytic_second),
    })
}
