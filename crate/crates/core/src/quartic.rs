//! The quartic optimality equation of the game and its bracketed root finder.
//!
//! Writing the quartic as `f(y)`, the sign pattern `f(0) > 0`, `f(y_T) < 0`
//! and `f(+inf) = +inf` brackets one root in `(0, y_T)` and one above `y_T`.
//! Roots are located by bisection inside those brackets and then polished
//! with a safeguarded Newton iteration.

use serde::{Deserialize, Serialize};

use crate::frame::ReducedState;
use crate::{Error, Result};

/// Relative residual accepted for a polished root.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

/// Brackets are widened by this factor to tolerate roots on the boundary.
pub const BRACKET_WIDENING: f64 = 1e-9;

/// Bisection stops once the bracket is narrower than this fraction of `y_T`.
const BISECTION_WIDTH: f64 = 1e-3;

const MAX_POLISH_ITERATIONS: usize = 200;
const MAX_EXPANSIONS: usize = 1100;

/// Coefficients of `c4 y^4 + c3 y^3 + c2 y^2 + c1 y + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticCoeffs {
    pub c4: f64,
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

/// The two real roots of the game quartic, `y1 < y_T < y2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticRoots {
    pub y1: f64,
    pub y2: f64,
}

impl QuarticCoeffs {
    pub fn as_array(&self) -> [f64; 5] {
        [self.c4, self.c3, self.c2, self.c1, self.c0]
    }

    pub fn eval(&self, y: f64) -> f64 {
        (((self.c4 * y + self.c3) * y + self.c2) * y + self.c1) * y + self.c0
    }

    pub fn derivative(&self, y: f64) -> f64 {
        ((4.0 * self.c4 * y + 3.0 * self.c3) * y + 2.0 * self.c2) * y + self.c1
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.as_array().iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Residual bound for a root at `y`: `1e-9 * max|c_i| * max(1, y^4)`.
    pub fn residual_tolerance(&self, y: f64) -> f64 {
        RESIDUAL_TOLERANCE * self.max_abs_coeff() * y.powi(4).max(1.0)
    }

    /// Divides by `(y - r1)(y - r2)`, returning the quotient `[a, b, c]` of
    /// `a y^2 + b y + c`. The remainder is discarded.
    pub fn deflate_pair(&self, r1: f64, r2: f64) -> [f64; 3] {
        let s = r1 + r2;
        let p = r1 * r2;
        let a = self.c4;
        let b = self.c3 + s * a;
        let c = self.c2 + s * b - p * a;
        [a, b, c]
    }

    /// Canonical form: lengths normalised by `y_T` (requires `y_T > 0`).
    pub fn canonical(state: &ReducedState) -> Result<Self> {
        if state.y_t <= 0.0 {
            return Err(Error::InvalidState("canonical quartic needs y_T > 0".into()));
        }
        let scaled = ReducedState::new(
            state.x_a / state.y_t,
            state.x_t / state.y_t,
            1.0,
            state.alpha,
        )?;
        game_quartic(&scaled)
    }
}

/// Coefficients of the first-order optimality quartic for `state`.
pub fn game_quartic(state: &ReducedState) -> Result<QuarticCoeffs> {
    let alpha = state.alpha;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let k = 1.0 - alpha * alpha;
    let (xa2, xt2, yt) = (state.x_a * state.x_a, state.x_t * state.x_t, state.y_t);
    Ok(QuarticCoeffs {
        c4: k,
        c3: -2.0 * k * yt,
        c2: k * yt * yt + xa2 - alpha * alpha * xt2,
        c1: -2.0 * xa2 * yt,
        c0: xa2 * yt * yt,
    })
}

/// Both real roots, with the upper root bracketed by `(y_T, y_T / c4)`.
///
/// The upper limit is the escape bound `y_T / (1 - alpha^2)`; it holds
/// whenever the Target escapes.
pub fn real_roots_bracketed(q: &QuarticCoeffs, y_t: f64) -> Result<QuarticRoots> {
    real_roots_within(q, y_t, y_t / q.c4)
}

/// Both real roots, with the upper root bracketed by `(y_T, upper)`.
pub fn real_roots_within(q: &QuarticCoeffs, y_t: f64, upper: f64) -> Result<QuarticRoots> {
    if !(y_t > 0.0) {
        return Err(Error::BracketFailure(format!("y_T = {y_t} must be positive")));
    }
    let f0 = q.eval(0.0);
    let f_mid = q.eval(y_t);
    if !(f0 > 0.0) {
        return Err(Error::BracketFailure(format!("f(0) = {f0} is not positive")));
    }
    if !(f_mid < 0.0) {
        return Err(Error::BracketFailure(format!("f(y_T) = {f_mid} is not negative")));
    }
    let hi = upper * (1.0 + BRACKET_WIDENING);
    let f_hi = q.eval(hi);
    if !(hi > y_t && f_hi > 0.0) {
        return Err(Error::BracketFailure(format!(
            "f({hi}) = {f_hi} is not positive at the upper bracket"
        )));
    }
    let width = BISECTION_WIDTH * y_t;
    let y1 = solve_in(q, 0.0, y_t, width)?;
    let y2 = solve_in(q, y_t, hi, width)?;
    Ok(QuarticRoots { y1, y2 })
}

/// Smallest `start * 2^k` (k >= 0) at which `f` is positive.
pub fn expand_upper_bracket(q: &QuarticCoeffs, start: f64) -> Option<f64> {
    let mut hi = start;
    for _ in 0..MAX_EXPANSIONS {
        if !hi.is_finite() {
            return None;
        }
        if q.eval(hi) > 0.0 {
            return Some(hi);
        }
        hi *= 2.0;
    }
    None
}

/// Root of `q` in `[lo, hi]` given a sign change across the interval.
fn solve_in(q: &QuarticCoeffs, mut lo: f64, mut hi: f64, width: f64) -> Result<f64> {
    let rising = q.eval(hi) > q.eval(lo);
    // Keep the invariant: sign(f(lo)) != sign(f(hi)), with `lo` on the
    // "below zero" side when `rising`.
    let shrink = |lo: &mut f64, hi: &mut f64, x: f64| {
        let fx = q.eval(x);
        if (fx < 0.0) == rising {
            *lo = x;
        } else {
            *hi = x;
        }
        fx
    };

    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if shrink(&mut lo, &mut hi, mid) == 0.0 {
            return Ok(mid);
        }
    }

    let mut y = 0.5 * (lo + hi);
    for _ in 0..MAX_POLISH_ITERATIONS {
        let fy = shrink(&mut lo, &mut hi, y);
        if fy == 0.0 {
            return Ok(y);
        }
        let dfy = q.derivative(y);
        let newton = y - fy / dfy;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - y).abs() <= 4.0 * f64::EPSILON * y.abs().max(f64::MIN_POSITIVE) {
            y = next;
            break;
        }
        y = next;
    }

    let residual = q.eval(y).abs();
    if residual <= q.residual_tolerance(y) {
        Ok(y)
    } else {
        Err(Error::BracketFailure(format!(
            "root polish stalled at y = {y} with residual {residual}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn example1() -> ReducedState {
        ReducedState::new(6.0, 3.0, 2.0, 0.5).unwrap()
    }

    /// Plain bisection to a fixed width, used as an oracle.
    fn bisect(q: &QuarticCoeffs, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
        let f_lo = q.eval(lo);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if (q.eval(mid) > 0.0) == (f_lo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn example_coefficients() {
        let q = game_quartic(&example1()).unwrap();
        assert_eq!(q.as_array(), [0.75, -3.0, 36.75, -144.0, 144.0]);
    }

    #[test]
    fn symmetric_state_has_double_root_at_y_t() {
        let s = ReducedState::new(1.0, 0.0, 1.0, 0.5).unwrap();
        let q = game_quartic(&s).unwrap();
        assert_eq!(q.as_array(), [0.75, -1.5, 1.75, -2.0, 1.0]);
        assert!(q.eval(1.0).abs() < 1e-15);
        assert!(q.derivative(1.0).abs() < 1e-15);
    }

    #[test]
    fn target_on_axis_zeroes_odd_coefficients() {
        let q = game_quartic(&ReducedState::new(6.0, 3.0, 0.0, 0.5).unwrap()).unwrap();
        assert_eq!((q.c3, q.c1, q.c0), (0.0, 0.0, 0.0));
    }

    #[test]
    fn example_roots() {
        let q = game_quartic(&example1()).unwrap();
        let roots = real_roots_bracketed(&q, 2.0).unwrap();
        assert!((roots.y2 - 2.6108).abs() < 5e-5);
        let oracle = bisect(&q, 0.0, 2.0, 1e-12);
        assert_relative_eq!(roots.y1, oracle, epsilon = 1e-9);
        assert!((roots.y1 - 1.609).abs() < 1e-3);
        for y in [roots.y1, roots.y2] {
            assert!(q.eval(y).abs() <= q.residual_tolerance(y));
        }
    }

    #[test]
    fn remaining_factor_has_complex_roots() {
        let q = game_quartic(&example1()).unwrap();
        let r = real_roots_bracketed(&q, 2.0).unwrap();
        let [a, b, c] = q.deflate_pair(r.y1, r.y2);
        assert!(b * b - 4.0 * a * c < 0.0);
    }

    #[test]
    fn zero_x_t_breaks_the_bracket() {
        let s = ReducedState::new(1.0, 0.0, 1.0, 0.5).unwrap();
        let q = game_quartic(&s).unwrap();
        assert!(matches!(real_roots_bracketed(&q, 1.0), Err(Error::BracketFailure(_))));
    }

    #[test]
    fn capture_state_fails_escape_bracket_but_expands() {
        let s = ReducedState::new(6.0, 3.0, 2.0, 0.3).unwrap();
        let q = game_quartic(&s).unwrap();
        let escape_bound = 2.0 / q.c4;
        assert!(matches!(real_roots_bracketed(&q, 2.0), Err(Error::BracketFailure(_))));
        let hi = expand_upper_bracket(&q, escape_bound).unwrap();
        let r = real_roots_within(&q, 2.0, hi).unwrap();
        assert!(r.y2 > escape_bound);
    }

    #[test]
    fn alpha_out_of_range() {
        let s = ReducedState::new(6.0, 3.0, 2.0, 1.2).unwrap();
        assert_eq!(game_quartic(&s), Err(Error::AlphaOutOfRange(1.2)));
    }
}
