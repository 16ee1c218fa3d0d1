//! Apollonius circle of the Attacker-Target pair.
//!
//! The circle is the locus of points `P` with `|TP| / |AP| = alpha`; the
//! Target reaches every point strictly inside it before the Attacker does.

use serde::{Deserialize, Serialize};

use crate::frame::ReducedState;
use crate::geometry::Point;
use crate::{Error, Result};

/// Relative tolerance for treating the Y-axis as tangent to the circle.
pub const TANGENCY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApolloniusCircle {
    pub center: Point,
    pub radius: f64,
    /// Attacker-Target separation.
    pub d: f64,
}

impl ApolloniusCircle {
    /// Point on the circle at polar angle `theta` about the center.
    pub fn point_at(&self, theta: f64) -> Point {
        self.center + self.radius * Point::from_angle(theta)
    }

    /// First point where the ray `origin + s * dir` (`s > 0`) meets the circle.
    ///
    /// For an origin inside the circle this is the exit point.
    pub fn ray_exit(&self, origin: Point, dir: Point) -> Option<Point> {
        let dir = dir.unit()?;
        let w = origin - self.center;
        let b = w.dot(dir);
        let c = w.dot(w) - self.radius * self.radius;
        let disc = b * b - c;
        if disc < 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        let s = if -b - sq > 0.0 { -b - sq } else { -b + sq };
        (s > 0.0).then(|| origin + s * dir)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

pub fn circle(state: &ReducedState) -> Result<ApolloniusCircle> {
    let alpha = state.alpha;
    check_alpha(alpha)?;
    let d = state.attacker_target_distance();
    if d == 0.0 {
        return Err(Error::CoincidentAgents);
    }
    let k = 1.0 - alpha * alpha;
    Ok(ApolloniusCircle {
        center: Point::new((state.x_t - alpha * alpha * state.x_a) / k, state.y_t / k),
        radius: alpha * d / k,
        d,
    })
}

/// Ordinates `(y_lower, y_upper)` where the circle meets the Y-axis.
///
/// `None` when the circle misses the axis; a tangent circle returns equal
/// endpoints.
pub fn y_axis_intersections(c: &ApolloniusCircle, state: &ReducedState) -> Option<(f64, f64)> {
    let alpha = state.alpha;
    let a2 = alpha * alpha;
    let k = 1.0 - a2;
    let radicand = a2 * state.y_t * state.y_t + k * (a2 * state.x_a * state.x_a - state.x_t * state.x_t);
    let scale = (alpha * c.d).powi(2);
    let root = if radicand.abs() <= TANGENCY_TOLERANCE * scale {
        0.0
    } else if radicand < 0.0 {
        return None;
    } else {
        radicand.sqrt()
    };
    Some(((state.y_t - root) / k, (state.y_t + root) / k))
}
