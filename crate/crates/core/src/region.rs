//! Escape and capture regions of the reduced state space.
//!
//! For a fixed speed ratio and Attacker abscissa, the Target escapes iff the
//! Apollonius circle crosses the Y-axis. The dividing curve is the right
//! branch of
//!
//! ```text
//! x^2 / (alpha^2 x_A^2) - y^2 / ((1 - alpha^2) x_A^2) = 1
//! ```
//!
//! and Target positions to its left escape.

use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::{Error, Result};

/// Relative band around the hyperbola classified as [`RegionClass::Boundary`].
pub const BOUNDARY_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionClass {
    Escape,
    Capture,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionBoundary {
    pub alpha: f64,
    pub x_a: f64,
    pub samples: Vec<Point>,
    pub asymptote_slope: f64,
}

fn check(alpha: f64, x_a: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if !(x_a.is_finite() && x_a > 0.0) {
        return Err(Error::InvalidState(format!("x_A must be positive, got {x_a}")));
    }
    Ok(())
}

/// Slope of the asymptotes shared by every boundary with this speed ratio.
pub fn asymptote_slope(alpha: f64) -> f64 {
    (1.0 - alpha * alpha).sqrt() / alpha
}

/// Left-hand side of the hyperbola equation; equals 1 on the boundary.
pub fn hyperbola_lhs(alpha: f64, x_a: f64, x: f64, y: f64) -> f64 {
    let xa2 = x_a * x_a;
    x * x / (alpha * alpha * xa2) - y * y / ((1.0 - alpha * alpha) * xa2)
}

/// Abscissa of the boundary at ordinate `y`.
pub fn boundary_x(alpha: f64, x_a: f64, y: f64) -> f64 {
    alpha * x_a * (1.0 + y * y / ((1.0 - alpha * alpha) * x_a * x_a)).sqrt()
}

/// Classifies a Target initial position `(x, y)`.
pub fn classify(alpha: f64, x_a: f64, x: f64, y: f64) -> Result<RegionClass> {
    check(alpha, x_a)?;
    // Left of x = alpha^2 x_A the circle always straddles the Y-axis; this
    // also covers the whole left half plane.
    if x <= alpha * alpha * x_a {
        return Ok(RegionClass::Escape);
    }
    let lhs = hyperbola_lhs(alpha, x_a, x, y);
    Ok(if (lhs - 1.0).abs() <= BOUNDARY_BAND {
        RegionClass::Boundary
    } else if lhs < 1.0 {
        RegionClass::Escape
    } else {
        RegionClass::Capture
    })
}

/// `n` points on the right branch with equally spaced ordinates.
pub fn boundary_samples(alpha: f64, x_a: f64, y_min: f64, y_max: f64, n: usize) -> Result<RegionBoundary> {
    check(alpha, x_a)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {n}")));
    }
    if !(y_min < y_max) {
        return Err(Error::InvalidParameter(format!("y_min {y_min} must be below y_max {y_max}")));
    }
    let step = (y_max - y_min) / (n - 1) as f64;
    let samples = (0..n)
        .map(|i| {
            let y = if i == n - 1 { y_max } else { y_min + step * i as f64 };
            Point::new(boundary_x(alpha, x_a, y), y)
        })
        .collect();
    Ok(RegionBoundary {
        alpha,
        x_a,
        samples,
        asymptote_slope: asymptote_slope(alpha),
    })
}
