//! Mapping between the realistic plane and the reduced state space.
//!
//! In the reduced frame the Attacker sits at `(x_A, 0)` and the Defender at
//! `(-x_A, 0)`, so the Y-axis is the orthogonal bisector of AD. The Target is
//! reflected into the upper half plane when needed.

use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::{Error, Result};

/// Below this separation the AD axis (and therefore the Y-axis) is undefined.
pub const AXIS_TOLERANCE: f64 = 1e-12;

/// Relative tolerance used when checking `v_D == v_A`.
const SPEED_MATCH_TOLERANCE: f64 = 1e-12;

/// An engagement in arbitrary planar coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealisticScenario {
    pub target_pos: Point,
    pub attacker_pos: Point,
    pub defender_pos: Point,
    pub v_t: f64,
    pub v_a: f64,
    pub v_d: f64,
}

impl RealisticScenario {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("v_T", self.v_t), ("v_A", self.v_a), ("v_D", self.v_d)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidSpeeds(format!("{name} must be positive, got {v}")));
            }
        }
        if (self.v_d - self.v_a).abs() > SPEED_MATCH_TOLERANCE * self.v_a.max(self.v_d) {
            return Err(Error::InvalidSpeeds(format!(
                "defender speed {} must equal attacker speed {}",
                self.v_d, self.v_a
            )));
        }
        for (name, p) in [
            ("target", self.target_pos),
            ("attacker", self.attacker_pos),
            ("defender", self.defender_pos),
        ] {
            if !p.is_finite() {
                return Err(Error::InvalidState(format!("{name} position is not finite")));
            }
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.v_t / self.v_a
    }

    /// `alpha >= 1`: the Target outruns the Attacker and no game is played.
    pub fn is_trivial_escape(&self) -> bool {
        self.alpha() >= 1.0
    }
}

/// Game state in the reduced frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedState {
    /// Half the AD separation.
    pub x_a: f64,
    pub x_t: f64,
    /// Always non-negative.
    pub y_t: f64,
    /// Speed ratio `V_T / V_A`.
    pub alpha: f64,
}

impl ReducedState {
    pub fn new(x_a: f64, x_t: f64, y_t: f64, alpha: f64) -> Result<Self> {
        if !(x_a.is_finite() && x_a > 0.0) {
            return Err(Error::InvalidState(format!("x_A must be positive, got {x_a}")));
        }
        if !x_t.is_finite() {
            return Err(Error::InvalidState(format!("x_T must be finite, got {x_t}")));
        }
        if !(y_t.is_finite() && y_t >= 0.0) {
            return Err(Error::InvalidState(format!("y_T must be non-negative, got {y_t}")));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidState(format!("alpha must be positive, got {alpha}")));
        }
        Ok(Self { x_a, x_t, y_t, alpha })
    }

    /// Like [`ReducedState::new`] but reflects a negative `y_T` about the X-axis.
    pub fn normalized(x_a: f64, x_t: f64, y_t: f64, alpha: f64) -> Result<Self> {
        Self::new(x_a, x_t, y_t.abs(), alpha)
    }

    pub fn attacker(&self) -> Point {
        Point::new(self.x_a, 0.0)
    }

    pub fn defender(&self) -> Point {
        Point::new(-self.x_a, 0.0)
    }

    pub fn target(&self) -> Point {
        Point::new(self.x_t, self.y_t)
    }

    /// Attacker-Target separation.
    pub fn attacker_target_distance(&self) -> f64 {
        (self.x_a - self.x_t).hypot(self.y_t)
    }

    /// All lengths multiplied by `s`; the speed ratio is unchanged.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.x_a * s, self.x_t * s, self.y_t * s, self.alpha)
    }
}

/// Isometry taking realistic coordinates to the reduced frame.
///
/// Forward map: translate by `-translation`, rotate by `rotation_angle`, then
/// negate `y` when `reflect_y` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FramePose {
    pub translation: Point,
    pub rotation_angle: f64,
    pub reflect_y: bool,
}

impl FramePose {
    pub const IDENTITY: FramePose = FramePose {
        translation: Point::ORIGIN,
        rotation_angle: 0.0,
        reflect_y: false,
    };

    /// Realistic -> reduced.
    pub fn apply(&self, p: Point) -> Point {
        let q = rotate(p - self.translation, self.rotation_angle);
        if self.reflect_y {
            Point::new(q.x, -q.y)
        } else {
            q
        }
    }

    /// Reduced -> realistic.
    pub fn invert(&self, q: Point) -> Point {
        let q = if self.reflect_y { Point::new(q.x, -q.y) } else { q };
        rotate(q, -self.rotation_angle) + self.translation
    }

    /// Maps a heading measured in the reduced frame back to the realistic frame.
    pub fn heading_to_realistic(&self, theta: f64) -> f64 {
        let dir = Point::from_angle(theta);
        let dir = if self.reflect_y { Point::new(dir.x, -dir.y) } else { dir };
        rotate(dir, -self.rotation_angle).angle()
    }
}

fn rotate(p: Point, theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    Point::new(c * p.x - s * p.y, s * p.x + c * p.y)
}

/// Reduces a realistic scenario to the canonical frame.
pub fn to_reduced(scenario: &RealisticScenario) -> Result<(ReducedState, FramePose)> {
    scenario.validate()?;
    let a = scenario.attacker_pos;
    let d = scenario.defender_pos;
    let half = 0.5 * a.distance(d);
    if !(2.0 * half >= AXIS_TOLERANCE) {
        return Err(Error::DegenerateAxis);
    }
    let mid = Point::new(0.5 * (a.x + d.x), 0.5 * (a.y + d.y));
    let mut pose = FramePose {
        translation: mid,
        rotation_angle: -(a - mid).angle(),
        reflect_y: false,
    };
    let t = pose.apply(scenario.target_pos);
    if t.y < 0.0 {
        pose.reflect_y = true;
    }
    let state = ReducedState::new(half, t.x, t.y.abs(), scenario.alpha())?;
    Ok((state, pose))
}

/// Maps a reduced-frame point back to the realistic plane.
pub fn to_realistic(p: Point, pose: &FramePose) -> Point {
    pose.invert(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(t: Point, a: Point, d: Point) -> RealisticScenario {
        RealisticScenario {
            target_pos: t,
            attacker_pos: a,
            defender_pos: d,
            v_t: 1.0,
            v_a: 1.0,
            v_d: 1.0,
        }
    }

    #[test]
    fn canonical_input_gives_identity_pose() {
        let s = scenario(Point::new(0.5, 0.5), Point::new(1.0, 0.0), Point::new(-1.0, 0.0));
        let (state, pose) = to_reduced(&s).unwrap();
        assert_eq!(state, ReducedState::new(1.0, 0.5, 0.5, 1.0).unwrap());
        assert_eq!(pose.translation, Point::ORIGIN);
        assert_eq!(pose.rotation_angle, 0.0);
        assert!(!pose.reflect_y);
        assert!(s.is_trivial_escape());
    }

    #[test]
    fn target_below_axis_is_reflected() {
        let s = scenario(Point::new(0.5, -0.5), Point::new(1.0, 0.0), Point::new(-1.0, 0.0));
        let (state, pose) = to_reduced(&s).unwrap();
        assert_eq!((state.x_a, state.x_t, state.y_t), (1.0, 0.5, 0.5));
        assert!(pose.reflect_y);
        assert_eq!(to_realistic(Point::new(0.5, 0.5), &pose), Point::new(0.5, -0.5));
    }

    #[test]
    fn rotated_and_translated_scenario_round_trips() {
        let (s30, c30) = 30f64.to_radians().sin_cos();
        let move_pt = |p: Point| Point::new(c30 * p.x - s30 * p.y + 5.0, s30 * p.x + c30 * p.y + 7.0);
        let t = move_pt(Point::new(0.5, 0.5));
        let s = scenario(t, move_pt(Point::new(1.0, 0.0)), move_pt(Point::new(-1.0, 0.0)));
        let (state, pose) = to_reduced(&s).unwrap();
        assert!((state.x_a - 1.0).abs() < 1e-12);
        assert!((state.x_t - 0.5).abs() < 1e-12);
        assert!((state.y_t - 0.5).abs() < 1e-12);
        assert!(!pose.reflect_y);
        assert!((pose.rotation_angle + 30f64.to_radians()).abs() < 1e-12);
        let back = to_realistic(state.target(), &pose);
        assert!(back.distance(t) < 1e-12 * t.norm());
    }

    #[test]
    fn identity_pose_is_identity() {
        assert_eq!(to_realistic(Point::new(2.0, 3.0), &FramePose::IDENTITY), Point::new(2.0, 3.0));
    }

    #[test]
    fn coincident_attacker_and_defender_is_rejected() {
        let p = Point::new(3.0, 4.0);
        let s = scenario(Point::ORIGIN, p, p);
        assert_eq!(to_reduced(&s), Err(Error::DegenerateAxis));
    }

    #[test]
    fn unequal_attacker_and_defender_speeds_are_rejected() {
        let mut s = scenario(Point::ORIGIN, Point::new(1.0, 0.0), Point::new(-1.0, 0.0));
        s.v_d = 1.5;
        assert!(matches!(to_reduced(&s), Err(Error::InvalidSpeeds(_))));
        s.v_d = 1.0;
        s.v_t = 0.0;
        assert!(matches!(to_reduced(&s), Err(Error::InvalidSpeeds(_))));
    }

    #[test]
    fn headings_map_back_through_the_pose() {
        let s = scenario(Point::new(0.0, -3.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0));
        let (_, pose) = to_reduced(&s).unwrap();
        for theta in [0.0, 0.7, -2.1, 3.0] {
            let dir = Point::from_angle(theta);
            let expected = (pose.invert(dir) - pose.invert(Point::ORIGIN)).angle();
            let got = pose.heading_to_realistic(theta);
            let diff = (got - expected).sin().abs() + (1.0 - (got - expected).cos());
            assert!(diff < 1e-12, "{theta}: {got} vs {expected}");
        }
    }
}
