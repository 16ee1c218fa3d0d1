//! Solver for the active target defense differential game.
//!
//! A Target (T) and a Defender (D) cooperate against an Attacker (A). All
//! three agents have simple motion: constant speed and instantaneous
//! steering, so optimal paths are straight lines. The Attacker and Defender
//! share the same speed and the Target moves at `alpha` times that speed.
//!
//! Every computation happens in a reduced frame where the Attacker sits at
//! `(x_A, 0)`, the Defender at `(-x_A, 0)` and the orthogonal bisector of
//! AD is the Y-axis. [`frame`] converts realistic scenarios into that frame
//! and back.
//!
//! ```
//! use atddg_core::{game, ReducedState, Outcome};
//!
//! let state = ReducedState::new(6.0, 3.0, 2.0, 0.5).unwrap();
//! let sol = game::solve(&state).unwrap();
//! assert_eq!(sol.outcome, Outcome::Escape);
//! assert!((sol.y_star.unwrap() - 2.6108).abs() < 5e-4);
//! assert!((sol.j_star.unwrap() - 0.2102).abs() < 5e-4);
//! ```

// NaN inputs must fail validation, so the negated comparisons are deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apollonius;
mod error;
pub mod frame;
pub mod game;
pub mod geometry;
pub mod oracle;
pub mod quartic;
pub mod region;
pub mod sim;

pub use apollonius::ApolloniusCircle;
pub use error::{Error, Result};
pub use frame::{FramePose, RealisticScenario, ReducedState};
pub use game::{DeviationPayoff, GameSolution, Outcome};
pub use geometry::Point;
pub use quartic::{QuarticCoeffs, QuarticRoots};
pub use region::{RegionBoundary, RegionClass};
pub use sim::{EngagementOutcome, Event, SimConfig, Strategy, StrategySet};
