#![allow(dead_code)]

use atddg_core::{game, ReducedState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Open interval sample in (lo, hi).
pub fn open(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return lo + (hi - lo) * u;
        }
    }
}

/// Random state with lengths in [0.1, 100], `x_T > 0` and
/// `alpha_bar < alpha < 1`.
pub fn escape_state(rng: &mut impl Rng) -> ReducedState {
    loop {
        let x_a = rng.random_range(0.1..=100.0);
        let x_t = rng.random_range(0.1..=100.0);
        let y_t = rng.random_range(0.1..=100.0);
        let probe = ReducedState::new(x_a, x_t, y_t, 0.5).unwrap();
        let alpha_bar = game::critical_speed_ratio(&probe);
        let alpha = open(rng, alpha_bar, 1.0);
        if alpha > alpha_bar && alpha < 1.0 {
            return ReducedState::new(x_a, x_t, y_t, alpha).unwrap();
        }
    }
}

/// Like [`escape_state`] but keeps only states the solver classifies as
/// Escape (drops the measure-zero boundary band).
pub fn strict_escape_state(rng: &mut impl Rng) -> ReducedState {
    loop {
        let s = escape_state(rng);
        if game::solve(&s).map(|sol| sol.outcome) == Ok(game::Outcome::Escape) {
            return s;
        }
    }
}
