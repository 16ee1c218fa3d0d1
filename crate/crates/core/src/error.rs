use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("attacker and defender coincide; the AD axis is undefined")]
    DegenerateAxis,

    #[error("attacker and target coincide")]
    CoincidentAgents,

    #[error("speed ratio {0} is outside (0, 1)")]
    AlphaOutOfRange(f64),

    #[error("invalid speeds: {0}")]
    InvalidSpeeds(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("quartic root bracket failed: {0}")]
    BracketFailure(String),

    #[error("{check} violated: y = {value}, bound = {bound}")]
    BoundViolation {
        check: &'static str,
        value: f64,
        bound: f64,
    },

    #[error("payoff is not differentiable at y = {0} (x_T = 0, y = y_T)")]
    SingularPoint(f64),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
