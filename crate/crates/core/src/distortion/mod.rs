//! Exact BFS on Cayley graphs of finitely generated solvable groups:
//! subgroup distortion curves, log-metric comparison and growth.

mod ball;
mod curve;
mod growth;
mod model;

pub use ball::{cayley_ball, cayley_ball_with_budget, check_generator_lipschitz, BallTable, DEFAULT_BALL_BUDGET};
pub use curve::{
    distortion_curve, intrinsic_size, log_metric_compare, DistortionCurve, LogMetricFit, MIN_DOUBLING_RATE,
    RATE_DECAY_TOLERANCE,
};
pub use growth::{classify_growth, GrowthReport, GrowthVerdict, EXPONENT_GROWTH_FACTOR, MIN_GROWTH_RADIUS};
pub use model::{build_model, GroupElement, GroupModel, ModelKind};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistortionError {
    #[error("model spec: {0}")]
    Parse(String),
    #[error("action matrix has determinant {det}, not ±1")]
    NonInvertibleAction { det: i64 },
    #[error("ball budget of {budget} elements exceeded after radius {radius_reached}")]
    BudgetExceeded { radius_reached: u32, budget: usize },
    #[error("curve has no rows with positive size")]
    EmptyCurve,
}
