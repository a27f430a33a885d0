//! Economic optimization problems, static and dynamic.
//!
//! The producer problem ([`producer`]) is separable: each period's output
//! choice leaves every later period untouched, so solving period by period —
//! greedily — is globally optimal. The household savings problem
//! ([`household`]) is the opposite: consuming capital today shrinks every
//! future menu, so the optimum comes from a Bellman equation solved by
//! value-function iteration. Side by side they show exactly when myopia is
//! safe and when it is costly.

pub mod household;
pub mod producer;

use thiserror::Error;

pub use household::{
    bellman_operator, closed_form_log_full_depreciation, simulate_policy,
    value_function_iteration, CapitalGrid, HouseholdModel, SimulationPolicy, SimulationResult,
    Utility, ValueSolution, DEFAULT_GRID_SIZE, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
};
pub use producer::{producer_period_optimum, producer_plan, ProducerModel, ProducerPlan};

/// Errors from the economic models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EconError {
    #[error("invalid parameter {name}: must satisfy {constraint}, got {value}")]
    InvalidParameter {
        name: String,
        constraint: String,
        value: f64,
    },
    #[error("price series must cover at least one period")]
    EmptyPrices,
    #[error("invalid capital grid: {0}")]
    InvalidGrid(String),
    #[error(
        "grid point {index} (K = {capital}) admits no feasible savings choice; \
         lower the grid minimum"
    )]
    InfeasibleGridPoint { index: usize, capital: f64 },
    #[error("value array has {got} entries but the grid has {expected}")]
    ValueLengthMismatch { expected: usize, got: usize },
    #[error("value array entry {0} is not finite")]
    NonFiniteValue(usize),
    #[error(
        "no convergence after {iterations} iterations: \
         residual {residual} still above tolerance {tolerance}"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tolerance: f64,
    },
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("capital {capital} lies outside the grid range [{min}, {max}]")]
    CapitalOutOfRange { capital: f64, min: f64, max: f64 },
    #[error(
        "simulation infeasible at period {period}: \
         no positive consumption available from K = {capital}"
    )]
    InfeasibleSimulationStep { period: usize, capital: f64 },
}
