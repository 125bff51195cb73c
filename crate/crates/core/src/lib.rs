//! Sharp lower bounds for the periods of non-constant periodic solutions of
//! n-th order Lipschitz functional differential equations.
//!
//! The bounds are governed by the Favard constants `K_n`: a periodic problem
//! `x^{(n)}(t) = L x(τ(t))` on `[0, T]` is uniquely solvable for every
//! measurable deviation `τ` as soon as `L K_n T^n < 1`, and at equality there
//! are deviations admitting non-constant solutions. This crate computes the
//! constants exactly, builds the extremal solutions in rational arithmetic,
//! decides solvability for step-valued deviations, and exposes the resulting
//! period and weight thresholds.

pub mod bernoulli;
pub mod bounds;
pub mod cli;
pub mod favard;
pub mod kernels;
pub mod piecewise;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod series;
pub mod solver;
pub mod suite;
pub mod witness;

pub use favard::{favard, FavardTable, Route};
pub use piecewise::PiecewisePolynomial;
pub use poly::Polynomial;
pub use rational::Rational;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("routes disagree at n = {n}: {detail}")]
    RouteDisagreement { n: usize, detail: String },
    #[error("deviation value {value} outside [0, {period}]")]
    DeviationOutOfRange { value: String, period: String },
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
