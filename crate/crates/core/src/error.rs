//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received structurally invalid input.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Two paths or fields that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// The spatial grid is too coarse for the requested number of modes.
    #[error("resolution error: grid with {nodes} interior nodes cannot resolve {modes} modes (need at least 2*modes subintervals)")]
    Resolution { nodes: usize, modes: usize },

    /// A singular-kernel quadrature exceeded the overflow guard; the input is
    /// not regular enough for the requested operator.
    #[error("non-convergence in {what}: |value| = {magnitude:.3e} at node {node} exceeds the overflow guard")]
    NonConvergence {
        what: String,
        node: usize,
        magnitude: f64,
    },

    /// A fixed-point iteration ran out of iterations without contracting.
    #[error("no contraction after {iterations} iterations; last delta = {last_delta:.3e} (tol = {tol:.3e})")]
    NoContraction {
        iterations: usize,
        last_delta: f64,
        tol: f64,
        deltas: Vec<f64>,
    },

    /// A solvability hypothesis check failed and the caller did not override.
    #[error("hypothesis check failed:\n{report}")]
    Inadmissible { report: String },

    /// A Gaussian generator could not factorize its covariance.
    #[error("noise generation failed: {0}")]
    Generation(String),

    /// A regularity estimate is undefined (e.g. constant path).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A field that must stay strictly positive dipped below the floor.
    #[error("positivity violated at t-index {t_index}, x-index {x_index}: value {value:.6e} < floor {floor:.6e}")]
    Positivity {
        t_index: usize,
        x_index: usize,
        value: f64,
        floor: f64,
    },

    /// A path failed an empirical regularity precondition.
    #[error("regularity precondition failed: {0}")]
    Regularity(String),
}
