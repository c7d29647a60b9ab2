//! # chaninfo
//!
//! Numerical toolkit for the information quantities of finite-dimensional
//! quantum channels: von Neumann and relative entropy of positive operators,
//! channel representations (Kraus, Stinespring, complementary channel),
//! quantum mutual and coherent information, perfect-reversibility tests,
//! entanglement-assisted capacity optimization, and truncation sweeps that
//! exhibit the limit behaviour of these quantities.
//!
//! All entropies are in nats.
//!
//! ## Layout
//!
//! - [`operator`]: Hermitian spectral calculus, tensor products, partial traces,
//!   purification, support projectors, Bures distance.
//! - [`entropy`]: η, h₂, entropy of positive operators, relative entropy.
//! - [`channel`]: Kraus channels, dilations, complements, compositions,
//!   truncations, seeded random channels.
//! - [`information`]: mutual information, coherent information, χ-ensemble
//!   quantities, the posterior-entropy bound.
//! - [`reversibility`]: reversibility gap, product test, decoder construction.
//! - [`capacity`]: Frank–Wolfe maximization of the mutual information and
//!   a multistart heuristic for the coherent information.
//! - [`convergence`]: truncation sweeps producing CSV-ready records.
//! - [`suites`]: seeded property suites over random corpora.
//! - [`lab`]: runs a named sweep from a configuration document.
//! - [`io`]: the JSON channel/state file format.

#![forbid(unsafe_code)]

pub mod capacity;
pub mod channel;
pub mod convergence;
pub mod entropy;
pub mod information;
pub mod io;
pub mod lab;
pub mod operator;
pub mod random;
pub mod reversibility;
pub mod suites;

pub use channel::{KrausChannel, QuantumOperation, StinespringDilation};
pub use entropy::RelEntropyValue;
pub use information::{Ensemble, InfoReport};
pub use operator::{
    BipartiteState, CMat, CVec, DensityOperator, HermitianOperator, PositiveOperator, Spectrum,
};

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian: entry ({row}, {col}) differs from its conjugate-transpose partner by {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("not positive: minimum eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("factor index {index} out of range for {count} factors")]
    FactorOutOfRange { index: usize, count: usize },

    #[error("factor dimensions {dims:?} do not multiply to {dim}")]
    BadFactorDims { dims: Vec<usize>, dim: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty Kraus list")]
    EmptyKraus,

    #[error("Kraus operator {index} has shape {rows}x{cols}, expected {dim_out}x{dim_in}")]
    KrausShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim_out: usize,
        dim_in: usize,
    },

    #[error("Kraus operators are not trace preserving: completeness residual {0:e}")]
    NotTracePreserving(f64),

    #[error("Kraus operators are not trace non-increasing: I - sum V*V has eigenvalue {0:e}")]
    NotTraceNonIncreasing(f64),

    #[error("not an orthogonal projector (residual {0:e})")]
    NotProjector(f64),

    #[error("not a unit vector (norm {0})")]
    NotUnitVector(f64),

    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("infeasible dimensions: {0}")]
    InfeasibleDimensions(String),

    #[error("ensemble member {index} is not pure (purity {purity})")]
    NotPure { index: usize, purity: f64 },

    #[error("ensemble average deviates from the target state by {0:e}")]
    EnsembleMismatch(f64),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("channel is not perfectly reversible on this state: gap {gap:e} exceeds {tol:e}")]
    NotReversible { gap: f64, tol: f64 },

    #[error("interior point required: minimum eigenvalue {min:e} of {what} is below the floor {floor:e}")]
    BelowFloor { what: &'static str, min: f64, floor: f64 },

    #[error("infeasible energy constraint: h = {h} is below the ground energy {ground}")]
    Infeasible { h: f64, ground: f64 },

    #[error("invalid ladder: {0}")]
    InvalidLadder(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid field \"{field}\": {message}")]
    Parse { field: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
