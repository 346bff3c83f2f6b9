//! Exact symbolic computation for the Lie algebras of divergence-zero vector
//! fields inside the Witt algebra, and for their U(h)-free modules of rank 1.
//!
//! Everything is computed over the Gaussian rationals, so every identity this
//! crate checks is an exact equality, never an approximation. The main pieces:
//!
//! - [`scalar`]: the ground field Q(i) with arbitrary-precision rationals.
//! - [`poly`]: sparse multivariate polynomials, both ordinary (the module
//!   carrier `C[x_1..x_n]`) and Laurent (the coefficient ring of vector
//!   fields), with the shift automorphisms that twist the module actions.
//! - [`vfield`]: Witt-algebra vector fields, the Lie bracket, both divergence
//!   maps, and exact membership tests for the divergence-zero subalgebras.
//! - [`vlike`]: the Virasoro-like algebra in its abstract `d_{i,j}` basis and
//!   its embeddings into / out of the rank-two divergence-zero algebra.
//! - [`omega`]: the three Omega module families, their explicit actions,
//!   closed forms for generator values, and bracket-recursion oracles.
//! - [`classify`]: the classification machinery — the shift-invariant
//!   equation solver, rank-1 consistency checking, parameter extraction,
//!   isomorphism testing, and replayable simple-submodule reduction traces.
//! - [`suites`]: named, seeded, deterministic verification suites producing
//!   machine-readable reports; the `divfree` binary fronts them.
//!
//! Runnable walkthroughs for each capability live under `examples/`.

pub mod classify;
pub mod linalg;
pub mod omega;
pub mod poly;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod vfield;
pub mod vlike;

pub use poly::{Exponent, LaurentPoly, Poly};
pub use scalar::Scalar;
pub use vfield::{AlgebraTag, VectorField};
pub use vlike::VLElement;

use thiserror::Error;

/// Errors shared by all operations in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("axis {axis} out of range for dimension {n} (axes are 1-based)")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("axes must be pairwise distinct, got {0:?}")]
    AxesNotDistinct(Vec<usize>),
    #[error("exponent {0:?} is excluded for this family")]
    ExcludedExponent(Vec<i64>),
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("dimension must satisfy 2 <= n (got {0})")]
    DimensionTooSmall(usize),
    #[error("lambda entries must be nonzero")]
    ZeroLambda,
    #[error("parameter block does not match module family: {0}")]
    FamilyParamMismatch(String),
    #[error("element is not a member of {tag:?}: {reason}")]
    NotAMember {
        tag: vfield::AlgebraTag,
        reason: String,
    },
    #[error("element is not supported on the ({i},{j}) lattice plane")]
    OffPlane { i: usize, j: usize },
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("target {0:?} not reachable from the generators within {1} bracket rounds")]
    Unreachable(Vec<i64>, usize),
    #[error("action value is not of rank-1 shape: {0}")]
    NotRankOne(String),
    #[error("module families differ: {0:?} vs {1:?}")]
    FamilyMismatch(omega::Family, omega::Family),
    #[error("unsupported family for this operation: {0:?}")]
    UnsupportedFamily(omega::Family),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
