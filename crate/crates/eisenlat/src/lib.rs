//! Exact-arithmetic toolkit for the Eisenstein hermitian lattice of signature
//! (4,1), the complex reflection group generated by hexflections in its short
//! roots, and the finite quadratic geometry obtained by reduction mod theta.
//!
//! Everything here is integer arithmetic: hermitian forms and isometries over
//! Z[w], Hermite/Smith normal forms, exact lattice-point enumeration, spinor
//! norms over F3, the Heisenberg group of null-vector translations, and the
//! height-reduction algorithm with verifiable certificates.

pub mod arrangement;
pub mod classify;
pub mod eis;
pub mod f3;
pub mod gamma;
pub mod lattice;
pub mod linalg;
pub mod mat;
pub mod milnor;
pub mod suites;

pub use eis::{EisInt, F3Scalar};
pub use lattice::{Frame, HermGram, Isometry, LatVec, TranslationParams};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("result is not integral over Z[w]")]
    NonIntegral,
    #[error("frame mismatch")]
    FrameMismatch,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("matrix does not preserve the hermitian form")]
    NotAnIsometry,
    #[error("translation parity violated: k must match <lambda|lambda> mod 2")]
    TranslationParity,
    #[error("expected a null vector")]
    NotNull,
    #[error("expected a primitive vector")]
    NotPrimitive,
    #[error("expected a positive definite gram matrix")]
    NotPositiveDefinite,
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("vectors are not pairwise orthogonal")]
    NotOrthogonal,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cannot parse '{0}' as an Eisenstein integer")]
    Parse(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
}
