use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} entries, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix dimension must be at least {min}, got {actual}")]
    DimensionTooSmall { min: usize, actual: usize },

    #[error("off-diagonal entry a[{index}] = {value} must be strictly positive")]
    NonPositiveOffDiagonal { index: usize, value: f64 },

    #[error("entry {what} is not finite")]
    NonFinite { what: &'static str },

    #[error("block range [{k}, {l}] is outside 1..={n}")]
    BlockOutOfRange { k: usize, l: usize, n: usize },

    #[error("polynomial degree {degree} is too small (need at least {min})")]
    DegreeTooSmall { degree: usize, min: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("bisection did not converge to width {tol} within {iterations} iterations")]
    NonConvergence { tol: f64, iterations: usize },

    #[error("shift {shift} is not within tolerance of the spectrum (nearest Rayleigh quotient {nearest})")]
    NotNearSpectrum { shift: f64, nearest: f64 },

    #[error("eigenvalue index {index} is out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("eigenvalue {index} is not simple (gap {gap} <= {threshold})")]
    NotSimple { index: usize, gap: f64, threshold: f64 },

    #[error("spectrum sizes differ: outer {outer}, inner {inner} (inner must have one fewer)")]
    SizeMismatch { outer: usize, inner: usize },

    #[error("reconstructed trace constant {value} exceeds 2 in magnitude; not a free Floquet spectrum")]
    InvalidFloquetSpectrum { value: f64 },

    #[error("eigenvalue pair must be strictly increasing, got ({lower}, {upper})")]
    UnorderedPair { lower: f64, upper: f64 },

    #[error("inputs ({lower}, {upper}) do not match eigenvalues {k} and {k1} of the free matrix of size {n} (residual {residual})", k1 = k + 1)]
    NotFreeSpectrum {
        n: usize,
        k: usize,
        lower: f64,
        upper: f64,
        residual: f64,
    },

    #[error("index k = {k} is degenerate for n = {n}: a free eigenvalue in the pair is zero")]
    DegenerateUndefined { n: usize, k: usize },

    #[error("invalid matrix description: {0}")]
    InvalidSpec(String),

    #[error("invalid scan grid: {0}")]
    InvalidGrid(String),
}
