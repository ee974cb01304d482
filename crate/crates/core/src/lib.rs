//! Direct and inverse spectral computations for finite Jacobi matrices,
//! discrete Schrödinger matrices and their Floquet variants.
//!
//! - [`operators`]: matrix families and their JSON schema
//! - [`charpoly`]: exact and float characteristic polynomials
//! - [`spectra`]: Sturm bisection, Floquet roots, eigenvectors, derivatives
//! - [`inverse`]: uniqueness checks, angle recovery, the two-eigenvalue
//!   mixed problem and a brute-force search oracle

pub mod charpoly;
pub mod error;
pub mod exec;
pub mod inverse;
pub mod operators;
pub mod poly;
pub mod spectra;

pub use error::{Error, Result};
pub use exec::Execution;
pub use operators::{BoundaryPerturbation, FloquetMatrix, JacobiMatrix, MatrixSpec, Operator};
pub use poly::{ExactPoly, FloatPoly, Poly};
pub use spectra::{Spectrum, DEFAULT_TOL};
