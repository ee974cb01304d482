use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::JacobiMatrix;

use super::eigenvector::eigenvector_jacobi;
use super::sturm::eigenvalues_jacobi;
use super::SIMPLICITY_FACTOR;

/// `M_n(t)`: the free matrix with its first two diagonal entries set to
/// `-t`. `M_n(0)` is free and `M_n(-c)` has diagonal `(c, c, 0, ..., 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationPath {
    pub n: usize,
    pub t: f64,
}

impl PerturbationPath {
    pub fn new(n: usize, t: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { min: 2, actual: n });
        }
        Ok(Self { n, t })
    }

    pub fn at(&self, t: f64) -> Self {
        Self { n: self.n, t }
    }

    pub fn matrix(&self) -> JacobiMatrix {
        JacobiMatrix::leading_pair(self.n, -self.t, -self.t).expect("n >= 2")
    }
}

/// `λ_index'(t) = <X, M'(t) X> = -X_1(t)^2 - X_2(t)^2` for the unit
/// eigenvector `X` (0-based `index`). Refuses eigenvalues whose gap to a
/// neighbour is below the simplicity threshold.
pub fn eigenvalue_derivative(path: &PerturbationPath, index: usize, tol: f64) -> Result<f64> {
    let m = path.matrix();
    let spectrum = eigenvalues_jacobi(&m, tol)?;
    if index >= spectrum.len() {
        return Err(Error::IndexOutOfRange {
            index,
            n: spectrum.len(),
        });
    }
    let gap = spectrum.gap_at(index);
    let threshold = SIMPLICITY_FACTOR * tol;
    if gap <= threshold {
        return Err(Error::NotSimple {
            index,
            gap,
            threshold,
        });
    }
    let pair = eigenvector_jacobi(&m, spectrum.values()[index], tol)?;
    Ok(-pair.vector[0].powi(2) - pair.vector[1].powi(2))
}
