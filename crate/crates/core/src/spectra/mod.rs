//! Eigenvalues, eigenvectors, interlacing and eigenvalue derivatives.

mod eigenvector;
mod floquet;
mod perturbation;
mod sturm;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eigenvector::{eigenvector_floquet, eigenvector_jacobi, EigenPair};
pub use floquet::{eigenvalues_floquet, floquet_eval, FloquetEval};
pub use perturbation::{eigenvalue_derivative, PerturbationPath};
pub use sturm::{
    count_below, eigenvalues_jacobi, eigenvalues_jacobi_with, kth_eigenvalue, sign_agreements,
};

/// Default absolute bracketing tolerance for eigenvalues.
pub const DEFAULT_TOL: f64 = 1e-12;

/// An eigenvalue counts as simple when its gap to both neighbours exceeds
/// this multiple of the tolerance.
pub const SIMPLICITY_FACTOR: f64 = 1e3;

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Ascending eigenvalues, repeated according to multiplicity, with the
/// tolerance they were computed to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values, tol }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest distance between neighbouring values; infinite for fewer
    /// than two values.
    pub fn min_gap(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from value `i` to its nearest neighbour.
    pub fn gap_at(&self, i: usize) -> f64 {
        let left = i
            .checked_sub(1)
            .map_or(f64::INFINITY, |j| self.values[i] - self.values[j]);
        let right = self
            .values
            .get(i + 1)
            .map_or(f64::INFINITY, |v| v - self.values[i]);
        left.min(right)
    }

    /// Largest index-wise difference, `None` when the sizes differ.
    pub fn max_abs_diff(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    /// Multiset equality within `tol`, index by index.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        self.max_abs_diff(other).is_some_and(|d| d <= tol)
    }

    /// Spectrum of the negated operator.
    pub fn negated(&self) -> Spectrum {
        Spectrum {
            values: self.values.iter().rev().map(|v| -v).collect(),
            tol: self.tol,
        }
    }

    /// Groups values closer than `tol` into `(mean, multiplicity)`.
    pub fn multiplicities(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for &v in &self.values {
            match groups.last_mut() {
                Some((sum, count)) if v - last <= tol => {
                    *sum += v;
                    *count += 1;
                }
                _ => groups.push((v, 1)),
            }
            last = v;
        }
        groups
            .into_iter()
            .map(|(sum, count)| (sum / count as f64, count))
            .collect()
    }
}

/// Strict interlacing `λ_1 < μ_1 < λ_2 < ... < μ_{n-1} < λ_n`, allowing
/// each comparison to be violated by at most the larger of the two
/// spectrum tolerances.
pub fn interlace_check(outer: &Spectrum, inner: &Spectrum) -> Result<bool> {
    if outer.len() != inner.len() + 1 {
        return Err(Error::SizeMismatch {
            outer: outer.len(),
            inner: inner.len(),
        });
    }
    let margin = outer.tol.max(inner.tol);
    let ok = inner.values.iter().enumerate().all(|(i, &mu)| {
        outer.values[i] < mu + margin && mu < outer.values[i + 1] + margin
    });
    Ok(ok)
}
