//! Uniqueness results for inverse spectral problems around the free
//! matrix, each checked both numerically and through exact coefficient
//! identities.

mod dirichlet;
mod floquet;
mod mixed;
mod oracle;

use serde::{Deserialize, Serialize};

pub use dirichlet::{
    coefficient_route, verify_amb_dirichlet, verify_counterexample, verify_known_boundary,
    CoefficientRoute, CounterexampleWitness, DirichletWitness, KnownBoundaryWitness,
};
pub use floquet::{recover_floquet_angle, verify_floquet_uniqueness, AngleRecovery, FloquetWitness};
pub use mixed::{
    amb3_candidates, amb3_solve, classify_index, eliminate_spurious, free_ratio,
    leading_pair_expansion, ratio_through_matrix, Amb3Solution, Branch, CandidatePair, Degeneracy,
    EliminationWitness, MonotonicityWitness,
};
pub use oracle::{
    brute_force_isospectral_search, Field, IndexScan, OracleConfig, OracleScan, RootInfo, RootKind,
    ScanGrid,
};

/// Two eigenvalues count as equal when they differ by at most this much.
pub const DEFAULT_MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Spectrum of a Schrödinger matrix equals the free one ⇒ zero potential.
    FreeDirichletUniqueness,
    /// Two different Schrödinger matrices with one characteristic polynomial.
    IsospectralCounterexample,
    /// Same, with a known nonzero boundary value at the first site.
    KnownBoundaryUniqueness,
    /// Floquet spectrum determines zero potential and the angle up to `1 - φ`.
    FloquetUniqueness,
    /// Two consecutive free eigenvalues pin the first two diagonal entries.
    TwoEigenvalueElimination,
    /// Grid-and-Newton search for counterexamples to the previous item.
    IsospectralSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Violated,
}

impl Verdict {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Verdict::Confirmed
        } else {
            Verdict::Violated
        }
    }

    pub fn is_confirmed(self) -> bool {
        self == Verdict::Confirmed
    }
}

/// Outcome of one verification run. The witness always carries the raw
/// numbers behind the verdict so a caller can re-judge with another
/// tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<W> {
    pub theorem: Theorem,
    pub instance: String,
    pub verdict: Verdict,
    pub tol: f64,
    pub witness: W,
}

/// `sqrt(n δ (4 + δ))`: if every eigenvalue of a Schrödinger matrix with
/// spectrum in `[-2, 2]` is within `δ` of the free one, then comparing
/// `tr S^2` with `tr F^2` bounds the potential's Euclidean norm by this.
pub(crate) fn potential_norm_bound(n: usize, delta: f64) -> f64 {
    (n as f64 * delta * (4.0 + delta)).sqrt()
}
