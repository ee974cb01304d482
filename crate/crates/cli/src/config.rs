use std::path::PathBuf;

use jacobi_spectral::inverse::ScanGrid;
use jacobi_spectral::{BoundaryPerturbation, Execution, MatrixSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_TOL_MATCH: f64 = 1e-9;
pub const DEFAULT_PRECISION: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Charpoly,
    Spectrum,
    FloquetSpectrum,
    Verify,
    SolveAmb3,
    OracleScan,
    Counterexample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremArg {
    /// Free Dirichlet uniqueness.
    #[value(alias = "dirichlet")]
    #[serde(alias = "dirichlet")]
    Amb1,
    /// Uniqueness with a known first diagonal entry.
    #[value(alias = "known-boundary")]
    #[serde(alias = "known-boundary")]
    Nzbc,
    /// Floquet uniqueness.
    #[value(alias = "floquet")]
    #[serde(alias = "floquet")]
    Amb2,
    /// Two consecutive eigenvalues and the leading pair.
    #[value(alias = "elimination")]
    #[serde(alias = "elimination")]
    Amb3,
    /// The 3x3 isospectral pair.
    Counterexample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Table,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_tol_match() -> f64 {
    DEFAULT_TOL_MATCH
}

fn default_precision() -> usize {
    DEFAULT_PRECISION
}

/// Everything one run needs. Serialized verbatim into its output, so a
/// report can be replayed from its own `config` field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryPerturbation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// `(λ_k, λ_{k+1})` for `solve-amb3`; the free values when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremArg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Known first diagonal entry for the `nzbc` theorem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<ScanGrid>,
    #[serde(default)]
    pub exact: bool,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_tol_match")]
    pub tol_match: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub exec: Execution,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default = "default_precision")]
    pub precision: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            n: None,
            b: None,
            a: None,
            boundary: None,
            theta: None,
            phi: None,
            k: None,
            eigenvalues: None,
            theorem: None,
            trials: None,
            boundary_value: None,
            grid: None,
            exact: false,
            tol: DEFAULT_TOL,
            tol_match: DEFAULT_TOL_MATCH,
            seed: 0,
            exec: Execution::default(),
            format: OutputFormat::default(),
            precision: DEFAULT_PRECISION,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, tol) in [("tol", self.tol), ("tol-match", self.tol_match)] {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CliError::usage(format!("--{name} must be positive, got {tol}")));
            }
        }
        if let (Some(n), Some(b)) = (self.n, &self.b) {
            if n != b.len() {
                return Err(CliError::usage(format!(
                    "--n {n} disagrees with {} values in --b",
                    b.len()
                )));
            }
        }
        if self.exact && self.theta.is_some() {
            return Err(CliError::usage(
                "--exact is only available for Jacobi matrices (drop --theta)",
            ));
        }
        Ok(())
    }

    /// Dimension from `--n` or the length of `--b`.
    pub fn dimension(&self) -> Result<usize, CliError> {
        self.n
            .or_else(|| self.b.as_ref().map(Vec::len))
            .ok_or_else(|| CliError::usage(format!("{:?} needs --n or --b", self.command)))
    }

    pub fn require_k(&self) -> Result<usize, CliError> {
        self.k
            .ok_or_else(|| CliError::usage(format!("{:?} needs --k", self.command)))
    }

    /// Matrix description from `n`, `a`, `b`, `boundary` and `theta`;
    /// a missing `b` means the free matrix.
    pub fn matrix_spec(&self) -> Result<MatrixSpec, CliError> {
        let n = self.dimension()?;
        Ok(MatrixSpec {
            n,
            a: self.a.clone(),
            b: self.b.clone().unwrap_or_else(|| vec![0.0; n]),
            boundary: self.boundary,
            theta: self.theta,
        })
    }
}
