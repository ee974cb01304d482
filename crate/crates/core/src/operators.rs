//! Matrix families: finite Jacobi matrices, their discrete Schrödinger
//! specializations, boundary perturbations and Floquet (twisted periodic)
//! matrices.
//!
//! Everything is stored compactly as diagonals; [`JacobiMatrix::to_dense`]
//! and [`FloquetMatrix::to_dense`] materialize full matrices on request.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix with strictly positive off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixSpec", try_from = "MatrixSpec")]
pub struct JacobiMatrix {
    a: Vec<f64>,
    b: Vec<f64>,
}

fn check_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { what })
    }
}

impl JacobiMatrix {
    /// Builds a Jacobi matrix from its off-diagonal `a` (length n-1) and
    /// diagonal `b` (length n).
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let n = b.len();
        if n == 0 {
            return Err(Error::DimensionTooSmall { min: 1, actual: 0 });
        }
        if a.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                actual: a.len(),
            });
        }
        check_finite(&b, "diagonal")?;
        check_finite(&a, "off-diagonal")?;
        if let Some((index, &value)) = a.iter().enumerate().find(|(_, &v)| v <= 0.0) {
            return Err(Error::NonPositiveOffDiagonal { index, value });
        }
        Ok(Self { a, b })
    }

    /// Discrete Schrödinger matrix: unit off-diagonal, diagonal `b`.
    pub fn schrodinger(n: usize, b: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { min: 1, actual: 0 });
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: b.len(),
            });
        }
        Self::new(vec![1.0; n - 1], b)
    }

    /// The free matrix: unit off-diagonal, zero diagonal.
    pub fn free(n: usize) -> Result<Self> {
        Self::schrodinger(n, vec![0.0; n])
    }

    /// Schrödinger matrix whose potential vanishes except on the first two
    /// sites, which carry `b1` and `b2`.
    pub fn leading_pair(n: usize, b1: f64, b2: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { min: 2, actual: n });
        }
        let mut b = vec![0.0; n];
        b[0] = b1;
        b[1] = b2;
        Self::schrodinger(n, b)
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.a
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.b
    }

    pub fn is_schrodinger(&self) -> bool {
        self.a.iter().all(|&v| v == 1.0)
    }

    pub fn is_free(&self) -> bool {
        self.is_schrodinger() && self.b.iter().all(|&v| v == 0.0)
    }

    /// Adds `p.left` to the first and `p.right` to the last diagonal entry.
    /// For n = 1 both land on the same entry.
    pub fn apply_boundary(&self, p: BoundaryPerturbation) -> Self {
        let mut b = self.b.clone();
        let n = b.len();
        b[0] += p.left;
        b[n - 1] += p.right;
        Self {
            a: self.a.clone(),
            b,
        }
    }

    /// Principal submatrix on rows/columns `k..=l` (1-based).
    pub fn principal(&self, k: usize, l: usize) -> Result<Self> {
        let n = self.n();
        if k == 0 || k > l || l > n {
            return Err(Error::BlockOutOfRange { k, l, n });
        }
        Ok(Self {
            a: self.a[k - 1..l - 1].to_vec(),
            b: self.b[k - 1..l].to_vec(),
        })
    }

    /// Leading `m x m` principal submatrix.
    pub fn leading(&self, m: usize) -> Result<Self> {
        self.principal(1, m)
    }

    /// Same off-diagonal with the diagonal negated. Similar to `-self` via
    /// the diagonal signature matrix, so its spectrum is the negated one.
    pub fn negated_potential(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.iter().map(|v| -v).collect(),
        }
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.a[i - 1] } else { 0.0 };
            let right = if i + 1 < n { self.a[i] } else { 0.0 };
            let r = left + right;
            lo = lo.min(self.b[i] - r);
            hi = hi.max(self.b[i] + r);
        }
        (lo, hi)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.b[i];
            if i + 1 < n {
                m[i][i + 1] = self.a[i];
                m[i + 1][i] = self.a[i];
            }
        }
        m
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut s = self.b[i] * x[i];
                if i > 0 {
                    s += self.a[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.a[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Rank-two boundary perturbation `b e1 e1^T + B en en^T`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BoundaryPerturbation {
    /// Added to the first diagonal entry.
    #[serde(rename = "b")]
    pub left: f64,
    /// Added to the last diagonal entry.
    #[serde(rename = "B")]
    pub right: f64,
}

impl BoundaryPerturbation {
    pub fn new(left: f64, right: f64) -> Self {
        Self { left, right }
    }

    pub fn compose(self, other: Self) -> Self {
        Self::new(self.left + other.left, self.right + other.right)
    }
}

/// Discrete Schrödinger matrix with Floquet corners `e^{2πiθ}` at (1, n)
/// and `e^{-2πiθ}` at (n, 1). `theta` is measured in full turns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixSpec", try_from = "MatrixSpec")]
pub struct FloquetMatrix {
    b: Vec<f64>,
    theta: f64,
}

/// Reduces an angle in turns into `[0, 1)`.
pub fn canonical_turns(theta: f64) -> f64 {
    let t = theta.rem_euclid(1.0);
    // rem_euclid of a tiny negative number rounds up to 1.0
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

impl FloquetMatrix {
    pub fn new(n: usize, b: Vec<f64>, theta: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { min: 3, actual: n });
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: b.len(),
            });
        }
        check_finite(&b, "diagonal")?;
        if !theta.is_finite() {
            return Err(Error::NonFinite { what: "theta" });
        }
        Ok(Self {
            b,
            theta: canonical_turns(theta),
        })
    }

    pub fn free(n: usize, theta: f64) -> Result<Self> {
        Self::new(n, vec![0.0; n], theta)
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.b
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `e^{2πiθ}`, the (1, n) entry.
    pub fn corner(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * self.theta)
    }

    /// `2 cos(2πθ)`, the only way θ enters the characteristic polynomial.
    pub fn trace_constant(&self) -> f64 {
        2.0 * (2.0 * PI * self.theta).cos()
    }

    /// Same potential with the angle replaced by `1 - θ` (the transpose).
    pub fn reflected(&self) -> Self {
        Self {
            b: self.b.clone(),
            theta: canonical_turns(1.0 - self.theta),
        }
    }

    /// The tridiagonal part: this matrix with both corners removed.
    pub fn band(&self) -> JacobiMatrix {
        JacobiMatrix {
            a: vec![1.0; self.n() - 1],
            b: self.b.clone(),
        }
    }

    /// Gershgorin interval of the Hermitian matrix.
    pub fn gershgorin(&self) -> (f64, f64) {
        let lo = self.b.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo - 2.0, hi + 2.0)
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.n();
        let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            m[i][i] = Complex64::new(self.b[i], 0.0);
            if i + 1 < n {
                m[i][i + 1] = Complex64::new(1.0, 0.0);
                m[i + 1][i] = Complex64::new(1.0, 0.0);
            }
        }
        let z = self.corner();
        m[0][n - 1] += z;
        m[n - 1][0] += z.conj();
        m
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        let z = self.corner();
        let mut y: Vec<Complex64> = (0..n)
            .map(|i| {
                let mut s = x[i] * self.b[i];
                if i > 0 {
                    s += x[i - 1];
                }
                if i + 1 < n {
                    s += x[i + 1];
                }
                s
            })
            .collect();
        y[0] += z * x[n - 1];
        y[n - 1] += z.conj() * x[0];
        y
    }
}

/// JSON schema shared by both matrix families.
///
/// `a` defaults to all ones, `boundary` to no perturbation. A present
/// `theta` selects the Floquet family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<f64>>,
    pub b: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryPerturbation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

/// Either matrix family, as selected by a [`MatrixSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Jacobi(JacobiMatrix),
    Floquet(FloquetMatrix),
}

impl MatrixSpec {
    pub fn build(&self) -> Result<Operator> {
        let mut b = self.b.clone();
        if b.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: b.len(),
            });
        }
        if let (Some(p), Some(last)) = (self.boundary, self.n.checked_sub(1)) {
            b[0] += p.left;
            b[last] += p.right;
        }
        match self.theta {
            Some(theta) => {
                if self.a.as_ref().is_some_and(|a| a.iter().any(|&v| v != 1.0)) {
                    return Err(Error::InvalidSpec(
                        "Floquet matrices require a unit off-diagonal".into(),
                    ));
                }
                FloquetMatrix::new(self.n, b, theta).map(Operator::Floquet)
            }
            None => {
                let a = self
                    .a
                    .clone()
                    .unwrap_or_else(|| vec![1.0; self.n.saturating_sub(1)]);
                if self.n == 0 {
                    return Err(Error::DimensionTooSmall { min: 1, actual: 0 });
                }
                JacobiMatrix::new(a, b).map(Operator::Jacobi)
            }
        }
    }
}

impl From<JacobiMatrix> for MatrixSpec {
    fn from(m: JacobiMatrix) -> Self {
        Self {
            n: m.n(),
            a: Some(m.a),
            b: m.b,
            boundary: None,
            theta: None,
        }
    }
}

impl From<FloquetMatrix> for MatrixSpec {
    fn from(m: FloquetMatrix) -> Self {
        Self {
            n: m.n(),
            a: None,
            b: m.b,
            boundary: None,
            theta: Some(m.theta),
        }
    }
}

impl TryFrom<MatrixSpec> for JacobiMatrix {
    type Error = Error;

    fn try_from(spec: MatrixSpec) -> Result<Self> {
        match spec.build()? {
            Operator::Jacobi(m) => Ok(m),
            Operator::Floquet(_) => Err(Error::InvalidSpec(
                "theta is not allowed for a Jacobi matrix".into(),
            )),
        }
    }
}

impl TryFrom<MatrixSpec> for FloquetMatrix {
    type Error = Error;

    fn try_from(spec: MatrixSpec) -> Result<Self> {
        match spec.build()? {
            Operator::Floquet(m) => Ok(m),
            Operator::Jacobi(_) => Err(Error::InvalidSpec("missing theta".into())),
        }
    }
}
