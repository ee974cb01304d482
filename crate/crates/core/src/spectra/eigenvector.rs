//! Inverse iteration with shifted solves.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{FloquetMatrix, JacobiMatrix};

use super::{check_tol, SIMPLICITY_FACTOR};

const MAX_ITERATIONS: usize = 12;
const SHIFT_RETRIES: usize = 4;

/// Unit-norm eigenvector with its Rayleigh quotient and residual
/// `||Mv - value v||`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair<V = f64> {
    pub value: f64,
    pub vector: Vec<V>,
    pub residual: f64,
}

/// Deterministic, non-symmetric starting vector; it has no reason to be
/// orthogonal to any eigenvector.
fn start_vector(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 + ((i as f64 + 1.0) * 0.754_877_666_246_692_8).fract())
        .collect()
}

/// Gaussian elimination with partial pivoting on a tridiagonal system,
/// overwriting `rhs` with the solution. `None` on an exactly zero pivot.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &mut [f64]) -> Option<()> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut dl = sub.to_vec();
    let mut du = sup.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut swapped = vec![false; n.saturating_sub(1)];
    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                return None;
            }
            let fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            let temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            swapped[i] = true;
        }
    }
    if d[n - 1] == 0.0 {
        return None;
    }
    for i in 0..n.saturating_sub(1) {
        if swapped[i] {
            let temp = rhs[i] - dl[i] * rhs[i + 1];
            rhs[i] = rhs[i + 1];
            rhs[i + 1] = temp;
        } else {
            rhs[i + 1] -= dl[i] * rhs[i];
        }
    }
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s -= du[i] * rhs[i + 1];
        }
        if i + 2 < n {
            s -= du2[i] * rhs[i + 2];
        }
        rhs[i] = s / d[i];
    }
    Some(())
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

/// Flips the sign so that the first entry that is not negligible is
/// positive.
fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-8 * max) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Eigenvector of a Jacobi matrix for an eigenvalue approximation
/// `lambda`, which must lie within `tol` of the spectrum.
pub fn eigenvector_jacobi(m: &JacobiMatrix, lambda: f64, tol: f64) -> Result<EigenPair> {
    check_tol(tol)?;
    let n = m.n();
    let a = m.off_diagonal();
    let scale = m.gershgorin().0.abs().max(m.gershgorin().1.abs()).max(1.0);
    let mut shift = lambda;
    let mut x = start_vector(n);
    normalize(&mut x);
    let mut retries = 0;
    let mut best: Option<EigenPair> = None;
    let mut iteration = 0;
    while iteration < MAX_ITERATIONS {
        let diag: Vec<f64> = m.diagonal().iter().map(|b| b - shift).collect();
        let mut y = x.clone();
        if solve_tridiagonal(a, &diag, a, &mut y).is_none() {
            retries += 1;
            if retries > SHIFT_RETRIES {
                return Err(Error::NotNearSpectrum {
                    shift: lambda,
                    nearest: f64::NAN,
                });
            }
            shift += tol * scale * retries as f64;
            continue;
        }
        normalize(&mut y);
        x = y;
        let mx = m.matvec(&x);
        let value: f64 = x.iter().zip(&mx).map(|(u, v)| u * v).sum();
        let residual = mx
            .iter()
            .zip(&x)
            .map(|(u, v)| (u - value * v).powi(2))
            .sum::<f64>()
            .sqrt();
        let done = residual <= tol;
        best = Some(EigenPair {
            value,
            vector: x.clone(),
            residual,
        });
        if done && iteration >= 1 {
            break;
        }
        iteration += 1;
    }
    let mut pair = best.expect("at least one successful solve");
    if (pair.value - lambda).abs() > SIMPLICITY_FACTOR * tol * scale {
        return Err(Error::NotNearSpectrum {
            shift: lambda,
            nearest: pair.value,
        });
    }
    let floor = 64.0 * f64::EPSILON * scale * (n as f64).sqrt();
    if pair.residual > 10.0 * tol.max(floor) {
        return Err(Error::NonConvergence {
            tol,
            iterations: MAX_ITERATIONS,
        });
    }
    fix_sign(&mut pair.vector);
    Ok(pair)
}

/// Dense complex LU solve with partial pivoting; `None` when singular.
fn solve_dense(mut a: Vec<Vec<Complex64>>, rhs: &mut [Complex64]) -> Option<()> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let t = a[col][k];
                a[row][k] -= f * t;
            }
            let t = rhs[col];
            rhs[row] -= f * t;
        }
    }
    for row in (0..n).rev() {
        let mut s = rhs[row];
        for k in row + 1..n {
            s -= a[row][k] * rhs[k];
        }
        rhs[row] = s / a[row][row];
    }
    Some(())
}

/// Eigenvector of a Floquet matrix. For a double eigenvalue any unit
/// vector of the eigenspace may be returned. The phase is fixed so that the
/// first non-negligible entry is real and positive.
pub fn eigenvector_floquet(
    m: &FloquetMatrix,
    lambda: f64,
    tol: f64,
) -> Result<EigenPair<Complex64>> {
    check_tol(tol)?;
    let n = m.n();
    let (glo, ghi) = m.gershgorin();
    let scale = glo.abs().max(ghi.abs()).max(1.0);
    let dense = m.to_dense();
    let mut x: Vec<Complex64> = start_vector(n)
        .into_iter()
        .enumerate()
        .map(|(i, v)| Complex64::new(v, 0.3 * v * (i as f64 + 1.0).sin()))
        .collect();
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nx = norm(&x);
    x.iter_mut().for_each(|z| *z /= nx);
    let mut shift = lambda;
    let mut retries = 0;
    let mut best = None;
    let mut iteration = 0;
    while iteration < MAX_ITERATIONS {
        let mut shifted = dense.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= shift;
        }
        let mut y = x.clone();
        if solve_dense(shifted, &mut y).is_none() {
            retries += 1;
            if retries > SHIFT_RETRIES {
                return Err(Error::NotNearSpectrum {
                    shift: lambda,
                    nearest: f64::NAN,
                });
            }
            shift += tol * scale * retries as f64;
            continue;
        }
        let ny = norm(&y);
        y.iter_mut().for_each(|z| *z /= ny);
        x = y;
        let mx = m.matvec(&x);
        let value = x.iter().zip(&mx).map(|(u, v)| u.conj() * v).sum::<Complex64>().re;
        let residual = norm(
            &mx.iter()
                .zip(&x)
                .map(|(u, v)| u - v * value)
                .collect::<Vec<_>>(),
        );
        let done = residual <= tol;
        best = Some(EigenPair {
            value,
            vector: x.clone(),
            residual,
        });
        if done && iteration >= 1 {
            break;
        }
        iteration += 1;
    }
    let mut pair: EigenPair<Complex64> = best.expect("at least one successful solve");
    if (pair.value - lambda).abs() > SIMPLICITY_FACTOR * tol * scale {
        return Err(Error::NotNearSpectrum {
            shift: lambda,
            nearest: pair.value,
        });
    }
    let floor = 64.0 * f64::EPSILON * scale * (n as f64).sqrt();
    if pair.residual > 10.0 * tol.max(floor) {
        return Err(Error::NonConvergence {
            tol,
            iterations: MAX_ITERATIONS,
        });
    }
    let max = pair.vector.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    if let Some(first) = pair.vector.iter().find(|z| z.norm() > 1e-8 * max) {
        let phase = first.conj() / first.norm();
        pair.vector.iter_mut().for_each(|z| *z *= phase);
    }
    Ok(pair)
}
