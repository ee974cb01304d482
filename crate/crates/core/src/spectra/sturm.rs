//! Sturm-sequence bisection for symmetric tridiagonal matrices.

use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};
use crate::operators::JacobiMatrix;

use super::{check_tol, Spectrum};

const MAX_BISECTIONS: usize = 512;

/// Number of eigenvalues strictly below `x`, from the signs of the LDL^T
/// pivots of `m - xI`.
pub fn count_below(m: &JacobiMatrix, x: f64) -> usize {
    let a = m.off_diagonal();
    let b = m.diagonal();
    let max_a_sq = a.iter().map(|v| v * v).fold(1.0, f64::max);
    let pivmin = f64::MIN_POSITIVE * max_a_sq;
    let mut count = 0;
    let mut d = 1.0;
    for (k, &bk) in b.iter().enumerate() {
        d = if k == 0 {
            bk - x
        } else {
            (bk - x) - a[k - 1] * a[k - 1] / d
        };
        // a vanishing pivot means x is an eigenvalue of the leading block,
        // which is not below x
        if d.abs() < pivmin {
            d = pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Number of sign agreements between consecutive terms of
/// `p_0(x), ..., p_n(x)` with `p_k = det(xI - J_k)`. A zero term takes the
/// sign opposite to its predecessor. Equals [`count_below`].
pub fn sign_agreements(m: &JacobiMatrix, x: f64) -> usize {
    let a = m.off_diagonal();
    let b = m.diagonal();
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut prev_sign = 1.0;
    let mut agreements = 0;
    for (k, &bk) in b.iter().enumerate() {
        let a_sq = if k == 0 { 0.0 } else { a[k - 1] * a[k - 1] };
        let mut next = (x - bk) * cur - a_sq * prev;
        // rescale both terms; signs are all that matter
        let scale = next.abs().max(cur.abs());
        if scale > 1e100 {
            next /= scale;
            cur /= scale;
        }
        let sign = if next == 0.0 { -prev_sign } else { next.signum() };
        if sign == prev_sign {
            agreements += 1;
        }
        prev_sign = sign;
        prev = cur;
        cur = next;
    }
    agreements
}

/// The `index`-th (0-based, ascending) eigenvalue bracketed to width `tol`.
pub fn kth_eigenvalue(m: &JacobiMatrix, index: usize, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let n = m.n();
    if index >= n {
        return Err(Error::IndexOutOfRange { index, n });
    }
    let (glo, ghi) = m.gershgorin();
    let pad = tol + f64::EPSILON * glo.abs().max(ghi.abs()).max(1.0);
    let mut lo = glo - pad;
    let mut hi = ghi + pad;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(m, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NonConvergence {
        tol,
        iterations: MAX_BISECTIONS,
    })
}

/// All eigenvalues, each bisected independently.
pub fn eigenvalues_jacobi_with(m: &JacobiMatrix, tol: f64, exec: Execution) -> Result<Spectrum> {
    check_tol(tol)?;
    let values = map_range(exec, m.n(), |i| kth_eigenvalue(m, i, tol))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum::new(values, tol))
}

/// Sequential for small matrices, parallel above a few hundred rows.
pub fn eigenvalues_jacobi(m: &JacobiMatrix, tol: f64) -> Result<Spectrum> {
    let exec = if m.n() >= 256 {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    eigenvalues_jacobi_with(m, tol, exec)
}
