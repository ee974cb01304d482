//! Roots of the Floquet characteristic polynomial.
//!
//! Writing `Δ(x) = (x - b_1) D[2,n] - D[3,n] - D[2,n-1] - c` with
//! `c = 2cos(2πθ)`: at every root `μ` of `D[2,n]` the Casoratian identity
//! `D[3,n] D[2,n-1] - D[2,n] D[3,n-1] = 1` forces `|Δ(μ) + c| >= 2`. So the
//! `n - 1` simple roots of `D[2,n]` split the line into `n` brackets that
//! each hold exactly one root of `Δ` (for `|c| <= 2`). Equality
//! `|Δ(μ) + c| = 2` needs `D[3,n](μ) = ±1`, so a double root can only sit on
//! a bracket endpoint `μ` when `|c| = 2`; it is then reported once for each
//! neighbouring bracket.

use crate::error::{Error, Result};
use crate::operators::FloquetMatrix;

use super::sturm::eigenvalues_jacobi;
use super::{check_tol, Spectrum};

const MAX_BISECTIONS: usize = 512;

/// `Δ`, `Δ'`, and running-error bounds for both, at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetEval {
    pub value: f64,
    pub derivative: f64,
    pub value_noise: f64,
    pub derivative_noise: f64,
}

/// Determinants of the leading blocks of `xI - S` for the Schrödinger
/// potential `b`: returns the last two terms, their derivatives and their
/// absolute-value bounds.
struct Recurrence {
    last: f64,
    before: f64,
    d_last: f64,
    d_before: f64,
    abs_last: f64,
    abs_before: f64,
    d_abs_last: f64,
    d_abs_before: f64,
}

fn leading_block_dets(b: &[f64], x: f64) -> Recurrence {
    let (mut p0, mut p1) = (0.0, 1.0);
    let (mut dp0, mut dp1) = (0.0, 0.0);
    let (mut a0, mut a1) = (0.0, 1.0);
    let (mut da0, mut da1) = (0.0, 0.0);
    for &bk in b {
        let s = x - bk;
        let p2 = s * p1 - p0;
        let dp2 = p1 + s * dp1 - dp0;
        let a2 = s.abs() * a1 + a0;
        let da2 = a1 + s.abs() * da1 + da0;
        (p0, p1) = (p1, p2);
        (dp0, dp1) = (dp1, dp2);
        (a0, a1) = (a1, a2);
        (da0, da1) = (da1, da2);
    }
    Recurrence {
        last: p1,
        before: p0,
        d_last: dp1,
        d_before: dp0,
        abs_last: a1,
        abs_before: a0,
        d_abs_last: da1,
        d_abs_before: da0,
    }
}

/// Evaluates the Floquet characteristic polynomial (with trace constant
/// `c`) and its derivative through the block recurrences.
pub fn floquet_eval(b: &[f64], c: f64, x: f64) -> FloquetEval {
    let n = b.len();
    debug_assert!(n >= 3);
    let tail = leading_block_dets(&b[1..], x); // D[2,n], D[2,n-1]
    let inner = leading_block_dets(&b[2..], x); // D[3,n]
    let s = x - b[0];
    let value = s * tail.last - inner.last - tail.before - c;
    let derivative = tail.last + s * tail.d_last - inner.d_last - tail.d_before;
    let bound = s.abs() * tail.abs_last + inner.abs_last + tail.abs_before + c.abs();
    let d_bound = tail.abs_last + s.abs() * tail.d_abs_last + inner.d_abs_last + tail.d_abs_before;
    let scale = 8.0 * (n as f64) * f64::EPSILON;
    FloquetEval {
        value,
        derivative,
        value_noise: scale * bound,
        derivative_noise: scale * d_bound,
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    x: f64,
    eval: FloquetEval,
    /// Only bracket endpoints taken from `D[2,n]` can carry double roots.
    interior: bool,
    /// How far `x` may be from the exact root of `D[2,n]`.
    position_error: f64,
}

impl Node {
    fn is_double_root(&self, periodic: bool) -> bool {
        periodic
            && self.interior
            && self.eval.value.abs()
                <= self.eval.value_noise + self.eval.derivative.abs() * self.position_error
    }

    /// Sign of `Δ` just inside a bracket; `toward` is +1 when the bracket
    /// extends to the right of this node. Values lost in rounding noise
    /// fall back on the derivative.
    fn sign_inside(&self, toward: f64) -> f64 {
        if self.eval.value.abs() > self.eval.value_noise {
            self.eval.value.signum()
        } else if self.eval.derivative != 0.0 {
            (self.eval.derivative * toward).signum()
        } else {
            0.0
        }
    }
}

/// Eigenvalues with multiplicity of a Floquet matrix.
pub fn eigenvalues_floquet(m: &FloquetMatrix, tol: f64) -> Result<Spectrum> {
    check_tol(tol)?;
    let b = m.diagonal();
    let n = b.len();
    let c = m.trace_constant();
    let dirichlet = m
        .band()
        .principal(2, n)
        .expect("n >= 3 so rows 2..n exist");
    let mu_tol = tol.min(1e-14);
    let mu = eigenvalues_jacobi(&dirichlet, mu_tol)?;
    // c = ±2 exactly for θ ∈ {0, 1/2}
    let periodic = c.abs() >= 2.0 - 4.0 * f64::EPSILON;

    let (glo, ghi) = m.gershgorin();
    let position_error = 2.0 * (mu_tol + f64::EPSILON * glo.abs().max(ghi.abs()));
    let mut nodes = Vec::with_capacity(n + 1);
    let outer = |x: f64| Node {
        x,
        eval: floquet_eval(b, c, x),
        interior: false,
        position_error: 0.0,
    };
    nodes.push(outer(glo - 1.0));
    nodes.extend(mu.values().iter().map(|&x| Node {
        x,
        eval: floquet_eval(b, c, x),
        interior: true,
        position_error,
    }));
    nodes.push(outer(ghi + 1.0));

    let mut roots = Vec::with_capacity(n);
    for w in nodes.windows(2) {
        let (left, right) = (w[0], w[1]);
        let root = match (left.is_double_root(periodic), right.is_double_root(periodic)) {
            (true, true) => {
                if left.eval.value.abs() <= right.eval.value.abs() {
                    left.x
                } else {
                    right.x
                }
            }
            (true, false) => left.x,
            (false, true) => right.x,
            (false, false) => bracket_root(b, c, left, right, tol)?,
        };
        roots.push(root);
    }
    Ok(Spectrum::new(roots, tol))
}

fn bracket_root(b: &[f64], c: f64, left: Node, right: Node, tol: f64) -> Result<f64> {
    let sl = left.sign_inside(1.0);
    let sr = right.sign_inside(-1.0);
    if sl == 0.0 {
        return Ok(left.x);
    }
    if sr == 0.0 {
        return Ok(right.x);
    }
    if sl == sr {
        // no sign change survived rounding: the root is at the endpoint
        // that is closer to vanishing
        let l = left.eval.value.abs() / left.eval.value_noise.max(f64::MIN_POSITIVE);
        let r = right.eval.value.abs() / right.eval.value_noise.max(f64::MIN_POSITIVE);
        return Ok(if l <= r { left.x } else { right.x });
    }
    let (mut lo, mut hi) = (left.x, right.x);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = floquet_eval(b, c, mid).value;
        if v == 0.0 {
            return Ok(mid);
        }
        if v.signum() == sl {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        tol,
        iterations: MAX_BISECTIONS,
    })
}
