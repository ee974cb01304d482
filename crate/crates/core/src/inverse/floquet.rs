use std::f64::consts::PI;

use num_rational::BigRational;
use serde::Serialize;

use crate::charpoly::{charpoly_floquet, elementary_pair, floquet_band_poly, leading_coefficients};
use crate::error::{Error, Result};
use crate::operators::{canonical_turns, FloquetMatrix};
use crate::poly::{exact, rational, FloatPoly};
use crate::spectra::{eigenvalues_floquet, Spectrum, DEFAULT_TOL};

use super::dirichlet::{coefficient_route, CoefficientRoute};
use super::{potential_norm_bound, Theorem, Verdict, VerificationReport};

/// Trace constant and angles read back from a free Floquet spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleRecovery {
    /// `2cos(2πφ)`, after snapping to `±2` when within `tol`.
    pub trace_constant: f64,
    /// `g_0 - e_0` for `e = Π(x - λ_i)` and `g` the θ-free band polynomial.
    pub coefficient_constant: f64,
    /// Largest mismatch between `e` and `g - c` outside the constant term.
    pub coefficient_residual: f64,
    /// Largest `|g(λ_i) - c| / max(|g'(λ_i)|, 1)`, roughly how far an
    /// eigenvalue would have to move to fit the recovered constant.
    pub root_residual: f64,
    /// `{φ, 1 - φ}` in turns, ascending, with `φ ∈ [0, 1/2]`.
    pub angles: Vec<f64>,
}

/// Spectra whose eigenvalues are further than this many `tol` from a
/// common trace constant are rejected.
const ROOT_FIT_FACTOR: f64 = 1e3;

/// Recovers `{φ, 1 - φ}` from the spectrum of the free Floquet matrix
/// `F_n(φ)`.
///
/// Every eigenvalue `λ` satisfies `g(λ) = c`, so `c` is read at the
/// eigenvalue where `g` is flattest: there a root error moves `g(λ)` the
/// least, which keeps near-double roots (φ close to 0 or 1/2) accurate.
/// The coefficient comparison of `Π(x - λ_i)` with `g - c` is reported
/// alongside.
pub fn recover_floquet_angle(s: &Spectrum, n: usize, tol: f64) -> Result<AngleRecovery> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { min: 3, actual: n });
    }
    if s.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: s.len(),
        });
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let g: FloatPoly = floquet_band_poly(&vec![0.0; n]);
    let dg = g.derivative();
    let e = FloatPoly::from_roots(s.values());

    let flattest = s
        .values()
        .iter()
        .copied()
        .min_by(|x, y| dg.eval(x).abs().total_cmp(&dg.eval(y).abs()))
        .expect("n >= 3");
    let mut c = g.eval(&flattest);
    let coefficient_constant = g.coeff(0) - e.coeff(0);
    let coefficient_residual = (1..=n)
        .map(|i| (g.coeff(i) - e.coeff(i)).abs())
        .fold(0.0, f64::max);

    let root_residual = s
        .values()
        .iter()
        .map(|x| (g.eval(x) - c).abs() / dg.eval(x).abs().max(1.0))
        .fold(0.0, f64::max);

    if !c.is_finite() || c.abs() > 2.0 + tol || root_residual > ROOT_FIT_FACTOR * tol {
        return Err(Error::InvalidFloquetSpectrum { value: c });
    }
    if 2.0 - c.abs() <= tol {
        c = 2.0 * c.signum();
    }
    let phi = (0.5 * c).acos() / (2.0 * PI);
    let mut angles = vec![canonical_turns(phi)];
    let mirror = canonical_turns(1.0 - phi);
    if mirror != angles[0] {
        angles.push(mirror);
    }
    angles.sort_by(f64::total_cmp);
    Ok(AngleRecovery {
        trace_constant: c,
        coefficient_constant,
        coefficient_residual,
        root_residual,
        angles,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloquetWitness {
    pub n: usize,
    pub potential: Vec<f64>,
    pub theta: f64,
    pub phi: f64,
    pub spectrum: Spectrum,
    pub free_spectrum: Spectrum,
    pub max_eigenvalue_diff: f64,
    pub spectra_match: bool,
    pub potential_norm: f64,
    pub norm_bound: f64,
    /// `|2cos(2πθ) - 2cos(2πφ)|`.
    pub trace_constant_gap: f64,
    /// `det(xI - S(θ)) - det(xI - S(φ))` is the constant
    /// `2cos(2πφ) - 2cos(2πθ)` up to this error.
    pub constant_shift_error: f64,
    /// Exact `x^{n-1}` and `x^{n-2}` coefficients equal `-Σ b_i` and
    /// `Σ_{i<j} b_i b_j - n`, neither involving the angle.
    pub leading_coefficients_hold: bool,
    pub coefficients: CoefficientRoute,
}

const SHIFT_TOL: f64 = 1e-12;

/// Floquet uniqueness: a Floquet matrix with potential `b` and angle `θ`
/// isospectral to the free one at angle `φ` has `b = 0` and `θ ∈ {φ, 1 - φ}`.
pub fn verify_floquet_uniqueness(
    b: &[f64],
    theta: f64,
    phi: f64,
    tol: f64,
) -> Result<VerificationReport<FloquetWitness>> {
    let n = b.len();
    let s = FloquetMatrix::new(n, b.to_vec(), theta)?;
    let f = FloquetMatrix::free(n, phi)?;
    let eig_tol = DEFAULT_TOL.min(tol);
    let spectrum = eigenvalues_floquet(&s, eig_tol)?;
    let free_spectrum = eigenvalues_floquet(&f, eig_tol)?;
    let max_eigenvalue_diff = spectrum
        .max_abs_diff(&free_spectrum)
        .expect("equal dimensions");
    let spectra_match = max_eigenvalue_diff <= tol;
    let potential_norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let norm_bound = potential_norm_bound(n, tol + eig_tol);
    let trace_constant_gap = (s.trace_constant() - f.trace_constant()).abs();

    let shifted = FloquetMatrix::new(n, b.to_vec(), phi)?;
    let diff = &charpoly_floquet(&s) - &charpoly_floquet(&shifted);
    let expected = shifted.trace_constant() - s.trace_constant();
    let constant_shift_error = (0..=n)
        .map(|i| {
            let want = if i == 0 { expected } else { 0.0 };
            (diff.coeff(i) - want).abs()
        })
        .fold(0.0, f64::max);

    let exact_b: Vec<BigRational> = b.iter().map(|&v| exact(v)).collect();
    let (c1, c2) = leading_coefficients(&floquet_band_poly(&exact_b))?;
    let (e1, e2) = elementary_pair(&exact_b);
    let leading_coefficients_hold = c1 == -e1 && c2 == e2 - rational(n as i64, 1);
    let coefficients = coefficient_route(b);

    // eigenvalues of F_n(θ) move by at most |Δc| / min|g'| and g' is at most
    // n^2 on the band, so a matching spectrum pins the trace constant to
    // within n^2 times the match tolerance
    let angle_slack = (n * n) as f64 * (tol + eig_tol) + SHIFT_TOL;
    let ok = coefficients.identity_holds
        && coefficients.both_vanish == coefficients.is_zero
        && leading_coefficients_hold
        && constant_shift_error <= SHIFT_TOL * (1.0 + expected.abs())
        && !(spectra_match && (potential_norm > norm_bound || (potential_norm == 0.0 && trace_constant_gap > angle_slack)));
    Ok(VerificationReport {
        theorem: Theorem::FloquetUniqueness,
        instance: format!("n={n}, theta={theta}, phi={phi}"),
        verdict: Verdict::from_ok(ok),
        tol,
        witness: FloquetWitness {
            n,
            potential: b.to_vec(),
            theta: s.theta(),
            phi: f.theta(),
            spectrum,
            free_spectrum,
            max_eigenvalue_diff,
            spectra_match,
            potential_norm,
            norm_bound,
            trace_constant_gap,
            constant_shift_error,
            leading_coefficients_hold,
            coefficients,
        },
    })
}
