use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::charpoly::{charpoly_jacobi, charpoly_jacobi_exact, elementary_pair, leading_coefficients};
use crate::error::Result;
use crate::operators::{BoundaryPerturbation, JacobiMatrix};
use crate::poly::{exact, rational, Poly};
use crate::spectra::{eigenvalues_jacobi, Spectrum, DEFAULT_TOL};

use super::{potential_norm_bound, Theorem, Verdict, VerificationReport};

/// Exact evaluation of the sum-of-squares argument for a potential `v`:
/// `Σ v_i^2 = (Σ v_i)^2 - 2 Σ_{i<j} v_i v_j`, so the first two elementary
/// symmetric functions vanish only for `v = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientRoute {
    pub sum: String,
    pub pair_sum: String,
    pub sum_of_squares: String,
    /// The identity above holds exactly.
    pub identity_holds: bool,
    /// `Σ v = 0` and `Σ_{i<j} v_i v_j = 0`.
    pub both_vanish: bool,
    pub is_zero: bool,
}

pub fn coefficient_route(v: &[f64]) -> CoefficientRoute {
    let exact_v: Vec<BigRational> = v.iter().map(|&x| exact(x)).collect();
    let (e1, e2) = elementary_pair(&exact_v);
    let squares = exact_v
        .iter()
        .fold(BigRational::zero(), |acc, x| acc + x * x);
    let identity_holds = squares == &e1 * &e1 - rational(2, 1) * &e2;
    CoefficientRoute {
        both_vanish: e1.is_zero() && e2.is_zero(),
        is_zero: exact_v.iter().all(|x| x.is_zero()),
        sum: e1.to_string(),
        pair_sum: e2.to_string(),
        sum_of_squares: squares.to_string(),
        identity_holds,
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletWitness {
    pub n: usize,
    pub potential: Vec<f64>,
    pub spectrum: Spectrum,
    pub free_spectrum: Spectrum,
    pub max_eigenvalue_diff: f64,
    pub spectra_match: bool,
    pub potential_norm: f64,
    /// Largest potential norm compatible with matching spectra.
    pub norm_bound: f64,
    /// Exact leading coefficients agree with `-Σ b_i` and
    /// `Σ_{i<j} b_i b_j - (n - 1)`.
    pub leading_coefficients_hold: bool,
    pub coefficients: CoefficientRoute,
}

/// Free Dirichlet uniqueness: a Schrödinger matrix isospectral to the free
/// one has zero potential. Violated only if the spectra match within `tol`
/// while the potential is larger than matching spectra allow, or if the
/// exact coefficient identities fail.
pub fn verify_amb_dirichlet(b: &[f64], tol: f64) -> Result<VerificationReport<DirichletWitness>> {
    let n = b.len();
    let s = JacobiMatrix::schrodinger(n, b.to_vec())?;
    let f = JacobiMatrix::free(n)?;
    let eig_tol = DEFAULT_TOL.min(tol);
    let spectrum = eigenvalues_jacobi(&s, eig_tol)?;
    let free_spectrum = eigenvalues_jacobi(&f, eig_tol)?;
    let max_eigenvalue_diff = spectrum
        .max_abs_diff(&free_spectrum)
        .expect("equal dimensions");
    let spectra_match = max_eigenvalue_diff <= tol;
    let norm_bound = potential_norm_bound(n, tol + eig_tol);
    let potential_norm = norm(b);

    let leading_coefficients_hold = if n >= 2 {
        let (c1, c2) = leading_coefficients(&charpoly_jacobi_exact(&s))?;
        let exact_b: Vec<BigRational> = b.iter().map(|&v| exact(v)).collect();
        let (e1, e2) = elementary_pair(&exact_b);
        c1 == -e1 && c2 == e2 - rational(n as i64 - 1, 1)
    } else {
        true
    };
    let coefficients = coefficient_route(b);
    let ok = coefficients.identity_holds
        && leading_coefficients_hold
        && (coefficients.both_vanish == coefficients.is_zero)
        && !(spectra_match && potential_norm > norm_bound);
    Ok(VerificationReport {
        theorem: Theorem::FreeDirichletUniqueness,
        instance: format!("n={n}"),
        verdict: Verdict::from_ok(ok),
        tol,
        witness: DirichletWitness {
            n,
            potential: b.to_vec(),
            spectrum,
            free_spectrum,
            max_eigenvalue_diff,
            spectra_match,
            potential_norm,
            norm_bound,
            leading_coefficients_hold,
            coefficients,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleWitness {
    pub matrix_a: JacobiMatrix,
    pub matrix_b: JacobiMatrix,
    /// Exact coefficients of `det(xI - A)`, ascending.
    pub charpoly_a: Poly<BigRational>,
    pub charpoly_b: Poly<f64>,
    pub shared_polynomial: String,
    pub charpoly_a_exact_match: bool,
    pub charpoly_b_max_diff: f64,
    pub spectrum_a: Spectrum,
    pub spectrum_b: Spectrum,
    pub spectrum_max_diff: f64,
    pub trace_a: f64,
    pub trace_b: f64,
}

const COUNTEREXAMPLE_COEFF_TOL: f64 = 1e-12;
const COUNTEREXAMPLE_SPECTRUM_TOL: f64 = 1e-10;

/// `A = S_3` with potential `(2, 0, 0)` and `B` with potential
/// `(-2/(1+√5), 1, (1+√5)/2)` share `x^3 - 2x^2 - 2x + 2`, so an unknown
/// nonzero boundary value is not determined by one spectrum.
pub fn verify_counterexample() -> Result<VerificationReport<CounterexampleWitness>> {
    let golden = 1.0 + 5f64.sqrt();
    let a = JacobiMatrix::schrodinger(3, vec![2.0, 0.0, 0.0])?;
    let b = JacobiMatrix::schrodinger(3, vec![-2.0 / golden, 1.0, golden / 2.0])?;
    let target = Poly::new(vec![rational(2, 1), rational(-2, 1), rational(-2, 1), rational(1, 1)]);

    let charpoly_a = charpoly_jacobi_exact(&a);
    let charpoly_b = charpoly_jacobi(&b);
    let charpoly_a_exact_match = charpoly_a == target;
    let charpoly_b_max_diff = charpoly_b.max_abs_diff(&target.to_float());

    let spectrum_a = eigenvalues_jacobi(&a, DEFAULT_TOL)?;
    let spectrum_b = eigenvalues_jacobi(&b, DEFAULT_TOL)?;
    let spectrum_max_diff = spectrum_a.max_abs_diff(&spectrum_b).expect("both 3x3");
    let trace_a: f64 = a.diagonal().iter().sum();
    let trace_b: f64 = b.diagonal().iter().sum();

    let ok = charpoly_a_exact_match
        && charpoly_b_max_diff <= COUNTEREXAMPLE_COEFF_TOL
        && spectrum_max_diff <= COUNTEREXAMPLE_SPECTRUM_TOL
        && (trace_a - trace_b).abs() <= COUNTEREXAMPLE_COEFF_TOL
        && a != b;
    Ok(VerificationReport {
        theorem: Theorem::IsospectralCounterexample,
        instance: "n=3".into(),
        verdict: Verdict::from_ok(ok),
        tol: COUNTEREXAMPLE_SPECTRUM_TOL,
        witness: CounterexampleWitness {
            matrix_a: a,
            matrix_b: b,
            shared_polynomial: target.to_string(),
            charpoly_a,
            charpoly_b,
            charpoly_a_exact_match,
            charpoly_b_max_diff,
            spectrum_a,
            spectrum_b,
            spectrum_max_diff,
            trace_a,
            trace_b,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnownBoundaryWitness {
    pub n: usize,
    pub boundary: f64,
    pub rest: Vec<f64>,
    pub spectrum: Spectrum,
    pub reference_spectrum: Spectrum,
    pub max_eigenvalue_diff: f64,
    pub spectra_match: bool,
    pub rest_norm: f64,
    pub norm_bound: f64,
    /// Exact coefficients of `x^{n-1}` and `x^{n-2}` agree with the
    /// reference matrix.
    pub coefficients_agree: bool,
    pub coefficients: CoefficientRoute,
}

/// Uniqueness with a known boundary value `b` at the first site: the
/// matrix with potential `(b, rest...)` matches the free matrix perturbed
/// by `b` at site one only when `rest = 0`.
pub fn verify_known_boundary(
    b: f64,
    rest: &[f64],
    tol: f64,
) -> Result<VerificationReport<KnownBoundaryWitness>> {
    let n = rest.len() + 1;
    let mut potential = Vec::with_capacity(n);
    potential.push(b);
    potential.extend_from_slice(rest);
    let s = JacobiMatrix::schrodinger(n, potential)?;
    let reference = JacobiMatrix::free(n)?.apply_boundary(BoundaryPerturbation::new(b, 0.0));
    let eig_tol = DEFAULT_TOL.min(tol);
    let spectrum = eigenvalues_jacobi(&s, eig_tol)?;
    let reference_spectrum = eigenvalues_jacobi(&reference, eig_tol)?;
    let max_eigenvalue_diff = spectrum
        .max_abs_diff(&reference_spectrum)
        .expect("equal dimensions");
    let spectra_match = max_eigenvalue_diff <= tol;
    // the diagonal entries differ only in `rest`, and both spectra sit in
    // [-2 - |b|, 2 + |b|]
    let norm_bound = (n as f64 * (tol + eig_tol) * (4.0 + 2.0 * b.abs() + tol + eig_tol)).sqrt();
    let rest_norm = norm(rest);

    let coefficients_agree = if n >= 2 {
        let (c1, c2) = leading_coefficients(&charpoly_jacobi_exact(&s))?;
        let (r1, r2) = leading_coefficients(&charpoly_jacobi_exact(&reference))?;
        c1 == r1 && c2 == r2
    } else {
        true
    };
    let coefficients = coefficient_route(rest);
    let ok = coefficients.identity_holds
        && (coefficients_agree == coefficients.both_vanish)
        && (coefficients.both_vanish == coefficients.is_zero)
        && !(spectra_match && rest_norm > norm_bound);
    Ok(VerificationReport {
        theorem: Theorem::KnownBoundaryUniqueness,
        instance: format!("n={n}, b={b}"),
        verdict: Verdict::from_ok(ok),
        tol,
        witness: KnownBoundaryWitness {
            n,
            boundary: b,
            rest: rest.to_vec(),
            spectrum,
            reference_spectrum,
            max_eigenvalue_diff,
            spectra_match,
            rest_norm,
            norm_bound,
            coefficients_agree,
            coefficients,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_potential_is_trivially_confirmed() {
        let r = verify_amb_dirichlet(&[0.0; 5], 1e-9).unwrap();
        assert!(r.verdict.is_confirmed());
        assert!(r.witness.spectra_match);
        assert!(r.witness.coefficients.is_zero);
    }

    #[test]
    fn nonzero_potential_changes_spectrum() {
        let b = [0.4, -1.1, 2.3, 0.0, -0.7, 1.9];
        let r = verify_amb_dirichlet(&b, 1e-9).unwrap();
        assert!(r.verdict.is_confirmed());
        assert!(!r.witness.spectra_match);
        assert!(r.witness.max_eigenvalue_diff > 1e-3);
    }

    #[test]
    fn vanishing_elementary_pair_forces_zero() {
        // Σb = 0 alone is possible with b ≠ 0; Σ_{i<j} b_i b_j is then
        // -Σb²/2 < 0, so both cannot vanish
        let route = coefficient_route(&[1.0, -1.0, 0.0]);
        assert_eq!(route.sum, "0");
        assert_eq!(route.pair_sum, "-1");
        assert_eq!(route.sum_of_squares, "2");
        assert!(route.identity_holds && !route.both_vanish);
        assert!(coefficient_route(&[0.0, 0.0]).both_vanish);
    }

    #[test]
    fn counterexample_reproduces() {
        let r = verify_counterexample().unwrap();
        assert!(r.verdict.is_confirmed(), "{r:?}");
        assert_eq!(r.witness.shared_polynomial, "x^3 - 2x^2 - 2x + 2");
        assert!((r.witness.trace_a - 2.0).abs() < 1e-15);
        assert!((r.witness.trace_b - 2.0).abs() <= 1e-12);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["witness"]["charpoly_a"], serde_json::json!(["2", "-2", "-2", "1"]));
    }

    #[test]
    fn known_boundary_cases() {
        let same = verify_known_boundary(2.0, &[0.0, 0.0], 1e-9).unwrap();
        assert!(same.verdict.is_confirmed() && same.witness.spectra_match);
        let moved = verify_known_boundary(2.0, &[0.5, -0.5], 1e-9).unwrap();
        assert!(moved.verdict.is_confirmed() && !moved.witness.spectra_match);
        assert!(!moved.witness.coefficients_agree);
        let other = verify_known_boundary(-3.7, &[0.0; 4], 1e-9).unwrap();
        assert!(other.witness.spectra_match);
    }
}
