//! Reference computations sharing no code with the library.

#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `2cos(jπ/(n+1))`, ascending.
pub fn free_eigenvalues(n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (1..=n)
        .map(|j| 2.0 * (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `2cos(2π(φ + j)/n)`, ascending.
pub fn free_floquet_eigenvalues(n: usize, phi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|j| 2.0 * (2.0 * std::f64::consts::PI * (phi + j as f64) / n as f64).cos())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn tridiagonal(a: &[f64], b: &[f64]) -> Vec<Vec<f64>> {
    let n = b.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        m[i][i] = b[i];
        if i + 1 < n {
            m[i][i + 1] = a[i];
            m[i + 1][i] = a[i];
        }
    }
    m
}

/// Cyclic Jacobi rotations on a dense symmetric matrix.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut v: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `det(xI - S)` for the Schrödinger matrix with diagonal `b`, by exact
/// Gaussian elimination.
pub fn schrodinger_char_value(b: &[BigRational], x: &BigRational) -> BigRational {
    let n = b.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        x - &b[i]
                    } else if i.abs_diff(j) == 1 {
                        -BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let d = &f * &m[col][c];
                m[r][c] -= d;
            }
        }
    }
    det
}

/// `det(xI - S(θ))` for the Floquet matrix with diagonal `b`, unit
/// couplings and corner phase `e^{2πiθ}`, by partial-pivot LU.
pub fn floquet_char_value(b: &[f64], theta: f64, x: f64) -> f64 {
    let n = b.len();
    let corner = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta);
    let mut m = vec![vec![Complex64::zero(); n]; n];
    for i in 0..n {
        m[i][i] = Complex64::new(x - b[i], 0.0);
        if i + 1 < n {
            m[i][i + 1] = Complex64::new(-1.0, 0.0);
            m[i + 1][i] = Complex64::new(-1.0, 0.0);
        }
    }
    m[0][n - 1] -= corner;
    m[n - 1][0] -= corner.conj();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let p = (col..n)
            .max_by(|&r, &s| m[r][col].norm().total_cmp(&m[s][col].norm()))
            .unwrap();
        if m[p][col].norm() == 0.0 {
            return 0.0;
        }
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let d = f * m[col][c];
                m[r][c] -= d;
            }
        }
    }
    det.re
}
