//! Characteristic polynomials through the tridiagonal determinant
//! recurrence
//!
//! ```text
//! p_0 = 1,  p_1 = x - b_1,  p_k = (x - b_k) p_{k-1} - a_{k-1}^2 p_{k-2}
//! ```
//!
//! and the Floquet reduction
//! `det(xI - S(θ)) = (x - b_1) D[2,n] - D[3,n] - D[2,n-1] - 2cos(2πθ)`,
//! where `D[k,l]` is the characteristic polynomial of the principal block
//! on rows `k..=l`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::operators::{FloquetMatrix, JacobiMatrix};
use crate::poly::{exact, ExactPoly, FloatPoly, Poly, Scalar};

/// Three-term recurrence over any coefficient ring. `a_sq` holds the
/// squared off-diagonal and must have length `b.len() - 1` (or be empty
/// for an empty `b`).
pub fn tridiagonal_charpoly<T: Scalar>(a_sq: &[T], b: &[T]) -> Poly<T> {
    let mut prev = Poly::<T>::zero();
    let mut cur = Poly::<T>::one();
    for (k, bk) in b.iter().enumerate() {
        let mut next = &Poly::linear_factor(bk.clone()) * &cur;
        if k > 0 {
            next = &next - &prev.scale(&a_sq[k - 1]);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Characteristic polynomial of a discrete Schrödinger matrix with the
/// given potential.
pub fn schrodinger_charpoly<T: Scalar>(b: &[T]) -> Poly<T> {
    let ones = vec![T::one(); b.len().saturating_sub(1)];
    tridiagonal_charpoly(&ones, b)
}

/// `det(xI - F_n)`; `n = 0` gives the constant 1.
pub fn free_charpoly<T: Scalar>(n: usize) -> Poly<T> {
    schrodinger_charpoly(&vec![T::zero(); n])
}

/// Float-mode `det(xI - m)`. Check [`FloatPoly::is_finite`] for overflow.
pub fn charpoly_jacobi(m: &JacobiMatrix) -> FloatPoly {
    let a_sq: Vec<f64> = m.off_diagonal().iter().map(|a| a * a).collect();
    tridiagonal_charpoly(&a_sq, m.diagonal())
}

/// Exact `det(xI - m)`, reading every stored `f64` as the rational it
/// represents.
pub fn charpoly_jacobi_exact(m: &JacobiMatrix) -> ExactPoly {
    let a_sq: Vec<BigRational> = m
        .off_diagonal()
        .iter()
        .map(|&a| {
            let a = exact(a);
            &a * &a
        })
        .collect();
    let b: Vec<BigRational> = m.diagonal().iter().map(|&v| exact(v)).collect();
    tridiagonal_charpoly(&a_sq, &b)
}

/// 1-based inclusive index range of a principal block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRange {
    k: usize,
    l: usize,
}

impl BlockRange {
    pub fn new(k: usize, l: usize, n: usize) -> Result<Self> {
        if k == 0 || k > l || l > n {
            return Err(Error::BlockOutOfRange { k, l, n });
        }
        Ok(Self { k, l })
    }

    pub fn start(&self) -> usize {
        self.k
    }

    pub fn end(&self) -> usize {
        self.l
    }
}

/// `D[k,l]`: characteristic polynomial of rows/columns `k..=l` of `m`.
pub fn block_det(m: &JacobiMatrix, r: BlockRange) -> Result<FloatPoly> {
    Ok(charpoly_jacobi(&m.principal(r.k, r.l)?))
}

pub fn block_det_exact(m: &JacobiMatrix, r: BlockRange) -> Result<ExactPoly> {
    Ok(charpoly_jacobi_exact(&m.principal(r.k, r.l)?))
}

/// The θ-independent part `(x - b_1) D[2,n] - D[3,n] - D[2,n-1]` of the
/// Floquet characteristic polynomial. Requires `b.len() >= 3`.
pub fn floquet_band_poly<T: Scalar>(b: &[T]) -> Poly<T> {
    let n = b.len();
    assert!(n >= 3, "Floquet reduction needs n >= 3");
    let d2n = schrodinger_charpoly(&b[1..]);
    let d3n = schrodinger_charpoly(&b[2..]);
    let d2n1 = schrodinger_charpoly(&b[1..n - 1]);
    let head = &Poly::linear_factor(b[0].clone()) * &d2n;
    &(&head - &d3n) - &d2n1
}

/// Floquet characteristic polynomial with an explicit trace constant
/// `c = 2cos(2πθ)`; lets exact callers supply a rational `c`.
pub fn floquet_charpoly_with_constant<T: Scalar>(b: &[T], c: T) -> Poly<T> {
    &floquet_band_poly(b) - &Poly::constant(c)
}

/// Real characteristic polynomial of the Hermitian Floquet matrix.
pub fn charpoly_floquet(m: &FloquetMatrix) -> FloatPoly {
    floquet_charpoly_with_constant(m.diagonal(), m.trace_constant())
}

/// Coefficients of `x^{n-1}` and `x^{n-2}` of a monic degree-`n`
/// polynomial.
pub fn leading_coefficients<T: Scalar>(p: &Poly<T>) -> Result<(T, T)> {
    let degree = p.degree().unwrap_or(0);
    if p.is_zero() || degree < 2 {
        return Err(Error::DegreeTooSmall { degree, min: 2 });
    }
    Ok((p.coeff(degree - 1), p.coeff(degree - 2)))
}

/// First two elementary symmetric functions `(Σ b_i, Σ_{i<j} b_i b_j)`.
pub fn elementary_pair<T: Scalar>(b: &[T]) -> (T, T) {
    let mut e1 = T::zero();
    let mut e2 = T::zero();
    for v in b {
        e2 = e2 + e1.clone() * v.clone();
        e1 = e1 + v.clone();
    }
    (e1, e2)
}
