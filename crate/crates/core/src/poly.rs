//! Dense univariate polynomials over exact rationals or binary floats.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

/// Coefficient ring for [`Poly`].
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + FromPrimitive
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

pub type ExactPoly = Poly<BigRational>;
pub type FloatPoly = Poly<f64>;

/// Converts an `f64` to the rational it represents exactly.
pub fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite value")
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Coefficients in ascending degree; trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn linear_factor(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_factor(r.clone()))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_usize(i).expect("degree fits"))
                .collect(),
        )
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Scalar + Div<Output = T>> Poly<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree().filter(|&t| t >= d) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![T::zero(); top - d + 1];
        for shift in (0..=top - d).rev() {
            let q = rem[shift + d].clone() / lead.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = rem[shift + j].clone() - q.clone() * dc.clone();
            }
            quot[shift] = q;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }
}

impl FloatPoly {
    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|i| (self.coeff(i) - other.coeff(i)).abs())
            .fold(0.0, f64::max)
    }
}

impl ExactPoly {
    pub fn to_float(&self) -> FloatPoly {
        self.map(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// JSON encoding of a single coefficient.
pub trait JsonCoeff {
    fn serialize_coeff<S: SerializeSeq>(&self, seq: &mut S) -> Result<(), S::Error>;
}

impl JsonCoeff for f64 {
    fn serialize_coeff<S: SerializeSeq>(&self, seq: &mut S) -> Result<(), S::Error> {
        seq.serialize_element(self)
    }
}

impl JsonCoeff for BigRational {
    fn serialize_coeff<S: SerializeSeq>(&self, seq: &mut S) -> Result<(), S::Error> {
        seq.serialize_element(&self.to_string())
    }
}

/// Ascending coefficient array: numbers for floats, `"p/q"` strings for
/// exact rationals.
impl<T: JsonCoeff> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            c.serialize_coeff(&mut seq)?;
        }
        seq.end()
    }
}

impl<T: Scalar + Signed + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if deg == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_poly(c: &[i64]) -> ExactPoly {
        Poly::new(c.iter().map(|&v| rational(v, 1)).collect())
    }

    #[test]
    fn trims_and_reports_degree() {
        let p = Poly::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::<f64>::new(vec![0.0]).degree(), None);
        assert!(Poly::from_roots(&[1.0, -2.0]).is_monic());
    }

    #[test]
    fn horner_examples() {
        let p = Poly::new(vec![0.0, -2.0, 0.0, 1.0]);
        assert_eq!(p.eval(&0.0), 0.0);
        let b = 1.75;
        assert_eq!(Poly::linear_factor(b).eval(&b), 0.0);
        let counter = int_poly(&[2, -2, -2, 1]);
        assert_eq!(counter.eval(&rational(1, 1)), rational(-1, 1));
    }

    #[test]
    fn display_matches_conventional_form() {
        assert_eq!(int_poly(&[2, -2, -2, 1]).to_string(), "x^3 - 2x^2 - 2x + 2");
        assert_eq!(int_poly(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::<f64>::zero().to_string(), "0");
    }

    #[test]
    fn json_encoding() {
        let p = Poly::new(vec![rational(-1, 3), rational(0, 1), rational(1, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["-1/3","0","1"]"#);
        let q = Poly::new(vec![2.0, -2.0]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[2.0,-2.0]");
    }

    #[test]
    fn derivative_of_cubic() {
        assert_eq!(int_poly(&[2, -2, -2, 1]).derivative(), int_poly(&[-2, -4, 3]));
    }

    fn small_int_poly() -> impl Strategy<Value = ExactPoly> {
        prop::collection::vec(-6i64..=6, 0..7).prop_map(|c| int_poly(&c))
    }

    proptest! {
        #[test]
        fn division_identity(p in small_int_poly(), d in small_int_poly()) {
            prop_assume!(!d.is_zero());
            let (q, r) = p.div_rem(&d);
            prop_assert_eq!(&(&q * &d) + &r, p);
            prop_assert!(r.degree() < d.degree() || r.is_zero());
        }

        #[test]
        fn evaluation_is_a_ring_map(p in small_int_poly(), q in small_int_poly(), x in -5i64..5) {
            let x = rational(x, 1);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        }
    }
}
