//! Scalar fields shared by every algebra in the crate.
//!
//! Three families are provided: complex floating point (`Complex64`),
//! exact rationals and cyclotomic numbers ([`Cyclo`]), and rational
//! functions in one indeterminate ([`RatFunc`]).

mod cyclotomic;
mod poly;

pub use cyclotomic::{cyclotomic_polynomial, Cyclo};
pub use poly::{Poly, RatFunc};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Absolute threshold under which a floating point value counts as zero.
pub const FLOAT_EPS: f64 = 1e-10;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A (commutative) field with an involution, as needed by the linear algebra
/// of morphism spaces.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// A square root inside the field, when one is available.
    fn sqrt(&self) -> Option<Self>;
    /// Numerical value, NaN when the element has no numerical meaning.
    fn to_c64(&self) -> Complex64;
    /// Size used to choose pivots; only the ordering matters.
    fn magnitude(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    /// Back-conversion from a numerical value; only floating point fields
    /// accept it.
    fn from_c64(_z: Complex64) -> Option<Self> {
        None
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rat_to_f64(q), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() < FLOAT_EPS
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.norm() == 0.0 {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Scalars that can host the character values of the built-in groups.
pub trait FromCyclo: Field {
    fn from_cyclo(z: &Cyclo) -> Self;
}

impl FromCyclo for Complex64 {
    fn from_cyclo(z: &Cyclo) -> Self {
        z.to_c64()
    }
}

impl FromCyclo for Cyclo {
    fn from_cyclo(z: &Cyclo) -> Self {
        z.clone()
    }
}

/// Formats a scalar for reports: exact fields print exactly, floats with
/// a fixed number of digits.
pub fn display_scalar<S: Field + std::fmt::Display>(x: &S) -> String {
    if S::EXACT {
        format!("{x}")
    } else {
        let z = x.to_c64();
        if z.im.abs() < FLOAT_EPS {
            format!("{:.12}", z.re)
        } else {
            format!("{:.12}{:+.12}i", z.re, z.im)
        }
    }
}
