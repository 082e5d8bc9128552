//! Scalar abstraction for the numerical modules.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point type the numerical engine is generic over (`f32`, `f64`).
pub trait Real: Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static {
    /// Lossy conversion from an `f64` constant.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    fn from_int(x: i64) -> Self {
        Self::from_i64(x).expect("integer representable in scalar type")
    }
}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static {}

/// Relative distance `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let scale = a.norm().max(b.norm());
    if scale == T::zero() {
        T::zero()
    } else {
        (a - b).norm() / scale
    }
}

/// Commutative ring elements with an embedding of the integers. Covers the complex
/// floating-point scalars used numerically and the exact rationals used in tests and
/// bookkeeping.
pub trait RingScalar:
    Clone
    + Debug
    + PartialEq
    + num_traits::Zero
    + num_traits::One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn from_integer(k: i64) -> Self;
}

impl<T: Real> RingScalar for Complex<T> {
    fn from_integer(k: i64) -> Self {
        Complex::new(T::from_int(k), T::zero())
    }
}

impl RingScalar for num_rational::BigRational {
    fn from_integer(k: i64) -> Self {
        num_rational::BigRational::from_integer(k.into())
    }
}

impl RingScalar for num_rational::Rational64 {
    fn from_integer(k: i64) -> Self {
        num_rational::Rational64::from_integer(k)
    }
}

impl RingScalar for i64 {
    fn from_integer(k: i64) -> Self {
        k
    }
}

impl RingScalar for f64 {
    fn from_integer(k: i64) -> Self {
        k as f64
    }
}

impl RingScalar for f32 {
    fn from_integer(k: i64) -> Self {
        k as f32
    }
}
