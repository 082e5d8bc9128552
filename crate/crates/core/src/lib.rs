//! A-hypergeometric (GKZ) point configurations, their polytope symmetries, the induced
//! transformations of hypergeometric functions, and numerical verification of those
//! transformations through Euler-type integrals and classical series.

pub mod cli;
pub mod configs;
pub mod evaluate;
pub mod scalar;
pub mod symmetry;
pub mod transforms;
pub mod verify;

pub use num_complex::Complex64;
pub use scalar::{Real, RingScalar};

/// Parameter vector over `f64`.
pub type Params = configs::ParameterVector<f64>;
/// Coefficient vector over `f64`.
pub type Coefficients = configs::CoefficientVector<f64>;
