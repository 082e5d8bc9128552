//! Numerical engine: Euler-type integrals over product cycles, classical hypergeometric
//! series, and the small special-function layer they share.

mod classical;
mod integral;
mod quadrature;
mod series;
mod special;

use num_complex::Complex;
use thiserror::Error;

use crate::configs::ConfigError;
use crate::scalar::Real;

pub use classical::classical_solution;
pub use integral::{derivative_integral, euler_integral, homogenization_constant, Integrand};
pub use quadrature::{integrate, QuadratureOutcome};
pub use series::{appell_f4, appell_f4_via_2f1, gauss_2f1, gauss_2f1_series, lauricella_fc};
pub use special::{beta, falling_factorial, gamma, is_nonpositive_integer, log_gamma, rising_pochhammer};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("lower parameter {0} is a nonpositive integer")]
    PoleInC(String),
    #[error("gamma function pole at {0}")]
    PoleInGamma(String),
    #[error("argument outside the series domain: {0}")]
    OutOfDomain(String),
    #[error("integrand vanishes on the cycle: {0}")]
    SingularOnCycle(String),
    #[error("not converged: {0}")]
    NotConverged(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Adaptive quadrature controls. Tolerances apply per axis of the iterated integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of bisections per one-dimensional integral.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings { rel_tol: 1e-10, abs_tol: 1e-14, max_subdivisions: 400 }
    }
}

impl QuadratureSettings {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(EvalError::UnsupportedParameters(format!("bad quadrature settings {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationResult<T: Real> {
    pub value: Complex<T>,
    pub error_estimate: T,
    pub converged: bool,
    pub warnings: Vec<String>,
}

impl<T: Real> EvaluationResult<T> {
    pub fn require_converged(self) -> Result<Self, EvalError> {
        if self.converged {
            Ok(self)
        } else {
            Err(EvalError::NotConverged(format!("value {} with error estimate {}", self.value, self.error_estimate)))
        }
    }
}

/// One factor of a product cycle, for a single dehomogenized variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    /// The ray `e^{iθ}·(0, ∞)`.
    PositiveAxis { phase: f64 },
    /// `(−∞, 0)`, i.e. the ray of phase `π`.
    NegativeAxis,
    /// `positive_axis(0) − positive_axis(π)` (the negative half traversed towards 0).
    RealLine,
    /// `(0, 1)`.
    UnitInterval,
    /// `|w| = 1`, counterclockwise, starting at `−1`.
    UnitCircle,
}

impl Axis {
    pub fn positive() -> Self {
        Axis::PositiveAxis { phase: 0.0 }
    }

    pub fn rotated(phase: f64) -> Self {
        Axis::PositiveAxis { phase }
    }
}

pub type CycleSpec = Vec<Axis>;
