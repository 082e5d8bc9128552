//! Identity checking: every transformation the library produces is evaluated on both
//! sides at sample points, with branch constants fitted once and reused.

mod binomial;
mod f4;
mod grid;
mod linear;
mod pde;
mod pfaff;
mod quadric;

use num_complex::Complex64;
use thiserror::Error;

use crate::configs::ConfigError;
use crate::evaluate::EvalError;
use crate::symmetry::SymmetryError;
use crate::transforms::TransformError;

pub use binomial::{binomial_identities, verify_binomial_identity, BinomialCase};
pub use f4::{f4_matrices, f4_nonexistence_report, F4Report, F4Sample, F4Step, F4_PARAMETERS};
pub use grid::{kernel_basis, SampleGrid};
pub use linear::{verify_linear_transformation, verify_symmetry_group, Evaluator};
pub use pde::verify_pde;
pub use pfaff::verify_pfaff;
pub use quadric::{verify_quadric_multivaluedness, QuadricReport, QUADRIC_BETA};

/// Quadrature against quadrature.
pub const QUADRATURE_THRESHOLD: f64 = 1e-6;
/// Series against series.
pub const SERIES_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("invalid sample grid: {0}")]
    InvalidGrid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub beta: Vec<Complex64>,
    pub x: Vec<Complex64>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub description: String,
    pub samples: Vec<SampleRecord>,
    pub fitted_constant: Complex64,
    pub max_residual: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub(crate) fn relative(a: Complex64, b: Complex64) -> f64 {
    crate::scalar::rel_diff(a, b)
}

/// Fits `κ = lhs/rhs` at the first pair and measures every pair against it.
pub(crate) fn fit_and_measure(pairs: &[(Complex64, Complex64)]) -> (Complex64, Vec<f64>) {
    let Some(&(l0, r0)) = pairs.first() else {
        return (Complex64::new(1.0, 0.0), Vec::new());
    };
    let kappa = l0 / r0;
    let residuals = pairs.iter().map(|&(l, r)| relative(l, kappa * r)).collect();
    (kappa, residuals)
}

/// Assembles a report from `(β, x, lhs, rhs)` records. With `fit` the constant is fitted
/// at the first sample; otherwise it is fixed to one.
pub(crate) fn assemble(
    description: String,
    records: Vec<(Vec<Complex64>, Vec<Complex64>, Complex64, Complex64)>,
    fit: bool,
    threshold: f64,
    mut notes: Vec<String>,
) -> IdentityReport {
    let pairs: Vec<(Complex64, Complex64)> = records.iter().map(|r| (r.2, r.3)).collect();
    let (kappa, residuals) = if fit {
        fit_and_measure(&pairs)
    } else {
        let (k, _) = fit_and_measure(&pairs);
        notes.push(format!("ratio at the first sample {:.12e}{:+.12e}i (expected 1)", k.re, k.im));
        (Complex64::new(1.0, 0.0), pairs.iter().map(|&(l, r)| relative(l, r)).collect())
    };
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let finite = residuals.iter().all(|r| r.is_finite()) && !records.is_empty();
    let samples = records
        .into_iter()
        .zip(residuals)
        .map(|((beta, x, lhs, rhs), residual)| SampleRecord { beta, x, lhs, rhs, residual })
        .collect();
    IdentityReport {
        description,
        samples,
        fitted_constant: kappa,
        max_residual,
        threshold,
        verdict: Verdict::from_bool(finite && max_residual < threshold),
        notes,
    }
}
