//! Finite binomial-sum identities from shifting one dehomogenized variable.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{assemble, IdentityReport, VerifyError, QUADRATURE_THRESHOLD};
use crate::configs::{catalog, to_standard_form, StandardForm};
use crate::evaluate::{euler_integral, Axis, CycleSpec, QuadratureSettings};
use crate::transforms::{binomial_expansion_identity, elementary_pullback, BinomialIdentity};
use crate::{Coefficients, Params};

/// A family of binomial identities on one standard form, with the cycle they live on.
#[derive(Debug, Clone)]
pub struct BinomialCase {
    pub name: String,
    pub sf: StandardForm,
    pub cycle: CycleSpec,
    pub identities: Vec<BinomialIdentity<f64>>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds identities for `"quadric"` (shift of `w`, real line) or `"square"` (shift of
/// `w₂`, cycle `ℝ₊ × ℝ`) with dehomogenized exponent `−n`, at a few shifts and points.
pub fn binomial_identities(name: &str, n: u32) -> Result<BinomialCase, VerifyError> {
    let entry = catalog(name)?;
    let sf = to_standard_form(&entry.config, 1)?;
    let nn = f64::from(n);
    let (variable, beta_std, xs, shifts, cycle): (usize, Vec<Complex64>, Vec<Vec<Complex64>>, Vec<f64>, CycleSpec) =
        match name {
            "quadric" => (
                0,
                vec![c(-2.2, 0.0), c(-nn, 0.0)],
                vec![
                    vec![c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)],
                    vec![c(2.5, 0.0), c(-0.8, 0.0), c(1.5, 0.0)],
                    vec![c(1.0, 0.0), c(0.3, 0.0), c(0.7, 0.0)],
                ],
                vec![1.0, -0.6, 0.35],
                vec![Axis::RealLine],
            ),
            "square" => (
                1,
                vec![c(-3.5, 0.0), c(-0.5, 0.0), c(-nn, 0.0)],
                // f is linear in w2, so on ℝ the integral vanishes unless the principal
                // branch of f^β'₁ is cut along the line; these x make f cross (−∞, 0)
                vec![
                    vec![c(0.8, 1.2), c(-1.7, -0.6), c(0.76, 1.44), c(-2.04, -0.72)],
                    vec![c(0.6, 1.5), c(-1.2, -0.3), c(0.24, 1.35), c(-1.08, -0.27)],
                ],
                vec![1.0, -0.5],
                vec![Axis::positive(), Axis::RealLine],
            ),
            other => return Err(VerifyError::InvalidGrid(format!("no binomial family for `{other}`"))),
        };
    let beta = Params::new(sf.untransform_parameters(&beta_std));
    let mut identities = Vec::new();
    for (x, &t) in xs.iter().zip(&shifts) {
        let ea = elementary_pullback(&sf, variable, c(t, 0.0))?;
        identities.push(binomial_expansion_identity(&sf, &ea, &beta, &Coefficients::new(x.clone()), n)?);
    }
    Ok(BinomialCase { name: name.to_string(), sf, cycle, identities })
}

/// Quadrature of the left side against the binomial combination of term quadratures.
pub fn verify_binomial_identity(
    case: &BinomialCase,
    settings: &QuadratureSettings,
) -> Result<IdentityReport, VerifyError> {
    let records: Vec<_> = case
        .identities
        .par_iter()
        .map(|id| -> Result<_, VerifyError> {
            let lhs = euler_integral(&case.sf, &id.lhs_beta, &id.lhs_x, &case.cycle, settings)?.require_converged()?;
            let values = id
                .terms
                .iter()
                .map(|term| {
                    Ok(euler_integral(&case.sf, &term.beta, &term.x, &case.cycle, settings)?.require_converged()?.value)
                })
                .collect::<Result<Vec<_>, VerifyError>>()?;
            Ok((id.lhs_beta.as_slice().to_vec(), id.lhs_x.as_slice().to_vec(), lhs.value, id.combine(&values)))
        })
        .collect::<Result<_, _>>()?;
    let n = case.identities.first().map_or(0, |id| id.n);
    let mut notes: Vec<String> = case.identities.first().map(|id| id.notes.clone()).unwrap_or_default();
    notes.push(format!(
        "{} identities with {} terms each (shift variable w{})",
        case.identities.len(),
        n,
        case.identities.first().map_or(0, |id| id.variable_index + 1)
    ));
    Ok(assemble(
        format!("{}: F(β; x) = Σ_K C(N-1,K) t^(N-1-K) F(β_K; x·M), N = {n}", case.name),
        records,
        false,
        QUADRATURE_THRESHOLD,
        notes,
    ))
}
