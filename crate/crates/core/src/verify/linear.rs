//! `F(β; x) = κ · det T · F(Tβ; x·P⁻¹)` for polytope symmetries.

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::SampleGrid;
use super::{assemble, IdentityReport, VerifyError};
use crate::configs::{to_standard_form, CatalogEntry, StandardForm};
use crate::evaluate::{classical_solution, euler_integral, CycleSpec, QuadratureSettings};
use crate::symmetry::{find_symmetries, PolytopeSymmetry};
use crate::transforms::{apply, induced_transformation, LinearTransformation};
use crate::{Coefficients, Params};

/// How both sides of an identity are evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluator {
    /// Prefactored classical series of the catalog entry.
    Classical,
    /// Euler-type integral on the single-block standard form.
    Integral { cycle: CycleSpec, settings: QuadratureSettings },
}

struct Prepared<'a> {
    entry: &'a CatalogEntry,
    evaluator: &'a Evaluator,
    sf: Option<StandardForm>,
}

impl Prepared<'_> {
    fn eval(&self, beta: &Params, x: &Coefficients) -> Result<(Complex64, Vec<String>), VerifyError> {
        match (self.evaluator, &self.sf) {
            (Evaluator::Integral { cycle, settings }, Some(sf)) => {
                let res = euler_integral(sf, beta, x, cycle, settings)?.require_converged()?;
                Ok((res.value, res.warnings))
            }
            _ => {
                let params = self.entry.classical_from_beta(beta)?;
                let res = classical_solution(self.entry, &params, x)?;
                Ok((res.value, res.warnings))
            }
        }
    }
}

fn describe(tr: &LinearTransformation) -> String {
    let s = tr.symmetry();
    format!(
        "F(β; x) = κ·det(T)·F(Tβ; x·P⁻¹), T = {:?}, perm = {:?}, det T = {}",
        s.t().to_rows(),
        s.perm_one_based(),
        tr.scale()
    )
}

pub fn verify_linear_transformation(
    entry: &CatalogEntry,
    tr: &LinearTransformation,
    grid: &SampleGrid,
    evaluator: &Evaluator,
    threshold: f64,
) -> Result<IdentityReport, VerifyError> {
    grid.check_dimensions(&entry.config)?;
    let sf = match evaluator {
        Evaluator::Integral { .. } => Some(to_standard_form(&entry.config, 1)?),
        Evaluator::Classical => None,
    };
    let prepared = Prepared { entry, evaluator, sf };
    let scale = Complex64::new(tr.scale() as f64, 0.0);
    let evaluated: Vec<_> = grid
        .points
        .par_iter()
        .map(|(beta, x)| -> Result<_, VerifyError> {
            let (beta_t, x_t) = apply(tr, beta, x)?;
            let (lhs, mut w) = prepared.eval(beta, x)?;
            let (rhs, w2) = prepared.eval(&beta_t, &x_t)?;
            w.extend(w2);
            Ok(((beta.as_slice().to_vec(), x.as_slice().to_vec(), lhs, scale * rhs), w))
        })
        .collect::<Result<_, _>>()?;
    let mut notes = Vec::new();
    if let Evaluator::Classical = evaluator {
        let map = entry.parameter_map(tr.symmetry().t())?;
        let shown: Vec<String> = entry.parameter_names.iter().zip(&map).map(|(p, e)| format!("{p} ↦ {e}")).collect();
        notes.push(format!("classical parameters: {}", shown.join(", ")));
    }
    let mut records = Vec::with_capacity(evaluated.len());
    for (rec, warnings) in evaluated {
        for w in warnings {
            if !notes.contains(&w) {
                notes.push(w);
            }
        }
        records.push(rec);
    }
    let mut report = assemble(describe(tr), records, true, threshold, notes);
    let k = report.fitted_constant;
    report.notes.push(format!("fitted κ = {:.12e}{:+.12e}i", k.re, k.im));
    Ok(report)
}

/// Verifies every element of the symmetry group of `entry`.
pub fn verify_symmetry_group(
    entry: &CatalogEntry,
    grid: &SampleGrid,
    evaluator: &Evaluator,
    threshold: f64,
) -> Result<Vec<(PolytopeSymmetry, IdentityReport)>, VerifyError> {
    let group = find_symmetries(&entry.config)?;
    group
        .elements()
        .iter()
        .map(|s| {
            let tr = induced_transformation(s);
            Ok((s.clone(), verify_linear_transformation(entry, &tr, grid, evaluator, threshold)?))
        })
        .collect()
}
