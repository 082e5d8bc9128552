//! Classical solutions `x^κ · series(argument(x))` attached to catalog entries.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::series::{appell_f4, gauss_2f1, lauricella_fc};
use super::{EvalError, EvaluationResult};
use crate::configs::{CatalogEntry, ClassicalForm, CoefficientVector};
use crate::scalar::Real;

fn param<T: Real>(values: &BTreeMap<String, Complex<T>>, name: &str) -> Result<Complex<T>, EvalError> {
    values
        .get(name)
        .copied()
        .ok_or_else(|| EvalError::UnsupportedParameters(format!("missing classical parameter `{name}`")))
}

fn ratio<T: Real>(num: Complex<T>, den: Complex<T>) -> Result<Complex<T>, EvalError> {
    if den.is_zero() {
        return Err(EvalError::OutOfDomain("zero denominator in the series argument".into()));
    }
    Ok(num / den)
}

/// Evaluates the entry's prefactor `x^κ` (principal powers) times its classical series.
/// The value is exact up to series truncation, so `error_estimate` is zero.
pub fn classical_solution<T: Real>(
    entry: &CatalogEntry,
    values: &BTreeMap<String, Complex<T>>,
    x: &CoefficientVector<T>,
) -> Result<EvaluationResult<T>, EvalError> {
    let n = entry.config.n();
    if x.len() != n {
        return Err(EvalError::DimensionMismatch { expected: n, found: x.len() });
    }
    let Some(kappa) = entry.kappa_values(values)? else {
        return Err(EvalError::UnsupportedParameters(format!("`{}` has no classical series", entry.name)));
    };
    let xs = x.as_slice();
    let mut warnings = Vec::new();
    let mut prefactor = Complex::<T>::one();
    for (j, (&xj, &k)) in xs.iter().zip(&kappa).enumerate() {
        if k.is_zero() {
            continue;
        }
        if xj.is_zero() {
            return Err(EvalError::OutOfDomain(format!("x{} = 0 under a nontrivial power", j + 1)));
        }
        if xj.im.is_zero() && xj.re < T::zero() {
            warnings.push(format!("branch ambiguity: x{} lies on the negative real axis", j + 1));
        }
        prefactor = prefactor * (xj.ln() * k).exp();
    }
    let series = match entry.classical {
        ClassicalForm::Gauss => {
            let z = ratio(xs[0] * xs[3], xs[1] * xs[2])?;
            gauss_2f1(param(values, "a")?, param(values, "b")?, param(values, "c")?, z)?
        }
        ClassicalForm::Square => {
            let z = Complex::<T>::one() - ratio(xs[0] * xs[3], xs[1] * xs[2])?;
            gauss_2f1(param(values, "a")?, param(values, "b")?, param(values, "c")?, z)?
        }
        ClassicalForm::LauricellaFc { m } => {
            let den = xs[0] * xs[m + 1];
            let ys = (1..=m).map(|i| ratio(xs[i] * xs[m + 1 + i], den)).collect::<Result<Vec<_>, _>>()?;
            let a = entry.parameter_names.first().map(|s| param(values, s)).transpose()?;
            let b = entry.parameter_names.get(1).map(|s| param(values, s)).transpose()?;
            let (a, b) = (a.expect("F_C entries name a"), b.expect("F_C entries name b"));
            let cs = entry.parameter_names[2..].iter().map(|s| param(values, s)).collect::<Result<Vec<_>, _>>()?;
            if m == 2 {
                appell_f4(a, b, cs[0], cs[1], ys[0], ys[1])?
            } else {
                lauricella_fc(a, b, &cs, &ys)?
            }
        }
        ClassicalForm::None => unreachable!("entries without a series carry no κ"),
    };
    Ok(EvaluationResult { value: prefactor * series, error_estimate: T::zero(), converged: true, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::catalog;
    use crate::scalar::rel_diff;
    use num_complex::Complex64;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gauss_at_unit_prefactor() {
        let e = catalog("gauss").unwrap();
        let vals = e.classical_values(&[r(0.3), r(0.5), r(1.7)]).unwrap();
        let v = classical_solution(&e, &vals, &CoefficientVector::from_real(&[1.0, 1.0, 1.0, 0.25])).unwrap();
        assert!(rel_diff(v.value, gauss_2f1(r(0.3), r(0.5), r(1.7), r(0.25)).unwrap()) < 1e-15);
    }

    #[test]
    fn f4_at_unit_prefactor() {
        let e = catalog("appell_f4").unwrap();
        let vals = e.classical_values(&[r(0.3), r(0.75), r(1.35), r(1.6)]).unwrap();
        let f = appell_f4(r(0.3), r(0.75), r(1.35), r(1.6), r(0.1), r(-0.2)).unwrap();
        let v = classical_solution(&e, &vals, &CoefficientVector::from_real(&[1.0, 1.0, 1.0, 1.0, 0.1, -0.2])).unwrap();
        assert!(rel_diff(v.value, f) < 1e-15);
        assert!(v.warnings.is_empty());
        // with the arguments placed in x2, x3 the prefactor x2^{c-1} x3^{c'-1} survives
        let v = classical_solution(&e, &vals, &CoefficientVector::from_real(&[1.0, 0.1, -0.2, 1.0, 1.0, 1.0])).unwrap();
        let pre = r(0.1).powf(0.35) * r(-0.2).powc(r(0.6));
        assert!(rel_diff(v.value, pre * f) < 1e-14);
        assert!(v.warnings.iter().any(|w| w.contains("x3")));
    }

    #[test]
    fn zero_denominator() {
        let e = catalog("gauss").unwrap();
        let vals = e.classical_values(&[r(0.3), r(0.5), r(1.7)]).unwrap();
        let err = classical_solution(&e, &vals, &CoefficientVector::from_real(&[1.0, 0.0, 1.0, 0.25])).unwrap_err();
        assert!(matches!(err, EvalError::OutOfDomain(_)));
        let e = catalog("quadric").unwrap();
        let vals = e.classical_values(&[r(0.3), r(0.5)]).unwrap();
        assert!(classical_solution(&e, &vals, &CoefficientVector::from_real(&[1.0, 1.0, 1.0])).is_err());
    }
}
