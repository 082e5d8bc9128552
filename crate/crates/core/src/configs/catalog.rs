//! Classical configurations with their parameter dictionaries.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::solve_unique_rational;
use super::{validate_configuration, AffineExpr, ConfigError, IntMatrix, ParameterVector, PointConfiguration};
use crate::scalar::Real;

const MAX_CATALOG_INDEX: usize = 6;

/// Which classical series (and argument substitution) the prefactored solution uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalForm {
    /// `x^κ ₂F₁(a, b; c; x₁x₄/(x₂x₃))`
    Gauss,
    /// `x^κ ₂F₁(a, b; c; 1 − x₁x₄/(x₂x₃))`
    Square,
    /// `x^κ F_C(a, b; c₁…c_m; y)` with `y_i = x_{1+i} x_{m+2+i} / (x₁ x_{m+2})`
    LauricellaFc { m: usize },
    /// No classical series attached.
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub config: PointConfiguration,
    /// Classical parameter names, in the order the series evaluators take them.
    pub parameter_names: Vec<String>,
    /// `β_i` as affine expressions in the classical parameters.
    pub beta: Vec<AffineExpr>,
    /// Exponents of the monomial prefactor `x^κ`, with `Aκ = β`.
    pub kappa: Option<Vec<AffineExpr>>,
    pub prefactor: String,
    pub classical: ClassicalForm,
}

impl CatalogEntry {
    fn new(
        name: &str,
        matrix: IntMatrix,
        parameter_names: &[&str],
        kappa: Option<Vec<AffineExpr>>,
        beta: Option<Vec<AffineExpr>>,
        prefactor: &str,
        classical: ClassicalForm,
    ) -> Result<Self, ConfigError> {
        let config = validate_configuration(&matrix)?;
        let beta = match (beta, &kappa) {
            (Some(b), _) => b,
            (None, Some(k)) => (0..matrix.nrows())
                .map(|i| {
                    matrix
                        .row(i)
                        .iter()
                        .zip(k)
                        .fold(AffineExpr::default(), |acc, (&a, e)| acc.plus(&e.clone().scaled(a)))
                })
                .collect(),
            (None, None) => return Err(ConfigError::Expression("entry without β".into())),
        };
        Ok(CatalogEntry {
            name: name.to_string(),
            config,
            parameter_names: parameter_names.iter().map(|s| s.to_string()).collect(),
            beta,
            kappa,
            prefactor: prefactor.to_string(),
            classical,
        })
    }

    /// β from numeric values of the classical parameters.
    pub fn beta_from_classical<T: Real>(
        &self,
        values: &BTreeMap<String, Complex<T>>,
    ) -> Result<ParameterVector<T>, ConfigError> {
        let entries = self.beta.iter().map(|e| e.evaluate(values)).collect::<Result<_, _>>()?;
        Ok(ParameterVector::new(entries))
    }

    /// Classical parameters in `parameter_names` order.
    pub fn classical_values<T: Real>(
        &self,
        values: &[Complex<T>],
    ) -> Result<BTreeMap<String, Complex<T>>, ConfigError> {
        if values.len() != self.parameter_names.len() {
            return Err(ConfigError::DimensionMismatch { expected: self.parameter_names.len(), found: values.len() });
        }
        Ok(self.parameter_names.iter().cloned().zip(values.iter().copied()).collect())
    }

    /// Inverts the affine map from classical parameters to β.
    pub fn classical_from_beta<T: Real>(
        &self,
        beta: &ParameterVector<T>,
    ) -> Result<BTreeMap<String, Complex<T>>, ConfigError> {
        let d = self.beta.len();
        if beta.len() != d {
            return Err(ConfigError::DimensionMismatch { expected: d, found: beta.len() });
        }
        let inverse = self.left_inverse()?;
        let shifted: Vec<Complex<T>> = self
            .beta
            .iter()
            .zip(beta.as_slice())
            .map(|(e, b)| b - T::c(e.constant_term().to_f64().unwrap_or(f64::NAN)))
            .collect();
        Ok(self
            .parameter_names
            .iter()
            .zip(&inverse)
            .map(|(name, row)| {
                let v = row.iter().zip(&shifted).fold(Complex::new(T::zero(), T::zero()), |acc, (q, s)| {
                    acc + s * T::c(q.to_f64().unwrap_or(f64::NAN))
                });
                (name.clone(), v)
            })
            .collect())
    }

    /// Exact map on classical parameters induced by `β ↦ Tβ`: entry `p` of the result
    /// expresses the new value of `parameter_names[p]` in the old parameters.
    pub fn parameter_map(&self, t: &IntMatrix) -> Result<Vec<AffineExpr>, ConfigError> {
        let d = self.beta.len();
        if t.nrows() != d || t.ncols() != d {
            return Err(ConfigError::DimensionMismatch { expected: d, found: t.nrows() });
        }
        let inverse = self.left_inverse()?;
        let t_beta: Vec<AffineExpr> = (0..d)
            .map(|i| {
                t.row(i)
                    .iter()
                    .zip(&self.beta)
                    .fold(AffineExpr::default(), |acc, (&k, e)| acc.plus(&e.clone().scaled(k)))
            })
            .collect();
        Ok(inverse
            .iter()
            .map(|row| {
                row.iter().zip(t_beta.iter().zip(&self.beta)).fold(AffineExpr::default(), |acc, (q, (tb, b))| {
                    let shifted = tb.clone().plus(&AffineExpr::rational_constant(-b.constant_term().clone()));
                    acc.plus(&shifted.scaled_by(q))
                })
            })
            .collect())
    }

    /// Rows `p` with `Σ_i row[i]·(β_i − const_i) = parameter p`.
    fn left_inverse(&self) -> Result<Vec<Vec<BigRational>>, ConfigError> {
        let d = self.beta.len();
        let k = self.parameter_names.len();
        let lin: Vec<Vec<BigRational>> =
            self.beta.iter().map(|e| self.parameter_names.iter().map(|p| e.coefficient(p)).collect()).collect();
        let mut inverse = vec![vec![BigRational::zero(); d]; k];
        for i in 0..d {
            let mut unit = vec![BigRational::zero(); d];
            unit[i] = BigRational::one();
            let col = solve_unique_rational(&lin, &unit)
                .ok_or_else(|| ConfigError::Expression("parameter map is not invertible".into()))?;
            for p in 0..k {
                inverse[p][i] = col[p].clone();
            }
        }
        Ok(inverse)
    }

    pub fn kappa_values<T: Real>(
        &self,
        values: &BTreeMap<String, Complex<T>>,
    ) -> Result<Option<Vec<Complex<T>>>, ConfigError> {
        self.kappa.as_ref().map(|k| k.iter().map(|e| e.evaluate(values)).collect()).transpose()
    }
}

pub fn catalog_names() -> Vec<String> {
    ["gauss", "quadric", "square", "lauricella_fc(2)", "lauricella_fc(3)", "appell_f4", "pfq(2)", "pfq(3)"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn parse_indexed(name: &str, prefix: &str) -> Option<Result<usize, ConfigError>> {
    let rest = name.strip_prefix(prefix)?;
    let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    Some(match inner.trim().parse::<usize>() {
        Ok(k) if (1..=MAX_CATALOG_INDEX).contains(&k) => Ok(k),
        _ => Err(ConfigError::UnknownName(name.to_string())),
    })
}

fn var(s: &str) -> AffineExpr {
    AffineExpr::variable(s)
}

fn expr(s: &str) -> AffineExpr {
    s.parse().expect("catalog expression")
}

fn exprs(names: &[&str]) -> Vec<AffineExpr> {
    names.iter().map(|s| var(s)).collect()
}

pub fn catalog(name: &str) -> Result<CatalogEntry, ConfigError> {
    let name = name.trim();
    match name {
        "gauss" => CatalogEntry::new(
            "gauss",
            IntMatrix::from_rows(&[[1, 0, 0, -1], [0, 1, 0, 1], [0, 0, 1, 1]])?,
            &["a", "b", "c"],
            Some(vec![expr("c-1"), expr("-a"), expr("-b"), AffineExpr::constant(0)]),
            None,
            "x1^(c-1) x2^(-a) x3^(-b) 2F1(a,b;c; x1*x4/(x2*x3))",
            ClassicalForm::Gauss,
        ),
        "quadric" => CatalogEntry::new(
            "quadric",
            IntMatrix::from_rows(&[[1, 1, 1], [0, 1, 2]])?,
            &["beta1", "beta2"],
            None,
            Some(exprs(&["beta1", "beta2"])),
            "none",
            ClassicalForm::None,
        ),
        "square" => CatalogEntry::new(
            "square",
            IntMatrix::from_rows(&[[1, 1, 1, 1], [0, 0, 1, 1], [0, 1, 0, 1]])?,
            &["a", "b", "c"],
            Some(vec![expr("a+b-c"), expr("-b"), expr("-a"), AffineExpr::constant(0)]),
            None,
            "x1^(a+b-c) x2^(-b) x3^(-a) 2F1(a,b;c; 1 - x1*x4/(x2*x3))",
            ClassicalForm::Square,
        ),
        "appell_f4" => {
            let mut e = lauricella_fc(2, &["a", "b", "c", "c'"])?;
            e.name = "appell_f4".into();
            e.prefactor = "x2^(c-1) x3^(c'-1) x1^(-a) x4^(-b) F4(a,b;c,c'; x2*x5/(x1*x4), x3*x6/(x1*x4))".into();
            Ok(e)
        }
        _ => {
            if let Some(m) = parse_indexed(name, "lauricella_fc") {
                let m = m?;
                let mut names: Vec<String> = vec!["a".into(), "b".into()];
                names.extend((1..=m).map(|i| format!("c{i}")));
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                return lauricella_fc(m, &refs);
            }
            if let Some(p) = parse_indexed(name, "pfq") {
                return pfq(p?);
            }
            Err(ConfigError::UnknownName(name.to_string()))
        }
    }
}

/// `(m+2) × (2m+2)` matrix `[[1, 1, 1, 1], [1, 1, 0, 0], [0, I, 0, -I]]` (blocks of widths
/// 1, m, 1, m). `names` = `a, b, c₁, …, c_m`.
fn lauricella_fc(m: usize, names: &[&str]) -> Result<CatalogEntry, ConfigError> {
    let d = m + 2;
    let n = 2 * m + 2;
    let mut rows = vec![vec![0i64; n]; d];
    rows[0].iter_mut().for_each(|x| *x = 1);
    rows[1][..=m].iter_mut().for_each(|x| *x = 1);
    for i in 0..m {
        rows[2 + i][1 + i] = 1;
        rows[2 + i][m + 2 + i] = -1;
    }
    let mut kappa = vec![AffineExpr::constant(0); n];
    kappa[0] = AffineExpr::term(names[0], -1);
    kappa[m + 1] = AffineExpr::term(names[1], -1);
    for i in 0..m {
        kappa[1 + i] = var(names[2 + i]).plus(&AffineExpr::constant(-1));
    }
    let ys: Vec<String> = (1..=m).map(|i| format!("x{}*x{}/(x1*x{})", 1 + i, m + 2 + i, m + 2)).collect();
    let prefactor = format!("x^kappa FC(a,b;c1..c{m}; {})", ys.join(", "));
    CatalogEntry::new(
        &format!("lauricella_fc({m})"),
        IntMatrix::from_rows(&rows)?,
        names,
        Some(kappa),
        None,
        &prefactor,
        ClassicalForm::LauricellaFc { m },
    )
}

/// `(2p-1) × 2p`: identity plus a column of `p` ones and `p-1` minus ones, so that the
/// kernel is spanned by `(1, …, 1, -1, …, -1)`.
fn pfq(p: usize) -> Result<CatalogEntry, ConfigError> {
    let d = 2 * p - 1;
    let mut rows = vec![vec![0i64; d + 1]; d];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 1;
        row[d] = if i < p { 1 } else { -1 };
    }
    let names: Vec<String> = (1..=d).map(|i| format!("beta{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    CatalogEntry::new(
        &format!("pfq({p})"),
        IntMatrix::from_rows(&rows)?,
        &refs,
        None,
        Some(exprs(&refs)),
        "none",
        ClassicalForm::None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn gauss_entry() {
        let e = catalog("gauss").unwrap();
        assert_eq!(e.config.matrix().to_rows(), vec![vec![1, 0, 0, -1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]);
        let shown: Vec<String> = e.beta.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["c-1", "-a", "-b"]);
    }

    #[test]
    fn appell_matches_fc2() {
        let f4 = catalog("appell_f4").unwrap();
        let fc = catalog("lauricella_fc(2)").unwrap();
        assert_eq!(f4.config, fc.config);
        assert_eq!(
            f4.config.matrix().to_rows(),
            vec![vec![1, 1, 1, 1, 1, 1], vec![1, 1, 1, 0, 0, 0], vec![0, 1, 0, 0, -1, 0], vec![0, 0, 1, 0, 0, -1],]
        );
        let kappa: Vec<String> = f4.kappa.unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(kappa, ["-a", "c-1", "c'-1", "-b", "0", "0"]);
    }

    #[test]
    fn square_entry() {
        let e = catalog("square").unwrap();
        assert_eq!(e.config.matrix().to_rows(), vec![vec![1, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]]);
        let shown: Vec<String> = e.beta.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["-c", "-a", "-b"]);
    }

    #[test]
    fn pfq_kernel() {
        let e = catalog("pfq(3)").unwrap();
        let a = e.config.matrix();
        assert_eq!((a.nrows(), a.ncols()), (5, 6));
        assert_eq!(a.mul_vec(&[1, 1, 1, -1, -1, -1]), vec![0; 5]);
        assert_eq!(e.config.xi(), &[1; 5]);
    }

    #[test]
    fn unknown_names() {
        for bad in ["nope", "lauricella_fc(0)", "pfq(x)", "lauricella_fc(99)"] {
            assert!(matches!(catalog(bad), Err(ConfigError::UnknownName(_))), "{bad}");
        }
        for good in catalog_names() {
            catalog(&good).unwrap();
        }
    }

    #[test]
    fn f4_parameter_map() {
        let e = catalog("appell_f4").unwrap();
        let t = IntMatrix::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [-1, 2, -1, -1]]).unwrap();
        let map: Vec<String> = e.parameter_map(&t).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(map, ["b-c'+1", "b", "c", "-a+b+1"]);
        let id: Vec<String> =
            e.parameter_map(&IntMatrix::identity(4)).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(id, ["a", "b", "c", "c'"]);
    }

    #[test]
    fn classical_round_trip() {
        for name in ["gauss", "square", "appell_f4", "lauricella_fc(3)"] {
            let e = catalog(name).unwrap();
            let vals: Vec<Complex64> =
                (0..e.parameter_names.len()).map(|i| Complex64::new(0.3 + 0.17 * i as f64, 0.05)).collect();
            let map = e.classical_values(&vals).unwrap();
            let beta = e.beta_from_classical(&map).unwrap();
            let back = e.classical_from_beta(&beta).unwrap();
            for (k, v) in &map {
                assert!((back[k] - v).norm() < 1e-14, "{name} {k}");
            }
        }
    }
}
