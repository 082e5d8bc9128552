//! Transformations of A-hypergeometric functions induced by polytope symmetries and by
//! elementary shifts of a dehomogenized variable.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::configs::{int_mat_vec, CoefficientVector, IntMatrix, ParameterVector, PointConfiguration, StandardForm};
use crate::scalar::{Real, RingScalar};
use crate::symmetry::{compose, inverse, PolytopeSymmetry, SymmetryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shift of w{variable} produces the exponent {exponent:?}, which is not a column")]
    LeavesConfiguration { variable: usize, exponent: Vec<i64> },
    #[error("parameter {value} is not the negative integer -{expected}")]
    NotNegativeInteger { value: String, expected: u32 },
    #[error("elementary shifts need a single-block standard form, got m = {0}")]
    NotDehomogenized(usize),
    #[error("variable index {index} out of range for r = {r}")]
    VariableOutOfRange { index: usize, r: usize },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// The action `(β, x) ↦ (Tβ, x·P⁻¹)` with Jacobian scale `det T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearTransformation {
    symmetry: PolytopeSymmetry,
    scale: i64,
}

impl LinearTransformation {
    pub fn symmetry(&self) -> &PolytopeSymmetry {
        &self.symmetry
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn inverse(&self) -> LinearTransformation {
        induced_transformation(&inverse(&self.symmetry))
    }

    /// Applying the result equals applying `other` first, then `self`.
    pub fn after(&self, other: &LinearTransformation) -> Result<LinearTransformation, TransformError> {
        Ok(induced_transformation(&compose(&self.symmetry, &other.symmetry)?))
    }

    /// Exact action on any ring.
    pub fn apply_generic<S: RingScalar>(&self, beta: &[S], x: &[S]) -> Result<(Vec<S>, Vec<S>), TransformError> {
        let (d, n) = (self.symmetry.d(), self.symmetry.n());
        if beta.len() != d {
            return Err(TransformError::DimensionMismatch { expected: d, found: beta.len() });
        }
        if x.len() != n {
            return Err(TransformError::DimensionMismatch { expected: n, found: x.len() });
        }
        let beta_new = int_mat_vec(self.symmetry.t(), beta);
        // (x·P⁻¹)_k = x_j where perm[j] = k
        let mut x_new = vec![S::zero(); n];
        for (j, &k) in self.symmetry.perm().iter().enumerate() {
            x_new[k] = x[j].clone();
        }
        Ok((beta_new, x_new))
    }
}

pub fn induced_transformation(s: &PolytopeSymmetry) -> LinearTransformation {
    LinearTransformation { symmetry: s.clone(), scale: s.det_sign() }
}

pub fn apply<T: Real>(
    tr: &LinearTransformation,
    beta: &ParameterVector<T>,
    x: &CoefficientVector<T>,
) -> Result<(ParameterVector<T>, CoefficientVector<T>), TransformError> {
    let (b, y) = tr.apply_generic(beta.as_slice(), x.as_slice())?;
    Ok((ParameterVector::new(b), CoefficientVector::new(y)))
}

/// `x ↦ x·P` read literally, `(x·P)_j = x_{perm[j]}`. Agrees with [`apply`] exactly when
/// the permutation is an involution.
pub fn permute_literal<S: Clone>(s: &PolytopeSymmetry, x: &[S]) -> Vec<S> {
    s.perm().iter().map(|&k| x[k].clone()).collect()
}

/// Exponent vectors `t_i` of the torus map `z_i ↦ z^{t_i}`; these are the columns of `T`,
/// so that `φ(z)^{a} = z^{T·a}`.
pub fn monomial_torus_map(config: &PointConfiguration, s: &PolytopeSymmetry) -> Result<Vec<Vec<i64>>, TransformError> {
    if s.d() != config.d() {
        return Err(TransformError::DimensionMismatch { expected: config.d(), found: s.d() });
    }
    Ok((0..s.d()).map(|i| s.t().col(i)).collect())
}

/// Pullback of `f` under `w_i ↦ w_i + t` on the dehomogenized variables of a single-block
/// standard form: `f(x; w + t·e_i) = f(x·M; w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementaryAutomorphism<S> {
    variable_index: usize,
    shift: S,
    matrix: Vec<Vec<S>>,
}

impl<S: RingScalar> ElementaryAutomorphism<S> {
    /// 0-based index into the dehomogenized variables `w_1 … w_r`.
    pub fn variable_index(&self) -> usize {
        self.variable_index
    }

    pub fn shift(&self) -> &S {
        &self.shift
    }

    /// `M` as rows, `n × n`.
    pub fn matrix(&self) -> &[Vec<S>] {
        &self.matrix
    }

    /// `x ↦ x·M`.
    pub fn pull_back(&self, x: &[S]) -> Vec<S> {
        let n = self.matrix.len();
        (0..n).map(|l| (0..n).fold(S::zero(), |acc, j| acc + x[j].clone() * self.matrix[j][l].clone())).collect()
    }
}

pub fn elementary_pullback<S: RingScalar>(
    sf: &StandardForm,
    variable_index: usize,
    t: S,
) -> Result<ElementaryAutomorphism<S>, TransformError> {
    if sf.m() != 1 {
        return Err(TransformError::NotDehomogenized(sf.m()));
    }
    let r = sf.r();
    if variable_index >= r {
        return Err(TransformError::VariableOutOfRange { index: variable_index, r });
    }
    let exps = sf.exponents();
    let n = exps.len();
    let mut matrix = vec![vec![S::zero(); n]; n];
    for (j, e) in exps.iter().enumerate() {
        let power = e[variable_index];
        if power < 0 {
            return Err(TransformError::LeavesConfiguration { variable: variable_index, exponent: e.clone() });
        }
        // (w_i + t)^p = Σ_k C(p, k) t^{p-k} w_i^k
        for k in 0..=power {
            let mut target = e.clone();
            target[variable_index] = k;
            let l = exps.iter().position(|c| *c == target).ok_or_else(|| TransformError::LeavesConfiguration {
                variable: variable_index,
                exponent: target.clone(),
            })?;
            let coeff = S::from_integer(binomial_i64(power, k)) * ring_pow(&t, (power - k) as u32);
            matrix[j][l] = matrix[j][l].clone() + coeff;
        }
    }
    Ok(ElementaryAutomorphism { variable_index, shift: t, matrix })
}

fn binomial_i64(n: i64, k: i64) -> i64 {
    num_integer::binomial(BigInt::from(n), BigInt::from(k)).to_i64().expect("binomial fits in i64")
}

fn ring_pow<S: RingScalar>(t: &S, e: u32) -> S {
    (0..e).fold(S::one(), |acc, _| acc * t.clone())
}

/// One summand `C(N-1, K) · t^{N-1-K} · F(β_K; x·M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialTerm<T: Real> {
    pub k: u32,
    /// `C(N-1, K)`, exact.
    pub binomial: BigInt,
    /// Exponent of the shift `t` in the coefficient.
    pub t_power: u32,
    pub coefficient: Complex<T>,
    pub beta: ParameterVector<T>,
    pub x: CoefficientVector<T>,
}

/// Finite-sum identity `F(β; x) = Σ_K C(N-1, K) t^{N-1-K} F(β_K; x·M)` obtained from the
/// shift `w_i ↦ w_i + t` when the dehomogenized exponent `β'_{1+i}` equals `-N`.
///
/// With the toric measure, `w_i^{N} dw_i/w_i = w_i^{N-1} dw_i`; expanding `(u + t)^{N-1}`
/// and writing `u^K du = u^{K+1} du/u` gives `β'_{1+i} = -(K+1)` in term `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialIdentity<T: Real> {
    pub variable_index: usize,
    pub n: u32,
    pub shift: Complex<T>,
    pub lhs_beta: ParameterVector<T>,
    pub lhs_x: CoefficientVector<T>,
    pub terms: Vec<BinomialTerm<T>>,
    pub notes: Vec<String>,
}

pub fn binomial_expansion_identity<T: Real>(
    sf: &StandardForm,
    ea: &ElementaryAutomorphism<Complex<T>>,
    beta: &ParameterVector<T>,
    x: &CoefficientVector<T>,
    n: u32,
) -> Result<BinomialIdentity<T>, TransformError> {
    let d = sf.base().d();
    if beta.len() != d {
        return Err(TransformError::DimensionMismatch { expected: d, found: beta.len() });
    }
    if x.len() != sf.base().n() {
        return Err(TransformError::DimensionMismatch { expected: sf.base().n(), found: x.len() });
    }
    if n == 0 {
        return Err(TransformError::NotNegativeInteger { value: "0".into(), expected: 0 });
    }
    let i = ea.variable_index();
    let beta_std = sf.transform_parameters(beta.as_slice());
    let slot = sf.m() + i;
    let target = Complex::new(-T::from_int(i64::from(n)), T::zero());
    if (beta_std[slot] - target).norm() > T::c(1e-12) {
        return Err(TransformError::NotNegativeInteger { value: format!("{}", beta_std[slot]), expected: n });
    }
    let x_new = CoefficientVector::new(ea.pull_back(x.as_slice()));
    let t = *ea.shift();
    let terms = (0..n)
        .map(|k| {
            let binomial = num_integer::binomial(BigInt::from(n - 1), BigInt::from(k));
            let t_power = n - 1 - k;
            let b = T::c(binomial.to_f64().expect("finite"));
            let coefficient = ring_pow(&t, t_power) * b;
            let mut shifted = beta_std.clone();
            shifted[slot] = Complex::new(-T::from_int(i64::from(k) + 1), T::zero());
            BinomialTerm {
                k,
                binomial,
                t_power,
                coefficient,
                beta: ParameterVector::new(sf.untransform_parameters(&shifted)),
                x: x_new.clone(),
            }
        })
        .collect();
    let notes = vec![format!(
        "terms K = 0..{} carry dehomogenized exponent -(K+1) for w{}; the alternative form with parameter 1-K \
         corresponds to exponent K-1, which differs by 2 and makes the K = 0, 1 terms non-integrable on the real line",
        n - 1,
        i + 1
    )];
    Ok(BinomialIdentity { variable_index: i, n, shift: t, lhs_beta: beta.clone(), lhs_x: x.clone(), terms, notes })
}

/// `T` and the permutation matrix of a symmetry, for reporting.
pub fn symmetry_matrices(s: &PolytopeSymmetry) -> (IntMatrix, IntMatrix) {
    (s.t().clone(), s.permutation_matrix())
}

impl<T: Real> BinomialIdentity<T> {
    /// `Σ coefficient_K · value_K`.
    pub fn combine(&self, values: &[Complex<T>]) -> Complex<T> {
        self.terms.iter().zip(values).fold(Complex::zero(), |acc, (term, v)| acc + term.coefficient * v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{catalog, to_standard_form, validate_configuration_allowing_sublattice};
    use crate::symmetry::solve_t_for_permutation;
    use num_complex::Complex64;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn square_pair(perm: &[usize]) -> LinearTransformation {
        let c = catalog("square").unwrap().config;
        induced_transformation(&solve_t_for_permutation(&c, perm).unwrap())
    }

    #[test]
    fn square_reference_actions() {
        let tr2 = square_pair(&[2, 3, 0, 1]);
        assert_eq!(tr2.scale(), -1);
        let beta = [q(5), q(7), q(11)];
        let x = [q(1), q(2), q(3), q(4)];
        let (b, y) = tr2.apply_generic(&beta, &x).unwrap();
        assert_eq!(b, vec![q(5), q(-2), q(11)]);
        assert_eq!(y, vec![q(3), q(4), q(1), q(2)]);

        let tr1 = square_pair(&[0, 2, 1, 3]);
        let (b, y) = tr1.apply_generic(&beta, &x).unwrap();
        assert_eq!(b, vec![q(5), q(11), q(7)]);
        assert_eq!(y, vec![q(1), q(3), q(2), q(4)]);
    }

    #[test]
    fn quadric_reversal_action() {
        let c = catalog("quadric").unwrap().config;
        let tr = induced_transformation(&solve_t_for_permutation(&c, &[2, 1, 0]).unwrap());
        assert_eq!(tr.scale(), -1);
        let (b, y) = tr.apply_generic(&[q(3), q(5)], &[q(1), q(2), q(3)]).unwrap();
        assert_eq!(b, vec![q(3), q(1)]);
        assert_eq!(y, vec![q(3), q(2), q(1)]);
        let s = solve_t_for_permutation(&c, &[2, 1, 0]).unwrap();
        assert_eq!(monomial_torus_map(&c, &s).unwrap(), vec![vec![1, 2], vec![0, -1]]);
    }

    #[test]
    fn inverse_undoes_apply() {
        let tr = square_pair(&[0, 2, 1, 3]).after(&square_pair(&[2, 3, 0, 1])).unwrap();
        let beta = [q(1), q(-3), q(4)];
        let x = [q(2), q(3), q(5), q(7)];
        let (b, y) = tr.apply_generic(&beta, &x).unwrap();
        let (b2, y2) = tr.inverse().apply_generic(&b, &y).unwrap();
        assert_eq!(b2, beta.to_vec());
        assert_eq!(y2, x.to_vec());
    }

    #[test]
    fn composite_applies_right_factor_first() {
        let tr1 = square_pair(&[0, 2, 1, 3]);
        let tr2 = square_pair(&[2, 3, 0, 1]);
        let beta = [q(1), q(-3), q(4)];
        let x = [q(2), q(3), q(5), q(7)];
        let (b, y) = tr2.apply_generic(&beta, &x).unwrap();
        let sequential = tr1.apply_generic(&b, &y).unwrap();
        let direct = tr1.after(&tr2).unwrap().apply_generic(&beta, &x).unwrap();
        assert_eq!(sequential, direct);
    }

    #[test]
    fn literal_permutation_differs_for_order_four() {
        let tr = square_pair(&[0, 2, 1, 3]).after(&square_pair(&[2, 3, 0, 1])).unwrap();
        assert_eq!(tr.symmetry().order(), 4);
        let x = [q(2), q(3), q(5), q(7)];
        let (_, y) = tr.apply_generic(&[q(0), q(0), q(0)], &x).unwrap();
        assert_ne!(permute_literal(tr.symmetry(), &x), y);
    }

    #[test]
    fn quadric_shift() {
        let sf = to_standard_form(&catalog("quadric").unwrap().config, 1).unwrap();
        let ea = elementary_pullback(&sf, 0, q(1)).unwrap();
        let x = [q(2), q(3), q(5)];
        assert_eq!(ea.pull_back(&x), vec![q(10), q(13), q(5)]);
        let id = elementary_pullback(&sf, 0, q(0)).unwrap();
        assert_eq!(id.pull_back(&x), x.to_vec());
    }

    #[test]
    fn square_shift() {
        let sf = to_standard_form(&catalog("square").unwrap().config, 1).unwrap();
        assert_eq!(sf.exponents(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        // w2 multiplies x2 and x4
        let ea = elementary_pullback(&sf, 1, q(1)).unwrap();
        assert_eq!(ea.pull_back(&[q(1), q(2), q(3), q(4)]), vec![q(3), q(2), q(7), q(4)]);
    }

    #[test]
    fn shift_leaving_configuration() {
        let raw = IntMatrix::from_rows(&[[1, 1], [0, 2]]).unwrap();
        let c = validate_configuration_allowing_sublattice(&raw).unwrap();
        let sf = to_standard_form(&c, 1).unwrap();
        let err = elementary_pullback(&sf, 0, q(1)).unwrap_err();
        assert!(matches!(err, TransformError::LeavesConfiguration { .. }));
    }

    #[test]
    fn one_parameter_group() {
        let sf = to_standard_form(&catalog("quadric").unwrap().config, 1).unwrap();
        let t = BigRational::new(3.into(), 7.into());
        let s = BigRational::new((-5).into(), 2.into());
        let mt = elementary_pullback(&sf, 0, t.clone()).unwrap();
        let ms = elementary_pullback(&sf, 0, s.clone()).unwrap();
        let mts = elementary_pullback(&sf, 0, t + s).unwrap();
        let x = [q(2), q(-3), q(5)];
        assert_eq!(ms.pull_back(&mt.pull_back(&x)), mts.pull_back(&x));
    }

    #[test]
    fn binomial_terms() {
        let sf = to_standard_form(&catalog("quadric").unwrap().config, 1).unwrap();
        let ea = elementary_pullback(&sf, 0, Complex64::new(1.0, 0.0)).unwrap();
        let beta = ParameterVector::from_real(&[-2.2, -3.0]);
        let x = CoefficientVector::from_real(&[3.0, 1.0, 2.0]);
        let id = binomial_expansion_identity(&sf, &ea, &beta, &x, 3).unwrap();
        assert_eq!(id.terms.len(), 3);
        let binoms: Vec<i64> = id.terms.iter().map(|t| t.binomial.to_i64().unwrap()).collect();
        assert_eq!(binoms, vec![1, 2, 1]);
        assert_eq!(id.terms[2].beta[1], Complex64::new(-3.0, 0.0));
        assert_eq!(id.terms[0].beta[1], Complex64::new(-1.0, 0.0));
        assert_eq!(id.terms[0].x.as_slice(), &[6.0, 5.0, 2.0].map(|v| Complex64::new(v, 0.0)));
        assert!(binomial_expansion_identity(&sf, &ea, &beta, &x, 2).is_err());
    }
}
