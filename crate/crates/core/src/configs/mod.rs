//! Point configurations `A ∈ Z^{d×n}`: validation, the grading vector ξ, block standard
//! forms, cone facets, nonresonance and saturation checks, and the catalog of classical
//! configurations.

mod affine;
mod catalog;
mod cone;
mod lattice;
mod matrix;
mod standard;
mod vectors;

pub use affine::AffineExpr;
pub use catalog::{catalog, catalog_names, CatalogEntry, ClassicalForm};
pub use cone::{
    facet_normals, find_saturation_gap, is_nonresonant, is_nonresonant_exact, is_saturated_up_to, vertex_columns,
};
pub use lattice::{column_hermite_form, complete_to_unimodular, smith_normal_form, HermiteForm, SmithForm};
pub use matrix::IntMatrix;
pub use standard::{int_mat_vec, to_standard_form, StandardForm};
pub use vectors::{CoefficientVector, ParameterVector};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use matrix::{rational_to_i64, solve_unique_rational, to_rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix has rank {rank} but {d} rows")]
    NotFullRank { rank: usize, d: usize },
    #[error("columns do not span Z^d: Smith invariant factors {factors:?}")]
    LatticeNotSpanned { factors: Vec<i64> },
    #[error("the all-ones vector is not in the rowspan (no integer ξ with ξA = 1)")]
    NoXi,
    #[error("no block standard form with {m} blocks exists")]
    NoSuchBlockStructure { m: usize },
    #[error("cone over the columns is not full-dimensional")]
    DegenerateCone,
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("configuration has {n} columns; the limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("bad parameter expression: {0}")]
    Expression(String),
}

/// The grading vector ξ with `ξ·A = (1, …, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiVector {
    pub entries: Vec<i64>,
    /// Set when some entry is negative; the configuration is still accepted.
    pub has_negative: bool,
}

/// An integer matrix whose columns span `Z^d`, of full row rank, with an integer ξ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    matrix: IntMatrix,
    xi: XiVector,
    /// Index of the column lattice in `Z^d`; 1 for fully validated configurations.
    lattice_index: i64,
}

impl PointConfiguration {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn d(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn xi(&self) -> &[i64] {
        &self.xi.entries
    }

    pub fn xi_vector(&self) -> &XiVector {
        &self.xi
    }

    pub fn lattice_index(&self) -> i64 {
        self.lattice_index
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.matrix.col(j)
    }

    pub fn facet_normals(&self) -> Result<Vec<Vec<i64>>, ConfigError> {
        facet_normals(&self.matrix)
    }

    /// Lexicographically first maximal set of linearly independent columns.
    pub fn column_basis(&self) -> Vec<usize> {
        let mut chosen = Vec::new();
        for j in 0..self.n() {
            let mut trial = chosen.clone();
            trial.push(j);
            if self.matrix.select_cols(&trial).rank() == trial.len() {
                chosen = trial;
            }
            if chosen.len() == self.d() {
                break;
            }
        }
        chosen
    }
}

/// Validates a raw matrix and returns the certified configuration.
pub fn validate_configuration(raw: &IntMatrix) -> Result<PointConfiguration, ConfigError> {
    check_shape(raw)?;
    let sf = smith_normal_form(raw);
    if sf.rank() != raw.nrows() {
        return Err(ConfigError::NotFullRank { rank: sf.rank(), d: raw.nrows() });
    }
    let factors = sf.invariant_factors();
    if factors.iter().any(|&f| f != 1) {
        return Err(ConfigError::LatticeNotSpanned { factors });
    }
    let xi = compute_xi(raw)?;
    Ok(PointConfiguration { matrix: raw.clone(), xi, lattice_index: 1 })
}

/// Like [`validate_configuration`] but accepts columns spanning a proper sublattice.
/// Rank and the existence of an integer ξ are still required.
pub fn validate_configuration_allowing_sublattice(raw: &IntMatrix) -> Result<PointConfiguration, ConfigError> {
    check_shape(raw)?;
    let d = raw.nrows();
    let sf = smith_normal_form(raw);
    if sf.rank() != d {
        return Err(ConfigError::NotFullRank { rank: sf.rank(), d });
    }
    let xi = compute_xi(raw)?;
    let lattice_index = sf.invariant_factors().iter().product();
    Ok(PointConfiguration { matrix: raw.clone(), xi, lattice_index })
}

fn check_shape(raw: &IntMatrix) -> Result<(), ConfigError> {
    let d = raw.nrows();
    let n = raw.ncols();
    if d == 0 || n < d {
        return Err(ConfigError::Malformed(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    Ok(())
}

/// The unique ξ with `ξ·A = (1, …, 1)`, computed in exact rational arithmetic.
pub fn compute_xi(a: &IntMatrix) -> Result<XiVector, ConfigError> {
    let at = to_rational(&a.transpose());
    let ones = vec![BigRational::from_integer(BigInt::from(1)); a.ncols()];
    let sol = solve_unique_rational(&at, &ones).ok_or(ConfigError::NoXi)?;
    let entries = sol.iter().map(rational_to_i64).collect::<Option<Vec<_>>>().ok_or(ConfigError::NoXi)?;
    let has_negative = entries.iter().any(|&x| x < 0);
    Ok(XiVector { entries, has_negative })
}

/// Kernel lattice basis of `A` over `Z` (columns of `V` past the rank in `U·A·V = S`).
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let sf = smith_normal_form(a);
    (sf.rank()..a.ncols()).map(|j| sf.v.col(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn gauss_matrix_is_valid() {
        let a = m(&[&[1, 0, 0, -1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let c = validate_configuration(&a).unwrap();
        assert_eq!(c.xi(), &[1, 1, 1]);
        assert!(!c.xi_vector().has_negative);
    }

    #[test]
    fn quadric_xi() {
        let c = validate_configuration(&m(&[&[1, 1, 1], &[0, 1, 2]])).unwrap();
        assert_eq!(c.xi(), &[1, 0]);
    }

    #[test]
    fn sublattice_rejected() {
        let err = validate_configuration(&m(&[&[2, 0], &[0, 2]])).unwrap_err();
        assert_eq!(err, ConfigError::LatticeNotSpanned { factors: vec![2, 2] });
    }

    #[test]
    fn rank_deficient_rejected() {
        let err = validate_configuration(&m(&[&[1, 1, 1], &[2, 2, 2]])).unwrap_err();
        assert!(matches!(err, ConfigError::NotFullRank { rank: 1, d: 2 }));
    }

    #[test]
    fn missing_xi_rejected() {
        // columns (1,0), (0,1), (1,1): ξ would need ξ1 = ξ2 = 1 and ξ1 + ξ2 = 1
        let err = validate_configuration(&m(&[&[1, 0, 1], &[0, 1, 1]])).unwrap_err();
        assert_eq!(err, ConfigError::NoXi);
    }

    #[test]
    fn xi_examples() {
        let sq = m(&[&[1, 1, 1, 1], &[0, 0, 1, 1], &[0, 1, 0, 1]]);
        assert_eq!(compute_xi(&sq).unwrap().entries, vec![1, 0, 0]);
        assert_eq!(compute_xi(&IntMatrix::identity(2)).unwrap().entries, vec![1, 1]);
    }

    #[test]
    fn negative_xi_is_flagged() {
        // columns (1,0), (2,1): ξ = (1, -1)
        let xi = compute_xi(&m(&[&[1, 2], &[0, 1]])).unwrap();
        assert_eq!(xi.entries, vec![1, -1]);
        assert!(xi.has_negative);
    }

    #[test]
    fn xi_transforms_under_unimodular_rows() {
        let a = m(&[&[1, 0, 0, -1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let u = m(&[&[1, 2, 0], &[0, 1, 0], &[3, 1, 1]]);
        assert!(u.is_unimodular());
        let xi = compute_xi(&a).unwrap().entries;
        let xi2 = compute_xi(&u.mul(&a).unwrap()).unwrap().entries;
        let uinv = u.unimodular_inverse().unwrap();
        assert_eq!(xi2, uinv.vec_mul(&xi));
    }

    #[test]
    fn kernel_of_gauss() {
        let a = m(&[&[1, 0, 0, -1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(a.mul_vec(&k[0]), vec![0, 0, 0]);
        let k0 = &k[0];
        assert!(k0 == &[1, -1, -1, 1] || k0 == &[-1, 1, 1, -1]);
    }
}
