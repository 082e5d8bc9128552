//! Block standard form `U·A` whose first `m` rows are 0/1 indicators of a partition of
//! the columns, followed by the `r = d - m` rows of dehomogenized exponents.

use super::lattice::complete_to_unimodular;
use super::matrix::IntMatrix;
use super::{ConfigError, PointConfiguration};
use crate::scalar::RingScalar;

const MAX_BLOCK_SEARCH_COLUMNS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    base: PointConfiguration,
    unimodular: IntMatrix,
    m: usize,
    blocks: Vec<Vec<usize>>,
    transformed: IntMatrix,
}

impl StandardForm {
    /// Wraps an explicit unimodular `U`, checking that the first `m` rows of `U·A` are the
    /// indicators of a partition of the columns.
    pub fn from_unimodular(base: &PointConfiguration, unimodular: IntMatrix, m: usize) -> Result<Self, ConfigError> {
        let d = base.d();
        if unimodular.nrows() != d || !unimodular.is_square() {
            return Err(ConfigError::DimensionMismatch { expected: d, found: unimodular.nrows() });
        }
        if !unimodular.is_unimodular() || m == 0 || m > d {
            return Err(ConfigError::NoSuchBlockStructure { m });
        }
        let transformed = unimodular.mul(base.matrix())?;
        let mut blocks = vec![Vec::new(); m];
        for j in 0..base.n() {
            let col = transformed.col(j);
            let ones: Vec<usize> = (0..m).filter(|&i| col[i] == 1).collect();
            let zeros = (0..m).filter(|&i| col[i] == 0).count();
            if ones.len() != 1 || zeros != m - 1 {
                return Err(ConfigError::NoSuchBlockStructure { m });
            }
            blocks[ones[0]].push(j);
        }
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(ConfigError::NoSuchBlockStructure { m });
        }
        Ok(StandardForm { base: base.clone(), unimodular, m, blocks, transformed })
    }

    pub fn base(&self) -> &PointConfiguration {
        &self.base
    }

    pub fn unimodular(&self) -> &IntMatrix {
        &self.unimodular
    }

    pub fn transformed(&self) -> &IntMatrix {
        &self.transformed
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.base.d() - self.m
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Index of the block containing column `j`.
    pub fn block_of(&self, j: usize) -> usize {
        (0..self.m).find(|&i| self.transformed[(i, j)] == 1).expect("column belongs to a block")
    }

    /// The exponent `a_j ∈ Z^r` of column `j` in the dehomogenized variables `w`.
    pub fn exponent(&self, j: usize) -> Vec<i64> {
        (self.m..self.base.d()).map(|i| self.transformed[(i, j)]).collect()
    }

    pub fn exponents(&self) -> Vec<Vec<i64>> {
        (0..self.base.n()).map(|j| self.exponent(j)).collect()
    }

    /// Parameters in the transformed coordinates, `U·β`.
    pub fn transform_parameters<S: RingScalar>(&self, beta: &[S]) -> Vec<S> {
        int_mat_vec(&self.unimodular, beta)
    }

    /// Inverse of [`transform_parameters`](Self::transform_parameters).
    pub fn untransform_parameters<S: RingScalar>(&self, beta_std: &[S]) -> Vec<S> {
        let inv = self.unimodular.unimodular_inverse().expect("unimodular");
        int_mat_vec(&inv, beta_std)
    }
}

/// `M·v` for an integer matrix acting on any ring.
pub fn int_mat_vec<S: RingScalar>(m: &IntMatrix, v: &[S]) -> Vec<S> {
    assert_eq!(m.ncols(), v.len());
    (0..m.nrows())
        .map(|i| {
            m.row(i).iter().zip(v).fold(
                S::zero(),
                |acc, (&k, x)| {
                    if k == 0 {
                        acc
                    } else {
                        acc + S::from_integer(k) * x.clone()
                    }
                },
            )
        })
        .collect()
}

/// Rewrites the configuration in block standard form with `m` blocks.
///
/// For `m = 1` the first row of `U` is ξ, completed to a unimodular matrix through the
/// column Hermite form. For `m > 1` the lexicographically first partition of the columns
/// into `m` blocks whose indicators lie in the integer rowspan (and extend to a
/// unimodular matrix) is used.
pub fn to_standard_form(config: &PointConfiguration, m: usize) -> Result<StandardForm, ConfigError> {
    let d = config.d();
    let n = config.n();
    if m == 0 || m > d {
        return Err(ConfigError::NoSuchBlockStructure { m });
    }
    if m == 1 {
        let xi = IntMatrix::from_rows(&[config.xi().to_vec()])?;
        let u = complete_to_unimodular(&xi).ok_or(ConfigError::NoSuchBlockStructure { m })?;
        return StandardForm::from_unimodular(config, u, 1);
    }
    if n > MAX_BLOCK_SEARCH_COLUMNS {
        return Err(ConfigError::TooLarge { n, limit: MAX_BLOCK_SEARCH_COLUMNS });
    }

    let a = config.matrix();
    let basis = config.column_basis();
    let ab = a.select_cols(&basis);
    let det = ab.det();
    let adj = ab.adjugate();

    // indicator rows 1_S = y·A with integer y; y = (1_S)_B · A_B^{-1}
    let mut candidates: Vec<(Vec<usize>, Vec<i64>)> = Vec::new();
    for mask in 1u32..(1u32 << n) - 1 {
        let ind: Vec<i64> = (0..n).map(|j| i64::from(mask >> j & 1 == 1)).collect();
        let ib: Vec<i64> = basis.iter().map(|&j| ind[j]).collect();
        let scaled = adj.vec_mul(&ib);
        if scaled.iter().any(|x| x % det != 0) {
            continue;
        }
        let y: Vec<i64> = scaled.iter().map(|x| x / det).collect();
        if a.vec_mul(&y) == ind {
            let cols: Vec<usize> = (0..n).filter(|&j| ind[j] == 1).collect();
            candidates.push((cols, y));
        }
    }
    candidates.sort();

    let mut chosen: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    if let Some(u) = search_partition(&candidates, m, &mut chosen, &mut used) {
        return StandardForm::from_unimodular(config, u, m);
    }
    Err(ConfigError::NoSuchBlockStructure { m })
}

fn search_partition(
    candidates: &[(Vec<usize>, Vec<i64>)],
    m: usize,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
) -> Option<IntMatrix> {
    let Some(first_free) = used.iter().position(|&u| !u) else {
        if chosen.len() != m {
            return None;
        }
        let rows: Vec<Vec<i64>> = chosen.iter().map(|&k| candidates[k].1.clone()).collect();
        return complete_to_unimodular(&IntMatrix::from_rows(&rows).ok()?);
    };
    if chosen.len() == m {
        return None;
    }
    for (k, (cols, _)) in candidates.iter().enumerate() {
        if cols[0] != first_free || cols.iter().any(|&j| used[j]) {
            continue;
        }
        cols.iter().for_each(|&j| used[j] = true);
        chosen.push(k);
        if let Some(u) = search_partition(candidates, m, chosen, used) {
            return Some(u);
        }
        chosen.pop();
        cols.iter().for_each(|&j| used[j] = false);
    }
    None
}
