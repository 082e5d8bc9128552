//! Dense integer matrices and the exact linear algebra the lattice code needs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ConfigError;

/// Row-major dense matrix over `i64`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, ConfigError> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(ConfigError::Malformed("matrix has no rows".into()));
        }
        let ncols = rows[0].as_ref().len();
        if ncols == 0 {
            return Err(ConfigError::Malformed("matrix has no columns".into()));
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(ConfigError::Malformed(format!("row {} has {} entries, expected {}", i, r.len(), ncols)));
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix { rows: nrows, cols: ncols, data })
    }

    /// Square or rectangular matrix from a flat row-major buffer.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "buffer length does not match shape");
        IntMatrix { rows, cols, data }
    }

    /// Permutation matrix with `P[perm[j]][j] = 1`, i.e. column `j` of `A·P` is `a_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut p = Self::zeros(n, n);
        for (j, &pj) in perm.iter().enumerate() {
            p[(pj, j)] = 1;
        }
        p
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m[(k, j)] = self[(i, j)];
            }
        }
        m
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, ConfigError> {
        if self.cols != rhs.rows {
            return Err(ConfigError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Row vector times matrix: `v·M`.
    pub fn vec_mul(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols).map(|j| (0..self.rows).map(|i| v[i] * self[(i, j)]).sum()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return 0;
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflows i64")
    }

    pub fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != skip_row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != skip_col).collect();
        self.select_rows(&rows).select_cols(&cols)
    }

    /// Classical adjugate, so that `M·adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> IntMatrix {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return IntMatrix::identity(1);
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        adj
    }

    /// Inverse of a unimodular matrix; `None` when `|det| != 1`.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let mut adj = self.adjugate();
        if d == -1 {
            adj.data.iter_mut().for_each(|x| *x = -*x);
        }
        Some(adj)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs() == 1
    }

    pub fn rank(&self) -> usize {
        rational_row_echelon(&to_rational(self)).1.len()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += q * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += q * v;
        }
    }

    /// `col[dst] += q * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += q * v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = ConfigError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

pub(crate) fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.nrows()).map(|i| m.row(i).iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect()
}

/// Reduced row echelon form over the rationals; returns the reduced rows and the pivot columns.
pub(crate) fn rational_row_echelon(m: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (v, p) in a[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Solves `M·y = b` over the rationals. Returns `None` when inconsistent or when the
/// solution is not unique.
pub(crate) fn solve_unique_rational(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let unknowns = m.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rational_row_echelon(&aug);
    if pivots.contains(&unknowns) || pivots.len() != unknowns {
        return None;
    }
    Some((0..unknowns).map(|k| red[k][unknowns].clone()).collect())
}

pub(crate) fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub(crate) fn int_gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

pub(crate) fn primitive(v: &mut [i64]) {
    let g = v.iter().fold(0i64, |g, &x| int_gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Integer vector spanning the orthogonal complement of `d-1` independent rows in `Z^d`,
/// computed from signed maximal minors and reduced to a primitive vector.
pub(crate) fn generalized_cross(rows: &IntMatrix) -> Vec<i64> {
    let d = rows.ncols();
    assert_eq!(rows.nrows() + 1, d);
    let mut v: Vec<i64> = (0..d)
        .map(|k| {
            let cols: Vec<usize> = (0..d).filter(|&j| j != k).collect();
            let m = rows.select_cols(&cols).det();
            if k % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    primitive(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_rows(&[[2, -1, 0], [1, 3, 4], [0, 5, -2]]).unwrap();
        // cofactor expansion along the first row: 2·(−26) + 1·(−2)
        assert_eq!(m.det(), -54);
        assert_eq!(IntMatrix::identity(4).det(), 1);
        let singular = IntMatrix::from_rows(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(singular.det(), 0);
    }

    #[test]
    fn adjugate_identity() {
        let m = IntMatrix::from_rows(&[[1, 0, 0], [1, -1, 0], [0, 0, 1]]).unwrap();
        let prod = m.mul(&m.adjugate()).unwrap();
        let d = m.det();
        assert_eq!(prod, IntMatrix::diagonal(&[d, d, d]));
        let inv = m.unimodular_inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let rows = IntMatrix::from_rows(&[[1, 0, 0], [1, 1, 1]]).unwrap();
        let v = generalized_cross(&rows);
        assert_eq!(rows.mul_vec(&v), vec![0, 0]);
        assert_eq!(v.iter().map(|x| x.abs()).max(), Some(1));
    }
}
