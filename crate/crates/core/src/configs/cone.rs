//! Facets of the cone `R₊A`, nonresonance, and bounded saturation checks.

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::{generalized_cross, IntMatrix};
use super::{compute_xi, ConfigError, ParameterVector, PointConfiguration};
use crate::scalar::Real;

const MAX_FACET_COLUMNS: usize = 24;

/// Primitive inward normals of the facets of the cone spanned by the columns of `a`,
/// found by exhaustive search over `(d-1)`-subsets of columns. Sorted and deduplicated.
pub fn facet_normals(a: &IntMatrix) -> Result<Vec<Vec<i64>>, ConfigError> {
    let d = a.nrows();
    let n = a.ncols();
    if n > MAX_FACET_COLUMNS {
        return Err(ConfigError::TooLarge { n, limit: MAX_FACET_COLUMNS });
    }
    if a.rank() != d {
        return Err(ConfigError::DegenerateCone);
    }
    let cols: Vec<Vec<i64>> = (0..n).map(|j| a.col(j)).collect();
    let mut normals = BTreeSet::new();
    if d == 1 {
        let sign = if cols.iter().all(|c| c[0] >= 0) {
            1
        } else if cols.iter().all(|c| c[0] <= 0) {
            -1
        } else {
            return Err(ConfigError::DegenerateCone);
        };
        normals.insert(vec![sign]);
        return Ok(normals.into_iter().collect());
    }
    for subset in combinations(n, d - 1) {
        let rows = IntMatrix::from_rows(&subset.iter().map(|&j| cols[j].clone()).collect::<Vec<_>>())?;
        if rows.rank() != d - 1 {
            continue;
        }
        let mut nu = generalized_cross(&rows);
        let pairings: Vec<i64> = cols.iter().map(|c| dot(&nu, c)).collect();
        let pos = pairings.iter().any(|&p| p > 0);
        let neg = pairings.iter().any(|&p| p < 0);
        if pos && neg {
            continue;
        }
        if neg {
            nu.iter_mut().for_each(|x| *x = -*x);
        }
        if !pos && !neg {
            // every column on the hyperplane: not full-dimensional
            return Err(ConfigError::DegenerateCone);
        }
        normals.insert(nu);
    }
    if normals.is_empty() {
        return Err(ConfigError::DegenerateCone);
    }
    Ok(normals.into_iter().collect())
}

/// Columns that are vertices of `conv(A)`: those lying on `d-1` independent facets.
pub fn vertex_columns(config: &PointConfiguration) -> Result<Vec<bool>, ConfigError> {
    let normals = config.facet_normals()?;
    let d = config.d();
    Ok((0..config.n())
        .map(|j| {
            let a = config.column(j);
            let tight: Vec<Vec<i64>> = normals.iter().filter(|nu| dot(nu, &a) == 0).cloned().collect();
            if d == 1 {
                return true;
            }
            !tight.is_empty() && IntMatrix::from_rows(&tight).map(|m| m.rank() == d - 1).unwrap_or(false)
        })
        .collect())
}

/// True iff `⟨ν, β⟩ ∉ Z` for every primitive facet normal ν, with a tolerance of `1e-9`
/// to the nearest integer on floating-point input.
pub fn is_nonresonant<T: Real>(config: &PointConfiguration, beta: &ParameterVector<T>) -> bool {
    let Ok(normals) = config.facet_normals() else {
        return false;
    };
    let tol = T::c(1e-9);
    normals.iter().all(|nu| {
        let s = nu
            .iter()
            .zip(beta.as_slice())
            .fold(num_complex::Complex::new(T::zero(), T::zero()), |acc, (&k, b)| acc + b * T::from_int(k));
        let integral = s.im.abs() <= tol && (s.re - s.re.round()).abs() <= tol;
        !integral
    })
}

/// Exact variant for rational parameters.
pub fn is_nonresonant_exact(config: &PointConfiguration, beta: &[BigRational]) -> bool {
    let Ok(normals) = config.facet_normals() else {
        return false;
    };
    normals.iter().all(|nu| {
        let s =
            nu.iter().zip(beta).fold(BigRational::zero(), |acc, (&k, b)| acc + b * BigRational::from_integer(k.into()));
        !s.is_integer()
    })
}

/// Bounded saturation check: enumerates lattice points of `R₊A` of ξ-degree `1..=bound`
/// and returns the first one not in `NA`.
pub fn find_saturation_gap(a: &IntMatrix, degree_bound: u32) -> Result<Option<Vec<i64>>, ConfigError> {
    let xi = compute_xi(a)?.entries;
    let normals = facet_normals(a)?;
    let d = a.nrows();
    let n = a.ncols();
    let cols: Vec<Vec<i64>> = (0..n).map(|j| a.col(j)).collect();
    let lo: Vec<i64> = (0..d).map(|i| cols.iter().map(|c| c[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|i| cols.iter().map(|c| c[i]).max().unwrap()).collect();

    let mut layer: HashSet<Vec<i64>> = HashSet::from([vec![0; d]]);
    for k in 1..=degree_bound as i64 {
        layer = layer
            .iter()
            .flat_map(|p| cols.iter().map(move |c| p.iter().zip(c).map(|(x, y)| x + y).collect()))
            .collect();
        // the degree-k slice of the cone is k·conv(A), inside the box k·[lo, hi]
        let mut point: Vec<i64> = lo.iter().map(|&l| k * l).collect();
        loop {
            if dot(&xi, &point) == k && normals.iter().all(|nu| dot(nu, &point) >= 0) && !layer.contains(&point) {
                return Ok(Some(point));
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                if point[i] < k * hi[i] {
                    point[i] += 1;
                    break;
                }
                point[i] = k * lo[i];
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    Ok(None)
}

/// `true` when no saturation gap exists up to the given ξ-degree.
pub fn is_saturated_up_to(a: &IntMatrix, degree_bound: u32) -> Result<bool, ConfigError> {
    Ok(find_saturation_gap(a, degree_bound)?.is_none())
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
