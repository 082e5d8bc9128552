//! Sample grids and the toric kernel.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifyError;
use crate::configs::{integer_kernel, CatalogEntry, PointConfiguration};
use crate::{Coefficients, Params};

/// Basis of `ker_Z(A)`, each vector with its first nonzero entry positive and content one.
pub fn kernel_basis(config: &PointConfiguration) -> Vec<Vec<i64>> {
    integer_kernel(config.matrix())
        .into_iter()
        .map(|mut v| {
            let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
            if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            v
        })
        .collect()
}

/// `k = u − v` with `u, v ≥ 0` of disjoint support.
pub fn split_kernel_vector(k: &[i64]) -> (Vec<u32>, Vec<u32>) {
    let part = |sign: i64| k.iter().map(|&x| u32::try_from((x * sign).max(0)).expect("small entry")).collect();
    (part(1), part(-1))
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SampleGrid {
    pub points: Vec<(Params, Coefficients)>,
}

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl SampleGrid {
    pub fn new(points: Vec<(Params, Coefficients)>) -> Self {
        SampleGrid { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Square configuration: classical `(a, b, c)` away from integers and positive `x`
    /// with `|1 − x₁x₄/(x₂x₃)| ≤ 0.35`.
    pub fn square_classical(entry: &CatalogEntry, count: usize, seed: u64) -> Result<Self, VerifyError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(count);
        for _ in 0..count {
            let vals = [rng.gen_range(0.1..0.9), rng.gen_range(0.2..1.1), rng.gen_range(1.3..2.2)].map(r);
            let beta = entry.beta_from_classical(&entry.classical_values(&vals)?)?;
            let (x1, x2, x3) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
            let z: f64 = rng.gen_range(-0.35..0.35);
            let x4 = (1.0 - z) * x2 * x3 / x1;
            points.push((beta, Coefficients::from_real(&[x1, x2, x3, x4])));
        }
        Ok(SampleGrid { points })
    }

    /// Gauss configuration: `x₁x₄/(x₂x₃) ∈ (0, 0.4)`, positive `x`.
    pub fn gauss_classical(entry: &CatalogEntry, count: usize, seed: u64) -> Result<Self, VerifyError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(count);
        for _ in 0..count {
            let vals = [rng.gen_range(0.1..0.9), rng.gen_range(0.2..1.1), rng.gen_range(1.3..2.2)].map(r);
            let beta = entry.beta_from_classical(&entry.classical_values(&vals)?)?;
            let (x1, x2, x3) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
            let z: f64 = rng.gen_range(0.02..0.4);
            points.push((beta, Coefficients::from_real(&[x1, x2, x3, z * x2 * x3 / x1])));
        }
        Ok(SampleGrid { points })
    }

    /// Quadric at a fixed `β`, positive `x` with `x₂² < 4x₁x₃`.
    pub fn quadric_positive(beta: [f64; 2], count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..count)
            .map(|_| {
                let x1: f64 = rng.gen_range(0.5..3.0);
                let x3: f64 = rng.gen_range(0.5..3.0);
                let x2 = rng.gen_range(0.05..0.95) * 2.0 * (x1 * x3).sqrt();
                (Params::from_real(&beta), Coefficients::from_real(&[x1, x2, x3]))
            })
            .collect();
        SampleGrid { points }
    }

    /// Default classical grid for a catalog entry, where one is known to be safe.
    pub fn classical_for(entry: &CatalogEntry, count: usize, seed: u64) -> Result<Self, VerifyError> {
        match entry.name.as_str() {
            "square" => Self::square_classical(entry, count, seed),
            "gauss" => Self::gauss_classical(entry, count, seed),
            other => Err(VerifyError::InvalidGrid(format!("no default classical grid for `{other}`"))),
        }
    }

    pub fn check_dimensions(&self, config: &PointConfiguration) -> Result<(), VerifyError> {
        for (i, (b, x)) in self.points.iter().enumerate() {
            if b.len() != config.d() || x.len() != config.n() {
                return Err(VerifyError::InvalidGrid(format!("point {i} has the wrong dimensions")));
            }
        }
        if self.points.is_empty() {
            return Err(VerifyError::InvalidGrid("empty grid".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::catalog;

    #[test]
    fn kernels_of_classical_configs() {
        assert_eq!(kernel_basis(&catalog("gauss").unwrap().config), vec![vec![1, -1, -1, 1]]);
        assert_eq!(kernel_basis(&catalog("quadric").unwrap().config), vec![vec![1, -2, 1]]);
        assert_eq!(kernel_basis(&catalog("pfq(3)").unwrap().config), vec![vec![1, 1, 1, -1, -1, -1]]);
        let (u, v) = split_kernel_vector(&[1, -2, 1]);
        assert_eq!((u, v), (vec![1, 0, 1], vec![0, 2, 0]));
    }

    #[test]
    fn grids_are_deterministic() {
        let e = catalog("square").unwrap();
        let g1 = SampleGrid::square_classical(&e, 5, 7).unwrap();
        let g2 = SampleGrid::square_classical(&e, 5, 7).unwrap();
        assert_eq!(g1, g2);
        g1.check_dimensions(&e.config).unwrap();
        let q = SampleGrid::quadric_positive([-0.6, -0.35], 4, 1);
        for (_, x) in &q.points {
            let x = x.as_slice();
            assert!(x[1].re * x[1].re < 4.0 * x[0].re * x[2].re);
        }
    }
}
