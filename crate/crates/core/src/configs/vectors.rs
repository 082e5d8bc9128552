use num_complex::Complex;

use super::{ConfigError, PointConfiguration};
use crate::scalar::Real;

/// Complex parameter vector β ∈ C^d.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector<T: Real> {
    entries: Vec<Complex<T>>,
}

/// Coefficient vector x ∈ C^n of the polynomial `f(z) = Σ x_j z^{a_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T: Real> {
    entries: Vec<Complex<T>>,
}

macro_rules! complex_vector {
    ($name:ident, $dim:ident) => {
        impl<T: Real> $name<T> {
            pub fn new(entries: Vec<Complex<T>>) -> Self {
                Self { entries }
            }

            pub fn from_real(entries: &[T]) -> Self {
                Self { entries: entries.iter().map(|&r| Complex::new(r, T::zero())).collect() }
            }

            /// Checks the length against the configuration.
            pub fn for_config(config: &PointConfiguration, entries: Vec<Complex<T>>) -> Result<Self, ConfigError> {
                if entries.len() != config.$dim() {
                    return Err(ConfigError::DimensionMismatch { expected: config.$dim(), found: entries.len() });
                }
                Ok(Self { entries })
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn as_slice(&self) -> &[Complex<T>] {
                &self.entries
            }

            pub fn into_inner(self) -> Vec<Complex<T>> {
                self.entries
            }
        }

        impl<T: Real> std::ops::Index<usize> for $name<T> {
            type Output = Complex<T>;
            fn index(&self, i: usize) -> &Complex<T> {
                &self.entries[i]
            }
        }
    };
}

complex_vector!(ParameterVector, d);
complex_vector!(CoefficientVector, n);

impl<T: Real> ParameterVector<T> {
    /// ⟨ξ, β⟩
    pub fn xi_pairing(&self, xi: &[i64]) -> Complex<T> {
        self.entries.iter().zip(xi).fold(Complex::new(T::zero(), T::zero()), |acc, (b, &k)| acc + b * T::from_int(k))
    }
}
