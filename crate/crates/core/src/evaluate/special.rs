//! Factorial-type products and the complex log-gamma function.

use num_complex::Complex;
use num_traits::Zero;

use super::EvalError;
use crate::scalar::Real;

/// Descending factorial `α(α-1)⋯(α-k+1)`.
pub fn falling_factorial<T: Real>(alpha: Complex<T>, k: u32) -> Complex<T> {
    (0..k).fold(Complex::new(T::one(), T::zero()), |acc, j| acc * (alpha - T::from_int(i64::from(j))))
}

/// Rising Pochhammer symbol `a(a+1)⋯(a+k-1)`.
pub fn rising_pochhammer<T: Real>(a: Complex<T>, k: u32) -> Complex<T> {
    (0..k).fold(Complex::new(T::one(), T::zero()), |acc, j| acc * (a + T::from_int(i64::from(j))))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// True when `z` is `0, -1, -2, …` up to rounding.
pub fn is_nonpositive_integer<T: Real>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round()
}

/// A logarithm of `Γ(z)` (Lanczos, `g = 7`, with reflection for `Re z < 1/2`). The
/// imaginary part is not normalized to the principal branch of `log Γ`; only `exp` of the
/// result and differences up to `2πi` multiples are meaningful.
pub fn log_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>, EvalError> {
    if is_nonpositive_integer(z) {
        return Err(EvalError::PoleInGamma(format!("{z}")));
    }
    let half = T::c(0.5);
    if z.re < half {
        let pi = T::PI();
        let s = (z * pi).sin();
        if s.is_zero() {
            return Err(EvalError::PoleInGamma(format!("{z}")));
        }
        let reflected = log_gamma(Complex::new(T::one(), T::zero()) - z)?;
        return Ok(Complex::new(pi.ln(), T::zero()) - s.ln() - reflected);
    }
    let z = z - T::one();
    let mut x = Complex::new(T::c(LANCZOS[0]), T::zero());
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x = x + Complex::new(T::c(p), T::zero()) / (z + T::from_int(i as i64));
    }
    let t = z + T::c(LANCZOS_G) + half;
    let ln_sqrt_2pi = T::c(0.918_938_533_204_672_8);
    Ok(t.ln() * (z + half) - t + x.ln() + ln_sqrt_2pi)
}

pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>, EvalError> {
    Ok(log_gamma(z)?.exp())
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta<T: Real>(a: Complex<T>, b: Complex<T>) -> Result<Complex<T>, EvalError> {
    Ok((log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rel_diff;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factorial_conventions() {
        let a = c(0.3, -1.2);
        assert_eq!(falling_factorial(a, 0), c(1.0, 0.0));
        assert_eq!(rising_pochhammer(a, 0), c(1.0, 0.0));
        assert_eq!(rising_pochhammer(c(1.0, 0.0), 5), c(120.0, 0.0));
        assert_eq!(falling_factorial(c(5.0, 0.0), 3), c(60.0, 0.0));
        let lhs = falling_factorial(a, 7);
        let rhs = rising_pochhammer(-a, 7) * -1.0;
        assert!(rel_diff(lhs, rhs) < 1e-14);
    }

    #[test]
    fn gamma_values() {
        // integers and half-integers
        assert!(rel_diff(gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0)) < 1e-13);
        assert!(rel_diff(gamma(c(0.5, 0.0)).unwrap(), c(std::f64::consts::PI.sqrt(), 0.0)) < 1e-13);
        assert!(rel_diff(gamma(c(-0.5, 0.0)).unwrap(), c(-2.0 * std::f64::consts::PI.sqrt(), 0.0)) < 1e-13);
        // Γ(1+i) from mpmath: 0.498015668118356 - 0.154949828301811i
        let g = gamma(c(1.0, 1.0)).unwrap();
        assert!(rel_diff(g, c(0.498_015_668_118_356, -0.154_949_828_301_811)) < 1e-13);
        // Γ(0.3+2.5i), mpmath
        let g = gamma(c(0.3, 2.5)).unwrap();
        assert!(rel_diff(g, c(0.035_831_884_984_150_13, -0.020_264_814_365_175_003)) < 1e-12, "{g}");
        assert!(matches!(log_gamma(c(-2.0, 0.0)), Err(EvalError::PoleInGamma(_))));
    }

    #[test]
    fn beta_function() {
        // B(0.5, 1.2), mpmath
        let b = beta(c(0.5, 0.0), c(1.2, 0.0)).unwrap();
        assert!(rel_diff(b, c(1.791_043_749_738_867_6, 0.0)) < 1e-13, "{b}");
    }
}
