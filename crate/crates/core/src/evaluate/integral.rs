//! Dehomogenized Euler-type integrals
//! `M(β; x) = ∫ Π_k w_k^{−β'_{m+k}} Π_i f_i(w)^{β'_i} dη` with `β' = Uβ`,
//! `f_i(w) = Σ_{j ∈ block i} x_j w^{a_j}` and `dη = Π dw_k / w_k`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};

use super::quadrature::integrate;
use super::special::falling_factorial;
use super::{Axis, EvalError, EvaluationResult, QuadratureSettings};
use crate::configs::{int_mat_vec, CoefficientVector, ParameterVector, StandardForm};
use crate::scalar::Real;

/// Largest real part of the log-integrand accepted before the integrand is declared
/// non-decaying.
const LOG_OVERFLOW: f64 = 700.0;
const SCAN_HALF_WIDTH: f64 = 12.0;
/// Beyond this stretched coordinate a rounding-level zero of `f` is treated as a zero
/// of the integrand.
const FAR_U: f64 = 30.0;

#[derive(Debug, Clone)]
struct Column<T: Real> {
    block: usize,
    exponent: Vec<T>,
    x: Complex<T>,
    log_abs_x: T,
}

/// `f_i = e^{scale}·normalized`, with the largest term of `normalized` of modulus one.
#[derive(Debug, Clone, Copy)]
pub struct BlockValue<T: Real> {
    pub scale: T,
    pub normalized: Complex<T>,
}

impl<T: Real> BlockValue<T> {
    pub fn ln(&self) -> Complex<T> {
        self.normalized.ln() + self.scale
    }
}

/// Prepared integrand for one `(β, x)`.
#[derive(Debug, Clone)]
pub struct Integrand<T: Real> {
    m: usize,
    r: usize,
    columns: Vec<Column<T>>,
    /// `β'_i`, `i < m`
    head: Vec<Complex<T>>,
    /// `−β'_{m+k}`
    tail: Vec<Complex<T>>,
}

impl<T: Real> Integrand<T> {
    pub fn new(sf: &StandardForm, beta: &ParameterVector<T>, x: &CoefficientVector<T>) -> Result<Self, EvalError> {
        let (d, n) = (sf.base().d(), sf.base().n());
        if beta.len() != d {
            return Err(EvalError::DimensionMismatch { expected: d, found: beta.len() });
        }
        if x.len() != n {
            return Err(EvalError::DimensionMismatch { expected: n, found: x.len() });
        }
        let bp = sf.transform_parameters(beta.as_slice());
        let m = sf.m();
        let columns = (0..n)
            .map(|j| Column {
                block: sf.block_of(j),
                exponent: sf.exponent(j).into_iter().map(T::from_int).collect(),
                x: x[j],
                log_abs_x: x[j].norm().ln(),
            })
            .collect();
        Ok(Integrand { m, r: sf.r(), columns, head: bp[..m].to_vec(), tail: bp[m..].iter().map(|b| -b).collect() })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `f_i(w)` for every block, from `log w`. `None` when a block has no nonzero
    /// coefficient.
    pub fn blocks(&self, log_w: &[Complex<T>]) -> Vec<Option<BlockValue<T>>> {
        let mut peak = vec![T::neg_infinity(); self.m];
        let exps: Vec<Complex<T>> = self
            .columns
            .iter()
            .map(|c| c.exponent.iter().zip(log_w).fold(Complex::zero(), |acc, (&a, &l)| acc + l * a))
            .collect();
        for (c, e) in self.columns.iter().zip(&exps) {
            if !c.x.is_zero() {
                peak[c.block] = peak[c.block].max(e.re + c.log_abs_x);
            }
        }
        let mut sums = vec![Complex::<T>::zero(); self.m];
        for (c, e) in self.columns.iter().zip(&exps) {
            if !c.x.is_zero() {
                let shift = peak[c.block] - c.log_abs_x;
                sums[c.block] = sums[c.block] + (*e - shift).exp() * (c.x / c.x.norm());
            }
        }
        peak.into_iter()
            .zip(sums)
            .map(|(p, s)| p.is_finite().then_some(BlockValue { scale: p, normalized: s }))
            .collect()
    }

    /// Logarithm of the integrand against `dη`. `Ok(None)` stands for an exact zero of
    /// the integrand, `Err(i)` for a vanishing `f_i` raised to a power with `Re ≤ 0`.
    pub fn log_value(&self, log_w: &[Complex<T>]) -> Result<Option<Complex<T>>, usize> {
        let mut acc = self.tail.iter().zip(log_w).fold(Complex::zero(), |acc, (&e, &l)| acc + e * l);
        let mut vanishes = false;
        for (i, (b, &h)) in self.blocks(log_w).into_iter().zip(&self.head).enumerate() {
            match b {
                Some(b) if !b.normalized.is_zero() => acc = acc + b.ln() * h,
                _ if h.re > T::zero() => vanishes = true,
                _ => return Err(i),
            }
        }
        Ok((!vanishes).then_some(acc))
    }
}

/// One parametrization branch of an axis at the parameter `s ∈ (−1, 1)`: `log w`, the log
/// Jacobian `ln(dη/ds)` and a sign.
#[derive(Debug, Clone, Copy)]
struct AxisPoint<T: Real> {
    /// stretched coordinate, `±∞` at the ends of the axis
    u: T,
    log_w: Complex<T>,
    log_jac: Complex<T>,
    sign: T,
}

fn ln1p_exp<T: Real>(u: T) -> T {
    // ln(1 + e^u) without overflow
    if u > T::zero() {
        u + (-u).exp().ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

/// `u = s/(1−s²)` and `ln(du/ds)`.
fn stretch<T: Real>(s: T) -> (T, T) {
    let one = T::one();
    let q = one - s * s;
    (s / q, ((one + s * s) / (q * q)).ln())
}

fn ray_from_u<T: Real>(u: T, phase: T, log_du: T) -> AxisPoint<T> {
    AxisPoint { u, log_w: Complex::new(u, phase), log_jac: Complex::new(log_du, T::zero()), sign: T::one() }
}

fn interval_from_u<T: Real>(u: T, log_du: T) -> AxisPoint<T> {
    // logistic w = 1/(1+e^{−u}); dw/w = (1−w) du
    let log_w = -ln1p_exp(-u);
    let log_one_minus_w = -ln1p_exp(u);
    AxisPoint {
        u,
        log_w: Complex::new(log_w, T::zero()),
        log_jac: Complex::new(log_one_minus_w + log_du, T::zero()),
        sign: T::one(),
    }
}

fn axis_points<T: Real>(axis: Axis, s: T) -> Vec<AxisPoint<T>> {
    let (u, log_du) = stretch(s);
    match axis {
        Axis::PositiveAxis { phase } => vec![ray_from_u(u, T::c(phase), log_du)],
        Axis::NegativeAxis => vec![ray_from_u(u, T::PI(), log_du)],
        Axis::RealLine => {
            let mut neg = ray_from_u(u, T::PI(), log_du);
            neg.sign = -T::one();
            vec![ray_from_u(u, T::zero(), log_du), neg]
        }
        Axis::UnitInterval => vec![interval_from_u(u, log_du)],
        Axis::UnitCircle => vec![AxisPoint {
            u: s,
            log_w: Complex::new(T::zero(), T::PI() * s),
            log_jac: Complex::new(T::PI().ln(), T::FRAC_PI_2()),
            sign: T::one(),
        }],
    }
}

/// Points used by the singularity scan, spread in the `u` coordinate.
fn scan_points<T: Real>(axis: Axis, count: usize) -> Vec<Vec<AxisPoint<T>>> {
    (0..count)
        .map(|k| {
            let t = T::from_int(k as i64) / T::from_int(count as i64 - 1);
            match axis {
                Axis::UnitCircle => axis_points(axis, T::c(-0.999) + t * T::c(1.998)),
                _ => {
                    let u = (t * T::c(2.0) - T::one()) * T::c(SCAN_HALF_WIDTH);
                    match axis {
                        Axis::PositiveAxis { phase } => vec![ray_from_u(u, T::c(phase), T::zero())],
                        Axis::NegativeAxis => vec![ray_from_u(u, T::PI(), T::zero())],
                        Axis::RealLine => vec![ray_from_u(u, T::zero(), T::zero()), ray_from_u(u, T::PI(), T::zero())],
                        _ => vec![interval_from_u(u, T::zero())],
                    }
                }
            }
        })
        .collect()
}

fn scan_resolution(r: usize) -> usize {
    match r {
        0 | 1 => 121,
        2 => 41,
        _ => 15,
    }
}

/// Looks for zeros of the `f_i` on the cycle (sign changes of real-valued `f_i`, or
/// near-cancellation) and for crossings of the principal branch cut.
fn scan_cycle<T: Real>(integrand: &Integrand<T>, cycle: &[Axis]) -> Result<Vec<String>, EvalError> {
    let r = cycle.len();
    let g = scan_resolution(r);
    let grids: Vec<Vec<Vec<AxisPoint<T>>>> = cycle.iter().map(|&a| scan_points(a, g)).collect();
    let branch_counts: Vec<usize> = grids.iter().map(|gr| gr[0].len()).collect();
    let total_branches: usize = branch_counts.iter().product();
    let mut warnings = Vec::new();
    let tiny = T::c(1e-9);
    let real_tol = T::c(1e-12);
    for branch in 0..total_branches {
        let mut rem = branch;
        let choice: Vec<usize> = branch_counts
            .iter()
            .map(|&c| {
                let v = rem % c;
                rem /= c;
                v
            })
            .collect();
        // walk along each axis with the others held on the grid
        for axis in 0..r {
            let others: Vec<usize> = (0..r).filter(|&k| k != axis).collect();
            let lines = g.pow(others.len() as u32);
            for line in 0..lines {
                let mut idx = vec![0usize; r];
                let mut rem = line;
                for &k in &others {
                    idx[k] = rem % g;
                    rem /= g;
                }
                let mut previous: Option<Vec<Option<BlockValue<T>>>> = None;
                for step in 0..g {
                    idx[axis] = step;
                    let log_w: Vec<Complex<T>> = (0..r).map(|k| grids[k][idx[k]][choice[k]].log_w).collect();
                    let blocks = integrand.blocks(&log_w);
                    for (i, b) in blocks.iter().enumerate() {
                        let Some(b) = b else {
                            return Err(EvalError::SingularOnCycle(format!("f{} has no terms", i + 1)));
                        };
                        if b.normalized.norm() < tiny {
                            return Err(EvalError::SingularOnCycle(format!(
                                "f{} nearly vanishes at w = exp({:?})",
                                i + 1,
                                log_w
                            )));
                        }
                        if let Some(prev) = previous.as_ref().and_then(|p| p[i]) {
                            let (p, q) = (prev.normalized, b.normalized);
                            let real_p = p.im.abs() <= real_tol * p.norm();
                            let real_q = q.im.abs() <= real_tol * q.norm();
                            if real_p && real_q && p.re * q.re < T::zero() {
                                return Err(EvalError::SingularOnCycle(format!(
                                    "f{} changes sign along axis {} of the cycle",
                                    i + 1,
                                    axis + 1
                                )));
                            }
                            if (q.arg() - p.arg()).abs() > T::PI() {
                                let msg =
                                    format!("f{} crosses the principal branch cut along axis {}", i + 1, axis + 1);
                                if !warnings.contains(&msg) {
                                    warnings.push(msg);
                                }
                            }
                        }
                    }
                    previous = Some(blocks);
                }
            }
        }
    }
    Ok(warnings)
}

fn check_dims(sf: &StandardForm, cycle: &[Axis], settings: &QuadratureSettings) -> Result<(), EvalError> {
    settings.validate()?;
    if cycle.len() != sf.r() {
        return Err(EvalError::DimensionMismatch { expected: sf.r(), found: cycle.len() });
    }
    Ok(())
}

fn integrate_level<T: Real>(
    integrand: &Integrand<T>,
    cycle: &[Axis],
    prefix: &[AxisPoint<T>],
    settings: &QuadratureSettings,
) -> Result<(Complex<T>, T), EvalError> {
    let level = prefix.len();
    if level == cycle.len() {
        let log_w: Vec<Complex<T>> = prefix.iter().map(|p| p.log_w).collect();
        let jac = prefix.iter().fold(Complex::zero(), |acc, p| acc + p.log_jac);
        let sign = prefix.iter().fold(T::one(), |acc, p| acc * p.sign);
        let lv = match integrand.log_value(&log_w) {
            Ok(Some(lv)) => lv,
            Ok(None) => return Ok((Complex::zero(), T::zero())),
            // a rounding-level zero at the far end of a mapped axis; the scan has already
            // excluded genuine zeros, and the measure there is negligible
            Err(_) if prefix.iter().any(|p| p.u.abs() > T::c(FAR_U)) => return Ok((Complex::zero(), T::zero())),
            Err(i) => return Err(EvalError::SingularOnCycle(format!("f{} vanishes at w = exp({log_w:?})", i + 1))),
        };
        let total = lv + jac;
        if total.re > T::c(LOG_OVERFLOW) {
            return Err(EvalError::NotConverged(format!(
                "integrand does not decay at w = exp({log_w:?}); exponents outside the convergent range"
            )));
        }
        return Ok((total.exp() * sign, T::zero()));
    }
    // inner axes are integrated a little tighter so their errors do not dominate
    let shrink = if level + 1 < cycle.len() { T::c(0.25) } else { T::one() };
    let rel = T::c(settings.rel_tol) * if level == 0 { T::one() } else { shrink };
    let abs = T::c(settings.abs_tol);
    let parallel = level == 0 && cycle.len() >= 2;
    let axis = cycle[level];
    let prefix_snapshot = prefix.to_vec();
    let f = |s: T| -> Result<(Complex<T>, T), EvalError> {
        let mut acc = Complex::zero();
        let mut err = T::zero();
        for point in axis_points(axis, s) {
            let mut p = prefix_snapshot.clone();
            p.push(point);
            let (v, e) = integrate_level(integrand, cycle, &p, settings)?;
            acc = acc + v;
            err = err + e;
        }
        Ok((acc, err))
    };
    let out = integrate(f, -T::one(), T::one(), rel, abs, settings.max_subdivisions, parallel)?;
    Ok((out.value, out.error))
}

fn run<T: Real>(
    integrand: &Integrand<T>,
    cycle: &[Axis],
    settings: &QuadratureSettings,
    mut warnings: Vec<String>,
) -> Result<EvaluationResult<T>, EvalError> {
    let (value, error) = integrate_level(integrand, cycle, &[], settings)?;
    let tol = (T::c(settings.rel_tol) * value.norm()).max(T::c(settings.abs_tol));
    let converged = error <= tol && value.re.is_finite() && value.im.is_finite();
    if !converged {
        warnings.push(format!("quadrature budget exhausted (error estimate {error})"));
    }
    Ok(EvaluationResult { value, error_estimate: error, converged, warnings })
}

/// `M(β; x)` over the product cycle, one axis per dehomogenized variable.
pub fn euler_integral<T: Real>(
    sf: &StandardForm,
    beta: &ParameterVector<T>,
    x: &CoefficientVector<T>,
    cycle: &[Axis],
    settings: &QuadratureSettings,
) -> Result<EvaluationResult<T>, EvalError> {
    check_dims(sf, cycle, settings)?;
    let integrand = Integrand::new(sf, beta, x)?;
    let warnings = scan_cycle(&integrand, cycle)?;
    run(&integrand, cycle, settings, warnings)
}

/// `∂^u M(β; x) = Π_i (β'_i)_{(UAu)_i} · M(β − Au; x)` with descending factorials.
pub fn derivative_integral<T: Real>(
    sf: &StandardForm,
    beta: &ParameterVector<T>,
    x: &CoefficientVector<T>,
    u: &[u32],
    cycle: &[Axis],
    settings: &QuadratureSettings,
) -> Result<EvaluationResult<T>, EvalError> {
    let n = sf.base().n();
    if u.len() != n {
        return Err(EvalError::DimensionMismatch { expected: n, found: u.len() });
    }
    if u.iter().all(|&k| k == 0) {
        return euler_integral(sf, beta, x, cycle, settings);
    }
    if beta.len() != sf.base().d() {
        return Err(EvalError::DimensionMismatch { expected: sf.base().d(), found: beta.len() });
    }
    let ui: Vec<i64> = u.iter().map(|&k| i64::from(k)).collect();
    let au = sf.base().matrix().mul_vec(&ui);
    let shifted: Vec<Complex<T>> = beta.as_slice().iter().zip(&au).map(|(b, &k)| b - T::from_int(k)).collect();
    let bp = sf.transform_parameters(beta.as_slice());
    let uau = int_mat_vec(sf.unimodular(), &au);
    let mut factor = Complex::<T>::one();
    for i in 0..sf.m() {
        let k = u32::try_from(uau[i]).expect("block degree of a nonnegative u is nonnegative");
        factor = factor * falling_factorial(bp[i], k);
    }
    let mut res = euler_integral(sf, &ParameterVector::new(shifted), x, cycle, settings)?;
    res.value = res.value * factor;
    res.error_estimate = res.error_estimate * factor.norm();
    Ok(res)
}

/// `K(β; τ)/(2πi)^m`: `1` for one block, and for nonnegative integer `β_head` the
/// coefficient of `z^β` in `(z₁ + ⋯ + z_m)^{|β|}`.
pub fn homogenization_constant<T: Real>(m: usize, beta_head: &[Complex<T>]) -> Result<Complex<T>, EvalError> {
    if beta_head.len() != m {
        return Err(EvalError::DimensionMismatch { expected: m, found: beta_head.len() });
    }
    if m == 1 {
        return Ok(Complex::one());
    }
    let mut ks = Vec::with_capacity(m);
    for b in beta_head {
        let k = b.re.round();
        let integral = b.im.abs() <= T::c(1e-12) && (b.re - k).abs() <= T::c(1e-9) && k >= T::zero();
        if !integral {
            return Err(EvalError::UnsupportedParameters(format!(
                "K(β; τ) is only defined here for nonnegative integer β_head, got {b}"
            )));
        }
        ks.push(k.to_u64().expect("small integer"));
    }
    let total: u64 = ks.iter().sum();
    let mut value = BigInt::one();
    let mut remaining = total;
    for &k in &ks {
        value *= num_integer::binomial(BigInt::from(remaining), BigInt::from(k));
        remaining -= k;
    }
    let v = value.to_f64().ok_or_else(|| EvalError::UnsupportedParameters("multinomial too large".into()))?;
    Ok(Complex::new(T::c(v), T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{catalog, to_standard_form};
    use crate::evaluate::{beta as beta_fn, gauss_2f1};
    use crate::scalar::rel_diff;
    use num_complex::Complex64;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// `β`, `x` realizing `∫₀¹ z^{b−1}(1−z)^{c−b−1}(1−xz)^{−a} dz` on the gauss standard form.
    fn gauss_setup(a: f64, b: f64, c: f64, x: f64) -> (StandardForm, ParameterVector<f64>, CoefficientVector<f64>) {
        let sf = to_standard_form(&catalog("gauss").unwrap().config, 2).unwrap();
        assert_eq!(sf.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(sf.exponents(), vec![vec![0], vec![1], vec![0], vec![1]]);
        // β' = (β1+β2, β3, β2): f1^{c−b−1} f2^{−a} w^{b}
        let bp = [c - b - 1.0, -a, -b];
        let beta = sf.untransform_parameters(&bp.map(r));
        (sf, ParameterVector::new(beta), CoefficientVector::from_real(&[1.0, -1.0, 1.0, -x]))
    }

    #[test]
    fn beta_integral() {
        let (sf, beta, x) = gauss_setup(0.0, 0.5, 1.7, 0.4);
        let res = euler_integral(&sf, &beta, &x, &[Axis::UnitInterval], &QuadratureSettings::default()).unwrap();
        assert!(res.converged);
        let exact = beta_fn(r(0.5), r(1.2)).unwrap();
        assert!(rel_diff(res.value, exact) < 1e-9, "{} vs {}", res.value, exact);
    }

    #[test]
    fn euler_matches_series() {
        let (a, b, c, xv) = (0.3, 0.5, 1.7, 0.25);
        let (sf, beta, x) = gauss_setup(a, b, c, xv);
        let res = euler_integral(&sf, &beta, &x, &[Axis::UnitInterval], &QuadratureSettings::default()).unwrap();
        let series = beta_fn(r(b), r(c - b)).unwrap() * gauss_2f1(r(a), r(b), r(c), r(xv)).unwrap();
        assert!(rel_diff(res.value, series) < 1e-9);
    }

    #[test]
    fn quadric_root_on_cycle() {
        let sf = to_standard_form(&catalog("quadric").unwrap().config, 1).unwrap();
        let beta = ParameterVector::from_real(&[-0.6, -0.35]);
        // 2 - 3w + w² has roots 1, 2 on the positive axis
        let x = CoefficientVector::from_real(&[2.0, -3.0, 1.0]);
        let err = euler_integral(&sf, &beta, &x, &[Axis::positive()], &QuadratureSettings::default()).unwrap_err();
        assert!(matches!(err, EvalError::SingularOnCycle(_)), "{err}");
    }

    #[test]
    fn quadric_closed_form() {
        // ∫₀^∞ w^{−β2} (1 + w²)^{β1} dw/w = B(−β2/2, β2/2 − β1)/2
        let sf = to_standard_form(&catalog("quadric").unwrap().config, 1).unwrap();
        let (b1, b2) = (-0.6, -0.35);
        let res = euler_integral(
            &sf,
            &ParameterVector::from_real(&[b1, b2]),
            &CoefficientVector::from_real(&[1.0, 0.0, 1.0]),
            &[Axis::positive()],
            &QuadratureSettings::default(),
        )
        .unwrap();
        let exact = beta_fn(r(-b2 / 2.0), r(b2 / 2.0 - b1)).unwrap() * 0.5;
        assert!(rel_diff(res.value, exact) < 1e-9, "{} {}", res.value, exact);
    }

    #[test]
    fn divergent_exponents_are_flagged() {
        let sf = to_standard_form(&catalog("quadric").unwrap().config, 1).unwrap();
        // w^{0.5}(1+w²)^{0.3} grows at infinity
        let out = euler_integral(
            &sf,
            &ParameterVector::from_real(&[0.3, -0.5]),
            &CoefficientVector::from_real(&[1.0, 0.0, 1.0]),
            &[Axis::positive()],
            &QuadratureSettings::default(),
        );
        match out {
            Err(EvalError::NotConverged(_)) => {}
            Ok(res) => assert!(!res.converged),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn derivative_zero_is_identical() {
        let (sf, beta, x) = gauss_setup(0.3, 0.5, 1.7, 0.25);
        let s = QuadratureSettings::default();
        let a = euler_integral(&sf, &beta, &x, &[Axis::UnitInterval], &s).unwrap();
        let b = derivative_integral(&sf, &beta, &x, &[0, 0, 0, 0], &[Axis::UnitInterval], &s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let sf = to_standard_form(&catalog("quadric").unwrap().config, 1).unwrap();
        let beta = ParameterVector::from_real(&[-0.7, -0.2]);
        let s = QuadratureSettings::default();
        let cyc = [Axis::RealLine];
        let at = |x3: f64| {
            euler_integral(&sf, &beta, &CoefficientVector::from_real(&[2.0, 1.0, x3]), &cyc, &s).unwrap().value
        };
        let h = 1e-3;
        let fd = (at(3.0 + h) - at(3.0 - h)) / (2.0 * h);
        let d = derivative_integral(&sf, &beta, &CoefficientVector::from_real(&[2.0, 1.0, 3.0]), &[0, 0, 1], &cyc, &s)
            .unwrap();
        assert!(rel_diff(fd, d.value) < 1e-5, "{fd} {}", d.value);
    }

    #[test]
    fn homogenization() {
        assert_eq!(homogenization_constant(1, &[Complex64::new(0.3, 0.2)]).unwrap(), r(1.0));
        assert_eq!(homogenization_constant(2, &[r(1.0), r(1.0)]).unwrap(), r(2.0));
        assert_eq!(homogenization_constant(2, &[r(2.0), r(1.0)]).unwrap(), r(3.0));
        assert_eq!(homogenization_constant(3, &[r(1.0), r(1.0), r(2.0)]).unwrap(), r(12.0));
        assert!(matches!(homogenization_constant(2, &[r(0.5), r(1.0)]), Err(EvalError::UnsupportedParameters(_))));
    }

    #[test]
    fn dimension_checks() {
        let sf = to_standard_form(&catalog("quadric").unwrap().config, 1).unwrap();
        let beta = ParameterVector::from_real(&[-0.6, -0.35]);
        let x = CoefficientVector::from_real(&[1.0, 0.5, 1.0]);
        let s = QuadratureSettings::default();
        assert!(matches!(
            euler_integral(&sf, &beta, &x, &[Axis::RealLine, Axis::RealLine], &s),
            Err(EvalError::DimensionMismatch { .. })
        ));
        assert!(euler_integral(&sf, &beta, &CoefficientVector::from_real(&[1.0]), &[Axis::RealLine], &s).is_err());
    }
}
