//! Adaptive 21-point Gauss–Kronrod quadrature on a finite interval for complex
//! integrands, with bisection of the worst interval.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::scalar::Real;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureOutcome<T: Real> {
    pub value: Complex<T>,
    /// Kronrod–Gauss estimate plus the propagated inner errors.
    pub error: T,
    pub converged: bool,
    pub evaluations: usize,
    pub subdivisions: usize,
}

struct Segment<T: Real> {
    a: T,
    b: T,
    value: Complex<T>,
    error: T,
    inner_error: T,
}

fn gk21<T, F, E>(f: &F, a: T, b: T, parallel: bool) -> Result<Segment<T>, E>
where
    T: Real,
    F: Fn(T) -> Result<(Complex<T>, T), E> + Sync,
    E: Send,
{
    let half = (b - a) * T::c(0.5);
    let center = (a + b) * T::c(0.5);
    // node order: the 10 symmetric pairs then the center
    let nodes: Vec<T> = (0..10)
        .flat_map(|i| {
            let dx = half * T::c(XGK[i]);
            [center - dx, center + dx]
        })
        .chain(std::iter::once(center))
        .collect();
    let values: Vec<(Complex<T>, T)> = if parallel {
        nodes.par_iter().map(|&x| f(x)).collect::<Result<_, E>>()?
    } else {
        nodes.iter().map(|&x| f(x)).collect::<Result<_, E>>()?
    };
    let (fc, ec) = values[20];
    let mut kronrod = fc * T::c(WGK[10]);
    let mut gauss = Complex::zero();
    let mut resabs = fc.norm() * T::c(WGK[10]);
    let mut inner = ec * T::c(WGK[10]);
    for i in 0..10 {
        let (f1, e1) = values[2 * i];
        let (f2, e2) = values[2 * i + 1];
        let w = T::c(WGK[i]);
        kronrod = kronrod + (f1 + f2) * w;
        resabs = resabs + (f1.norm() + f2.norm()) * w;
        inner = inner + (e1 + e2) * w;
        if i % 2 == 1 {
            gauss = gauss + (f1 + f2) * T::c(WG[i / 2]);
        }
    }
    let mean = kronrod * T::c(0.5);
    let mut resasc = (fc - mean).norm() * T::c(WGK[10]);
    for i in 0..10 {
        let (f1, _) = values[2 * i];
        let (f2, _) = values[2 * i + 1];
        resasc = resasc + ((f1 - mean).norm() + (f2 - mean).norm()) * T::c(WGK[i]);
    }
    let scale = half.abs();
    let resasc = resasc * scale;
    let resabs = resabs * scale;
    let mut error = ((kronrod - gauss) * half).norm();
    if resasc > T::zero() && error > T::zero() {
        let ratio = (T::c(200.0) * error / resasc).powf(T::c(1.5));
        error = resasc * ratio.min(T::one());
    }
    let floor = T::epsilon() * T::c(50.0) * resabs;
    if floor > error {
        error = floor;
    }
    Ok(Segment { a, b, value: kronrod * half, error, inner_error: inner * scale })
}

/// Integrates `f` over `[a, b]`. `f` returns a value together with an error bound for
/// that value (zero for plain functions, the inner estimate for iterated integrals).
/// Node evaluations of one segment run on the rayon pool when `parallel` is set.
pub fn integrate<T, F, E>(
    f: F,
    a: T,
    b: T,
    rel_tol: T,
    abs_tol: T,
    max_subdivisions: usize,
    parallel: bool,
) -> Result<QuadratureOutcome<T>, E>
where
    T: Real,
    F: Fn(T) -> Result<(Complex<T>, T), E> + Sync,
    E: Send,
{
    let mut segments = vec![gk21(&f, a, b, parallel)?];
    let mut evaluations = 21;
    let mut subdivisions = 0;
    loop {
        let value = segments.iter().fold(Complex::zero(), |acc, s| acc + s.value);
        let error = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
        let inner = segments.iter().fold(T::zero(), |acc, s| acc + s.inner_error);
        let tol = (rel_tol * value.norm()).max(abs_tol);
        let total = error + inner;
        if total <= tol || subdivisions >= max_subdivisions {
            return Ok(QuadratureOutcome { value, error: total, converged: total <= tol, evaluations, subdivisions });
        }
        let worst = (0..segments.len())
            .max_by(|&i, &j| segments[i].error.partial_cmp(&segments[j].error).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty");
        let seg = segments.swap_remove(worst);
        let mid = (seg.a + seg.b) * T::c(0.5);
        let width = (seg.b - seg.a).abs();
        let too_small = width <= T::epsilon() * T::c(100.0) * mid.abs() || width <= T::min_positive_value();
        if too_small {
            // cannot refine further; keep it and give up on the budget
            segments.push(seg);
            subdivisions = max_subdivisions;
            continue;
        }
        let left = gk21(&f, seg.a, mid, parallel)?;
        let right = gk21(&f, mid, seg.b, parallel)?;
        segments.push(left);
        segments.push(right);
        evaluations += 42;
        subdivisions += 1;
    }
}
