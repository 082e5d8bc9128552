//! Hypergeometric series: Gauss ₂F₁ (with Pfaff continuation), Appell F4 and Lauricella
//! F_C. All use rising Pochhammer symbols.

use std::collections::HashMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::special::is_nonpositive_integer;
use super::EvalError;
use crate::scalar::Real;

const MAX_TERMS: usize = 200_000;
const MAX_DIAGONALS: usize = 6_000;
/// Beyond this modulus of the (possibly Pfaff-transformed) argument the ₂F₁ series is
/// not attempted.
const GAUSS_RADIUS: f64 = 0.97;

fn series_eps<T: Real>() -> T {
    T::epsilon() * T::c(0.5)
}

fn check_lower<T: Real>(c: Complex<T>) -> Result<(), EvalError> {
    if is_nonpositive_integer(c) {
        Err(EvalError::PoleInC(format!("{c}")))
    } else {
        Ok(())
    }
}

/// The plain power series `Σ (a)_n (b)_n / ((c)_n n!) x^n`, stopped once two consecutive
/// terms are below `eps·|sum|` past the point where the term ratio falls under one.
pub fn gauss_2f1_series<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    x: Complex<T>,
) -> Result<Complex<T>, EvalError> {
    check_lower(c)?;
    if x.norm() >= T::one() {
        return Err(EvalError::OutOfDomain(format!("|x| = {} ≥ 1", x.norm())));
    }
    let eps = series_eps::<T>();
    let mut term = Complex::<T>::one();
    let mut sum = term;
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nn = T::from_int(n as i64);
        let ratio = (a + nn) * (b + nn) / ((c + nn) * (nn + T::one())) * x;
        term = term * ratio;
        sum = sum + term;
        if term.norm() <= eps * sum.norm() && ratio.norm() < T::one() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(EvalError::NotConverged(format!("2F1 series at x = {x}")))
}

/// `₂F₁(a, b; c; x)`: the series directly for `|x| ≤ 1/2`, otherwise through the Pfaff
/// transformation `(1−x)^{−a} ₂F₁(a, c−b; c; x/(x−1))` whenever that argument is smaller.
pub fn gauss_2f1<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, x: Complex<T>) -> Result<Complex<T>, EvalError> {
    check_lower(c)?;
    if x.is_zero() {
        return Ok(Complex::one());
    }
    let one = Complex::<T>::one();
    if x.norm() <= T::c(0.5) {
        return gauss_2f1_series(a, b, c, x);
    }
    let z = x / (x - one);
    let limit = T::c(GAUSS_RADIUS);
    if z.norm() < x.norm() && z.norm() < limit {
        let pre = ((one - x).ln() * (-a)).exp();
        return Ok(pre * gauss_2f1_series(a, c - b, c, z)?);
    }
    if x.norm() < limit {
        return gauss_2f1_series(a, b, c, x);
    }
    Err(EvalError::OutOfDomain(format!("2F1 argument {x} not reachable by series or Pfaff")))
}

fn check_fc_domain<T: Real>(ys: &[Complex<T>]) -> Result<(), EvalError> {
    let s = ys.iter().fold(T::zero(), |acc, y| acc + y.norm().sqrt());
    if s >= T::one() {
        return Err(EvalError::OutOfDomain(format!("Σ√|y| = {s} ≥ 1")));
    }
    Ok(())
}

/// Appell `F4(a, b; c, c'; y1, y2)` summed by anti-diagonals `r + s = N`.
pub fn appell_f4<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    c2: Complex<T>,
    y1: Complex<T>,
    y2: Complex<T>,
) -> Result<Complex<T>, EvalError> {
    check_lower(c)?;
    check_lower(c2)?;
    check_fc_domain(&[y1, y2])?;
    let eps = series_eps::<T>();
    let one = Complex::<T>::one();
    // prev[r] = t(r, N-1-r)
    let mut prev = vec![one];
    let mut sum = one;
    let mut quiet = 0;
    for n in 1..MAX_DIAGONALS {
        let nm1 = T::from_int(n as i64 - 1);
        let up = (a + nm1) * (b + nm1);
        let mut diag = Vec::with_capacity(n + 1);
        let mut biggest = T::zero();
        for (r, &p) in prev.iter().enumerate() {
            let s = T::from_int((n - r) as i64);
            let t = p * up / ((c2 + s - T::one()) * s) * y2;
            biggest = biggest.max(t.norm());
            sum = sum + t;
            diag.push(t);
        }
        let nn = T::from_int(n as i64);
        let t = prev[n - 1] * up / ((c + nn - T::one()) * nn) * y1;
        biggest = biggest.max(t.norm());
        sum = sum + t;
        diag.push(t);
        prev = diag;
        if biggest <= eps * sum.norm() && nn > (a.norm() + b.norm()) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(EvalError::NotConverged(format!("F4 series at ({y1}, {y2})")))
}

/// `F4` as `Σ_r (a)_r (b)_r / ((c)_r r!) y1^r ₂F₁(a+r, b+r; c'; y2)`, which continues the
/// double series to `y2` outside the unit disc as long as each ₂F₁ is reachable.
pub fn appell_f4_via_2f1<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    c2: Complex<T>,
    y1: Complex<T>,
    y2: Complex<T>,
) -> Result<Complex<T>, EvalError> {
    check_lower(c)?;
    check_lower(c2)?;
    let eps = series_eps::<T>();
    let mut coeff = Complex::<T>::one();
    let mut sum = Complex::zero();
    let mut quiet = 0;
    for r in 0..MAX_TERMS {
        let rr = T::from_int(r as i64);
        let term = coeff * gauss_2f1(a + rr, b + rr, c2, y2)?;
        sum = sum + term;
        if term.norm() <= eps * sum.norm() && rr > (a.norm() + b.norm()) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
        coeff = coeff * (a + rr) * (b + rr) / ((c + rr) * (rr + T::one())) * y1;
    }
    Err(EvalError::NotConverged(format!("F4 r-sum at ({y1}, {y2})")))
}

/// Lauricella `F_C(a, b; c₁…c_m; y₁…y_m)`, summed by total degree. Terms are built from
/// their predecessors by ratio, so no Pochhammer symbol is ever formed on its own.
pub fn lauricella_fc<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: &[Complex<T>],
    y: &[Complex<T>],
) -> Result<Complex<T>, EvalError> {
    let m = c.len();
    if y.len() != m {
        return Err(EvalError::DimensionMismatch { expected: m, found: y.len() });
    }
    if m == 0 {
        return Ok(Complex::one());
    }
    for &ci in c {
        check_lower(ci)?;
    }
    check_fc_domain(y)?;
    let eps = series_eps::<T>();
    let mut layer: HashMap<Vec<u32>, Complex<T>> = HashMap::from([(vec![0u32; m], Complex::one())]);
    let mut sum = Complex::<T>::one();
    let mut quiet = 0;
    for degree in 1..MAX_DIAGONALS {
        let dm1 = T::from_int(degree as i64 - 1);
        let up = (a + dm1) * (b + dm1);
        let mut next = HashMap::with_capacity(layer.len() * 2);
        let mut biggest = T::zero();
        for (k, &t) in &layer {
            // extend only at or after the last nonzero slot so each index appears once
            let start = k.iter().rposition(|&v| v > 0).unwrap_or(0);
            for i in start..m {
                let ki = T::from_int(i64::from(k[i]));
                let nt = t * up / ((c[i] + ki) * (ki + T::one())) * y[i];
                let mut nk = k.clone();
                nk[i] += 1;
                biggest = biggest.max(nt.norm());
                next.insert(nk, nt);
            }
        }
        // deterministic summation order
        let mut keys: Vec<&Vec<u32>> = next.keys().collect();
        keys.sort();
        for key in keys {
            sum = sum + next[key];
        }
        layer = next;
        if biggest <= eps * sum.norm() && T::from_int(degree as i64) > (a.norm() + b.norm()) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(EvalError::NotConverged("F_C series".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rel_diff;
    use num_complex::Complex64;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gauss_closed_forms() {
        assert_eq!(gauss_2f1(r(0.3), r(0.5), r(1.7), r(0.0)).unwrap(), r(1.0));
        let v = gauss_2f1(r(1.0), r(1.0), r(2.0), r(0.5)).unwrap();
        assert!(rel_diff(v, r(-(0.5f64.ln()) / 0.5)) < 1e-14);
        // (1-x)^{-a} = 2F1(a, b; b; x), reached through Pfaff at x = -3
        let v = gauss_2f1(r(0.7), r(1.3), r(1.3), r(-3.0)).unwrap();
        assert!(rel_diff(v, r(4f64.powf(-0.7))) < 1e-13, "{v}");
        assert!(matches!(gauss_2f1(r(0.3), r(0.5), r(-2.0), r(0.1)), Err(EvalError::PoleInC(_))));
        assert!(matches!(gauss_2f1(r(0.3), r(0.5), r(1.5), r(1.0)), Err(EvalError::OutOfDomain(_))));
    }

    #[test]
    fn gauss_oracle_values() {
        // mpmath hyp2f1 at 30 digits
        let cases = [
            ((0.3, 0.5, 1.7, 0.25), (1.024_355_984_676_398_5, 0.0)),
            ((0.3, 0.5, 1.7, -0.8), (0.944_068_986_329_344_1, 0.0)),
            ((1.5, -0.25, 2.2, 0.9), (0.759_951_750_359_695_7, 0.0)),
        ];
        for ((a, b, c, x), (re, im)) in cases {
            let v = gauss_2f1(r(a), r(b), r(c), r(x)).unwrap();
            assert!(rel_diff(v, Complex64::new(re, im)) < 1e-13, "{a} {b} {c} {x}: {v}");
        }
        let v = gauss_2f1(Complex64::new(0.3, 0.2), r(0.5), r(1.7), Complex64::new(0.3, 0.6)).unwrap();
        assert!(rel_diff(v, Complex64::new(0.973_172_137_024_981_8, 0.067_406_867_996_217_34)) < 1e-13, "{v}");
    }

    #[test]
    fn terminating_series() {
        // b = -2: 1 + 2·(ab/c)x·(-1)... evaluate exactly
        let (a, c, x) = (0.4, 1.1, 0.3);
        let expect = 1.0 - 2.0 * a / c * x + a * (a + 1.0) / (c * (c + 1.0)) * x * x;
        let v = gauss_2f1(r(a), r(-2.0), r(c), r(x)).unwrap();
        assert!(rel_diff(v, r(expect)) < 1e-15);
    }

    #[test]
    fn f4_collapses() {
        let (a, b, c, c2) = (r(0.3), r(0.75), r(1.35), r(1.6));
        assert_eq!(appell_f4(a, b, c, c2, r(0.0), r(0.0)).unwrap(), r(1.0));
        let y1 = Complex64::new(0.2, -0.1);
        let f = appell_f4(a, b, c, c2, y1, r(0.0)).unwrap();
        assert!(rel_diff(f, gauss_2f1(a, b, c, y1).unwrap()) < 1e-13);
        let y2 = r(-0.12);
        let lhs = appell_f4(a, b, c, c2, y1, y2).unwrap();
        let rhs = appell_f4(a, b, c2, c, y2, y1).unwrap();
        assert!(rel_diff(lhs, rhs) < 1e-14);
        assert!(matches!(appell_f4(a, b, c, c2, r(0.5), r(0.1)), Err(EvalError::OutOfDomain(_))));
    }

    #[test]
    fn f4_oracle() {
        // mpmath appellf4(0.3, 0.75, 1.35, 1.6, 0.1, -0.2)
        let v = appell_f4(r(0.3), r(0.75), r(1.35), r(1.6), r(0.1), r(-0.2)).unwrap();
        assert!(rel_diff(v, r(0.987_342_831_166_694)) < 1e-13, "{v}");
        let w = appell_f4_via_2f1(r(0.3), r(0.75), r(1.35), r(1.6), r(0.1), r(-0.2)).unwrap();
        assert!(rel_diff(v, w) < 1e-13);
        // outside the double-series domain, mpmath r-sum with hyp2f1
        let w = appell_f4_via_2f1(r(0.3), r(0.75), r(1.35), r(1.6), r(0.1), r(-3.0)).unwrap();
        assert!(rel_diff(w, r(0.796_552_628_271_772_2)) < 1e-12, "{w}");
    }

    #[test]
    fn fc_matches_lower_cases() {
        let (a, b) = (Complex64::new(0.3, 0.1), r(0.75));
        let y = [Complex64::new(0.11, 0.02)];
        let v = lauricella_fc(a, b, &[r(1.35)], &y).unwrap();
        assert!(rel_diff(v, gauss_2f1(a, b, r(1.35), y[0]).unwrap()) < 1e-13);
        let y = [r(0.1), r(-0.2)];
        let v = lauricella_fc(a, b, &[r(1.35), r(1.6)], &y).unwrap();
        let w = appell_f4(a, b, r(1.35), r(1.6), y[0], y[1]).unwrap();
        assert!(rel_diff(v, w) < 1e-13);
        assert_eq!(lauricella_fc(a, b, &[r(1.0); 3], &[r(0.0); 3]).unwrap(), r(1.0));
        assert!(lauricella_fc(a, b, &[r(1.0); 2], &[r(0.3), r(0.3)]).is_err());
    }
}
