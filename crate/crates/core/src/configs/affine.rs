//! Affine expressions such as `c-1`, `-a`, `c'-1`, `2*a - b + 1/2` over named classical
//! parameters, with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ConfigError;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AffineExpr {
    coefficients: BTreeMap<String, BigRational>,
    constant: BigRational,
}

impl AffineExpr {
    pub fn constant(c: i64) -> Self {
        AffineExpr { coefficients: BTreeMap::new(), constant: BigRational::from_integer(c.into()) }
    }

    pub fn variable(name: &str) -> Self {
        Self::term(name, 1)
    }

    pub fn term(name: &str, coeff: i64) -> Self {
        let mut e = AffineExpr::default();
        e.add_term(name, BigRational::from_integer(coeff.into()));
        e
    }

    fn add_term(&mut self, name: &str, coeff: BigRational) {
        let entry = self.coefficients.entry(name.to_string()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coefficients.remove(name);
        }
    }

    pub fn plus(mut self, other: &AffineExpr) -> Self {
        for (k, v) in &other.coefficients {
            self.add_term(k, v.clone());
        }
        self.constant += &other.constant;
        self
    }

    pub fn scaled(mut self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        self.coefficients.values_mut().for_each(|v| *v *= &k);
        self.coefficients.retain(|_, v| !v.is_zero());
        self.constant *= k;
        self
    }

    /// Multiplies by an exact rational.
    pub fn scaled_by(mut self, q: &BigRational) -> Self {
        self.coefficients.values_mut().for_each(|v| *v *= q);
        self.coefficients.retain(|_, v| !v.is_zero());
        self.constant *= q;
        self
    }

    pub fn rational_constant(q: BigRational) -> Self {
        AffineExpr { coefficients: BTreeMap::new(), constant: q }
    }

    pub fn coefficient(&self, name: &str) -> BigRational {
        self.coefficients.get(name).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.constant
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.coefficients.keys().map(String::as_str)
    }

    pub fn evaluate<T: Real>(&self, values: &BTreeMap<String, Complex<T>>) -> Result<Complex<T>, ConfigError> {
        let mut acc = Complex::new(rational_to_real::<T>(&self.constant), T::zero());
        for (name, coeff) in &self.coefficients {
            let v = values.get(name).ok_or_else(|| ConfigError::Expression(format!("no value for `{name}`")))?;
            acc = acc + v * rational_to_real::<T>(coeff);
        }
        Ok(acc)
    }

    /// Exact evaluation with rational values.
    pub fn evaluate_exact(&self, values: &BTreeMap<String, BigRational>) -> Result<BigRational, ConfigError> {
        let mut acc = self.constant.clone();
        for (name, coeff) in &self.coefficients {
            let v = values.get(name).ok_or_else(|| ConfigError::Expression(format!("no value for `{name}`")))?;
            acc += coeff * v;
        }
        Ok(acc)
    }
}

fn rational_to_real<T: Real>(q: &BigRational) -> T {
    let num = q.numer().to_f64().unwrap_or(f64::NAN);
    let den = q.denom().to_f64().unwrap_or(f64::NAN);
    T::c(num) / T::c(den)
}

impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut write_term = |f: &mut fmt::Formatter<'_>, coeff: &BigRational, name: Option<&str>| {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match name {
                Some(n) if abs.is_one() => write!(f, "{n}"),
                Some(n) => write!(f, "{abs}*{n}"),
                None => write!(f, "{abs}"),
            }
        };
        for (name, coeff) in &self.coefficients {
            write_term(f, coeff, Some(name))?;
        }
        if !self.constant.is_zero() || self.coefficients.is_empty() {
            write_term(f, &self.constant, None)?;
        }
        Ok(())
    }
}

impl FromStr for AffineExpr {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let err = |msg: &str| ConfigError::Expression(format!("{msg} in `{s}`"));
        let raw: Vec<char> = s.chars().collect();
        for (i, c) in raw.iter().enumerate() {
            if c.is_whitespace() {
                let before = raw[..i].iter().rev().find(|c| !c.is_whitespace());
                let after = raw[i..].iter().find(|c| !c.is_whitespace());
                if let (Some(&b), Some(&a)) = (before, after) {
                    if (is_name_char(b) || b == '.') && (is_name_char(a) || a == '.') {
                        return Err(err("missing operator"));
                    }
                }
            }
        }
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty expression"));
        }
        let mut out = AffineExpr::default();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = BigRational::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(err("expected `+` or `-`"));
            }
            let mut coeff: Option<BigRational> = None;
            if i < chars.len() && chars[i].is_ascii_digit() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                coeff = Some(parse_number(&text).ok_or_else(|| err("bad number"))?);
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                    if i >= chars.len() || !is_name_start(chars[i]) {
                        return Err(err("expected a name after `*`"));
                    }
                }
            }
            if i < chars.len() && is_name_start(chars[i]) {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                out.add_term(&name, sign * coeff.unwrap_or_else(BigRational::one));
            } else if let Some(c) = coeff {
                out.constant += sign * c;
            } else {
                return Err(err("expected a number or a name"));
            }
        }
        Ok(out)
    }
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn parse_number(text: &str) -> Option<BigRational> {
    if let Some((n, d)) = text.split_once('/') {
        let n = parse_number(n)?;
        let d = parse_number(d)?;
        return (!d.is_zero()).then(|| n / d);
    }
    match text.split_once('.') {
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((int, frac)) => {
            if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
                return None;
            }
            let digits = format!("{int}{frac}");
            let n: BigInt = digits.parse().ok()?;
            let d = BigInt::from(10).pow(u32::try_from(frac.len()).ok()?);
            Some(BigRational::new(n, d))
        }
    }
}
