//! Nonnegative quantities carried as base-10 logarithms.
//!
//! Waiting times for long texts reach magnitudes like `10^232784` years, far
//! outside `f64`. [`LogQuantity`] stores `log10(value)` plus an explicit zero
//! flag, so products and powers become sums and scalings of logs.
//! [`exact_power`] offers a big-integer path for small cases.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use thiserror::Error;

/// Largest decimal digit count [`exact_power`] will materialize.
pub const EXACT_DIGIT_LIMIT: f64 = 1e4;

/// Exponents beyond this magnitude are displayed as a bare power of ten.
pub const MANTISSA_SUPPRESSION_EXPONENT: i64 = 1000;

#[derive(Debug, Error, PartialEq)]
pub enum LogError {
    #[error("negative or non-finite value {0}")]
    InvalidValue(f64),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogQuantity {
    log10: f64,
    zero: bool,
}

impl LogQuantity {
    pub const ZERO: Self = Self {
        log10: f64::NEG_INFINITY,
        zero: true,
    };
    pub const ONE: Self = Self {
        log10: 0.0,
        zero: false,
    };

    pub fn from_value(value: f64) -> Result<Self, LogError> {
        if !value.is_finite() || value < 0.0 {
            return Err(LogError::InvalidValue(value));
        }
        if value == 0.0 {
            return Ok(Self::ZERO);
        }
        Ok(Self {
            log10: value.log10(),
            zero: false,
        })
    }

    /// `10^log10`. Panics on a non-finite exponent.
    pub fn from_log10(log10: f64) -> Self {
        assert!(log10.is_finite(), "log10 must be finite, got {log10}");
        Self { log10, zero: false }
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        let bits = n.bits();
        if bits == 0 {
            return Self::ZERO;
        }
        if bits <= 64 {
            let v = n.iter_u64_digits().next().unwrap_or(0);
            return Self::from_log10((v as f64).log10());
        }
        let shift = bits - 64;
        let top = (n >> shift).iter_u64_digits().next().unwrap_or(0);
        Self::from_log10((top as f64).log10() + shift as f64 * std::f64::consts::LOG10_2)
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Base-10 logarithm; `-inf` for zero.
    pub fn log10(&self) -> f64 {
        self.log10
    }

    /// Plain value, overflowing to `inf` above `f64::MAX`.
    pub fn to_f64(&self) -> f64 {
        if self.zero {
            0.0
        } else {
            10f64.powf(self.log10)
        }
    }

    pub fn checked_div(self, divisor: Self) -> Result<Self, LogError> {
        if divisor.zero {
            return Err(LogError::DivisionByZero);
        }
        if self.zero {
            return Ok(Self::ZERO);
        }
        Ok(Self::from_log10(self.log10 - divisor.log10))
    }

    pub fn powf(self, k: f64) -> Self {
        if k == 0.0 {
            return Self::ONE;
        }
        if self.zero {
            return Self::ZERO;
        }
        Self::from_log10(self.log10 * k)
    }

    /// Relative difference `|a/b - 1|`, computed in the log domain.
    pub fn relative_error(&self, reference: &Self) -> f64 {
        match (self.zero, reference.zero) {
            (true, true) => 0.0,
            (false, false) => {
                let d = (self.log10 - reference.log10) * std::f64::consts::LN_10;
                d.exp_m1().abs()
            }
            _ => f64::INFINITY,
        }
    }

    /// `mantissa×10^exponent` with `significant_digits` digits, a plain
    /// decimal for exponents in `[-3, 6]`, or a bare `10^E` with a
    /// comma-grouped exponent beyond `10^±1000`.
    pub fn format(&self, significant_digits: usize) -> String {
        if self.zero {
            return "0".to_owned();
        }
        let sig = significant_digits.max(1);
        let (mantissa, exponent) = self.scientific(sig);
        if exponent.abs() > MANTISSA_SUPPRESSION_EXPONENT {
            return format!("10^{}", group_thousands(self.log10.floor() as i64));
        }
        if (-3..=6).contains(&exponent) {
            let decimals = (sig as i64 - 1 - exponent).max(0) as usize;
            let value = if exponent >= sig as i64 {
                let unit = 10f64.powi((exponent - sig as i64 + 1) as i32);
                (self.to_f64() / unit).round() * unit
            } else {
                self.to_f64()
            };
            return trim_fraction(format!("{value:.decimals$}"));
        }
        format!("{}×10^{exponent}", trim_fraction(mantissa))
    }

    /// Mantissa text rounded to `sig` digits, and its decimal exponent.
    fn scientific(&self, sig: usize) -> (String, i64) {
        if self.log10.abs() < 300.0 {
            let text = format!("{:.*e}", sig - 1, self.to_f64());
            let (mantissa, exponent) = text.split_once('e').expect("exponent marker");
            return (mantissa.to_owned(), exponent.parse().expect("integer exponent"));
        }
        let mut exponent = self.log10.floor();
        let mut mantissa = 10f64.powf(self.log10 - exponent);
        let scale = 10f64.powi(sig as i32 - 1);
        mantissa = (mantissa * scale).round() / scale;
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exponent += 1.0;
        }
        (format!("{mantissa:.prec$}", prec = sig - 1), exponent as i64)
    }
}

impl Mul for LogQuantity {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.zero || rhs.zero {
            return Self::ZERO;
        }
        Self::from_log10(self.log10 + rhs.log10)
    }
}

impl Add for LogQuantity {
    type Output = Self;

    /// Base-10 log-sum-exp.
    fn add(self, rhs: Self) -> Self {
        if self.zero {
            return rhs;
        }
        if rhs.zero {
            return self;
        }
        let (hi, lo) = if self.log10 >= rhs.log10 {
            (self.log10, rhs.log10)
        } else {
            (rhs.log10, self.log10)
        };
        let gap = lo - hi;
        Self::from_log10(hi + (gap * std::f64::consts::LN_10).exp().ln_1p() / std::f64::consts::LN_10)
    }
}

impl PartialOrd for LogQuantity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.zero, other.zero) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => self.log10.partial_cmp(&other.log10),
        }
    }
}

impl fmt::Display for LogQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(4))
    }
}

impl std::iter::Sum for LogQuantity {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

/// `m^l` as a big integer, or `None` when it would exceed
/// [`EXACT_DIGIT_LIMIT`] decimal digits.
pub fn exact_power(m: u32, l: u32) -> Option<BigUint> {
    if m > 1 && l as f64 * (m as f64).log10() > EXACT_DIGIT_LIMIT {
        return None;
    }
    Some(BigUint::from(m).pow(l))
}

pub fn group_thousands(n: i64) -> String {
    let digits = n.unsigned_abs().to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3 + 1);
    if n < 0 {
        out.push('-');
    }
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}
