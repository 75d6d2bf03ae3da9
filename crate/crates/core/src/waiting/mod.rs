//! Expected keystrokes and calendar time for a monkey to type a text.
//!
//! A uniformly random monkey over `m` keys needs about `m^ℓ` keystrokes for a
//! text of `ℓ` characters. An educated monkey that only emits statistically
//! typical text at entropy rate `h` needs about `2^(ℓh)`. At 52 words per
//! minute and 5 characters per word, around the clock, the monkey types
//! 136,656,000 characters a year. With `m = 27` and `h = 0.863` the quoted
//! shorthand is `7.3×10^(1.43ℓ−9)` and `7.3×10^(0.26ℓ−9)` years.
//!
//! [`exact_expected_wait`] gives the exact mean first-occurrence time under an
//! i.i.d. source: the sum of `1/P(prefix)` over every border of the pattern.

mod duration;
mod rules;

pub use duration::format_duration;
pub use rules::{
    standard_rules, BorderSumRule, FullPrecisionRule, RoundedRule, WaitingRule,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::logdomain::{LogError, LogQuantity};
use crate::simulate::borders;
use crate::textnorm::NormalizedText;

pub const DEFAULT_ENTROPY_RATE: f64 = 0.863;
pub const CANONICAL_ALPHABET_SIZE: u32 = 27;
pub const DEFAULT_WORDS_PER_MINUTE: f64 = 52.0;
pub const DEFAULT_CHARS_PER_WORD: f64 = 5.0;
pub const DEFAULT_HOURS_PER_DAY: f64 = 24.0;
pub const DEFAULT_DAYS_PER_YEAR: f64 = 365.0;
/// `13/3 × 86,400 × 365`.
pub const DEFAULT_CHARS_PER_YEAR: f64 = 136_656_000.0;

pub const ROUNDED_PREFACTOR: f64 = 7.3;
pub const ROUNDED_OFFSET: f64 = -9.0;
pub const ROUNDED_EDUCATED_COEFFICIENT: f64 = 0.26;
pub const ROUNDED_RANDOM_COEFFICIENT: f64 = 1.43;

const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;
const RATE_MATCH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum WaitingError {
    #[error("invalid typing speed: {0}")]
    InvalidSpeed(&'static str),
    #[error("invalid monkey model: {0}")]
    InvalidModel(String),
    #[error("the rounded rule only covers a 27-key random monkey or an educated monkey at h = 0.863")]
    RoundedRuleUnsupported,
    #[error("the rounded rule needs text over the 27-symbol alphabet, got {0} symbols")]
    RoundedRuleAlphabet(usize),
    #[error("exact waiting times need an i.i.d. monkey model")]
    NotIid,
    #[error("pattern must be nonempty")]
    EmptyPattern,
    #[error("symbol index {symbol} is outside a {size}-symbol model")]
    SymbolOutsideModel { symbol: u8, size: usize },
    #[error(transparent)]
    Log(#[from] LogError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TypingSpeed {
    pub words_per_minute: f64,
    pub chars_per_word: f64,
    pub hours_per_day: f64,
    pub days_per_year: f64,
}

impl TypingSpeed {
    pub fn new(
        words_per_minute: f64,
        chars_per_word: f64,
        hours_per_day: f64,
        days_per_year: f64,
    ) -> Result<Self, WaitingError> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(words_per_minute) {
            return Err(WaitingError::InvalidSpeed("words per minute must be positive"));
        }
        if !positive(chars_per_word) {
            return Err(WaitingError::InvalidSpeed("characters per word must be positive"));
        }
        if !positive(hours_per_day) || hours_per_day > 24.0 {
            return Err(WaitingError::InvalidSpeed("hours per day must be in (0, 24]"));
        }
        if !positive(days_per_year) || days_per_year > 366.0 {
            return Err(WaitingError::InvalidSpeed("days per year must be in (0, 366]"));
        }
        Ok(Self {
            words_per_minute,
            chars_per_word,
            hours_per_day,
            days_per_year,
        })
    }

    pub fn chars_per_second(&self) -> f64 {
        self.words_per_minute * self.chars_per_word / 60.0
    }

    pub fn chars_per_year(&self) -> f64 {
        // same product as chars_per_second × 3600 × hours × days, without the /60 rounding
        self.words_per_minute * self.chars_per_word * 60.0 * self.hours_per_day * self.days_per_year
    }
}

impl Default for TypingSpeed {
    fn default() -> Self {
        Self {
            words_per_minute: DEFAULT_WORDS_PER_MINUTE,
            chars_per_word: DEFAULT_CHARS_PER_WORD,
            hours_per_day: DEFAULT_HOURS_PER_DAY,
            days_per_year: DEFAULT_DAYS_PER_YEAR,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MonkeyModel {
    /// Each of `m` keys equally likely.
    UniformRandom { m: u32 },
    /// Emits only typical text at `h` bits per character.
    Educated { h: f64 },
    /// Independent keystrokes with per-symbol probabilities.
    IidGeneral { probs: Vec<f64> },
}

impl MonkeyModel {
    pub fn uniform(m: u32) -> Result<Self, WaitingError> {
        if m < 2 {
            return Err(WaitingError::InvalidModel(format!("alphabet size {m} < 2")));
        }
        Ok(Self::UniformRandom { m })
    }

    pub fn educated(h: f64) -> Result<Self, WaitingError> {
        if !(h.is_finite() && h > 0.0) {
            return Err(WaitingError::InvalidModel(format!("entropy rate {h} must be positive")));
        }
        Ok(Self::Educated { h })
    }

    pub fn iid(probs: Vec<f64>) -> Result<Self, WaitingError> {
        if probs.len() < 2 {
            return Err(WaitingError::InvalidModel("need at least 2 symbols".into()));
        }
        if probs.iter().any(|&p| !(p.is_finite() && p > 0.0)) {
            return Err(WaitingError::InvalidModel("probabilities must be positive".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(WaitingError::InvalidModel(format!("probabilities sum to {sum}")));
        }
        Ok(Self::IidGeneral { probs })
    }

    /// Number of keys for i.i.d. models.
    pub fn alphabet_size(&self) -> Option<usize> {
        match self {
            Self::UniformRandom { m } => Some(*m as usize),
            Self::IidGeneral { probs } => Some(probs.len()),
            Self::Educated { .. } => None,
        }
    }

    /// `log10 P(symbol)` for i.i.d. models.
    fn symbol_log10_prob(&self, symbol: u8) -> Result<f64, WaitingError> {
        let size = self.alphabet_size().ok_or(WaitingError::NotIid)?;
        if symbol as usize >= size {
            return Err(WaitingError::SymbolOutsideModel { symbol, size });
        }
        Ok(match self {
            Self::UniformRandom { m } => -(*m as f64).log10(),
            Self::IidGeneral { probs } => probs[symbol as usize].log10(),
            Self::Educated { .. } => unreachable!(),
        })
    }

    pub(crate) fn is_canonical_uniform(&self) -> bool {
        matches!(self, Self::UniformRandom { m } if *m == CANONICAL_ALPHABET_SIZE)
    }

    pub(crate) fn is_default_educated(&self) -> bool {
        matches!(self, Self::Educated { h } if (h - DEFAULT_ENTROPY_RATE).abs() <= RATE_MATCH_TOLERANCE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    RoundedRule,
    FullPrecision,
    ExactBorder,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::RoundedRule, Mode::FullPrecision, Mode::ExactBorder];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::RoundedRule => "rounded_rule",
            Mode::FullPrecision => "full_precision",
            Mode::ExactBorder => "exact_border",
        }
    }

    /// Short name used on the command line.
    pub fn cli_name(&self) -> &'static str {
        match self {
            Mode::RoundedRule => "rounded",
            Mode::FullPrecision => "precise",
            Mode::ExactBorder => "exact",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.cli_name() == s || m.as_str() == s)
            .ok_or_else(|| format!("unknown mode {s:?}; expected rounded, precise or exact"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaitingEstimate {
    pub keystrokes: LogQuantity,
    pub years: LogQuantity,
    pub mode: Mode,
    pub display: String,
}

/// `m^ℓ`.
pub fn keystrokes_random(length: usize, m: u32) -> LogQuantity {
    LogQuantity::from_log10(length as f64 * (m as f64).log10())
}

/// `2^(ℓh)`.
pub fn keystrokes_educated(length: usize, h: f64) -> LogQuantity {
    LogQuantity::from_log10(length as f64 * h * std::f64::consts::LOG10_2)
}

pub fn keystrokes_to_time(keystrokes: LogQuantity, speed: &TypingSpeed) -> LogQuantity {
    keystrokes
        .checked_div(LogQuantity::from_log10(speed.chars_per_year().log10()))
        .expect("typing speed is positive")
}

/// `7.3 × 10^(cℓ − 9)` years, `c` being 0.26 for the educated monkey at
/// `h = 0.863` and 1.43 for the 27-key random monkey. Both constants assume
/// the default typing speed.
pub fn rounded_rule_years(length: usize, model: &MonkeyModel) -> Result<LogQuantity, WaitingError> {
    let coefficient = if model.is_default_educated() {
        ROUNDED_EDUCATED_COEFFICIENT
    } else if model.is_canonical_uniform() {
        ROUNDED_RANDOM_COEFFICIENT
    } else {
        return Err(WaitingError::RoundedRuleUnsupported);
    };
    Ok(LogQuantity::from_log10(
        ROUNDED_PREFACTOR.log10() + coefficient * length as f64 + ROUNDED_OFFSET,
    ))
}

pub fn estimate(
    text: &NormalizedText,
    model: &MonkeyModel,
    speed: &TypingSpeed,
    mode: Mode,
) -> Result<WaitingEstimate, WaitingError> {
    let rule: &dyn WaitingRule = match mode {
        Mode::RoundedRule => &RoundedRule,
        Mode::FullPrecision => &FullPrecisionRule,
        Mode::ExactBorder => &BorderSumRule,
    };
    rule.estimate(text, model, speed)
}

/// Exact expected number of keystrokes until `pattern` first appears.
pub fn exact_expected_wait(
    pattern: &NormalizedText,
    model: &MonkeyModel,
) -> Result<LogQuantity, WaitingError> {
    exact_expected_wait_symbols(&pattern.symbols(), model)
}

/// [`exact_expected_wait`] over raw symbol indices.
pub fn exact_expected_wait_symbols(
    pattern: &[u8],
    model: &MonkeyModel,
) -> Result<LogQuantity, WaitingError> {
    if matches!(model, MonkeyModel::Educated { .. }) {
        return Err(WaitingError::NotIid);
    }
    if pattern.is_empty() {
        return Err(WaitingError::EmptyPattern);
    }
    // prefix_log10[j] = -log10 P(pattern[..j])
    let mut prefix_log10 = Vec::with_capacity(pattern.len() + 1);
    prefix_log10.push(0.0);
    let mut acc = 0.0;
    for &s in pattern {
        acc -= model.symbol_log10_prob(s)?;
        prefix_log10.push(acc);
    }
    Ok(borders(pattern)
        .into_iter()
        .map(|j| LogQuantity::from_log10(prefix_log10[j]))
        .sum())
}

/// Integer form of the border sum for a uniform `m`-key monkey: `Σ m^j`.
pub fn exact_expected_wait_uniform_integer(pattern: &[u8], m: u32) -> Result<BigUint, WaitingError> {
    if pattern.is_empty() {
        return Err(WaitingError::EmptyPattern);
    }
    if let Some(&symbol) = pattern.iter().find(|&&s| s as u32 >= m) {
        return Err(WaitingError::SymbolOutsideModel {
            symbol,
            size: m as usize,
        });
    }
    let base = BigUint::from(m);
    Ok(borders(pattern).into_iter().map(|j| base.pow(j as u32)).sum())
}
