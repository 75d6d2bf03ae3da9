use crate::logdomain::LogQuantity;
use crate::registry::{Named, Registry};
use crate::textnorm::NormalizedText;

use super::{
    exact_expected_wait_symbols, format_duration, keystrokes_educated, keystrokes_random,
    keystrokes_to_time, rounded_rule_years, Mode, MonkeyModel, TypingSpeed, WaitingError,
    WaitingEstimate, CANONICAL_ALPHABET_SIZE, DEFAULT_CHARS_PER_YEAR,
};

/// One way of turning (text, monkey) into an expected keystroke count.
pub trait WaitingRule: Named + Send + Sync {
    fn mode(&self) -> Mode;

    fn keystrokes(
        &self,
        text: &NormalizedText,
        model: &MonkeyModel,
    ) -> Result<LogQuantity, WaitingError>;

    fn estimate(
        &self,
        text: &NormalizedText,
        model: &MonkeyModel,
        speed: &TypingSpeed,
    ) -> Result<WaitingEstimate, WaitingError> {
        let keystrokes = self.keystrokes(text, model)?;
        let years = keystrokes_to_time(keystrokes, speed);
        Ok(WaitingEstimate {
            keystrokes,
            years,
            mode: self.mode(),
            display: format_duration(years),
        })
    }
}

/// The 7.3×10^(cℓ−9) shorthand. Keystrokes are the rule's years at the
/// default 136,656,000 characters a year, so other speeds rescale it.
#[derive(Debug, Clone, Copy, Default)]
pub struct RoundedRule;

impl Named for RoundedRule {
    fn name(&self) -> &'static str {
        "rounded"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["rounded_rule"]
    }
    fn description(&self) -> &'static str {
        "7.3×10^(0.26ℓ−9) / 7.3×10^(1.43ℓ−9) years"
    }
}

impl WaitingRule for RoundedRule {
    fn mode(&self) -> Mode {
        Mode::RoundedRule
    }

    fn keystrokes(
        &self,
        text: &NormalizedText,
        model: &MonkeyModel,
    ) -> Result<LogQuantity, WaitingError> {
        let size = text.alphabet().size();
        if size != CANONICAL_ALPHABET_SIZE as usize {
            return Err(WaitingError::RoundedRuleAlphabet(size));
        }
        if text.is_empty() {
            // the shorthand gives 0.998 here; the empty text is typed at once
            rounded_rule_years(0, model)?;
            return Ok(LogQuantity::ONE);
        }
        let years = rounded_rule_years(text.len(), model)?;
        Ok(years * LogQuantity::from_log10(DEFAULT_CHARS_PER_YEAR.log10()))
    }
}

/// `m^ℓ`, `2^(ℓh)`, or `1/P(text)` with unrounded coefficients.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullPrecisionRule;

impl Named for FullPrecisionRule {
    fn name(&self) -> &'static str {
        "precise"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["full_precision"]
    }
    fn description(&self) -> &'static str {
        "m^ℓ, 2^(ℓh) or 1/P(text) at full precision"
    }
}

impl WaitingRule for FullPrecisionRule {
    fn mode(&self) -> Mode {
        Mode::FullPrecision
    }

    fn keystrokes(
        &self,
        text: &NormalizedText,
        model: &MonkeyModel,
    ) -> Result<LogQuantity, WaitingError> {
        match model {
            MonkeyModel::UniformRandom { m } => Ok(keystrokes_random(text.len(), *m)),
            MonkeyModel::Educated { h } => Ok(keystrokes_educated(text.len(), *h)),
            MonkeyModel::IidGeneral { .. } => {
                let mut log10 = 0.0;
                for s in text.symbols() {
                    log10 -= model.symbol_log10_prob(s)?;
                }
                Ok(LogQuantity::from_log10(log10))
            }
        }
    }
}

/// Exact mean first-occurrence time from the pattern's borders.
#[derive(Debug, Clone, Copy, Default)]
pub struct BorderSumRule;

impl Named for BorderSumRule {
    fn name(&self) -> &'static str {
        "exact"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["exact_border"]
    }
    fn description(&self) -> &'static str {
        "sum of 1/P(prefix) over all borders (i.i.d. monkeys only)"
    }
}

impl WaitingRule for BorderSumRule {
    fn mode(&self) -> Mode {
        Mode::ExactBorder
    }

    fn keystrokes(
        &self,
        text: &NormalizedText,
        model: &MonkeyModel,
    ) -> Result<LogQuantity, WaitingError> {
        if matches!(model, MonkeyModel::Educated { .. }) {
            return Err(WaitingError::NotIid);
        }
        if text.is_empty() {
            return Ok(LogQuantity::ONE);
        }
        exact_expected_wait_symbols(&text.symbols(), model)
    }
}

pub fn standard_rules() -> Registry<dyn WaitingRule> {
    let mut registry: Registry<dyn WaitingRule> = Registry::new();
    registry
        .register(Box::new(RoundedRule))
        .register(Box::new(FullPrecisionRule))
        .register(Box::new(BorderSumRule));
    registry
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textnorm::{normalize, Alphabet};

    #[test]
    fn registry_resolves_every_mode() {
        let rules = standard_rules();
        assert_eq!(rules.names(), vec!["rounded", "precise", "exact"]);
        for mode in Mode::ALL {
            assert_eq!(rules.get(mode.cli_name()).unwrap().mode(), mode);
            assert_eq!(rules.get(mode.as_str()).unwrap().mode(), mode);
        }
    }

    #[test]
    fn rounded_rule_needs_canonical_alphabet() {
        let t = normalize("ab", &Alphabet::first(2).unwrap());
        let edu = MonkeyModel::educated(0.863).unwrap();
        assert_eq!(
            RoundedRule.keystrokes(&t, &edu),
            Err(WaitingError::RoundedRuleAlphabet(2))
        );
    }

    #[test]
    fn iid_full_precision_is_inverse_probability() {
        let ab = Alphabet::first(2).unwrap();
        let t = normalize("aab", &ab);
        let model = MonkeyModel::iid(vec![0.25, 0.75]).unwrap();
        let k = FullPrecisionRule.keystrokes(&t, &model).unwrap().to_f64();
        assert!((k - 1.0 / (0.25 * 0.25 * 0.75)).abs() < 1e-9);
    }

    #[test]
    fn exact_rule_rejects_educated() {
        let t = normalize("abc", &Alphabet::canonical());
        assert_eq!(
            BorderSumRule.keystrokes(&t, &MonkeyModel::educated(0.863).unwrap()),
            Err(WaitingError::NotIid)
        );
    }
}
