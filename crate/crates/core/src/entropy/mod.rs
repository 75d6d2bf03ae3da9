//! Entropy-rate estimation from text, plus analytic rates for synthetic
//! Markov sources used as test oracles.
//!
//! Two estimators are registered by name: `ngram` (plug-in conditional block
//! entropy `H_n − H_{n−1}`) and `matchlen` (sliding-window match lengths,
//! `log2(W) / mean(Λ)`).

mod aep;
mod markov;
mod matchlen;
mod ngram;
mod presets;

pub use aep::{aep_deviation, AepStats};
pub use markov::{markov_entropy_rate, MarkovSource};
pub use matchlen::{match_length_entropy, match_lengths, suffix_array, MatchLengthEstimator};
pub use ngram::{block_entropy, ngram_conditional_entropy, NGramEstimator, NGramStats};
pub use presets::{find_preset, preset_estimates, PublishedEstimate};

use serde::Serialize;
use thiserror::Error;

use crate::registry::{Named, Registry};
use crate::textnorm::NormalizedText;

#[derive(Debug, Error, PartialEq)]
pub enum EntropyError {
    #[error("text of {got} symbols is too short; need at least {needed}")]
    TooShort { needed: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid Markov source: {0}")]
    InvalidSource(String),
    #[error("Markov source is reducible: state {0} cannot reach every state")]
    Reducible(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    /// Bits per character.
    pub value: f64,
    pub method: &'static str,
    pub parameter: usize,
    pub sample_size: usize,
}

impl EntropyEstimate {
    pub(crate) fn bounded(
        raw: f64,
        alphabet_size: usize,
        method: &'static str,
        parameter: usize,
        sample_size: usize,
    ) -> Self {
        let ceiling = (alphabet_size.max(1) as f64).log2();
        Self {
            value: raw.clamp(0.0, ceiling),
            method,
            parameter,
            sample_size,
        }
    }
}

/// A named entropy-rate estimator with one integer tuning parameter.
pub trait EntropyEstimator: Named + Send + Sync {
    fn parameter_name(&self) -> &'static str;

    fn default_parameter(&self) -> usize;

    /// Estimate over symbol indices `0..alphabet_size`.
    fn estimate_symbols(
        &self,
        symbols: &[u8],
        alphabet_size: usize,
        parameter: usize,
    ) -> Result<EntropyEstimate, EntropyError>;

    fn estimate(&self, text: &NormalizedText, parameter: usize) -> Result<EntropyEstimate, EntropyError> {
        self.estimate_symbols(&text.symbols(), text.alphabet().size(), parameter)
    }
}

pub fn standard_estimators() -> Registry<dyn EntropyEstimator> {
    let mut registry: Registry<dyn EntropyEstimator> = Registry::new();
    registry
        .register(Box::new(NGramEstimator))
        .register(Box::new(MatchLengthEstimator));
    registry
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textnorm::{normalize, Alphabet};

    #[test]
    fn registry_lookup() {
        let r = standard_estimators();
        assert_eq!(r.names(), vec!["ngram", "matchlen"]);
        assert_eq!(r.get("ngram").unwrap().parameter_name(), "order");
        assert_eq!(r.get("matchlen").unwrap().default_parameter(), 1 << 16);
        assert!(r.get("ppm").is_none());
    }

    #[test]
    fn estimators_stay_in_range() {
        let text = normalize(&"ab".repeat(300), &Alphabet::first(2).unwrap());
        for est in standard_estimators().iter() {
            let p = if est.name() == "ngram" { 2 } else { 16 };
            let e = est.estimate(&text, p).unwrap();
            assert!(e.value >= 0.0 && e.value <= 1.0, "{e:?}");
            assert_eq!(e.sample_size, 600);
        }
    }
}
