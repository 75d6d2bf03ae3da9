use std::collections::HashMap;

use rayon::prelude::*;

use crate::registry::Named;
use crate::textnorm::NormalizedText;

use super::{EntropyError, EntropyEstimate, EntropyEstimator};

const COUNT_CHUNK: usize = 1 << 16;

/// Sliding-window counts of every length-`order` block.
#[derive(Debug, Clone, PartialEq)]
pub struct NGramStats<'a> {
    pub order: usize,
    pub counts: HashMap<&'a [u8], u64>,
    pub total: u64,
}

impl<'a> NGramStats<'a> {
    /// Counts blocks starting at each of the `len - order + 1` positions.
    /// Work is split into fixed position ranges and merged.
    pub fn from_symbols(symbols: &'a [u8], order: usize) -> Self {
        if order == 0 || symbols.len() < order {
            return Self {
                order,
                counts: HashMap::new(),
                total: 0,
            };
        }
        let positions = symbols.len() - order + 1;
        let counts = (0..positions)
            .into_par_iter()
            .step_by(COUNT_CHUNK)
            .map(|start| {
                let end = (start + COUNT_CHUNK).min(positions);
                let mut local: HashMap<&[u8], u64> = HashMap::new();
                for i in start..end {
                    *local.entry(&symbols[i..i + order]).or_insert(0) += 1;
                }
                local
            })
            .reduce(HashMap::new, |a, b| {
                if a.len() >= b.len() {
                    merge(a, b)
                } else {
                    merge(b, a)
                }
            });
        Self {
            order,
            counts,
            total: positions as u64,
        }
    }

    /// Plug-in entropy of the block distribution, in bits per block.
    pub fn entropy(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        // sorted so the float sum does not depend on hash order
        let mut counts: Vec<u64> = self.counts.values().copied().collect();
        counts.sort_unstable();
        let n = self.total as f64;
        counts
            .into_iter()
            .map(|c| {
                let p = c as f64 / n;
                -p * p.log2()
            })
            .sum()
    }
}

fn merge<'a>(mut a: HashMap<&'a [u8], u64>, b: HashMap<&'a [u8], u64>) -> HashMap<&'a [u8], u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// `H_k`; `H_0 = 0`.
pub fn block_entropy(symbols: &[u8], k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    NGramStats::from_symbols(symbols, k).entropy()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NGramEstimator;

impl Named for NGramEstimator {
    fn name(&self) -> &'static str {
        "ngram"
    }
    fn description(&self) -> &'static str {
        "plug-in conditional block entropy H_n - H_(n-1)"
    }
}

impl EntropyEstimator for NGramEstimator {
    fn parameter_name(&self) -> &'static str {
        "order"
    }

    fn default_parameter(&self) -> usize {
        3
    }

    fn estimate_symbols(
        &self,
        symbols: &[u8],
        alphabet_size: usize,
        order: usize,
    ) -> Result<EntropyEstimate, EntropyError> {
        if order == 0 {
            return Err(EntropyError::InvalidParameter("n-gram order must be at least 1".into()));
        }
        if symbols.len() < order {
            return Err(EntropyError::TooShort {
                needed: order,
                got: symbols.len(),
            });
        }
        let raw = block_entropy(symbols, order) - block_entropy(symbols, order - 1);
        Ok(EntropyEstimate::bounded(raw, alphabet_size, "ngram", order, symbols.len()))
    }
}

pub fn ngram_conditional_entropy(
    text: &NormalizedText,
    n: usize,
) -> Result<EntropyEstimate, EntropyError> {
    NGramEstimator.estimate(text, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::SymbolSource;

    fn sample(src: &SymbolSource, n: usize, seed: u64) -> Vec<u8> {
        src.stream(seed, 0).take(n).collect()
    }

    #[test]
    fn counts_sum_to_total() {
        let s = [0u8, 1, 0, 1, 1, 0, 1];
        let stats = NGramStats::from_symbols(&s, 2);
        assert_eq!(stats.total, 6);
        assert_eq!(stats.counts.values().sum::<u64>(), 6);
        assert!(stats.counts.keys().all(|k| k.len() == 2));
        assert_eq!(stats.counts[&[0u8, 1][..]], 3);
    }

    #[test]
    fn counting_is_independent_of_chunking() {
        let src = SymbolSource::uniform(4).unwrap();
        let s = sample(&src, 3 * COUNT_CHUNK + 17, 5);
        let stats = NGramStats::from_symbols(&s, 3);
        let mut serial: HashMap<&[u8], u64> = HashMap::new();
        for w in s.windows(3) {
            *serial.entry(w).or_insert(0) += 1;
        }
        assert_eq!(stats.counts, serial);
    }

    #[test]
    fn alternating_text_has_zero_rate() {
        let s: Vec<u8> = (0..10_000).map(|i| (i % 2) as u8).collect();
        let e = NGramEstimator.estimate_symbols(&s, 2, 2).unwrap();
        assert!(e.value < 1e-3, "{e:?}");
    }

    #[test]
    fn iid_sources() {
        let uniform4 = sample(&SymbolSource::uniform(4).unwrap(), 1_000_000, 1);
        let e = NGramEstimator.estimate_symbols(&uniform4, 4, 1).unwrap();
        assert!((e.value - 2.0).abs() < 0.01, "{e:?}");
        let skew = sample(&SymbolSource::iid(&[0.25, 0.75]).unwrap(), 1_000_000, 2);
        let e = NGramEstimator.estimate_symbols(&skew, 2, 1).unwrap();
        assert!((e.value - 0.811_278).abs() < 0.01, "{e:?}");
    }

    #[test]
    fn errors() {
        assert_eq!(
            NGramEstimator.estimate_symbols(&[0, 1], 2, 3),
            Err(EntropyError::TooShort { needed: 3, got: 2 })
        );
        assert!(matches!(
            NGramEstimator.estimate_symbols(&[0, 1], 2, 0),
            Err(EntropyError::InvalidParameter(_))
        ));
    }
}
