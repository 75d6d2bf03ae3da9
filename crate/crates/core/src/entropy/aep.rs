use rayon::prelude::*;
use serde::Serialize;

use crate::simulate::SymbolSource;

use super::MarkovSource;

/// Sample statistics of the per-character log-loss `-(1/ℓ) log2 P(X_1..X_ℓ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AepStats {
    pub length: usize,
    pub trials: u64,
    pub mean: f64,
    pub std_dev: f64,
    pub seed: u64,
}

/// Draws `trials` sequences of length `length` from `src` (trial `t` uses
/// generator stream `t`) and summarizes their per-character log-loss.
pub fn aep_deviation(src: &MarkovSource, length: usize, trials: u64, seed: u64) -> AepStats {
    assert!(length >= 1 && trials >= 1, "length and trials must be positive");
    let source = SymbolSource::Markov(src.clone());
    let step = src.transition_surprisal();
    let start = src.initial_surprisal();
    let losses: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut stream = source.stream(seed, t);
            let mut prev = stream.next_symbol() as usize;
            let mut bits = start[prev];
            for _ in 1..length {
                let next = stream.next_symbol() as usize;
                bits += step[prev][next];
                prev = next;
            }
            bits / length as f64
        })
        .collect();
    let n = losses.len() as f64;
    let mean = losses.iter().sum::<f64>() / n;
    let std_dev = if losses.len() > 1 {
        (losses.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    AepStats {
        length,
        trials,
        mean,
        std_dev,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::markov_entropy_rate;

    #[test]
    fn uniform_source_has_no_spread() {
        let src = MarkovSource::iid(&[1.0 / 27.0; 27]).unwrap();
        for length in [1, 7, 100] {
            let s = aep_deviation(&src, length, 50, 4);
            assert!((s.mean - 27f64.log2()).abs() < 1e-12, "{s:?}");
            assert!(s.std_dev < 1e-12, "{s:?}");
        }
    }

    #[test]
    fn concentrates_with_length() {
        let src = MarkovSource::iid(&[0.25, 0.75]).unwrap();
        let short = aep_deviation(&src, 1, 1_000, 8);
        let long = aep_deviation(&src, 10_000, 200, 8);
        assert!(long.std_dev < short.std_dev);
        assert!((long.mean - 0.811_278).abs() < 0.005);
    }

    #[test]
    fn markov_mean_tracks_rate() {
        let src = MarkovSource::symmetric_binary(0.1).unwrap();
        let s = aep_deviation(&src, 2_000, 400, 1);
        let h = markov_entropy_rate(&src);
        assert!((s.mean - h).abs() <= 3.0 * s.std_dev / (s.trials as f64).sqrt() + 1.0 / 2_000.0, "{s:?} vs {h}");
    }

    #[test]
    fn reproducible() {
        let src = MarkovSource::iid(&[0.25, 0.75]).unwrap();
        assert_eq!(aep_deviation(&src, 50, 30, 2), aep_deviation(&src, 50, 30, 2));
    }
}
