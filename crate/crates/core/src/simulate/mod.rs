//! Monte Carlo monkey farm.
//!
//! Each trial streams symbols from its own generator stream, derived from
//! `(seed, trial index)`, until the pattern first appears, and records the
//! 1-based index of the pattern's last character. Aggregation uses exact
//! integer sums, so results do not depend on how trials are spread over
//! threads.

mod matcher;
pub(crate) mod source;

pub use matcher::{borders, failure_function, PatternMatcher};
pub use source::{SymbolSource, SymbolStream};

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::textnorm::NormalizedText;
use crate::waiting::MonkeyModel;

#[derive(Debug, Error, PartialEq)]
pub enum SimulateError {
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("pattern must be nonempty")]
    EmptyPattern,
    #[error("pattern symbol {symbol} is outside the {size}-symbol source alphabet")]
    SymbolOutsideAlphabet { symbol: u8, size: usize },
    #[error("pattern has probability zero under the source")]
    ImpossiblePattern,
    #[error("invalid source: {0}")]
    InvalidSource(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialSummary {
    pub trials: u64,
    pub mean: f64,
    pub std_error: f64,
    pub min: u64,
    pub max: u64,
    pub seed: u64,
}

impl TrialSummary {
    /// Single-line JSON record.
    pub fn to_record_line(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

#[derive(Debug, Clone, Copy)]
struct Accumulator {
    count: u64,
    sum: u128,
    sum_sq: u128,
    min: u64,
    max: u64,
}

impl Accumulator {
    const EMPTY: Self = Self {
        count: 0,
        sum: 0,
        sum_sq: 0,
        min: u64::MAX,
        max: 0,
    };

    fn push(mut self, x: u64) -> Self {
        self.count += 1;
        self.sum += x as u128;
        self.sum_sq += (x as u128) * (x as u128);
        self.min = self.min.min(x);
        self.max = self.max.max(x);
        self
    }

    fn merge(self, other: Self) -> Self {
        Self {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
            min: self.min.min(other.min),
            max: self.max.max(other.max),
        }
    }

    fn summarize(&self, seed: u64) -> TrialSummary {
        let n = self.count as f64;
        let mean = self.sum as f64 / n;
        let std_error = if self.count > 1 {
            let spread = self.count as u128 * self.sum_sq - self.sum * self.sum;
            let variance = spread as f64 / (n * (n - 1.0));
            (variance / n).sqrt()
        } else {
            0.0
        };
        TrialSummary {
            trials: self.count,
            mean,
            std_error,
            min: self.min,
            max: self.max,
            seed,
        }
    }
}

fn check_pattern(source: &SymbolSource, pattern: &[u8]) -> Result<(), SimulateError> {
    if pattern.is_empty() {
        return Err(SimulateError::EmptyPattern);
    }
    let size = source.alphabet_size();
    if let Some(&symbol) = pattern.iter().find(|&&s| s as usize >= size) {
        return Err(SimulateError::SymbolOutsideAlphabet { symbol, size });
    }
    if let SymbolSource::Markov(src) = source {
        let possible = pattern
            .windows(2)
            .all(|w| src.transition(w[0] as usize, w[1] as usize) > 0.0);
        if !possible {
            return Err(SimulateError::ImpossiblePattern);
        }
    }
    Ok(())
}

/// Keystrokes until `matcher` first accepts on stream `trial`.
pub fn run_trial(source: &SymbolSource, matcher: &mut PatternMatcher, seed: u64, trial: u64) -> u64 {
    let mut stream = source.stream(seed, trial);
    matcher.reset();
    let mut n = 0u64;
    loop {
        n += 1;
        if matcher.feed(stream.next_symbol()) {
            return n;
        }
    }
}

/// Runs `trials` independent first-occurrence trials on the current rayon pool.
pub fn simulate_source(
    source: &SymbolSource,
    pattern: &[u8],
    trials: u64,
    seed: u64,
) -> Result<TrialSummary, SimulateError> {
    if trials == 0 {
        return Err(SimulateError::ZeroTrials);
    }
    check_pattern(source, pattern)?;
    let matcher = PatternMatcher::new(pattern, source.alphabet_size());
    let acc = (0..trials)
        .into_par_iter()
        .fold(
            || (matcher.clone(), Accumulator::EMPTY),
            |(mut m, acc), t| {
                let x = run_trial(source, &mut m, seed, t);
                (m, acc.push(x))
            },
        )
        .map(|(_, acc)| acc)
        .reduce(|| Accumulator::EMPTY, Accumulator::merge);
    Ok(acc.summarize(seed))
}

pub fn simulate_waiting(
    model: &MonkeyModel,
    pattern: &NormalizedText,
    trials: u64,
    seed: u64,
) -> Result<TrialSummary, SimulateError> {
    let source = SymbolSource::from_model(model)?;
    simulate_source(&source, &pattern.symbols(), trials, seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Throughput {
    pub symbols: u64,
    pub elapsed_seconds: f64,
    pub symbols_per_second: f64,
}

const BENCH_CHUNK: u64 = 1 << 16;

/// Generation plus matching rate on one thread for about `duration`.
pub fn throughput_benchmark(source: &SymbolSource, duration: Duration) -> Throughput {
    let m = source.alphabet_size();
    let pattern: Vec<u8> = (0..16).map(|i| (i % m) as u8).collect();
    let mut matcher = PatternMatcher::new(&pattern, m);
    let mut stream = source.stream(0, 0);
    let start = Instant::now();
    let mut symbols = 0u64;
    let mut hits = 0u64;
    while start.elapsed() < duration {
        for _ in 0..BENCH_CHUNK {
            hits += matcher.feed(stream.next_symbol()) as u64;
        }
        symbols += BENCH_CHUNK;
    }
    std::hint::black_box(hits);
    let elapsed = start.elapsed().as_secs_f64();
    Throughput {
        symbols,
        elapsed_seconds: elapsed,
        symbols_per_second: if symbols == 0 { 0.0 } else { symbols as f64 / elapsed },
    }
}
