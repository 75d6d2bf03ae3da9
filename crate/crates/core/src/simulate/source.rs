//! Seeded symbol streams for simulated monkeys.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entropy::MarkovSource;
use crate::waiting::MonkeyModel;

use super::SimulateError;

/// Where keystrokes come from.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolSource {
    Uniform { m: u32 },
    Iid { cdf: Vec<f64> },
    Markov(MarkovSource),
}

impl SymbolSource {
    pub fn uniform(m: u32) -> Result<Self, SimulateError> {
        if m < 2 {
            return Err(SimulateError::InvalidSource(format!(
                "alphabet size {m} < 2"
            )));
        }
        if m > 256 {
            return Err(SimulateError::InvalidSource(format!(
                "alphabet size {m} > 256"
            )));
        }
        Ok(Self::Uniform { m })
    }

    pub fn iid(probs: &[f64]) -> Result<Self, SimulateError> {
        MonkeyModel::iid(probs.to_vec()).map_err(|e| SimulateError::InvalidSource(e.to_string()))?;
        if probs.len() > 256 {
            return Err(SimulateError::InvalidSource("more than 256 symbols".into()));
        }
        Ok(Self::Iid { cdf: cumulative(probs) })
    }

    pub fn from_model(model: &MonkeyModel) -> Result<Self, SimulateError> {
        match model {
            MonkeyModel::UniformRandom { m } => Self::uniform(*m),
            MonkeyModel::IidGeneral { probs } => Self::iid(probs),
            MonkeyModel::Educated { .. } => Err(SimulateError::InvalidSource(
                "the educated monkey has no explicit distribution to sample".into(),
            )),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            Self::Uniform { m } => *m as usize,
            Self::Iid { cdf } => cdf.len(),
            Self::Markov(src) => src.num_states(),
        }
    }

    /// Stream number `stream` of the generator keyed by `seed`. Streams are
    /// independent, so trial `i` can use stream `i` on any worker.
    pub fn stream(&self, seed: u64, stream: u64) -> SymbolStream<'_> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        self.stream_from_rng(rng)
    }

    pub fn stream_from_rng(&self, rng: ChaCha8Rng) -> SymbolStream<'_> {
        let kind = match self {
            Self::Uniform { m } => StreamKind::Uniform(UniformDigits::new(*m)),
            Self::Iid { cdf } => StreamKind::Iid(cdf),
            Self::Markov(src) => StreamKind::Markov {
                source: src,
                state: None,
            },
        };
        SymbolStream { rng, kind }
    }
}

pub(crate) fn cumulative(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = probs
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    if let Some(last) = cdf.last_mut() {
        *last = 1.0;
    }
    cdf
}

#[inline]
fn sample_cdf(cdf: &[f64], u: f64) -> u8 {
    cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1) as u8
}

/// Several uniform digits base `m` per 64-bit draw, with rejection so every
/// digit is exactly uniform.
#[derive(Debug, Clone)]
struct UniformDigits {
    m: u64,
    digits: u32,
    // draws >= limit are rejected; None accepts every draw
    limit: Option<u64>,
    buffer: u64,
    left: u32,
}

impl UniformDigits {
    fn new(m: u32) -> Self {
        let m = m as u128;
        let two64 = 1u128 << 64;
        // digit count with the most accepted digits per draw
        let mut best = (0u32, 1u128, 0f64);
        let mut span: u128 = 1;
        let mut digits = 0u32;
        while span * m <= two64 {
            span *= m;
            digits += 1;
            let full = (two64 / span) * span;
            let yield_ = digits as f64 * full as f64 / two64 as f64;
            if yield_ > best.2 {
                best = (digits, full, yield_);
            }
        }
        let (digits, full, _) = best;
        let limit = (full < two64).then_some(full as u64);
        Self {
            m: m as u64,
            digits,
            limit,
            buffer: 0,
            left: 0,
        }
    }

    #[inline]
    fn next(&mut self, rng: &mut ChaCha8Rng) -> u8 {
        if self.left == 0 {
            self.buffer = loop {
                let x = rng.next_u64();
                match self.limit {
                    Some(limit) if x >= limit => continue,
                    _ => break x,
                }
            };
            self.left = self.digits;
        }
        let digit = self.buffer % self.m;
        self.buffer /= self.m;
        self.left -= 1;
        digit as u8
    }
}

#[derive(Debug, Clone)]
enum StreamKind<'a> {
    Uniform(UniformDigits),
    Iid(&'a [f64]),
    Markov {
        source: &'a MarkovSource,
        state: Option<usize>,
    },
}

#[derive(Debug, Clone)]
pub struct SymbolStream<'a> {
    rng: ChaCha8Rng,
    kind: StreamKind<'a>,
}

impl SymbolStream<'_> {
    #[inline]
    pub fn next_symbol(&mut self) -> u8 {
        match &mut self.kind {
            StreamKind::Uniform(d) => d.next(&mut self.rng),
            StreamKind::Iid(cdf) => sample_cdf(cdf, self.rng.random::<f64>()),
            StreamKind::Markov { source, state } => {
                let u = self.rng.random::<f64>();
                let next = match *state {
                    None => sample_cdf(source.initial_cdf(), u),
                    Some(s) => sample_cdf(source.transition_cdf(s), u),
                };
                *state = Some(next as usize);
                next
            }
        }
    }

    /// Fills `out` with the next symbols.
    pub fn fill(&mut self, out: &mut [u8]) {
        for slot in out {
            *slot = self.next_symbol();
        }
    }
}

impl Iterator for SymbolStream<'_> {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.next_symbol())
    }
}
