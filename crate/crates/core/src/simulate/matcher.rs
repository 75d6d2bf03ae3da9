//! Single-pattern failure-function automaton.

/// Border array indexed by prefix length: `failure[j]` is the length of the
/// longest proper border of `pattern[..j]`, with `failure[0] = 0`.
pub fn failure_function(pattern: &[u8]) -> Vec<usize> {
    let mut failure = vec![0usize; pattern.len() + 1];
    let mut k = 0;
    for j in 1..pattern.len() {
        while k > 0 && pattern[j] != pattern[k] {
            k = failure[k];
        }
        if pattern[j] == pattern[k] {
            k += 1;
        }
        failure[j + 1] = k;
    }
    failure
}

/// All `j` with `pattern[..j] == pattern[len-j..]`, ascending, `len` included.
pub fn borders(pattern: &[u8]) -> Vec<usize> {
    if pattern.is_empty() {
        return Vec::new();
    }
    let failure = failure_function(pattern);
    let mut out = Vec::new();
    let mut j = pattern.len();
    while j > 0 {
        out.push(j);
        j = failure[j];
    }
    out.reverse();
    out
}

/// Streaming matcher over symbols `0..alphabet_size`. State `s` means the
/// last `s` symbols fed equal `pattern[..s]`; state `len` accepts.
#[derive(Debug, Clone)]
pub struct PatternMatcher {
    pattern: Vec<u8>,
    failure: Vec<usize>,
    alphabet_size: usize,
    // transitions[s * alphabet_size + c] for s < len
    transitions: Vec<u32>,
    state: usize,
}

impl PatternMatcher {
    /// Panics if the pattern is empty or holds a symbol `>= alphabet_size`.
    pub fn new(pattern: &[u8], alphabet_size: usize) -> Self {
        assert!(!pattern.is_empty(), "pattern must be nonempty");
        assert!(
            pattern.iter().all(|&c| (c as usize) < alphabet_size),
            "pattern symbol outside alphabet"
        );
        let failure = failure_function(pattern);
        let len = pattern.len();
        let mut transitions = vec![0u32; len * alphabet_size];
        for s in 0..len {
            for c in 0..alphabet_size {
                let next = if pattern[s] as usize == c {
                    s + 1
                } else if s == 0 {
                    0
                } else {
                    transitions[failure[s] * alphabet_size + c] as usize
                };
                transitions[s * alphabet_size + c] = next as u32;
            }
        }
        Self {
            pattern: pattern.to_vec(),
            failure,
            alphabet_size,
            transitions,
            state: 0,
        }
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    pub fn failure(&self) -> &[usize] {
        &self.failure
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn reset(&mut self) {
        self.state = 0;
    }

    /// Advances by one symbol; true when the pattern has just been completed.
    /// Feeding after acceptance restarts from the longest proper border.
    #[inline]
    pub fn feed(&mut self, symbol: u8) -> bool {
        let from = if self.state == self.pattern.len() {
            self.failure[self.state]
        } else {
            self.state
        };
        self.state = self.transitions[from * self.alphabet_size + symbol as usize] as usize;
        self.state == self.pattern.len()
    }

    /// 1-based index of the last symbol of the first occurrence in `stream`.
    pub fn first_occurrence<I: IntoIterator<Item = u8>>(&mut self, stream: I) -> Option<usize> {
        self.reset();
        stream
            .into_iter()
            .position(|c| self.feed(c))
            .map(|i| i + 1)
    }
}
