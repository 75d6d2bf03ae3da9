//! Sliding-window match-length estimator.
//!
//! For each position `i >= W`, `Λ_i` is one more than the length of the
//! longest string starting at `i` that also starts at some `j` in
//! `[i − W, i)`. Match lengths are capped at `W`, so a constant text
//! saturates at `Λ = W + 1`. The estimate is `log2(W) / mean(Λ)`.
//!
//! Longest matches come from a suffix array: the best partner for `i` is the
//! window position whose suffix rank is nearest to `i`'s on either side, and
//! their common prefix is a range minimum over the LCP array.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::registry::Named;
use crate::textnorm::NormalizedText;

use super::{EntropyError, EntropyEstimate, EntropyEstimator};

const POSITION_CHUNK: usize = 1 << 17;

/// Suffix array by prefix doubling with counting sorts.
pub fn suffix_array(text: &[u8]) -> Vec<u32> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<u32> = (0..n as u32).collect();
    sa.sort_by_key(|&i| text[i as usize]);
    let mut rank = vec![0u32; n];
    for w in 1..n {
        let (a, b) = (sa[w - 1] as usize, sa[w] as usize);
        rank[b] = rank[a] + (text[a] != text[b]) as u32;
    }
    let mut classes = rank[sa[n - 1] as usize] as usize + 1;
    let mut by_second = vec![0u32; n];
    let mut next_rank = vec![0u32; n];
    let mut bucket = vec![0usize; n.max(256) + 1];
    let mut k = 1;
    while classes < n {
        // order by second key: suffixes without one come first
        let mut p = 0;
        for i in n.saturating_sub(k)..n {
            by_second[p] = i as u32;
            p += 1;
        }
        for &s in &sa {
            if s as usize >= k {
                by_second[p] = s - k as u32;
                p += 1;
            }
        }
        // stable counting sort by first key
        bucket[..=classes].iter_mut().for_each(|b| *b = 0);
        for &r in &rank {
            bucket[r as usize + 1] += 1;
        }
        for c in 1..=classes {
            bucket[c] += bucket[c - 1];
        }
        for &s in &by_second {
            let r = rank[s as usize] as usize;
            sa[bucket[r]] = s;
            bucket[r] += 1;
        }
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] as i64 } else { -1 });
        next_rank[sa[0] as usize] = 0;
        for w in 1..n {
            let (a, b) = (sa[w - 1] as usize, sa[w] as usize);
            next_rank[b] = next_rank[a] + (key(a) != key(b)) as u32;
        }
        std::mem::swap(&mut rank, &mut next_rank);
        classes = rank[sa[n - 1] as usize] as usize + 1;
        k *= 2;
    }
    sa
}

/// `lcp[r]` = common prefix of the suffixes ranked `r − 1` and `r` (Kasai).
fn lcp_array(text: &[u8], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Iterative range-minimum segment tree.
struct MinTree {
    size: usize,
    tree: Vec<u32>,
}

impl MinTree {
    fn new(values: &[u32]) -> Self {
        let size = values.len().max(1);
        let mut tree = vec![u32::MAX; 2 * size];
        tree[size..size + values.len()].copy_from_slice(values);
        for i in (1..size).rev() {
            tree[i] = tree[2 * i].min(tree[2 * i + 1]);
        }
        Self { size, tree }
    }

    /// Minimum over `lo..hi`.
    fn min(&self, lo: usize, hi: usize) -> u32 {
        let (mut lo, mut hi) = (lo + self.size, hi + self.size);
        let mut best = u32::MAX;
        while lo < hi {
            if lo & 1 == 1 {
                best = best.min(self.tree[lo]);
                lo += 1;
            }
            if hi & 1 == 1 {
                hi -= 1;
                best = best.min(self.tree[hi]);
            }
            lo /= 2;
            hi /= 2;
        }
        best
    }
}

struct SuffixIndex {
    rank: Vec<u32>,
    lcp: MinTree,
}

impl SuffixIndex {
    fn new(text: &[u8]) -> Self {
        let sa = suffix_array(text);
        let mut rank = vec![0u32; text.len()];
        for (r, &s) in sa.iter().enumerate() {
            rank[s as usize] = r as u32;
        }
        let lcp = lcp_array(text, &sa, &rank);
        Self {
            rank,
            lcp: MinTree::new(&lcp),
        }
    }

    /// Common prefix length of the suffixes ranked `a < b`.
    fn lcp_between(&self, a: u32, b: u32) -> u32 {
        self.lcp.min(a as usize + 1, b as usize + 1)
    }
}

/// `Λ_i` for every `i` in `window..text.len()`.
pub fn match_lengths(text: &[u8], window: usize) -> Vec<u32> {
    let n = text.len();
    if window == 0 || n <= window {
        return Vec::new();
    }
    let index = SuffixIndex::new(text);
    let starts: Vec<usize> = (window..n).step_by(POSITION_CHUNK).collect();
    starts
        .into_par_iter()
        .flat_map_iter(|start| {
            let end = (start + POSITION_CHUNK).min(n);
            chunk_match_lengths(&index, n, window, start, end)
        })
        .collect()
}

fn chunk_match_lengths(index: &SuffixIndex, n: usize, window: usize, start: usize, end: usize) -> Vec<u32> {
    let mut ranks: BTreeSet<u32> = index.rank[start - window..start].iter().copied().collect();
    let mut out = Vec::with_capacity(end - start);
    for i in start..end {
        let r = index.rank[i];
        let below = ranks.range(..r).next_back().map(|&q| index.lcp_between(q, r));
        let above = ranks.range(r + 1..).next().map(|&q| index.lcp_between(r, q));
        let longest = below.unwrap_or(0).max(above.unwrap_or(0)) as usize;
        out.push(1 + longest.min(window).min(n - i) as u32);
        ranks.remove(&index.rank[i - window]);
        ranks.insert(r);
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MatchLengthEstimator;

impl Named for MatchLengthEstimator {
    fn name(&self) -> &'static str {
        "matchlen"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["match-length", "lz"]
    }
    fn description(&self) -> &'static str {
        "sliding-window match lengths, log2(W) / mean(Λ)"
    }
}

impl EntropyEstimator for MatchLengthEstimator {
    fn parameter_name(&self) -> &'static str {
        "window"
    }

    fn default_parameter(&self) -> usize {
        1 << 16
    }

    fn estimate_symbols(
        &self,
        symbols: &[u8],
        alphabet_size: usize,
        window: usize,
    ) -> Result<EntropyEstimate, EntropyError> {
        if window < 2 {
            return Err(EntropyError::InvalidParameter("window must be at least 2".into()));
        }
        if symbols.len() < 2 * window {
            return Err(EntropyError::TooShort {
                needed: 2 * window,
                got: symbols.len(),
            });
        }
        let lambdas = match_lengths(symbols, window);
        let total: u64 = lambdas.iter().map(|&l| l as u64).sum();
        let mean = total as f64 / lambdas.len() as f64;
        let raw = (window as f64).log2() / mean;
        Ok(EntropyEstimate::bounded(raw, alphabet_size, "matchlen", window, symbols.len()))
    }
}

pub fn match_length_entropy(
    text: &NormalizedText,
    window: usize,
) -> Result<EntropyEstimate, EntropyError> {
    MatchLengthEstimator.estimate(text, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::SymbolSource;
    use proptest::prelude::*;

    fn brute_lambdas(s: &[u8], w: usize) -> Vec<u32> {
        (w..s.len())
            .map(|i| {
                let best = (i - w..i)
                    .map(|j| (0..s.len() - i).take_while(|&k| s[i + k] == s[j + k]).count())
                    .max()
                    .unwrap_or(0);
                1 + best.min(w) as u32
            })
            .collect()
    }

    fn brute_suffix_array(s: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..s.len() as u32).collect();
        sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        sa
    }

    #[test]
    fn suffix_array_small_cases() {
        assert!(suffix_array(b"").is_empty());
        assert_eq!(suffix_array(b"banana"), vec![5, 3, 1, 0, 4, 2]);
        assert_eq!(suffix_array(b"aaaa"), vec![3, 2, 1, 0]);
    }

    #[test]
    fn constant_text_saturates() {
        let s = vec![0u8; 10_000];
        let lambdas = match_lengths(&s, 256);
        assert_eq!(lambdas[0], 257);
        assert_eq!(lambdas[10_000 - 256 - 256 - 1], 257);
        assert_eq!(*lambdas.last().unwrap(), 2);
        let e = MatchLengthEstimator.estimate_symbols(&s, 2, 256).unwrap();
        assert!((e.value - 8.0 / 257.0).abs() < 0.002, "{e:?}");
        let wider = MatchLengthEstimator.estimate_symbols(&s, 2, 2048).unwrap();
        assert!(wider.value < e.value);
    }

    #[test]
    fn chunked_positions_match_single_pass() {
        let src = SymbolSource::uniform(2).unwrap();
        let s: Vec<u8> = src.stream(1, 0).take(POSITION_CHUNK + 5_000).collect();
        let index = SuffixIndex::new(&s);
        let single = chunk_match_lengths(&index, s.len(), 64, 64, s.len());
        assert_eq!(match_lengths(&s, 64), single);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            MatchLengthEstimator.estimate_symbols(&[0; 10], 2, 1),
            Err(EntropyError::InvalidParameter(_))
        ));
        assert_eq!(
            MatchLengthEstimator.estimate_symbols(&[0; 10], 2, 8),
            Err(EntropyError::TooShort { needed: 16, got: 10 })
        );
    }

    proptest! {
        #[test]
        fn suffix_array_matches_sort(s in proptest::collection::vec(0u8..3, 0..200)) {
            prop_assert_eq!(suffix_array(&s), brute_suffix_array(&s));
        }

        #[test]
        fn lambdas_match_brute_force(s in proptest::collection::vec(0u8..3, 4..300), w in 2usize..20) {
            prop_assume!(s.len() > w);
            prop_assert_eq!(match_lengths(&s, w), brute_lambdas(&s, w));
        }
    }
}
