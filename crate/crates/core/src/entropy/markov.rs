use crate::simulate::source::cumulative;

use super::EntropyError;

const ROW_SUM_TOLERANCE: f64 = 1e-12;

/// Finite, irreducible Markov chain over symbols `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovSource {
    transition: Vec<Vec<f64>>,
    initial: Vec<f64>,
    transition_cdf: Vec<Vec<f64>>,
    initial_cdf: Vec<f64>,
}

fn check_distribution(p: &[f64], what: &str) -> Result<(), EntropyError> {
    if p.iter().any(|&x| !(x.is_finite() && x >= 0.0)) {
        return Err(EntropyError::InvalidSource(format!("{what} has a negative or non-finite entry")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
        return Err(EntropyError::InvalidSource(format!("{what} sums to {sum}")));
    }
    Ok(())
}

impl MarkovSource {
    pub fn new(transition: Vec<Vec<f64>>, initial: Vec<f64>) -> Result<Self, EntropyError> {
        let n = transition.len();
        if n == 0 || n > 256 {
            return Err(EntropyError::InvalidSource(format!("{n} states; need 1 to 256")));
        }
        if initial.len() != n || transition.iter().any(|row| row.len() != n) {
            return Err(EntropyError::InvalidSource("matrix is not square".into()));
        }
        for (i, row) in transition.iter().enumerate() {
            check_distribution(row, &format!("row {i}"))?;
        }
        check_distribution(&initial, "initial distribution")?;
        if let Some(state) = first_unreaching_state(&transition) {
            return Err(EntropyError::Reducible(state));
        }
        Ok(Self {
            transition_cdf: transition.iter().map(|r| cumulative(r)).collect(),
            initial_cdf: cumulative(&initial),
            transition,
            initial,
        })
    }

    /// Independent draws from `probs`: every row equals `probs`.
    pub fn iid(probs: &[f64]) -> Result<Self, EntropyError> {
        Self::new(vec![probs.to_vec(); probs.len()], probs.to_vec())
    }

    /// Two states that swap with probability `switch`, started uniformly.
    pub fn symmetric_binary(switch: f64) -> Result<Self, EntropyError> {
        Self::new(
            vec![vec![1.0 - switch, switch], vec![switch, 1.0 - switch]],
            vec![0.5, 0.5],
        )
    }

    pub fn num_states(&self) -> usize {
        self.transition.len()
    }

    pub fn transition(&self, from: usize, to: usize) -> f64 {
        self.transition[from][to]
    }

    pub fn transition_matrix(&self) -> &[Vec<f64>] {
        &self.transition
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub(crate) fn transition_cdf(&self, from: usize) -> &[f64] {
        &self.transition_cdf[from]
    }

    pub(crate) fn initial_cdf(&self) -> &[f64] {
        &self.initial_cdf
    }

    /// Solves `πP = π`, `Σπ = 1` by Gaussian elimination.
    pub fn stationary(&self) -> Vec<f64> {
        let n = self.num_states();
        // rows: (P^T − I) with the last equation replaced by the normalization
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut row: Vec<f64> = (0..n).map(|j| self.transition[j][i]).collect();
                row[i] -= 1.0;
                row.push(0.0);
                row
            })
            .collect();
        a[n - 1] = vec![1.0; n + 1];
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
                .expect("nonempty");
            a.swap(col, pivot);
            let diag = a[col][col];
            for j in col..=n {
                a[col][j] /= diag;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0.0 {
                    let f = a[r][col];
                    for j in col..=n {
                        a[r][j] -= f * a[col][j];
                    }
                }
            }
        }
        a.iter().map(|row| row[n].max(0.0)).collect()
    }

    /// Entropy of the stationary single-symbol distribution, `H_1`.
    pub fn marginal_entropy(&self) -> f64 {
        entropy_bits(&self.stationary())
    }

    /// `-log2` of each transition probability, `inf` where it is zero.
    pub(crate) fn transition_surprisal(&self) -> Vec<Vec<f64>> {
        self.transition
            .iter()
            .map(|row| row.iter().map(|&p| -p.log2()).collect())
            .collect()
    }

    pub(crate) fn initial_surprisal(&self) -> Vec<f64> {
        self.initial.iter().map(|&p| -p.log2()).collect()
    }
}

fn entropy_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

fn first_unreaching_state(transition: &[Vec<f64>]) -> Option<usize> {
    let n = transition.len();
    (0..n).find(|&start| {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(s) = stack.pop() {
            for (t, &p) in transition[s].iter().enumerate() {
                if p > 0.0 && !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen.iter().any(|&r| !r)
    })
}

/// `-Σ_i π_i Σ_j P_ij log2 P_ij` in bits per symbol.
pub fn markov_entropy_rate(src: &MarkovSource) -> f64 {
    src.stationary()
        .iter()
        .zip(src.transition_matrix())
        .map(|(pi, row)| pi * entropy_bits(row))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary_entropy(p: f64) -> f64 {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }

    #[test]
    fn fair_coin() {
        let src = MarkovSource::symmetric_binary(0.5).unwrap();
        assert!((markov_entropy_rate(&src) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_chain_is_iid() {
        let src = MarkovSource::iid(&[0.25, 0.75]).unwrap();
        assert!((markov_entropy_rate(&src) - binary_entropy(0.25)).abs() < 1e-12);
        assert!((markov_entropy_rate(&src) - 0.811_278_124_459_132_8).abs() < 1e-12);
        let pi = src.stationary();
        assert!((pi[0] - 0.25).abs() < 1e-12 && (pi[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn uniform_27() {
        let src = MarkovSource::iid(&[1.0 / 27.0; 27]).unwrap();
        assert!((markov_entropy_rate(&src) - 27f64.log2()).abs() < 1e-9);
        assert!((27f64.log2() - 4.755).abs() < 1e-3);
    }

    #[test]
    fn sticky_chain() {
        let src = MarkovSource::symmetric_binary(0.1).unwrap();
        assert!((markov_entropy_rate(&src) - binary_entropy(0.1)).abs() < 1e-12);
        assert!((markov_entropy_rate(&src) - 0.469).abs() < 1e-3);
        assert!((src.marginal_entropy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_stationary() {
        // π = (b, a) / (a + b) for switch probabilities a (0→1) and b (1→0)
        let src = MarkovSource::new(vec![vec![0.7, 0.3], vec![0.1, 0.9]], vec![1.0, 0.0]).unwrap();
        let pi = src.stationary();
        assert!((pi[0] - 0.25).abs() < 1e-12);
        assert!((pi[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert_eq!(
            MarkovSource::new(vec![vec![1.0, 0.0], vec![0.5, 0.5]], vec![0.5, 0.5]),
            Err(EntropyError::Reducible(0))
        );
        assert!(MarkovSource::new(vec![vec![0.5, 0.4], vec![0.5, 0.5]], vec![0.5, 0.5]).is_err());
        assert!(MarkovSource::new(vec![vec![1.0]], vec![1.0]).is_ok());
        assert!(MarkovSource::new(vec![vec![0.5, 0.5]], vec![1.0]).is_err());
    }
}
