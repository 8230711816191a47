use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::code::{extends_separated, Code};
use crate::bounds::prob_lower;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub code: Code,
    pub rate: f64,
    /// Random-coding lower bound for the same `k`, for comparison.
    pub prob_lower: f64,
    pub trials: usize,
}

/// Greedy random search: draw `trials` uniform words and keep each one that
/// leaves the code `k`-separated. Deterministic given `seed`.
pub fn random_code_search(k: usize, n: usize, trials: usize, seed: u64) -> Result<SearchResult> {
    if !(2..=super::code::MAX_ALPHABET).contains(&k) || n == 0 {
        return Err(Error::InvalidCode(format!("unsupported k={k}, n={n}")));
    }
    if trials == 0 {
        return Err(Error::Config("trials must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words: Vec<Vec<u8>> = Vec::new();
    for _ in 0..trials {
        let w: Vec<u8> = (0..n).map(|_| rng.gen_range(0..k as u8)).collect();
        if words.contains(&w) {
            continue;
        }
        if extends_separated(&words, &w, k) {
            words.push(w);
        }
    }
    let code = Code::new(k, n, words)?;
    Ok(SearchResult {
        rate: code.rate(),
        prob_lower: prob_lower::<f64>(k)?,
        code,
        trials,
    })
}
