//! Subcodes obtained by restricting a set `T` of coordinates to `(k-3)`-sets
//! of symbols. Any `k-2` words of such a subcode collide somewhere on every
//! coordinate of `T`.

use super::code::{binomial, next_colex, Code};
use crate::error::{Error, Result};

/// Default cap on `|Omega| = C(k,3)^|T|`.
pub const DEFAULT_CENSUS_BUDGET: u128 = 10_000_000;

/// One restriction pattern: a `(k-3)`-set of symbols for every coordinate of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaPattern {
    pub coords: Vec<usize>,
    /// 0-based symbol sets, sorted, aligned with `coords`.
    pub sets: Vec<Vec<u8>>,
}

impl OmegaPattern {
    /// `x_T ⊢ omega`: the word's symbol lies in the pattern's set at every coordinate of `T`.
    pub fn admits(&self, word: &[u8]) -> bool {
        self.coords
            .iter()
            .zip(&self.sets)
            .all(|(&t, set)| set.contains(&word[t]))
    }

    /// Indices of the words of `code` admitted by the pattern.
    pub fn subcode(&self, code: &Code) -> Vec<usize> {
        (0..code.len()).filter(|&w| self.admits(code.word(w))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub k: usize,
    pub coords: Vec<usize>,
    /// Every `(k-3)`-subset of symbols, in colex order; patterns index into it.
    pub symbol_sets: Vec<Vec<u8>>,
    /// `M_omega` for every pattern, indexed in mixed radix with the first coordinate most significant.
    pub counts: Vec<u64>,
    pub richest: usize,
}

impl Census {
    pub fn num_patterns(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    pub fn pattern(&self, index: usize) -> OmegaPattern {
        let r = self.symbol_sets.len();
        let mut rem = index;
        let mut sets = vec![Vec::new(); self.coords.len()];
        for slot in sets.iter_mut().rev() {
            *slot = self.symbol_sets[rem % r].clone();
            rem /= r;
        }
        OmegaPattern {
            coords: self.coords.clone(),
            sets,
        }
    }

    pub fn richest_pattern(&self) -> OmegaPattern {
        self.pattern(self.richest)
    }

    pub fn richest_count(&self) -> u64 {
        self.counts[self.richest]
    }
}

/// `|C| * C(k-1, 3)^|T|`, the value every census total must equal.
pub fn census_identity_total(code_size: usize, k: usize, t: usize) -> u128 {
    (code_size as u128) * binomial(k as u128 - 1, 3).pow(t as u32)
}

/// Count `M_omega = |{x in C : x_T ⊢ omega}|` for every pattern over `T`.
/// Ties for the richest pattern go to the lowest index.
pub fn subcode_census(code: &Code, coords: &[usize], budget: u128) -> Result<Census> {
    let k = code.alphabet();
    if k < 4 {
        return Err(Error::InvalidAlphabet {
            k,
            reason: "subcode patterns need k >= 4",
        });
    }
    if coords.is_empty() {
        return Err(Error::Index("T must be non-empty".into()));
    }
    for (p, &t) in coords.iter().enumerate() {
        if t >= code.n() || coords[..p].contains(&t) {
            return Err(Error::Index(format!("bad coordinate {t} in T")));
        }
    }
    let r = k - 3;
    let per = binomial(k as u128, r as u128);
    let needed = per.checked_pow(coords.len() as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget {
            what: "restriction patterns",
            needed,
            budget,
        });
    }
    let mut symbol_sets = Vec::with_capacity(per as usize);
    let mut c: Vec<usize> = (0..r).collect();
    loop {
        symbol_sets.push(c.iter().map(|&s| s as u8).collect::<Vec<u8>>());
        if !next_colex(&mut c, k) {
            break;
        }
    }
    // sets containing each symbol
    let containing: Vec<Vec<usize>> = (0..k as u8)
        .map(|s| {
            (0..symbol_sets.len())
                .filter(|&i| symbol_sets[i].contains(&s))
                .collect()
        })
        .collect();
    let radix = symbol_sets.len();
    let mut counts = vec![0u64; needed as usize];
    let mut odo = vec![0usize; coords.len()];
    for word in code.words() {
        let choices: Vec<&Vec<usize>> = coords.iter().map(|&t| &containing[word[t] as usize]).collect();
        odo.iter_mut().for_each(|v| *v = 0);
        'outer: loop {
            let idx = odo
                .iter()
                .zip(&choices)
                .fold(0usize, |acc, (&o, ch)| acc * radix + ch[o]);
            counts[idx] += 1;
            let mut p = odo.len();
            loop {
                if p == 0 {
                    break 'outer;
                }
                p -= 1;
                odo[p] += 1;
                if odo[p] < choices[p].len() {
                    break;
                }
                odo[p] = 0;
            }
        }
    }
    let mut richest = 0;
    for (i, &m) in counts.iter().enumerate() {
        if m > counts[richest] {
            richest = i;
        }
    }
    Ok(Census {
        k,
        coords: coords.to_vec(),
        symbol_sets,
        counts,
        richest,
    })
}
