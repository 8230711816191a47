use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 64;

/// Default cap on subset-coordinate probes for separation checks.
pub const DEFAULT_PROBE_BUDGET: u128 = 100_000_000;

/// A block code of length `n` over the alphabet `{0, .., alphabet-1}`.
///
/// The text format and all reports use symbols `1..=alphabet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    alphabet: usize,
    n: usize,
    words: Vec<Vec<u8>>,
}

impl Code {
    /// Words are 0-based and must be distinct.
    pub fn new(alphabet: usize, n: usize, words: Vec<Vec<u8>>) -> Result<Self> {
        if !(2..=MAX_ALPHABET).contains(&alphabet) {
            return Err(Error::InvalidCode(format!(
                "alphabet size {alphabet} outside 2..={MAX_ALPHABET}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidCode("length must be >= 1".into()));
        }
        if words.is_empty() {
            return Err(Error::InvalidCode("code has no words".into()));
        }
        let mut seen = HashSet::with_capacity(words.len());
        for (w, word) in words.iter().enumerate() {
            if word.len() != n {
                return Err(Error::InvalidCode(format!(
                    "word {} has length {}, expected {n}",
                    w + 1,
                    word.len()
                )));
            }
            if let Some(&s) = word.iter().find(|&&s| s as usize >= alphabet) {
                return Err(Error::InvalidCode(format!(
                    "word {} uses symbol {} outside 1..={alphabet}",
                    w + 1,
                    s as usize + 1
                )));
            }
            if !seen.insert(word.as_slice()) {
                return Err(Error::InvalidCode(format!("word {} is repeated", w + 1)));
            }
        }
        Ok(Self { alphabet, n, words })
    }

    /// All `alphabet^n` words, in lexicographic order.
    pub fn full(alphabet: usize, n: usize) -> Result<Self> {
        let total = (alphabet as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > 1 << 24 {
            return Err(Error::Budget {
                what: "words in the full space",
                needed: total,
                budget: 1 << 24,
            });
        }
        let mut words = Vec::with_capacity(total as usize);
        let mut cur = vec![0u8; n];
        loop {
            words.push(cur.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    return Self::new(alphabet, n, words);
                }
                i -= 1;
                cur[i] += 1;
                if (cur[i] as usize) < alphabet {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    /// `log2 |C| / n`.
    pub fn rate(&self) -> f64 {
        (self.words.len() as f64).log2() / self.n as f64
    }

    /// Index of a 0-based word, if present.
    pub fn position(&self, word: &[u8]) -> Option<usize> {
        self.words.iter().position(|w| w == word)
    }

    /// Parse the text format: a header `k n`, then one word per line as
    /// whitespace-separated symbols in `1..=k`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut words = Vec::new();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected header `k n`, found {line:?}")));
                    }
                    let k: usize = fields[0]
                        .parse()
                        .map_err(|_| err(format!("bad alphabet size {:?}", fields[0])))?;
                    let n: usize = fields[1]
                        .parse()
                        .map_err(|_| err(format!("bad length {:?}", fields[1])))?;
                    if !(2..=MAX_ALPHABET).contains(&k) {
                        return Err(err(format!("alphabet size {k} outside 2..={MAX_ALPHABET}")));
                    }
                    if n == 0 {
                        return Err(err("length must be >= 1".into()));
                    }
                    header = Some((k, n));
                }
                Some((k, n)) => {
                    if fields.len() != n {
                        return Err(err(format!("expected {n} symbols, found {}", fields.len())));
                    }
                    let mut word = Vec::with_capacity(n);
                    for f in fields {
                        let s: usize = f.parse().map_err(|_| err(format!("bad symbol {f:?}")))?;
                        if !(1..=k).contains(&s) {
                            return Err(err(format!("symbol {s} outside 1..={k}")));
                        }
                        word.push((s - 1) as u8);
                    }
                    if !seen.insert(word.clone()) {
                        return Err(err("repeated word".into()));
                    }
                    words.push(word);
                }
            }
        }
        let (k, n) = header.ok_or(Error::Parse {
            line: 0,
            message: "missing header".into(),
        })?;
        if words.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "code has no words".into(),
            });
        }
        Self::new(k, n, words)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.alphabet, self.n);
        for w in &self.words {
            let line: Vec<String> = w.iter().map(|&s| (s as usize + 1).to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Outcome of a separation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub order: usize,
    pub separated: bool,
    /// First violating subset of word indices in colex order.
    pub witness: Option<Vec<usize>>,
    pub subsets_checked: u128,
}

pub(crate) fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Advance `c` (strictly increasing, entries `< n`) to the next subset in colex order.
pub(crate) fn next_colex(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in 0..r {
        let limit = if i + 1 < r { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, v) in c.iter_mut().enumerate().take(i) {
                *v = j;
            }
            return true;
        }
    }
    false
}

fn all_distinct_at(code: &Code, subset: &[usize], coord: usize) -> bool {
    let mut mask = 0u64;
    for &w in subset {
        let bit = 1u64 << code.words[w][coord];
        if mask & bit != 0 {
            return false;
        }
        mask |= bit;
    }
    true
}

/// Whether every `order` distinct words differ pairwise in some coordinate.
///
/// Subsets are scanned in colex order, so the witness is the violating
/// subset of lowest colex rank. Codes with fewer than `order` words are
/// vacuously separated.
pub fn is_separated(code: &Code, order: usize, budget: u128) -> Result<Separation> {
    if order < 2 || order > code.alphabet {
        return Err(Error::InvalidParams {
            b: code.alphabet,
            k: order,
            reason: "separation order must satisfy 2 <= k <= alphabet size",
        });
    }
    let m = code.len();
    let subsets = binomial(m as u128, order as u128);
    let needed = subsets.saturating_mul(code.n as u128);
    if needed > budget {
        return Err(Error::Budget {
            what: "subset-coordinate probes",
            needed,
            budget,
        });
    }
    if m < order {
        return Ok(Separation {
            order,
            separated: true,
            witness: None,
            subsets_checked: 0,
        });
    }
    let mut c: Vec<usize> = (0..order).collect();
    let mut checked = 0u128;
    loop {
        checked += 1;
        if !(0..code.n).any(|i| all_distinct_at(code, &c, i)) {
            return Ok(Separation {
                order,
                separated: false,
                witness: Some(c),
                subsets_checked: checked,
            });
        }
        if !next_colex(&mut c, m) {
            break;
        }
    }
    Ok(Separation {
        order,
        separated: true,
        witness: None,
        subsets_checked: checked,
    })
}

/// [`is_separated`] with `order` equal to the alphabet size.
pub fn is_k_separated(code: &Code) -> Result<Separation> {
    is_separated(code, code.alphabet, DEFAULT_PROBE_BUDGET)
}

/// Whether adding `word` to the separated code `code` keeps it `order`-separated.
pub(crate) fn extends_separated(code_words: &[Vec<u8>], word: &[u8], order: usize) -> bool {
    let m = code_words.len();
    if m + 1 < order {
        return true;
    }
    let r = order - 1;
    let mut c: Vec<usize> = (0..r).collect();
    let n = word.len();
    loop {
        let ok = (0..n).any(|i| {
            let mut mask = 1u64 << word[i];
            c.iter().all(|&w| {
                let bit = 1u64 << code_words[w][i];
                let fresh = mask & bit == 0;
                mask |= bit;
                fresh
            })
        });
        if !ok {
            return false;
        }
        if !next_colex(&mut c, m) {
            return true;
        }
    }
}
