//! Numeric checks of the graph and hypergraph covering inequalities behind
//! the upper bounds.
//!
//! Fix `j` words `x_1..x_j` of a code. Coordinate `i` defines a hypergraph on
//! the remaining words: a set of `k - j` words is an edge when those words
//! and the fixed ones all carry different symbols at `i`. Separation of the
//! code means these hypergraphs cover every `(k-j)`-set.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::code::{is_separated, Code, DEFAULT_PROBE_BUDGET};
use super::frequency::rational_to_f64;
use crate::error::{Error, Result};

/// Slack allowed when comparing the two sides.
pub const HANSEL_SLACK: f64 = 1e-12;

fn check_fixed(code: &Code, fixed: &[usize]) -> Result<()> {
    for (p, &w) in fixed.iter().enumerate() {
        if w >= code.len() {
            return Err(Error::Index(format!("fixed word {w} out of range")));
        }
        if fixed[..p].contains(&w) {
            return Err(Error::Index(format!("fixed word {w} repeated")));
        }
    }
    if fixed.len() >= code.len() {
        return Err(Error::Index("no words left after fixing".into()));
    }
    Ok(())
}

fn fixed_mask(code: &Code, i: usize, fixed: &[usize]) -> Option<u64> {
    let mut mask = 0u64;
    for &w in fixed {
        let bit = 1u64 << code.word(w)[i];
        if mask & bit != 0 {
            return None;
        }
        mask |= bit;
    }
    Some(mask)
}

/// Free words at coordinate `i`: count of remaining words whose symbol avoids
/// the fixed symbols, and the number of distinct such symbols.
fn free_stats(code: &Code, i: usize, fixed: &[usize], mask: u64) -> (usize, u32) {
    let mut count = 0;
    let mut symbols = 0u64;
    for (w, word) in code.words().iter().enumerate() {
        if fixed.contains(&w) {
            continue;
        }
        let bit = 1u64 << word[i];
        if mask & bit == 0 {
            count += 1;
            symbols |= bit;
        }
    }
    (count, symbols.count_ones())
}

/// `tau_i = |C|/(|C|-j) * (1 - sum_s f_i[x_s,i])`, or 0 when the fixed symbols collide.
///
/// This counts the remaining words whose symbol at `i` avoids the fixed
/// ones. It bounds the non-isolated fraction of the coordinate graph from
/// above and equals it unless those words all share a single symbol.
pub fn tau(code: &Code, i: usize, fixed: &[usize]) -> Result<BigRational> {
    check_fixed(code, fixed)?;
    if i >= code.n() {
        return Err(Error::Index(format!("coordinate {i} out of range")));
    }
    let Some(mask) = fixed_mask(code, i, fixed) else {
        return Ok(BigRational::zero());
    };
    let (count, _) = free_stats(code, i, fixed, mask);
    Ok(BigRational::new(
        BigInt::from(count),
        BigInt::from(code.len() - fixed.len()),
    ))
}

/// Fraction of non-isolated vertices of the coordinate-`i` hypergraph whose
/// edges have `edge_size` vertices.
pub fn tau_graph(code: &Code, i: usize, fixed: &[usize], edge_size: usize) -> Result<BigRational> {
    check_fixed(code, fixed)?;
    if i >= code.n() {
        return Err(Error::Index(format!("coordinate {i} out of range")));
    }
    if edge_size < 2 {
        return Err(Error::Index("edge size must be >= 2".into()));
    }
    let Some(mask) = fixed_mask(code, i, fixed) else {
        return Ok(BigRational::zero());
    };
    let (count, distinct) = free_stats(code, i, fixed, mask);
    if (distinct as usize) < edge_size {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(
        BigInt::from(count),
        BigInt::from(code.len() - fixed.len()),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HanselCheck {
    /// `log2(|C| - k + 2)`.
    pub lhs: f64,
    /// `sum_i tau_i` from the frequency formula.
    pub rhs: f64,
    /// `sum_i` of the exact non-isolated fractions.
    pub rhs_graph: f64,
    pub tau: Vec<f64>,
    pub satisfied: bool,
    pub satisfied_graph: bool,
}

fn require_separated(code: &Code, order: usize) -> Result<()> {
    let s = is_separated(code, order, DEFAULT_PROBE_BUDGET)?;
    if let Some(witness) = s.witness {
        return Err(Error::NotSeparated { order, witness });
    }
    Ok(())
}

/// Graph covering inequality `log2(|C|-k+2) <= sum_i tau_i` for a
/// `k`-separated code over `[k]` with `k-2` fixed words.
pub fn hansel_check(code: &Code, fixed: &[usize]) -> Result<HanselCheck> {
    let k = code.alphabet();
    if k < 3 {
        return Err(Error::InvalidAlphabet {
            k,
            reason: "graph covering needs k >= 3",
        });
    }
    if fixed.len() != k - 2 {
        return Err(Error::Dimension {
            expected: k - 2,
            got: fixed.len(),
        });
    }
    check_fixed(code, fixed)?;
    require_separated(code, k)?;
    let mut sum = BigRational::zero();
    let mut sum_graph = BigRational::zero();
    let mut taus = Vec::with_capacity(code.n());
    for i in 0..code.n() {
        let t = tau(code, i, fixed)?;
        taus.push(rational_to_f64(&t));
        sum += t;
        sum_graph += tau_graph(code, i, fixed, 2)?;
    }
    let lhs = ((code.len() - fixed.len()) as f64).log2();
    let rhs = rational_to_f64(&sum);
    let rhs_graph = rational_to_f64(&sum_graph);
    Ok(HanselCheck {
        lhs,
        rhs,
        rhs_graph,
        tau: taus,
        satisfied: lhs <= rhs + HANSEL_SLACK,
        satisfied_graph: lhs <= rhs_graph + HANSEL_SLACK,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypergraphCheck {
    /// Vertices `m = |C| - j`.
    pub m: usize,
    /// Edge size `d = k - j`.
    pub d: usize,
    /// Parts `c = b - j`.
    pub c: usize,
    /// `log2(m/(d-1))`.
    pub lhs: f64,
    /// `log2 m / log2(d-1)`, a stronger left side that does not hold in general.
    pub lhs_ratio: f64,
    /// `log2(c/(d-1)) * sum_i tau_i`.
    pub rhs: f64,
    pub tau: Vec<f64>,
    pub satisfied: bool,
    pub satisfied_ratio: bool,
}

/// Hypergraph covering inequality `log2(m/(d-1)) <= log2(c/(d-1)) sum_i tau_i`
/// for a `k`-separated code over `[b]` and `j` fixed words.
pub fn hypergraph_hansel_check(code: &Code, k: usize, fixed: &[usize]) -> Result<HypergraphCheck> {
    let b = code.alphabet();
    let j = fixed.len();
    if k > b || k < 3 {
        return Err(Error::InvalidParams {
            b,
            k,
            reason: "need 3 <= k <= b",
        });
    }
    if j == 0 || j + 2 > k {
        return Err(Error::Index(format!("number of fixed words {j} outside 1..={}", k - 2)));
    }
    let d = k - j;
    if d < 3 {
        return Err(Error::InvalidParams {
            b,
            k,
            reason: "edge size k-j must be >= 3; use hansel_check for graphs",
        });
    }
    check_fixed(code, fixed)?;
    require_separated(code, k)?;
    let mut sum = BigRational::zero();
    let mut taus = Vec::with_capacity(code.n());
    for i in 0..code.n() {
        let t = tau_graph(code, i, fixed, d)?;
        taus.push(rational_to_f64(&t));
        sum += t;
    }
    let m = code.len() - j;
    let c = b - j;
    let dm1 = (d - 1) as f64;
    let lhs = (m as f64 / dm1).log2();
    let lhs_ratio = (m as f64).log2() / dm1.log2();
    let rhs = (c as f64 / dm1).log2() * rational_to_f64(&sum);
    Ok(HypergraphCheck {
        m,
        d,
        c,
        lhs,
        lhs_ratio,
        rhs,
        tau: taus,
        satisfied: lhs <= rhs + HANSEL_SLACK,
        satisfied_ratio: lhs_ratio <= rhs + HANSEL_SLACK,
    })
}

/// `sum_i tau_i` as an exact rational.
pub fn tau_sum(code: &Code, fixed: &[usize]) -> Result<BigRational> {
    let mut s = BigRational::zero();
    for i in 0..code.n() {
        s += tau(code, i, fixed)?;
    }
    Ok(s)
}
