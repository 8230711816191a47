#![allow(dead_code)]

use std::collections::BTreeSet;

use khash::functionals::{enumerate_subsets, realized_selection, TopSelection};
use khash::lab::{is_separated, Code, DEFAULT_PROBE_BUDGET};
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Gamma};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric Dirichlet draw via normalized gamma variates.
pub fn dirichlet(rng: &mut ChaCha8Rng, k: usize, shape: f64) -> Vec<f64> {
    let g = Gamma::new(shape, 1.0).unwrap();
    let e: Vec<f64> = (0..k).map(|_| g.sample(rng)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// Selections realized by sorted random points of the simplex.
pub fn sampled_selections(k: usize, samples: usize, seed: u64) -> BTreeSet<String> {
    let family = enumerate_subsets(k).unwrap();
    let mut r = rng(seed);
    let shapes = [0.1, 0.3, 1.0, 3.0, 10.0];
    let mut out = BTreeSet::new();
    for s in 0..samples {
        let mut g = dirichlet(&mut r, k, shapes[s % shapes.len()]);
        g.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let sel: TopSelection = realized_selection(&family, &g).unwrap();
        out.insert(sel.to_string());
    }
    out
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

pub fn distinct_at(code: &Code, words: &[usize], i: usize) -> bool {
    let symbols: BTreeSet<u8> = words.iter().map(|&w| code.word(w)[i]).collect();
    symbols.len() == words.len()
}

pub fn brute_separated(code: &Code, order: usize) -> bool {
    subsets(code.len(), order)
        .iter()
        .all(|s| (0..code.n()).any(|i| distinct_at(code, s, i)))
}

/// Non-isolated fraction of the coordinate-`i` hypergraph on the words not
/// in `fixed`, found by listing its edges.
pub fn brute_tau_graph(code: &Code, i: usize, fixed: &[usize], edge_size: usize) -> f64 {
    let rest: Vec<usize> = (0..code.len()).filter(|w| !fixed.contains(w)).collect();
    let mut covered = BTreeSet::new();
    for e in subsets(rest.len(), edge_size) {
        let mut words: Vec<usize> = e.iter().map(|&p| rest[p]).collect();
        words.extend_from_slice(fixed);
        if distinct_at(code, &words, i) {
            covered.extend(e.iter().map(|&p| rest[p]));
        }
    }
    covered.len() as f64 / rest.len() as f64
}

/// Random `order`-separated code over `[alphabet]` grown greedily to at most
/// `max_size` words; the final code is rechecked by brute force.
pub fn random_separated_code(
    r: &mut ChaCha8Rng,
    alphabet: usize,
    order: usize,
    n: usize,
    max_size: usize,
) -> Code {
    let target = r.gen_range(order.min(max_size)..=max_size);
    let mut words: Vec<Vec<u8>> = Vec::new();
    for _ in 0..400 {
        if words.len() >= target {
            break;
        }
        let w: Vec<u8> = (0..n).map(|_| r.gen_range(0..alphabet as u8)).collect();
        if words.contains(&w) {
            continue;
        }
        words.push(w);
        let c = Code::new(alphabet, n, words.clone()).unwrap();
        if !is_separated(&c, order, DEFAULT_PROBE_BUDGET).unwrap().separated {
            words.pop();
        }
    }
    let code = Code::new(alphabet, n, words).unwrap();
    assert!(brute_separated(&code, order));
    code
}

/// `count` distinct word indices below `len`.
pub fn random_tuple(r: &mut ChaCha8Rng, len: usize, count: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w = r.gen_range(0..len);
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}
