//! Subset products and the ordered-statistic functionals that bound `phi_k`.
//!
//! For alphabet `[k]` the `t = k(k-1)/2` subsets of size `k-2` are indexed
//! lexicographically. Each is identified by its complement pair `{a, b}`.
//! With `g` sorted in non-increasing order, a pair with larger indices has a
//! smaller product `g_a g_b` and therefore a larger subset product `d_j`.
//! The top `k-1` products of any sorted `g` therefore form an up-set of
//! the componentwise order on pairs. The selections enumerated here are
//! exactly those up-sets of size `k-1`.

use std::fmt;

use crate::bounds::Threshold;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};

/// Largest alphabet for which selections are enumerated.
pub const MAX_SELECTION_K: usize = 9;

/// All `(k-2)`-subsets of `[k]` in lexicographic order (0-based symbols).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    k: usize,
    subsets: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl SubsetFamily {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of subsets, `k(k-1)/2`.
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Complement pair of subset `j`, with `a < b`.
    pub fn pair(&self, j: usize) -> (usize, usize) {
        self.pairs[j]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of_pair(&self, a: usize, b: usize) -> Option<usize> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.pairs.iter().position(|&p| p == (a, b))
    }
}

pub fn enumerate_subsets(k: usize) -> Result<SubsetFamily> {
    if k < 4 {
        return Err(Error::InvalidAlphabet {
            k,
            reason: "subset functionals need k >= 4",
        });
    }
    let mut subsets = Vec::with_capacity(k * (k - 1) / 2);
    let mut current = Vec::with_capacity(k - 2);
    combinations(k, k - 2, 0, &mut current, &mut subsets);
    let pairs = subsets
        .iter()
        .map(|s| {
            let mut missing = (0..k).filter(|a| !s.contains(a));
            let a = missing.next().expect("two missing symbols");
            let b = missing.next().expect("two missing symbols");
            (a, b)
        })
        .collect();
    Ok(SubsetFamily { k, subsets, pairs })
}

fn combinations(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for x in start..n {
        if n - x < r - cur.len() {
            break;
        }
        cur.push(x);
        combinations(n, r, x + 1, cur, out);
        cur.pop();
    }
}

/// `d_j = prod_{a in P_j} g_a` for every subset of the family.
pub fn subset_products<T: Scalar>(family: &SubsetFamily, g: &[T]) -> Result<Vec<T>> {
    check_dim(family.k, g.len())?;
    Ok(family
        .subsets
        .iter()
        .map(|s| s.iter().fold(T::one(), |acc, &a| acc * g[a].clone()))
        .collect())
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Dimension { expected, got });
    }
    Ok(())
}

/// Elementary symmetric sum `S_h^t(g)`: all products of `h` distinct
/// coordinates among the first `t`. Evaluated by the one-coordinate-at-a-time
/// recurrence `e_m <- e_m + g_i e_{m-1}`, which only adds nonnegative terms
/// for nonnegative `g`.
pub fn symmetric_sum<T: Scalar>(g: &[T], h: usize, t: usize) -> Result<T> {
    if t > g.len() {
        return Err(Error::Index(format!("t={t} exceeds dimension {}", g.len())));
    }
    if h > t {
        return Err(Error::Index(format!("h={h} exceeds t={t}")));
    }
    let mut e = vec![T::zero(); h + 1];
    e[0] = T::one();
    for (i, gi) in g[..t].iter().enumerate() {
        for m in (1..=h.min(i + 1)).rev() {
            let add = gi.clone() * e[m - 1].clone();
            e[m] = e[m].clone() + add;
        }
    }
    Ok(e.swap_remove(h))
}

/// A candidate set of `k-1` subsets holding the top ordered statistics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopSelection {
    k: usize,
    /// Sorted complement pairs of the selected subsets.
    pairs: Vec<(usize, usize)>,
    /// Sorted subset indices.
    selected: Vec<usize>,
}

impl TopSelection {
    pub fn from_pairs(family: &SubsetFamily, pairs: &[(usize, usize)]) -> Result<Self> {
        let k = family.k;
        if pairs.len() != k - 1 {
            return Err(Error::Index(format!(
                "selection needs {} pairs, got {}",
                k - 1,
                pairs.len()
            )));
        }
        let mut selected = Vec::with_capacity(pairs.len());
        let mut norm = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let j = family
                .index_of_pair(a, b)
                .ok_or_else(|| Error::Index(format!("pair ({a},{b}) not in [{k}]")))?;
            selected.push(j);
            norm.push(family.pair(j));
        }
        selected.sort_unstable();
        selected.dedup();
        if selected.len() != k - 1 {
            return Err(Error::Index("selection repeats a pair".into()));
        }
        norm.sort_unstable();
        Ok(Self {
            k,
            pairs: norm,
            selected,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn complement_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn contains(&self, j: usize) -> bool {
        self.selected.binary_search(&j).is_ok()
    }

    /// Closed under dominance: selecting `{a,b}` forces every `{c,d}` with
    /// `c >= a`, `d >= b`.
    pub fn is_dominance_closed(&self) -> bool {
        let k = self.k;
        self.pairs.iter().all(|&(a, b)| {
            (a..k).all(|c| {
                (b.max(c + 1)..k).all(|d| self.pairs.binary_search(&(c, d)).is_ok())
            })
        })
    }

    /// Parse the canonical text form, e.g. `"15,25,35,45"`.
    pub fn parse(family: &SubsetFamily, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for tok in text.split(',') {
            let digits: Vec<u32> = tok.trim().chars().filter_map(|c| c.to_digit(10)).collect();
            if digits.len() != 2 || digits.contains(&0) {
                return Err(Error::Index(format!("bad pair token {tok:?}")));
            }
            pairs.push((digits[0] as usize - 1, digits[1] as usize - 1));
        }
        Self::from_pairs(family, &pairs)
    }
}

/// Canonical text: sorted complement pairs, 1-based, comma separated.
impl fmt::Display for TopSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// All dominance-closed selections of `k-1` subsets, sorted by their pair lists.
pub fn enumerate_selections(k: usize) -> Result<Vec<TopSelection>> {
    if k > MAX_SELECTION_K {
        return Err(Error::InvalidAlphabet {
            k,
            reason: "selection enumeration is limited to k <= 9",
        });
    }
    let family = enumerate_subsets(k)?;
    // Dominators of a pair have a strictly larger (a+b, b) key, so this order
    // visits every dominator before the pairs it dominates.
    let mut order: Vec<(usize, usize)> = family.pairs.clone();
    order.sort_by_key(|p| std::cmp::Reverse((p.0 + p.1, p.1)));

    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    grow_upsets(k, &order, 0, k - 1, &mut chosen, &mut out);

    let mut sels = out
        .into_iter()
        .map(|pairs| TopSelection::from_pairs(&family, &pairs))
        .collect::<Result<Vec<_>>>()?;
    sels.sort();
    Ok(sels)
}

fn grow_upsets(
    k: usize,
    order: &[(usize, usize)],
    pos: usize,
    want: usize,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if chosen.len() == want {
        out.push(chosen.clone());
        return;
    }
    if pos == order.len() || order.len() - pos < want - chosen.len() {
        return;
    }
    let (a, b) = order[pos];
    let dominators_in = (a..k).all(|c| {
        (b.max(c + 1)..k).all(|d| (c, d) == (a, b) || chosen.contains(&(c, d)))
    });
    if dominators_in {
        chosen.push((a, b));
        grow_upsets(k, order, pos + 1, want, chosen, out);
        chosen.pop();
    }
    grow_upsets(k, order, pos + 1, want, chosen, out);
}

/// The selection whose subsets avoid the last symbol: complement pairs `{a, k}`.
pub fn conjectured_selection(k: usize) -> Result<TopSelection> {
    let family = enumerate_subsets(k)?;
    let pairs: Vec<_> = (0..k - 1).map(|a| (a, k - 1)).collect();
    TopSelection::from_pairs(&family, &pairs)
}

/// The top `k-1` subset products of `g` as a selection.
///
/// Ties are broken toward larger pair indices, which keeps the result
/// dominance-closed whenever `g` is sorted non-increasingly.
pub fn realized_selection<T: Scalar>(family: &SubsetFamily, g: &[T]) -> Result<TopSelection> {
    let d = subset_products(family, g)?;
    let mut idx: Vec<usize> = (0..d.len()).collect();
    idx.sort_by(|&i, &j| {
        d[j].partial_cmp(&d[i])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| {
                let (pi, pj) = (family.pair(i), family.pair(j));
                (pj.0 + pj.1, pj.1).cmp(&(pi.0 + pi.1, pi.1))
            })
    });
    let pairs: Vec<_> = idx[..family.k - 1].iter().map(|&j| family.pair(j)).collect();
    TopSelection::from_pairs(family, &pairs)
}

/// `Theta(g) = (k-2)! [ (1-(k-2)gamma) sum_{sel} d_j + 2 gamma sum_{rest} d_j ]`.
#[derive(Debug, Clone)]
pub struct FunctionalSpec<T> {
    family: SubsetFamily,
    selection: TopSelection,
    gamma: T,
    selected_weight: T,
    other_weight: T,
}

impl<T: Scalar> FunctionalSpec<T> {
    pub fn new(selection: TopSelection, gamma: T) -> Result<Self> {
        let k = selection.k;
        Threshold::new(k, gamma.clone())?;
        let family = enumerate_subsets(k)?;
        let fact = factorial::<T>(k as u32 - 2);
        let selected_weight = fact.clone() * (T::one() - T::from_u64(k as u64 - 2) * gamma.clone());
        let other_weight = fact * T::from_u64(2) * gamma.clone();
        Ok(Self {
            family,
            selection,
            gamma,
            selected_weight,
            other_weight,
        })
    }

    pub fn k(&self) -> usize {
        self.family.k
    }

    pub fn gamma(&self) -> &T {
        &self.gamma
    }

    pub fn selection(&self) -> &TopSelection {
        &self.selection
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.family
    }

    fn weight(&self, j: usize) -> T {
        if self.selection.contains(j) {
            self.selected_weight.clone()
        } else {
            self.other_weight.clone()
        }
    }

    /// Value at `g` without any simplex check; `g.len()` must equal `k`.
    pub fn value_unchecked(&self, g: &[T]) -> T {
        let mut acc = T::zero();
        for (j, s) in self.family.subsets.iter().enumerate() {
            let d = s.iter().fold(T::one(), |p, &a| p * g[a].clone());
            acc = acc + self.weight(j) * d;
        }
        acc
    }

    /// Gradient of the (polynomial) functional at any `g` in `R^k`.
    pub fn gradient_unchecked(&self, g: &[T], out: &mut [T]) {
        for o in out.iter_mut() {
            *o = T::zero();
        }
        for (j, s) in self.family.subsets.iter().enumerate() {
            let w = self.weight(j);
            for &a in s {
                let partial = s
                    .iter()
                    .filter(|&&b| b != a)
                    .fold(w.clone(), |p, &b| p * g[b].clone());
                out[a] = out[a].clone() + partial;
            }
        }
    }
}

/// `Theta^{(i)}(g, gamma)` for the functional's selection.
pub fn evaluate_functional<T: Scalar>(spec: &FunctionalSpec<T>, g: &[T]) -> Result<T> {
    check_dim(spec.k(), g.len())?;
    Ok(spec.value_unchecked(g))
}

/// The conjectured functional written with elementary symmetric sums:
/// `(k-2)! [ (1-(k-2)gamma) S_{k-2}^{k-1}(g) + 2 gamma g_k S_{k-3}^{k-1}(g) ]`.
pub fn conjectured_functional_symmetric<T: Scalar>(k: usize, gamma: T, g: &[T]) -> Result<T> {
    check_dim(k, g.len())?;
    let fact = factorial::<T>(k as u32 - 2);
    let top = symmetric_sum(g, k - 2, k - 1)?;
    let low = symmetric_sum(g, k - 3, k - 1)?;
    Ok(fact
        * ((T::one() - T::from_u64(k as u64 - 2) * gamma.clone()) * top
            + T::from_u64(2) * gamma * g[k - 1].clone() * low))
}

/// LP weights `w_j = 1 - sum_{a in P_j} f_a` of the subsets.
pub fn complement_weights<T: Scalar>(family: &SubsetFamily, f: &[T]) -> Result<Vec<T>> {
    check_dim(family.k, f.len())?;
    Ok(family
        .subsets
        .iter()
        .map(|s| s.iter().fold(T::one(), |acc, &a| acc - f[a].clone()))
        .collect())
}

/// Right-hand side of the ordered-statistic bound on `phi_k(g, f)`, using the
/// realized top-`(k-1)` products of `g`.
pub fn ordered_statistic_bound<T: Scalar>(family: &SubsetFamily, g: &[T], gamma: T) -> Result<T> {
    let mut d = subset_products(family, g)?;
    d.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    let k = family.k;
    let (top, rest) = d.split_at(k - 1);
    let sum = |v: &[T]| v.iter().fold(T::zero(), |a, x| a + x.clone());
    Ok(factorial::<T>(k as u32 - 2)
        * ((T::one() - T::from_u64(k as u64 - 2) * gamma.clone()) * sum(top)
            + T::from_u64(2) * gamma * sum(rest)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn family_sizes() {
        for (k, t) in [(4, 6), (5, 10), (6, 15)] {
            let fam = enumerate_subsets(k).unwrap();
            assert_eq!(fam.len(), t);
            for (s, &(a, b)) in fam.subsets().iter().zip(fam.pairs()) {
                assert_eq!(s.len(), k - 2);
                assert!(a < b && !s.contains(&a) && !s.contains(&b));
            }
        }
        assert!(enumerate_subsets(3).is_err());
    }

    #[test]
    fn products_examples() {
        let fam = enumerate_subsets(4).unwrap();
        let g: [f64; 4] = [0.4, 0.3, 0.2, 0.1];
        let d = subset_products(&fam, &g).unwrap();
        let p12 = fam.subsets().iter().position(|s| s == &vec![0, 1]).unwrap();
        let p34 = fam.subsets().iter().position(|s| s == &vec![2, 3]).unwrap();
        assert!((d[p12] - 0.12).abs() < 1e-15);
        assert!((d[p34] - 0.02).abs() < 1e-15);

        let fam6 = enumerate_subsets(6).unwrap();
        let u = vec![Q::ratio(1, 6); 6];
        for d in subset_products(&fam6, &u).unwrap() {
            assert_eq!(d, Q::ratio(1, 6 * 6 * 6 * 6));
        }

        let g0 = [0.3, 0.3, 0.2, 0.2, 0.0];
        let fam5 = enumerate_subsets(5).unwrap();
        for (s, d) in fam5.subsets().iter().zip(subset_products(&fam5, &g0).unwrap()) {
            if s.contains(&4) {
                assert_eq!(d, 0.0);
            }
        }
        assert!(matches!(
            subset_products(&fam5, &g),
            Err(Error::Dimension { expected: 5, got: 4 })
        ));
    }

    #[test]
    fn symmetric_sum_examples() {
        let g: Vec<Q> = (1..=6).map(|i| Q::ratio(i, 1)).collect();
        assert_eq!(symmetric_sum(&g, 3, 4).unwrap(), Q::ratio(50, 1));
        assert_eq!(symmetric_sum(&g, 0, 3).unwrap(), Q::ratio(1, 1));
        for k in 2..=8i64 {
            let u = vec![Q::ratio(1, k); k as usize];
            let s = symmetric_sum(&u, k as usize - 1, k as usize).unwrap();
            assert_eq!(s, Q::ratio(1, 1) / Q::from_u64(k as u64).powu(k as u32 - 2));
        }
        assert!(symmetric_sum(&g, 5, 4).is_err());
        assert!(symmetric_sum(&g, 1, 7).is_err());
    }

    #[test]
    fn selection_counts() {
        assert_eq!(enumerate_selections(4).unwrap().len(), 2);
        assert_eq!(enumerate_selections(5).unwrap().len(), 2);
        assert_eq!(enumerate_selections(6).unwrap().len(), 3);
        assert!(enumerate_selections(10).is_err());
    }

    #[test]
    fn conjectured_examples() {
        assert_eq!(conjectured_selection(5).unwrap().to_string(), "15,25,35,45");
        assert_eq!(conjectured_selection(4).unwrap().to_string(), "14,24,34");
        for k in 4..=7 {
            let c = conjectured_selection(k).unwrap();
            assert!(c.is_dominance_closed());
            assert!(enumerate_selections(k).unwrap().contains(&c));
        }
    }

    #[test]
    fn enumerated_selections_are_closed() {
        for k in 4..=8 {
            for s in enumerate_selections(k).unwrap() {
                assert!(s.is_dominance_closed(), "{s}");
                assert_eq!(s.selected().len(), k - 1);
            }
        }
        let fam = enumerate_subsets(5).unwrap();
        let bad = TopSelection::parse(&fam, "12,25,35,45").unwrap();
        assert!(!bad.is_dominance_closed());
    }

    #[test]
    fn canonical_text_round_trip() {
        let fam = enumerate_subsets(5).unwrap();
        for s in enumerate_selections(5).unwrap() {
            assert_eq!(TopSelection::parse(&fam, &s.to_string()).unwrap(), s);
        }
        assert!(TopSelection::parse(&fam, "15,25").is_err());
        assert!(TopSelection::parse(&fam, "15,15,35,45").is_err());
        assert!(TopSelection::parse(&fam, "16,25,35,45").is_err());
    }

    #[test]
    fn uniform_gives_alpha_exactly() {
        for k in 4..=7usize {
            let alpha = crate::bounds::fk_alpha::<Q>(k).unwrap();
            let u = vec![Q::ratio(1, k as i64); k];
            for sel in enumerate_selections(k).unwrap() {
                for gamma in [Q::ratio(1, k as i64), Q::ratio(1, 2 * k as i64 + 1), Q::ratio(3, 50)] {
                    let spec = FunctionalSpec::new(sel.clone(), gamma).unwrap();
                    assert_eq!(evaluate_functional(&spec, &u).unwrap(), alpha);
                }
            }
        }
    }

    #[test]
    fn conjectured_functional_matches_q_on_profile() {
        let gamma: f64 = 0.136163;
        let spec = FunctionalSpec::new(conjectured_selection(5).unwrap(), gamma).unwrap();
        let g = [0.25, 0.25, 0.25, 0.25, 0.0];
        let v = evaluate_functional(&spec, &g).unwrap();
        assert!((v - 0.221816625).abs() < 1e-12);
        let q = crate::bounds::q_poly::<f64>(5, gamma, 0.25).unwrap();
        assert!((v - q).abs() < 1e-14);
    }

    #[test]
    fn conjectured_functional_symmetric_form() {
        let g = [
            Q::ratio(3, 10),
            Q::ratio(1, 5),
            Q::ratio(1, 4),
            Q::ratio(3, 20),
            Q::ratio(1, 10),
        ];
        let gamma = Q::ratio(1, 7);
        let spec = FunctionalSpec::new(conjectured_selection(5).unwrap(), gamma.clone()).unwrap();
        assert_eq!(
            evaluate_functional(&spec, &g).unwrap(),
            conjectured_functional_symmetric(5, gamma, &g).unwrap()
        );
    }

    #[test]
    fn realized_selection_sorted_input() {
        let fam = enumerate_subsets(5).unwrap();
        let g = [0.5, 0.2, 0.15, 0.1, 0.05];
        let s = realized_selection(&fam, &g).unwrap();
        assert_eq!(s.to_string(), "25,34,35,45");
        let u = [0.2; 5];
        let s = realized_selection(&fam, &u).unwrap();
        assert!(s.is_dominance_closed());
    }

    #[test]
    fn functional_rejects_bad_gamma() {
        let sel = conjectured_selection(5).unwrap();
        assert!(FunctionalSpec::new(sel.clone(), 0.25).is_err());
        assert!(FunctionalSpec::new(sel, 0.0).is_err());
    }
}
