//! Polynomial maximization over products of (lower-bounded) probability simplices.
//!
//! The local method is projected-gradient ascent with backtracking, restarted
//! from a deterministic set of structured and seeded random starting points.
//! [`grid_oracle`] enumerates a rational lattice of the same domain and is
//! the independent check on the optimizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functionals::{enumerate_selections, enumerate_subsets, FunctionalSpec, SubsetFamily, TopSelection};
use crate::scalar::{factorial, Real, Scalar};

/// A probability vector, optionally with a common lower bound on its coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint<T> {
    coords: Vec<T>,
}

impl<T: Scalar> SimplexPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        Self::with_lower(coords, T::zero())
    }

    /// Point of `{x : sum x = 1, x_i >= lower}`.
    pub fn with_lower(coords: Vec<T>, lower: T) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::NotOnSimplex("empty vector".into()));
        }
        let tol = T::unit_tolerance();
        for (i, c) in coords.iter().enumerate() {
            if *c < lower.clone() - tol.clone() {
                return Err(Error::NotOnSimplex(format!(
                    "coordinate {i} = {c} below {lower}"
                )));
            }
        }
        let sum = coords.iter().fold(T::zero(), |a, c| a + c.clone());
        if (sum.clone() - T::one()).abs() > tol {
            return Err(Error::NotOnSimplex(format!("coordinates sum to {sum}")));
        }
        Ok(Self { coords })
    }

    pub fn uniform(k: usize) -> Self {
        Self {
            coords: vec![T::ratio(1, k as i64); k],
        }
    }

    pub fn vertex(k: usize, i: usize) -> Self {
        let mut coords = vec![T::zero(); k];
        coords[i] = T::one();
        Self { coords }
    }

    pub fn k(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }
}

/// One simplex factor of an objective's domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block<T> {
    pub len: usize,
    /// Common lower bound of the block's coordinates; `len * lower <= 1`.
    pub lower: T,
}

/// A smooth objective on a product of simplices, variables concatenated block by block.
pub trait Objective<T: Real>: Sync {
    fn blocks(&self) -> Vec<Block<T>>;
    fn value(&self, x: &[T]) -> T;
    fn gradient(&self, x: &[T], out: &mut [T]);

    /// Map optimizer variables to the reported point (identity unless reparametrized).
    fn embed(&self, x: &[T]) -> Vec<T> {
        x.to_vec()
    }

    fn dim(&self) -> usize {
        self.blocks().iter().map(|b| b.len).sum()
    }
}

impl<T: Real> Objective<T> for FunctionalSpec<T> {
    fn blocks(&self) -> Vec<Block<T>> {
        vec![Block {
            len: self.k(),
            lower: T::zero(),
        }]
    }

    fn value(&self, x: &[T]) -> T {
        self.value_unchecked(x)
    }

    fn gradient(&self, x: &[T], out: &mut [T]) {
        self.gradient_unchecked(x, out)
    }
}

/// `phi_k(g, f) = (k-2)! sum_j d_j(g) (1 - sum_{a in P_j} f_a)`.
pub fn phi<T: Scalar>(g: &SimplexPoint<T>, f: &SimplexPoint<T>) -> Result<T> {
    if g.k() != f.k() {
        return Err(Error::Dimension {
            expected: g.k(),
            got: f.k(),
        });
    }
    let family = enumerate_subsets(g.k())?;
    Ok(phi_unchecked(&family, g.coords(), f.coords()))
}

fn phi_unchecked<T: Scalar>(family: &SubsetFamily, g: &[T], f: &[T]) -> T {
    let mut acc = T::zero();
    for s in family.subsets() {
        let d = s.iter().fold(T::one(), |p, &a| p * g[a].clone());
        let w = s.iter().fold(T::one(), |p, &a| p - f[a].clone());
        acc = acc + d * w;
    }
    acc * factorial::<T>(family.k() as u32 - 2)
}

/// `phi_k` as an objective in `(g, f)`, with `min f >= min(gamma, 1/k)`.
#[derive(Debug, Clone)]
pub struct PhiObjective<T> {
    family: SubsetFamily,
    f_lower: T,
    scale: T,
}

impl<T: Real> PhiObjective<T> {
    /// `gamma = None` leaves `f` unconstrained on the simplex.
    pub fn new(k: usize, gamma: Option<T>) -> Result<Self> {
        let family = enumerate_subsets(k)?;
        let inv_k = T::ratio(1, k as i64);
        let f_lower = match gamma {
            None => T::zero(),
            Some(g) if g < T::zero() => {
                return Err(Error::Domain {
                    name: "gamma",
                    value: Scalar::to_f64(&g),
                    domain: "[0, inf)".into(),
                })
            }
            Some(g) => g.min(inv_k),
        };
        Ok(Self {
            family,
            f_lower,
            scale: factorial::<T>(k as u32 - 2),
        })
    }

    pub fn k(&self) -> usize {
        self.family.k()
    }

    pub fn f_lower(&self) -> T {
        self.f_lower
    }
}

impl<T: Real> Objective<T> for PhiObjective<T> {
    fn blocks(&self) -> Vec<Block<T>> {
        let k = self.k();
        vec![
            Block {
                len: k,
                lower: T::zero(),
            },
            Block {
                len: k,
                lower: self.f_lower,
            },
        ]
    }

    fn value(&self, x: &[T]) -> T {
        let k = self.k();
        phi_unchecked(&self.family, &x[..k], &x[k..])
    }

    fn gradient(&self, x: &[T], out: &mut [T]) {
        let k = self.k();
        let (g, f) = x.split_at(k);
        out.iter_mut().for_each(|o| *o = T::zero());
        for s in self.family.subsets() {
            let w = s.iter().fold(T::one(), |p, &a| p - f[a]);
            let d = s.iter().fold(T::one(), |p, &a| p * g[a]);
            for &a in s {
                let partial = s.iter().filter(|&&b| b != a).fold(w, |p, &b| p * g[b]);
                out[a] = out[a] + partial * self.scale;
                out[k + a] = out[k + a] - d * self.scale;
            }
        }
    }
}

/// Restricts a single-simplex objective to sorted points `x_1 >= ... >= x_k`.
///
/// The sorted simplex is the convex hull of `v_i = (1/i, ..., 1/i, 0, ..., 0)`,
/// so optimizing barycentric weights over the plain simplex covers it exactly.
pub struct Ordered<'a, O> {
    inner: &'a O,
    k: usize,
}

impl<'a, O> Ordered<'a, O> {
    pub fn new<T: Real>(inner: &'a O) -> Result<Self>
    where
        O: Objective<T>,
    {
        let blocks = inner.blocks();
        if blocks.len() != 1 || blocks[0].lower != T::zero() {
            return Err(Error::Config(
                "ordered restriction needs a single unconstrained simplex".into(),
            ));
        }
        Ok(Self {
            inner,
            k: blocks[0].len,
        })
    }

    fn to_x<T: Real>(&self, lambda: &[T]) -> Vec<T> {
        let mut x = vec![T::zero(); self.k];
        let mut tail = T::zero();
        for i in (0..self.k).rev() {
            tail = tail + lambda[i] / T::from_u64(i as u64 + 1);
            x[i] = tail;
        }
        x
    }
}

impl<T: Real, O: Objective<T>> Objective<T> for Ordered<'_, O> {
    fn blocks(&self) -> Vec<Block<T>> {
        vec![Block {
            len: self.k,
            lower: T::zero(),
        }]
    }

    fn value(&self, lambda: &[T]) -> T {
        self.inner.value(&self.to_x(lambda))
    }

    fn gradient(&self, lambda: &[T], out: &mut [T]) {
        let x = self.to_x(lambda);
        let mut gx = vec![T::zero(); self.k];
        self.inner.gradient(&x, &mut gx);
        let mut prefix = T::zero();
        for i in 0..self.k {
            prefix = prefix + gx[i];
            out[i] = prefix / T::from_u64(i as u64 + 1);
        }
    }

    fn embed(&self, lambda: &[T]) -> Vec<T> {
        self.to_x(lambda)
    }
}

/// Euclidean projection of `v` onto `{x : sum x = 1, x_i >= lower}`.
pub fn project_onto_simplex<T: Real>(v: &[T], lower: T) -> Vec<T> {
    let n = v.len();
    let mass = (T::one() - lower * T::from_u64(n as u64)).max(T::zero());
    if mass == T::zero() {
        return vec![lower; n];
    }
    let mut u: Vec<T> = v.iter().map(|&x| x - lower).collect();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let mut cum = T::zero();
    let mut theta = T::zero();
    for (i, &ui) in u.iter().enumerate() {
        cum = cum + ui;
        let t = (cum - mass) / T::from_u64(i as u64 + 1);
        if ui - t > T::zero() {
            theta = t;
        }
    }
    v.iter()
        .map(|&x| lower + (x - lower - theta).max(T::zero()))
        .collect()
}

fn project_blocks<T: Real>(blocks: &[Block<T>], v: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(v.len());
    let mut off = 0;
    for b in blocks {
        out.extend(project_onto_simplex(&v[off..off + b.len], b.lower));
        off += b.len;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub num_starts: usize,
    pub max_iters: usize,
    /// Stop once the projected-gradient step `|P(x + grad) - x|` is below this.
    pub tolerance: f64,
    pub seed: u64,
    /// Lattice denominator used by [`grid_oracle`].
    pub grid_resolution: usize,
    /// Maximum number of lattice points the oracle may visit.
    pub grid_budget: u128,
    /// Restrict single-simplex objectives to sorted points.
    pub ordered: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            num_starts: 200,
            max_iters: 10_000,
            tolerance: 1e-10,
            seed: 0,
            grid_resolution: 25,
            grid_budget: 50_000_000,
            ordered: false,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_starts == 0 {
            return Err(Error::Config("num_starts must be >= 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config("tolerance must be > 0".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult<T> {
    pub value: T,
    /// Maximizer, one point per simplex block of the objective.
    pub points: Vec<SimplexPoint<T>>,
    pub num_starts: usize,
    pub starts_converged: usize,
    pub best_start_index: usize,
    /// Whether the winning start met the tolerance.
    pub best_converged: bool,
    pub best_iterations: usize,
}

impl<T> OptimizationResult<T> {
    /// The maximizer's first block (the only one for single-simplex objectives).
    pub fn argmax(&self) -> &SimplexPoint<T> {
        &self.points[0]
    }
}

struct LocalRun<T> {
    x: Vec<T>,
    value: T,
    converged: bool,
    iterations: usize,
}

fn norm2<T: Real>(v: impl Iterator<Item = T>) -> T {
    v.fold(T::zero(), |a, x| a + x * x).sqrt()
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Subtract each block's largest partial derivative. Projection, slopes and
/// curvatures along feasible steps are unchanged, but `x + lambda * grad` no
/// longer cancels catastrophically for large `lambda`.
fn center_gradient<T: Real>(blocks: &[Block<T>], grad: &mut [T]) {
    let mut off = 0;
    for b in blocks {
        let part = &mut grad[off..off + b.len];
        let top = part.iter().copied().fold(T::neg_infinity(), T::max);
        part.iter_mut().for_each(|g| *g = *g - top);
        off += b.len;
    }
}

/// Spectral projected gradient ascent with a nonmonotone line search.
fn ascend<T: Real, O: Objective<T> + ?Sized>(
    obj: &O,
    blocks: &[Block<T>],
    start: Vec<T>,
    cfg: &OptimizerConfig,
) -> LocalRun<T> {
    const MEMORY: usize = 10;
    let n = start.len();
    let tol = T::from_f64(cfg.tolerance);
    let armijo = T::from_f64(1e-4);
    let slack = T::epsilon() * T::from_f64(16.0);
    let (lam_min, lam_max) = (T::from_f64(1e-10), T::from_f64(1e10));
    let half = T::from_f64(0.5);

    let mut x = project_blocks(blocks, &start);
    let mut fx = obj.value(&x);
    let mut grad = vec![T::zero(); n];
    obj.gradient(&x, &mut grad);
    center_gradient(blocks, &mut grad);
    let mut history = vec![fx];
    let mut lambda = T::one();
    let mut converged = false;
    let mut it = 0;
    let mut new_grad = vec![T::zero(); n];
    while it < cfg.max_iters {
        let unit: Vec<T> = x.iter().zip(&grad).map(|(&a, &g)| a + g).collect();
        let p = project_blocks(blocks, &unit);
        let pg = norm2(p.iter().zip(&x).map(|(&a, &b)| a - b));
        if pg < tol {
            converged = true;
            break;
        }
        it += 1;
        let trial: Vec<T> = x.iter().zip(&grad).map(|(&a, &g)| a + lambda * g).collect();
        let d: Vec<T> = project_blocks(blocks, &trial)
            .iter()
            .zip(&x)
            .map(|(&a, &b)| a - b)
            .collect();
        let slope = dot(&grad, &d);
        let reference = history.iter().copied().fold(fx, T::max);
        let floor = slack * reference.abs().max(T::one());
        let mut t = T::one();
        let mut accepted = None;
        for _ in 0..60 {
            let y: Vec<T> = x.iter().zip(&d).map(|(&a, &di)| a + t * di).collect();
            let fy = obj.value(&y);
            if fy >= reference + armijo * t * slope - floor {
                accepted = Some((y, fy));
                break;
            }
            t = t * half;
        }
        let Some((y, fy)) = accepted else { break };
        obj.gradient(&y, &mut new_grad);
        center_gradient(blocks, &mut new_grad);
        let s: Vec<T> = y.iter().zip(&x).map(|(&a, &b)| a - b).collect();
        // curvature of -f along s
        let curv = -s
            .iter()
            .zip(new_grad.iter().zip(&grad))
            .fold(T::zero(), |acc, (&si, (&gn, &go))| acc + si * (gn - go));
        let ss = dot(&s, &s);
        lambda = if curv > T::zero() {
            (ss / curv).max(lam_min).min(lam_max)
        } else {
            lam_max
        };
        x = y;
        fx = fy;
        std::mem::swap(&mut grad, &mut new_grad);
        history.push(fx);
        if history.len() > MEMORY {
            history.remove(0);
        }
    }
    LocalRun {
        value: fx,
        x,
        converged,
        iterations: it,
    }
}

fn dirichlet_one<T: Real>(rng: &mut ChaCha8Rng, len: usize) -> Vec<T> {
    // normalized Exp(1) draws
    let e: Vec<f64> = (0..len).map(|_| rng.sample(Exp1)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| T::from_f64(v / s)).collect()
}

fn place_in_block<T: Real>(b: &Block<T>, unit: &[T]) -> Vec<T> {
    let mass = (T::one() - b.lower * T::from_u64(b.len as u64)).max(T::zero());
    unit.iter().map(|&u| b.lower + mass * u).collect()
}

/// Structured starting points of a single simplex of dimension `k`: the
/// center, the vertices, and `(beta, ..., beta, 1-(k-1)beta)` with the small
/// coordinate in every position for four `beta` in `(1/k, 1/(k-1)]`.
fn structured_unit_starts<T: Real>(k: usize) -> Vec<Vec<T>> {
    let mut out = vec![vec![T::ratio(1, k as i64); k]];
    for i in 0..k {
        let mut v = vec![T::zero(); k];
        v[i] = T::one();
        out.push(v);
    }
    if k >= 2 {
        let lo = 1.0 / k as f64;
        let hi = 1.0 / (k as f64 - 1.0);
        for s in 1..=4 {
            let beta = lo + (hi - lo) * s as f64 / 4.0;
            let small = (1.0 - (k as f64 - 1.0) * beta).max(0.0);
            for pos in 0..k {
                let mut v = vec![T::from_f64(beta); k];
                v[pos] = T::from_f64(small);
                out.push(v);
            }
        }
    }
    out
}

/// All starting points for `maximize`, generated sequentially from the seed.
pub fn starting_points<T: Real>(blocks: &[Block<T>], cfg: &OptimizerConfig) -> Vec<Vec<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts = Vec::with_capacity(cfg.num_starts);
    let first = structured_unit_starts::<T>(blocks[0].len);
    for unit in first.into_iter().take(cfg.num_starts) {
        let mut x = place_in_block(&blocks[0], &unit);
        for b in &blocks[1..] {
            x.extend(place_in_block(b, &vec![T::ratio(1, b.len as i64); b.len]));
        }
        starts.push(x);
    }
    while starts.len() < cfg.num_starts {
        let mut x = Vec::new();
        for b in blocks {
            let unit = dirichlet_one::<T>(&mut rng, b.len);
            x.extend(place_in_block(b, &unit));
        }
        starts.push(x);
    }
    starts
}

/// Multi-start projected-gradient maximization.
///
/// Starts run in parallel; the best value wins with ties going to the lowest
/// start index, so the result does not depend on scheduling.
pub fn maximize<T: Real, O: Objective<T>>(obj: &O, cfg: &OptimizerConfig) -> Result<OptimizationResult<T>> {
    cfg.validate()?;
    let blocks = obj.blocks();
    for b in &blocks {
        if b.lower * T::from_u64(b.len as u64) > T::one() + T::unit_tolerance() {
            return Err(Error::Config("block lower bound exceeds 1/len".into()));
        }
    }
    let starts = starting_points(&blocks, cfg);
    let runs: Vec<LocalRun<T>> = starts
        .into_par_iter()
        .map(|s| ascend(obj, &blocks, s, cfg))
        .collect();

    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.value > runs[best].value {
            best = i;
        }
    }
    let starts_converged = runs.iter().filter(|r| r.converged).count();
    let run = &runs[best];
    let embedded = obj.embed(&run.x);
    let reported_blocks = if embedded.len() == run.x.len() {
        blocks.clone()
    } else {
        vec![Block {
            len: embedded.len(),
            lower: T::zero(),
        }]
    };
    let mut points = Vec::with_capacity(reported_blocks.len());
    let mut off = 0;
    for b in &reported_blocks {
        let coords = renormalize(&embedded[off..off + b.len], b.lower);
        points.push(SimplexPoint::with_lower(coords, b.lower)?);
        off += b.len;
    }
    Ok(OptimizationResult {
        value: run.value,
        points,
        num_starts: runs.len(),
        starts_converged,
        best_start_index: best,
        best_converged: run.converged,
        best_iterations: run.iterations,
    })
}

fn renormalize<T: Real>(x: &[T], lower: T) -> Vec<T> {
    let clipped: Vec<T> = x.iter().map(|&v| v.max(lower)).collect();
    let s = clipped.iter().fold(T::zero(), |a, &v| a + v);
    clipped.into_iter().map(|v| v / s).collect()
}

/// Best lattice point found by [`grid_oracle`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult<T> {
    pub value: T,
    pub point: Vec<T>,
    pub points_visited: u128,
}

fn binomial(n: u128, r: u128) -> u128 {
    let r = r.min(n - r.min(n));
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn compositions(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for first in 0..=total {
        cur.push(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop();
    }
}

/// Maximum of the objective over all lattice points with denominator
/// `resolution` (points violating a block's lower bound are skipped).
/// A lower bound on the true maximum.
pub fn grid_oracle<T: Real, O: Objective<T> + ?Sized>(
    obj: &O,
    resolution: usize,
    budget: u128,
) -> Result<GridResult<T>> {
    if resolution == 0 {
        return Err(Error::Config("resolution must be >= 1".into()));
    }
    let blocks = obj.blocks();
    let mut needed: u128 = 1;
    for b in &blocks {
        let n = binomial((resolution + b.len - 1) as u128, (b.len - 1) as u128);
        needed = needed.saturating_mul(n);
    }
    if needed > budget {
        return Err(Error::Budget {
            what: "lattice points",
            needed,
            budget,
        });
    }
    let denom = T::from_u64(resolution as u64);
    let eps = T::from_f64(1e-12);
    let mut per_block: Vec<Vec<Vec<T>>> = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let mut comps = Vec::new();
        compositions(resolution, b.len, &mut Vec::new(), &mut comps);
        let pts: Vec<Vec<T>> = comps
            .into_iter()
            .map(|c| c.into_iter().map(|v| T::from_u64(v as u64) / denom).collect::<Vec<T>>())
            .filter(|p| p.iter().all(|&v| v >= b.lower - eps))
            .collect();
        if pts.is_empty() {
            return Err(Error::Config(format!(
                "no lattice point of resolution {resolution} satisfies the lower bound"
            )));
        }
        per_block.push(pts);
    }
    let mut idx = vec![0usize; blocks.len()];
    let mut best: Option<(T, Vec<T>)> = None;
    let mut visited: u128 = 0;
    loop {
        let x: Vec<T> = idx
            .iter()
            .enumerate()
            .flat_map(|(bi, &i)| per_block[bi][i].iter().copied())
            .collect();
        let v = obj.value(&x);
        visited += 1;
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, x));
        }
        // odometer
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                let (value, point) = best.expect("visited at least one point");
                return Ok(GridResult {
                    value,
                    point: obj.embed(&point),
                    points_visited: visited,
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_block[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Per-selection maxima of the ordered-statistic functionals at one threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionSweep<T> {
    pub k: usize,
    pub gamma: T,
    pub results: Vec<(TopSelection, OptimizationResult<T>)>,
    /// Index into `results` of the overall maximum (lowest index on ties).
    pub best_index: usize,
}

impl<T: Real> SelectionSweep<T> {
    pub fn best_value(&self) -> T {
        self.results[self.best_index].1.value
    }

    pub fn best_selection(&self) -> &TopSelection {
        &self.results[self.best_index].0
    }
}

/// Maximize every enumerated functional over the simplex at `gamma`.
pub fn maximize_all_selections<T: Real>(
    k: usize,
    gamma: T,
    cfg: &OptimizerConfig,
) -> Result<SelectionSweep<T>> {
    let selections = enumerate_selections(k)?;
    let mut results = Vec::with_capacity(selections.len());
    for sel in selections {
        let spec = FunctionalSpec::new(sel.clone(), gamma)?;
        let res = if cfg.ordered {
            maximize(&Ordered::new(&spec)?, cfg)?
        } else {
            maximize(&spec, cfg)?
        };
        results.push((sel, res));
    }
    let mut best_index = 0;
    for (i, (_, r)) in results.iter().enumerate() {
        if r.value > results[best_index].1.value {
            best_index = i;
        }
    }
    Ok(SelectionSweep {
        k,
        gamma,
        results,
        best_index,
    })
}
