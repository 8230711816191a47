//! The improved bound `beta_k`: balance the two case bounds over the
//! threshold `gamma`, then check which top-product functional is maximal there.

use crate::bounds::{
    arikan_bound, beta_star, concavity_gamma_floor, fk_alpha, gamma_pole, km_bound, prob_lower,
    r_bal, r_unbal, theta_clamped, theta_closed, trivial_upper, AlphabetSize,
};
use crate::error::{Error, Result};
use crate::functionals::conjectured_selection;
use crate::simplex::{maximize_all_selections, OptimizerConfig, SelectionSweep};

/// Default absolute tolerance for the conjecture comparison.
pub const CONJECTURE_TOLERANCE: f64 = 1e-7;

/// `h(gamma) = r_bal(theta_closed(gamma)) - r_unbal(gamma)`; negative at `1/k`,
/// positive near the pole.
pub fn balance_function(k: usize, gamma: f64) -> Result<f64> {
    let theta = theta_closed::<f64>(k, gamma)?;
    Ok(r_bal::<f64>(k, theta)? - r_unbal::<f64>(k, gamma)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdOptions {
    /// Bisection stops once the bracket is narrower than this.
    pub tolerance: f64,
    pub max_iters: usize,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iters: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSolution {
    pub k: usize,
    pub gamma_star: f64,
    /// Common value of both case bounds at `gamma_star`.
    pub r_at_gamma_star: f64,
    /// Final bisection bracket, `lo <= gamma_star <= hi`.
    pub bracket: (f64, f64),
    /// Lower end of the search before widening, `1/(2k-3)`.
    pub initial_lower: f64,
    /// Lower end at which a sign change was first found.
    pub widened_lower: f64,
    /// `|h(gamma_star)|`.
    pub residual: f64,
    pub iterations: usize,
}

impl ThresholdSolution {
    /// True when the root lies below `1/(2k-3)`, where the concavity
    /// argument for the skewed coordinates no longer applies as stated.
    pub fn below_concavity_floor(&self) -> bool {
        self.gamma_star < self.initial_lower
    }
}

/// Solve `r_unbal(gamma) = r_bal(theta_closed(gamma))` by bisection.
///
/// The search starts on `(1/(2k-3), 1/k)` and moves the lower end halfway to
/// the pole `1/(k^2-2k)` until `h` changes sign.
pub fn solve_threshold(k: usize, opts: &ThresholdOptions) -> Result<ThresholdSolution> {
    AlphabetSize::for_pipeline(k)?;
    if !(opts.tolerance > 0.0) || opts.max_iters == 0 {
        return Err(Error::Config("threshold tolerance and iterations must be positive".into()));
    }
    let pole = gamma_pole::<f64>(k)?;
    let initial_lower = concavity_gamma_floor::<f64>(k)?;
    let mut hi = 1.0 / k as f64;
    let h_hi = balance_function(k, hi)?;
    if !(h_hi < 0.0) {
        return Err(Error::NoSignChange { k, lowest: hi });
    }
    let mut lo = initial_lower;
    loop {
        if lo > pole && balance_function(k, lo)? > 0.0 {
            break;
        }
        let next = pole + (lo - pole) / 2.0;
        if next - pole < 1e-15 || next >= lo {
            return Err(Error::NoSignChange { k, lowest: lo });
        }
        lo = next;
    }
    let widened_lower = lo;
    let mut iterations = 0;
    while hi - lo > opts.tolerance && iterations < opts.max_iters {
        let mid = 0.5 * (lo + hi);
        if balance_function(k, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let gamma_star = 0.5 * (lo + hi);
    Ok(ThresholdSolution {
        k,
        gamma_star,
        r_at_gamma_star: r_unbal::<f64>(k, gamma_star)?,
        bracket: (lo, hi),
        initial_lower,
        widened_lower,
        residual: balance_function(k, gamma_star)?.abs(),
        iterations,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionMax {
    /// Canonical text of the selection, e.g. `15,25,35,45`.
    pub selection: String,
    pub value: f64,
    pub argmax: Vec<f64>,
    pub converged: bool,
    pub starts_converged: usize,
    pub num_starts: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureVerdict {
    pub k: usize,
    pub gamma: f64,
    pub per_selection_max: Vec<SelectionMax>,
    pub conjectured: String,
    pub conjectured_value: f64,
    /// `conjectured_value` minus the largest other maximum.
    pub margin: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl ConjectureVerdict {
    /// Whether the winning start of every selection met the optimizer tolerance.
    pub fn all_converged(&self) -> bool {
        self.per_selection_max.iter().all(|s| s.converged)
    }

    /// Largest maximum over all selections.
    pub fn best_value(&self) -> f64 {
        self.per_selection_max
            .iter()
            .map(|s| s.value)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn verdict_from_sweep(sweep: &SelectionSweep<f64>, tolerance: f64) -> Result<ConjectureVerdict> {
    let conj = conjectured_selection(sweep.k)?;
    let mut conjectured_value = None;
    let mut best_other = f64::NEG_INFINITY;
    let mut per = Vec::with_capacity(sweep.results.len());
    for (sel, res) in &sweep.results {
        if *sel == conj {
            conjectured_value = Some(res.value);
        } else {
            best_other = best_other.max(res.value);
        }
        per.push(SelectionMax {
            selection: sel.to_string(),
            value: res.value,
            argmax: res.argmax().coords().to_vec(),
            converged: res.best_converged,
            starts_converged: res.starts_converged,
            num_starts: res.num_starts,
        });
    }
    let conjectured_value = conjectured_value.ok_or_else(|| {
        Error::Index("conjectured selection missing from the enumeration".into())
    })?;
    let margin = if best_other.is_finite() {
        conjectured_value - best_other
    } else {
        0.0
    };
    Ok(ConjectureVerdict {
        k: sweep.k,
        gamma: sweep.gamma,
        per_selection_max: per,
        conjectured: conj.to_string(),
        conjectured_value,
        margin,
        tolerance,
        holds: margin >= -tolerance,
    })
}

/// Maximize every functional at `gamma` and compare the conjectured one with the rest.
pub fn verify_conjecture(k: usize, gamma: f64, cfg: &OptimizerConfig) -> Result<ConjectureVerdict> {
    AlphabetSize::for_pipeline(k)?;
    let sweep = maximize_all_selections(k, gamma, cfg)?;
    verdict_from_sweep(&sweep, CONJECTURE_TOLERANCE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaMode {
    /// `theta` from the closed form of the conjectured functional.
    #[default]
    Closed,
    /// `theta` from the numerical maximum over all functionals at the closed-mode `gamma*`.
    Verified,
}

impl BetaMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BetaMode::Closed => "closed",
            BetaMode::Verified => "verified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BetaOptions {
    pub mode: BetaMode,
    pub threshold: ThresholdOptions,
    pub optimizer: OptimizerConfig,
    /// Also run the conjecture check in closed mode.
    pub check_conjecture: bool,
}

/// Classical bounds for the same `k`, for comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct References {
    pub trivial_upper: f64,
    pub prob_lower: f64,
    pub km: f64,
    pub arikan: Option<f64>,
}

impl References {
    pub fn for_k(k: usize) -> Result<Self> {
        Ok(Self {
            trivial_upper: trivial_upper::<f64>(k)?,
            prob_lower: prob_lower::<f64>(k)?,
            km: km_bound::<f64>(k, k)?.value,
            arikan: arikan_bound::<f64>(k, k).ok(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub k: usize,
    pub mode: BetaMode,
    pub alpha: f64,
    pub beta: f64,
    pub threshold: ThresholdSolution,
    pub theta_closed_at_gamma_star: f64,
    /// Maximum of `Q` over `[1/k, 1/(k-1)]` and the maximizing `beta`.
    pub theta_constrained_at_gamma_star: f64,
    pub beta_profile_at_gamma_star: f64,
    /// Unconstrained stationary point of `Q` at `gamma*`.
    pub beta_star_at_gamma_star: f64,
    pub conjecture: Option<ConjectureVerdict>,
    pub references: References,
}

impl BoundReport {
    pub fn gamma_star(&self) -> f64 {
        self.threshold.gamma_star
    }
}

/// Compute `beta_k` and the surrounding report.
///
/// In closed mode `beta` is the common value of both case bounds at
/// `gamma*`. In verified mode `theta` is replaced by the largest numerical
/// maximum over all functionals at the same `gamma*`, and `beta` is the
/// larger of the two case bounds.
pub fn compute_beta(k: usize, opts: &BetaOptions) -> Result<BoundReport> {
    let threshold = solve_threshold(k, &opts.threshold)?;
    let g = threshold.gamma_star;
    let alpha = fk_alpha::<f64>(k)?;
    let theta_c = theta_closed::<f64>(k, g)?;
    let (theta_q, beta_q) = theta_clamped::<f64>(k, g)?;
    let conjecture = if opts.mode == BetaMode::Verified || opts.check_conjecture {
        Some(verify_conjecture(k, g, &opts.optimizer)?)
    } else {
        None
    };
    let beta = match opts.mode {
        BetaMode::Closed => threshold.r_at_gamma_star,
        BetaMode::Verified => {
            let theta_hat = conjecture.as_ref().expect("computed above").best_value();
            threshold.r_at_gamma_star.max(r_bal::<f64>(k, theta_hat)?)
        }
    };
    if !(beta < alpha) {
        return Err(Error::NoImprovement { k, beta, alpha });
    }
    Ok(BoundReport {
        k,
        mode: opts.mode,
        alpha,
        beta,
        theta_closed_at_gamma_star: theta_c,
        theta_constrained_at_gamma_star: theta_q,
        beta_profile_at_gamma_star: beta_q,
        beta_star_at_gamma_star: beta_star::<f64>(k, g)?,
        threshold,
        conjecture,
        references: References::for_k(k)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub gamma: f64,
    /// Largest numerical maximum over all functionals.
    pub theta_hat: f64,
    pub best_selection: String,
    pub theta_closed: f64,
}

/// `theta` estimates along a list of thresholds in `(1/(k^2-2k), 1/k]`.
pub fn continuity_probe(k: usize, gammas: &[f64], cfg: &OptimizerConfig) -> Result<Vec<ProbeRow>> {
    AlphabetSize::for_pipeline(k)?;
    let pole = gamma_pole::<f64>(k)?;
    let top = 1.0 / k as f64;
    gammas
        .iter()
        .map(|&gamma| {
            if !(gamma > pole && gamma <= top) {
                return Err(Error::Domain {
                    name: "gamma",
                    value: gamma,
                    domain: format!("(1/{}, 1/{k}]", k * k - 2 * k),
                });
            }
            let sweep = maximize_all_selections(k, gamma, cfg)?;
            Ok(ProbeRow {
                gamma,
                theta_hat: sweep.best_value(),
                best_selection: sweep.best_selection().to_string(),
                theta_closed: theta_closed::<f64>(k, gamma)?,
            })
        })
        .collect()
}
