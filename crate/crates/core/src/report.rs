//! Serializable report records.
//!
//! Floats are rounded to 12 significant digits on construction, so emitting
//! a record, parsing it back and emitting again yields identical bytes.
//! Indices in records are 1-based, matching the code file format.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bounds::{arikan_bound, fk_alpha, km_bound, prob_lower, trivial_upper};
use crate::error::Result;
use crate::lab::{
    frequency_profile, Census, Code, CoordinateClassification, HanselCheck, HypergraphCheck,
    SearchResult, Separation,
};
use crate::pipeline::{compute_beta, BetaOptions, BoundReport, ConjectureVerdict, ProbeRow, ThresholdSolution};
use crate::simplex::OptimizationResult;

pub const SCHEMA_VERSION: u32 = 1;

/// Round to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn sig12_vec(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(sig12).collect()
}

pub fn to_json<T: Serialize>(record: &T) -> String {
    serde_json::to_string_pretty(record).expect("records contain only finite numbers")
}

fn rational_text(r: &BigRational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub schema_version: u32,
    pub b: usize,
    pub k: usize,
    /// `k!/k^(k-1)` when `b == k`.
    pub alpha: Option<f64>,
    pub alpha_exact: Option<String>,
    pub trivial_upper: Option<f64>,
    pub prob_lower: Option<f64>,
    pub km: f64,
    pub km_j: usize,
    pub arikan: Option<f64>,
    pub beta: Option<f64>,
    pub gamma_star: Option<f64>,
    /// Why the pipeline columns are empty, if they are.
    pub pipeline_note: Option<String>,
}

impl BoundsRecord {
    /// Classical bounds for `(b, k)`, plus `beta_k` in closed mode when `b == k >= 4`.
    pub fn compute(b: usize, k: usize) -> Result<Self> {
        let km = km_bound::<f64>(b, k)?;
        let arikan = if k >= 4 { arikan_bound::<f64>(b, k).ok().map(sig12) } else { None };
        let square = b == k;
        let (alpha, alpha_exact, trivial, prob) = if square {
            let exact = fk_alpha::<BigRational>(k)?;
            (
                Some(sig12(fk_alpha::<f64>(k)?)),
                Some(rational_text(&exact)),
                Some(sig12(trivial_upper::<f64>(k)?)),
                Some(sig12(prob_lower::<f64>(k)?)),
            )
        } else {
            (None, None, None, None)
        };
        let (beta, gamma_star, note) = if !square {
            (None, None, Some("beta is defined for b = k only".to_string()))
        } else if k < 4 {
            (None, None, Some("unavailable for k < 4".to_string()))
        } else {
            let r = compute_beta(k, &BetaOptions::default())?;
            (Some(sig12(r.beta)), Some(sig12(r.gamma_star())), None)
        };
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            b,
            k,
            alpha,
            alpha_exact,
            trivial_upper: trivial,
            prob_lower: prob,
            km: sig12(km.value),
            km_j: km.j,
            arikan,
            beta,
            gamma_star,
            pipeline_note: note,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRecord {
    pub k: usize,
    pub gamma_star: f64,
    pub r_at_gamma_star: f64,
    pub bracket: [f64; 2],
    pub initial_lower: f64,
    pub widened_lower: f64,
    pub below_concavity_floor: bool,
    pub residual: f64,
    pub iterations: usize,
}

impl From<&ThresholdSolution> for ThresholdRecord {
    fn from(s: &ThresholdSolution) -> Self {
        Self {
            k: s.k,
            gamma_star: sig12(s.gamma_star),
            r_at_gamma_star: sig12(s.r_at_gamma_star),
            bracket: [sig12(s.bracket.0), sig12(s.bracket.1)],
            initial_lower: sig12(s.initial_lower),
            widened_lower: sig12(s.widened_lower),
            below_concavity_floor: s.below_concavity_floor(),
            residual: sig12(s.residual),
            iterations: s.iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionMaxRecord {
    pub selection: String,
    pub value: f64,
    pub argmax: Vec<f64>,
    pub converged: bool,
    pub starts_converged: usize,
    pub num_starts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub schema_version: u32,
    pub k: usize,
    pub gamma: f64,
    pub conjectured: String,
    pub conjectured_value: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub holds: bool,
    pub all_converged: bool,
    pub per_selection_max: Vec<SelectionMaxRecord>,
}

impl From<&ConjectureVerdict> for VerdictRecord {
    fn from(v: &ConjectureVerdict) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            k: v.k,
            gamma: sig12(v.gamma),
            conjectured: v.conjectured.clone(),
            conjectured_value: sig12(v.conjectured_value),
            margin: sig12(v.margin),
            tolerance: v.tolerance,
            holds: v.holds,
            all_converged: v.all_converged(),
            per_selection_max: v
                .per_selection_max
                .iter()
                .map(|s| SelectionMaxRecord {
                    selection: s.selection.clone(),
                    value: sig12(s.value),
                    argmax: sig12_vec(&s.argmax),
                    converged: s.converged,
                    starts_converged: s.starts_converged,
                    num_starts: s.num_starts,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferencesRecord {
    pub trivial_upper: f64,
    pub prob_lower: f64,
    pub km: f64,
    pub arikan: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReportRecord {
    pub schema_version: u32,
    pub k: usize,
    pub mode: String,
    pub alpha: f64,
    pub beta: f64,
    pub gamma_star: f64,
    pub theta_closed_at_gamma_star: f64,
    pub theta_constrained_at_gamma_star: f64,
    pub beta_profile_at_gamma_star: f64,
    pub beta_star_at_gamma_star: f64,
    pub threshold: ThresholdRecord,
    pub conjecture: Option<VerdictRecord>,
    pub references: ReferencesRecord,
}

impl From<&BoundReport> for BoundReportRecord {
    fn from(r: &BoundReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            k: r.k,
            mode: r.mode.as_str().to_string(),
            alpha: sig12(r.alpha),
            beta: sig12(r.beta),
            gamma_star: sig12(r.gamma_star()),
            theta_closed_at_gamma_star: sig12(r.theta_closed_at_gamma_star),
            theta_constrained_at_gamma_star: sig12(r.theta_constrained_at_gamma_star),
            beta_profile_at_gamma_star: sig12(r.beta_profile_at_gamma_star),
            beta_star_at_gamma_star: sig12(r.beta_star_at_gamma_star),
            threshold: ThresholdRecord::from(&r.threshold),
            conjecture: r.conjecture.as_ref().map(VerdictRecord::from),
            references: ReferencesRecord {
                trivial_upper: sig12(r.references.trivial_upper),
                prob_lower: sig12(r.references.prob_lower),
                km: sig12(r.references.km),
                arikan: r.references.arikan.map(sig12),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRowRecord {
    pub gamma: f64,
    pub theta_hat: f64,
    pub best_selection: String,
    pub theta_closed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub schema_version: u32,
    pub k: usize,
    pub rows: Vec<ProbeRowRecord>,
}

impl ProbeRecord {
    pub fn new(k: usize, rows: &[ProbeRow]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            k,
            rows: rows
                .iter()
                .map(|r| ProbeRowRecord {
                    gamma: sig12(r.gamma),
                    theta_hat: sig12(r.theta_hat),
                    best_selection: r.best_selection.clone(),
                    theta_closed: sig12(r.theta_closed),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionsRecord {
    pub schema_version: u32,
    pub k: usize,
    pub count: usize,
    pub conjectured: String,
    pub selections: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationRecord {
    pub value: f64,
    pub argmax: Vec<Vec<f64>>,
    pub num_starts: usize,
    pub starts_converged: usize,
    pub best_start_index: usize,
    pub best_converged: bool,
}

impl From<&OptimizationResult<f64>> for OptimizationRecord {
    fn from(r: &OptimizationResult<f64>) -> Self {
        Self {
            value: sig12(r.value),
            argmax: r.points.iter().map(|p| sig12_vec(p.coords())).collect(),
            num_starts: r.num_starts,
            starts_converged: r.starts_converged,
            best_start_index: r.best_start_index,
            best_converged: r.best_converged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationRecord {
    pub order: usize,
    pub separated: bool,
    /// 1-based word indices of the first violating subset.
    pub witness: Option<Vec<usize>>,
    pub witness_words: Option<Vec<String>>,
    pub subsets_checked: u64,
}

fn word_text(word: &[u8]) -> String {
    word.iter()
        .map(|&s| (s as usize + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl SeparationRecord {
    pub fn new(code: &Code, s: &Separation) -> Self {
        Self {
            order: s.order,
            separated: s.separated,
            witness: s.witness.as_ref().map(|w| w.iter().map(|i| i + 1).collect()),
            witness_words: s
                .witness
                .as_ref()
                .map(|w| w.iter().map(|&i| word_text(code.word(i))).collect()),
            subsets_checked: s.subsets_checked.min(u64::MAX as u128) as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinateRecord {
    pub coordinate: usize,
    /// Exact frequencies `f_i[a]` for `a = 1..k`.
    pub frequencies: Vec<String>,
    pub min_frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub gamma: f64,
    pub balanced: Vec<usize>,
    pub skewed: Vec<usize>,
    pub ell: usize,
    pub ell_clamped: bool,
}

impl From<&CoordinateClassification> for ClassificationRecord {
    fn from(c: &CoordinateClassification) -> Self {
        Self {
            gamma: c.gamma,
            balanced: c.balanced.iter().map(|i| i + 1).collect(),
            skewed: c.skewed.iter().map(|i| i + 1).collect(),
            ell: c.ell,
            ell_clamped: c.ell_clamped,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HanselRecord {
    pub fixed: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub rhs_graph: f64,
    pub tau: Vec<f64>,
    pub satisfied: bool,
    pub satisfied_graph: bool,
}

impl HanselRecord {
    pub fn new(fixed: &[usize], h: &HanselCheck) -> Self {
        Self {
            fixed: fixed.iter().map(|i| i + 1).collect(),
            lhs: sig12(h.lhs),
            rhs: sig12(h.rhs),
            rhs_graph: sig12(h.rhs_graph),
            tau: sig12_vec(&h.tau),
            satisfied: h.satisfied,
            satisfied_graph: h.satisfied_graph,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergraphRecord {
    pub fixed: Vec<usize>,
    pub order: usize,
    pub m: usize,
    pub d: usize,
    pub c: usize,
    pub lhs: f64,
    pub lhs_ratio: f64,
    pub rhs: f64,
    pub tau: Vec<f64>,
    pub satisfied: bool,
    pub satisfied_ratio: bool,
}

impl HypergraphRecord {
    pub fn new(fixed: &[usize], order: usize, h: &HypergraphCheck) -> Self {
        Self {
            fixed: fixed.iter().map(|i| i + 1).collect(),
            order,
            m: h.m,
            d: h.d,
            c: h.c,
            lhs: sig12(h.lhs),
            lhs_ratio: sig12(h.lhs_ratio),
            rhs: sig12(h.rhs),
            tau: sig12_vec(&h.tau),
            satisfied: h.satisfied,
            satisfied_ratio: h.satisfied_ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub coordinates: Vec<usize>,
    pub patterns: usize,
    pub total: u64,
    pub expected_total: u64,
    pub richest: Vec<Vec<usize>>,
    pub richest_count: u64,
}

impl CensusRecord {
    pub fn new(census: &Census, code_size: usize) -> Self {
        let total = census.total();
        let expected =
            crate::lab::census_identity_total(code_size, census.k, census.coords.len());
        Self {
            coordinates: census.coords.iter().map(|i| i + 1).collect(),
            patterns: census.num_patterns(),
            total: total.min(u64::MAX as u128) as u64,
            expected_total: expected.min(u64::MAX as u128) as u64,
            richest: census
                .richest_pattern()
                .sets
                .iter()
                .map(|s| s.iter().map(|&a| a as usize + 1).collect())
                .collect(),
            richest_count: census.richest_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub schema_version: u32,
    pub k: usize,
    pub n: usize,
    pub size: usize,
    pub rate: f64,
    pub separation: SeparationRecord,
    pub coordinates: Vec<CoordinateRecord>,
    pub classification: Option<ClassificationRecord>,
    pub hansel: Option<HanselRecord>,
    pub hypergraph: Option<HypergraphRecord>,
    pub census: Option<CensusRecord>,
}

impl CheckRecord {
    /// Separation verdict and symbol statistics; the optional parts are filled by the caller.
    pub fn base(code: &Code, separation: &Separation) -> Self {
        let profile = frequency_profile(code);
        let coordinates = (0..code.n())
            .map(|i| CoordinateRecord {
                coordinate: i + 1,
                frequencies: profile.coordinate(i).iter().map(rational_text).collect(),
                min_frequency: sig12(
                    *profile.counts(i).iter().min().expect("alphabet is non-empty") as f64
                        / code.len() as f64,
                ),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            k: code.alphabet(),
            n: code.n(),
            size: code.len(),
            rate: sig12(code.rate()),
            separation: SeparationRecord::new(code, separation),
            coordinates,
            classification: None,
            hansel: None,
            hypergraph: None,
            census: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub schema_version: u32,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub size: usize,
    pub rate: f64,
    pub prob_lower: f64,
    pub words: Vec<String>,
}

impl SearchRecord {
    pub fn new(r: &SearchResult, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            k: r.code.alphabet(),
            n: r.code.n(),
            seed,
            trials: r.trials,
            size: r.code.len(),
            rate: sig12(r.rate),
            prob_lower: sig12(r.prob_lower),
            words: r.code.words().iter().map(|w| word_text(w)).collect(),
        }
    }
}
