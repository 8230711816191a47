//! `khash`: bounds on perfect k-hash codes from the command line.
//!
//! Exit status: 0 success, 1 usage or input error, 2 numeric failure
//! (including a failed conjecture check), 3 work budget exceeded.

// `!(x > 0.0)` is meant to reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use khash::functionals::{conjectured_selection, enumerate_selections, MAX_SELECTION_K};
use khash::lab::{
    classify, hansel_check, hypergraph_hansel_check, is_separated, random_code_search,
    subcode_census, Code, DEFAULT_CENSUS_BUDGET, DEFAULT_PROBE_BUDGET,
};
use khash::pipeline::{
    compute_beta, continuity_probe, solve_threshold, verify_conjecture, BetaMode, BetaOptions,
    ThresholdOptions,
};
use khash::report::{
    to_json, BoundReportRecord, BoundsRecord, CensusRecord, CheckRecord, ClassificationRecord,
    HanselRecord, HypergraphRecord, ProbeRecord, SearchRecord, SelectionsRecord, VerdictRecord,
    SCHEMA_VERSION,
};
use khash::simplex::OptimizerConfig;
use khash::Error;

const USAGE: u8 = 1;
const NUMERIC: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "khash", version, about = "Rate bounds for perfect k-hash codes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Verified,
}

#[derive(clap::Args, Debug, Clone)]
struct OptArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    starts: usize,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    /// Only search sorted points g_1 >= ... >= g_k.
    #[arg(long)]
    ordered: bool,
}

impl OptArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            num_starts: self.starts,
            max_iters: self.max_iters,
            tolerance: self.tolerance,
            seed: self.seed,
            ordered: self.ordered,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical bounds for k (or for (b, k)).
    Bounds {
        #[arg(long)]
        k: usize,
        /// Alphabet size for (b, k)-hashing; defaults to k.
        #[arg(long)]
        b: Option<usize>,
    },
    /// Threshold balancing and the improved bound beta_k.
    Beta {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
        /// Run the conjecture check in closed mode too.
        #[arg(long)]
        check_conjecture: bool,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Numerical theta over a range of thresholds.
    Theta {
        #[arg(long)]
        k: usize,
        /// Explicit thresholds, comma separated.
        #[arg(long, value_delimiter = ',')]
        gammas: Vec<f64>,
        /// Evenly spaced grid: lower end.
        #[arg(long)]
        from: Option<f64>,
        /// Evenly spaced grid: upper end (defaults to 1/k).
        #[arg(long)]
        to: Option<f64>,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// List the top-product selections for k.
    Selections {
        #[arg(long)]
        k: usize,
    },
    /// Compare all functional maxima at one threshold (default: gamma*).
    VerifyConjecture {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gamma: Option<f64>,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Verify an explicit code file.
    Check {
        file: PathBuf,
        /// Separation order (defaults to the alphabet size).
        #[arg(long)]
        order: Option<usize>,
        /// Classify coordinates against this threshold.
        #[arg(long)]
        gamma: Option<f64>,
        /// Covering check with this many fixed words.
        #[arg(long)]
        hansel: Option<usize>,
        /// Fixed words for --hansel, 1-based, comma separated (default: the first ones).
        #[arg(long, value_delimiter = ',')]
        fixed: Vec<usize>,
        /// Subcode census over these coordinates, 1-based, comma separated.
        #[arg(long, value_delimiter = ',')]
        census: Vec<usize>,
        /// Probe budget for the separation check.
        #[arg(long, default_value_t = DEFAULT_PROBE_BUDGET as u64)]
        budget: u64,
    },
    /// Greedy random search for a separated code.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Output {
    json: String,
    text: String,
    csv: String,
    status: u8,
}

struct Failure {
    status: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if let Error::NotSeparated { order, witness } = &e {
            let words: Vec<String> = witness.iter().map(|w| (w + 1).to_string()).collect();
            return Failure {
                status: NUMERIC,
                message: format!("code is not {order}-separated; violating words {}", words.join(",")),
            };
        }
        let status = match e {
            Error::Budget { .. } => BUDGET,
            Error::InvalidAlphabet { .. }
            | Error::InvalidParams { .. }
            | Error::Domain { .. }
            | Error::Dimension { .. }
            | Error::Index(_)
            | Error::InvalidCode(_)
            | Error::Parse { .. }
            | Error::Config(_) => USAGE,
            _ => NUMERIC,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: USAGE,
        message: message.into(),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Bounds { k, b } => {
            let r = BoundsRecord::compute(b.unwrap_or(*k), *k)?;
            Ok(Output {
                json: to_json(&r),
                text: render::bounds_text(&r),
                csv: render::bounds_csv(&r),
                status: 0,
            })
        }
        Command::Beta {
            k,
            mode,
            check_conjecture,
            opt,
        } => {
            let opts = BetaOptions {
                mode: match mode {
                    Mode::Closed => BetaMode::Closed,
                    Mode::Verified => BetaMode::Verified,
                },
                threshold: ThresholdOptions::default(),
                optimizer: opt.config(),
                check_conjecture: *check_conjecture,
            };
            let report = compute_beta(*k, &opts)?;
            let rec = BoundReportRecord::from(&report);
            let status = match &report.conjecture {
                Some(v) if !v.all_converged() => NUMERIC,
                Some(v) if opts.mode == BetaMode::Verified && !v.holds => NUMERIC,
                _ => 0,
            };
            Ok(Output {
                json: to_json(&rec),
                text: render::beta_text(&rec),
                csv: render::beta_csv(&rec),
                status,
            })
        }
        Command::Theta {
            k,
            gammas,
            from,
            to,
            points,
            opt,
        } => {
            let mut list = gammas.clone();
            if let Some(lo) = from {
                let hi = to.unwrap_or(1.0 / *k as f64);
                if *points < 2 || !(lo < &hi) {
                    return Err(usage("grid needs --points >= 2 and --from < --to"));
                }
                list.extend((0..*points).map(|i| lo + (hi - lo) * i as f64 / (*points - 1) as f64));
            }
            if list.is_empty() {
                return Err(usage("give --gammas or --from"));
            }
            let rows = continuity_probe(*k, &list, &opt.config())?;
            let rec = ProbeRecord::new(*k, &rows);
            Ok(Output {
                json: to_json(&rec),
                text: render::probe_text(&rec),
                csv: render::probe_csv(&rec),
                status: 0,
            })
        }
        Command::Selections { k } => {
            if *k > MAX_SELECTION_K {
                return Err(usage(format!("k must be at most {MAX_SELECTION_K}")));
            }
            let sels = enumerate_selections(*k)?;
            let rec = SelectionsRecord {
                schema_version: SCHEMA_VERSION,
                k: *k,
                count: sels.len(),
                conjectured: conjectured_selection(*k)?.to_string(),
                selections: sels.iter().map(|s| s.to_string()).collect(),
            };
            Ok(Output {
                json: to_json(&rec),
                text: render::selections_text(&rec),
                csv: render::selections_csv(&rec),
                status: 0,
            })
        }
        Command::VerifyConjecture { k, gamma, opt } => {
            let gamma = match gamma {
                Some(g) => *g,
                None => solve_threshold(*k, &ThresholdOptions::default())?.gamma_star,
            };
            let v = verify_conjecture(*k, gamma, &opt.config())?;
            let rec = VerdictRecord::from(&v);
            let status = if v.holds && v.all_converged() { 0 } else { NUMERIC };
            Ok(Output {
                json: to_json(&rec),
                text: render::verdict_text(&rec),
                csv: render::verdict_csv(&rec),
                status,
            })
        }
        Command::Check {
            file,
            order,
            gamma,
            hansel,
            fixed,
            census,
            budget,
        } => check(file, *order, *gamma, *hansel, fixed, census, *budget),
        Command::Search { k, n, trials, seed } => {
            let r = random_code_search(*k, *n, *trials, *seed)?;
            let rec = SearchRecord::new(&r, *seed);
            Ok(Output {
                json: to_json(&rec),
                text: render::search_text(&rec),
                csv: render::search_csv(&rec),
                status: 0,
            })
        }
    }
}

fn one_based(list: &[usize], len: usize, what: &str) -> Result<Vec<usize>, Failure> {
    list.iter()
        .map(|&i| {
            if i == 0 || i > len {
                Err(usage(format!("{what} index {i} outside 1..={len}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn check(
    file: &PathBuf,
    order: Option<usize>,
    gamma: Option<f64>,
    hansel: Option<usize>,
    fixed: &[usize],
    census: &[usize],
    budget: u64,
) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let code = Code::parse(&text)?;
    let order = order.unwrap_or(code.alphabet());
    let sep = is_separated(&code, order, budget as u128)?;
    let mut rec = CheckRecord::base(&code, &sep);
    if let Some(g) = gamma {
        rec.classification = Some(ClassificationRecord::from(&classify(&code, g)?));
    }
    if let Some(j) = hansel {
        let fixed = if fixed.is_empty() {
            (0..j.min(code.len())).collect()
        } else {
            one_based(fixed, code.len(), "word")?
        };
        if fixed.len() != j {
            return Err(usage(format!("--hansel {j} needs {j} fixed words")));
        }
        if j + 2 == order && order == code.alphabet() {
            rec.hansel = Some(HanselRecord::new(&fixed, &hansel_check(&code, &fixed)?));
        } else {
            let h = hypergraph_hansel_check(&code, order, &fixed)?;
            rec.hypergraph = Some(HypergraphRecord::new(&fixed, order, &h));
        }
    }
    if !census.is_empty() {
        let t = one_based(census, code.n(), "coordinate")?;
        let c = subcode_census(&code, &t, DEFAULT_CENSUS_BUDGET)?;
        rec.census = Some(CensusRecord::new(&c, code.len()));
    }
    Ok(Output {
        json: to_json(&rec),
        text: render::check_text(&rec),
        csv: render::check_csv(&rec),
        status: 0,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut body = match cli.format {
                Format::Text => out.text,
                Format::Json => out.json,
                Format::Csv => out.csv,
            };
            if !body.ends_with('\n') {
                body.push('\n');
            }
            let written = match &cli.output {
                Some(path) => std::fs::write(path, body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return ExitCode::from(USAGE);
            }
            ExitCode::from(out.status)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
