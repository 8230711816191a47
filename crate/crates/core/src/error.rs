use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet size k={k} is invalid here: {reason}")]
    InvalidAlphabet { k: usize, reason: &'static str },

    #[error("invalid (b,k) parameters b={b}, k={k}: {reason}")]
    InvalidParams { b: usize, k: usize, reason: &'static str },

    #[error("argument {name}={value} outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: String,
    },

    #[error("pole: (k^2-2k)*gamma <= 1 for k={k}, gamma={gamma}")]
    Pole { k: usize, gamma: f64 },

    #[error("value has no exact representation in this scalar type ({what})")]
    Inexact { what: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("not a probability vector: {0}")]
    NotOnSimplex(String),

    #[error("no sign change found for k={k} down to gamma={lowest}")]
    NoSignChange { k: usize, lowest: f64 },

    #[error("beta={beta} does not improve on alpha={alpha} for k={k}")]
    NoImprovement { k: usize, beta: f64, alpha: f64 },

    #[error("work budget exceeded: {needed} > {budget} ({what})")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("index error: {0}")]
    Index(String),

    #[error("code is not {order}-separated; violating words {witness:?}")]
    NotSeparated { order: usize, witness: Vec<usize> },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid optimizer configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
