//! Upper bounds on the rate of perfect k-hash codes.
//!
//! * [`bounds`]: closed-form bounds (Fredman–Komlós, Körner–Marton, Arikan,
//!   the threshold polynomials), generic over [`Scalar`].
//! * [`functionals`]: top-product selections and the polynomials they induce.
//! * [`simplex`]: multi-start maximization over simplices and a lattice oracle.
//! * [`pipeline`]: threshold balancing and the improved bound `beta_k`.
//! * [`lab`]: explicit codes, separation checks and covering inequalities.
//! * [`report`]: serializable records.

// `!(x > 0.0)` is meant to reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod functionals;
pub mod lab;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod simplex;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use scalar::{factorial, Real, Scalar};

/// Exact rational scalar.
pub type Exact = BigRational;
pub type SimplexPointF64 = simplex::SimplexPoint<f64>;
pub type OptimizationResultF64 = simplex::OptimizationResult<f64>;
pub type FunctionalSpecF64 = functionals::FunctionalSpec<f64>;
pub type ThresholdF64 = bounds::Threshold<f64>;
