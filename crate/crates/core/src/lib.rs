//! Posterior probability of a point null hypothesis given a statistically
//! significant result.
//!
//! The prior probability that the null is true (`θ`) and, optionally, the
//! Type II error (`β`) are uncertain and modelled with Beta distributions.
//! Monte Carlo propagation pushes those priors through
//!
//! ```text
//! P(H0 | sig) = α·θ / (α·θ + (1 − β)·(1 − θ))
//! ```
//!
//! and the resulting draws are summarised by a mean, an equal-tailed credible
//! interval and a fixed-width histogram.
//!
//! ```
//! use probnull_core::{BetaParams, ErrorConfig, NullPrior, TypeIISpec, propagate, summarize};
//!
//! let prior = NullPrior::new(BetaParams::new(60.0, 6.0).unwrap());
//! let cfg = ErrorConfig::new(0.05, TypeIISpec::point(0.9).unwrap()).unwrap();
//! let draws = propagate(&prior, &cfg, 20_000, 7).unwrap();
//! let summary = summarize(&draws, 0.95).unwrap();
//! assert!(summary.ci_lower() > 0.6 && summary.ci_upper() < 0.97);
//! ```

pub mod beta;
mod error;
pub mod posterior;
pub mod propagate;
pub mod request;
pub mod rng;
pub mod scenario;
pub mod special;
pub mod summary;

pub use beta::BetaParams;
pub use error::{Error, Result};
pub use posterior::{
    analytic_posterior_quantile, posterior_null_given_sig, prob_sig, ErrorConfig, NullPrior,
    TypeIISpec,
};
pub use propagate::{propagate, propagate_with, Layout, SampleSet};
pub use request::{ComputeResponse, PosteriorRequest, ResolvedRequest};
pub use scenario::{builtin_scenarios, run_grid, run_scenario, Grid, ScenarioResult, ScenarioSpec};
pub use summary::{prior_summary, summarize, Histogram, PosteriorSummary, PriorSummary};

/// Monte Carlo iterations used when no count is given.
pub const DEFAULT_N: usize = 100_000;

/// Credible-interval mass used when no level is given.
pub const DEFAULT_CI_LEVEL: f64 = 0.95;

/// Root seed for the builtin scenario registry and the command-line default.
pub const DEFAULT_SEED: u64 = 2019;
