//! Request and response bodies shared by the command line and the HTTP
//! service, so that both produce the same JSON for the same inputs.

use serde::{Deserialize, Serialize};

use crate::beta::BetaParams;
use crate::error::{Error, Result};
use crate::posterior::{ErrorConfig, NullPrior, TypeIISpec};
use crate::propagate::propagate;
use crate::scenario::ScenarioSpec;
use crate::summary::{prior_summary, summarize, PosteriorSummary, PriorSummary};
use crate::{DEFAULT_CI_LEVEL, DEFAULT_N};

/// Largest iteration count accepted from a request.
pub const MAX_N: usize = 10_000_000;

/// Seeds chosen on behalf of a client stay below 2^53 so they survive a
/// round trip through a JavaScript number.
pub const MAX_CHOSEN_SEED: u64 = (1 << 53) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shapes {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Type2Input {
    Point { point: f64 },
    Beta { a: f64, b: f64 },
}

/// Unvalidated request: `{"prior": {"a", "b"}, "alpha", "type2": {"point"} | {"a", "b"},
/// "n"?, "seed"?, "ci_level"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorRequest {
    pub prior: Shapes,
    pub alpha: f64,
    pub type2: Type2Input,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_level: Option<f64>,
}

/// A validated request with every default filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedRequest {
    pub prior: NullPrior,
    #[serde(flatten)]
    pub cfg: ErrorConfig,
    pub n: usize,
    pub seed: u64,
    pub ci_level: f64,
}

/// Posterior summary fields at the top level, plus the analytic prior
/// summary and the resolved request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeResponse {
    #[serde(flatten)]
    pub posterior: PosteriorSummary,
    pub prior: PriorSummary,
    pub request: ResolvedRequest,
}

fn shapes_for(field_a: &'static str, field_b: &'static str, a: f64, b: f64) -> Result<BetaParams> {
    BetaParams::new(a, b).map_err(|e| match e {
        Error::InvalidParameter {
            field: "a",
            message,
        } => Error::invalid(field_a, message),
        Error::InvalidParameter {
            field: "b",
            message,
        } => Error::invalid(field_b, message),
        other => other,
    })
}

impl PosteriorRequest {
    /// Validate, filling a missing seed from `choose_seed`.
    pub fn resolve(&self, choose_seed: impl FnOnce() -> u64) -> Result<ResolvedRequest> {
        let prior = NullPrior::new(shapes_for(
            "prior.a",
            "prior.b",
            self.prior.a,
            self.prior.b,
        )?);
        let type2 = match self.type2 {
            Type2Input::Point { point } => TypeIISpec::point(point)
                .map_err(|e| Error::invalid("type2.point", strip_field(e)))?,
            Type2Input::Beta { a, b } => TypeIISpec::Beta(shapes_for("type2.a", "type2.b", a, b)?),
        };
        let cfg = ErrorConfig::new(self.alpha, type2)?;
        let n = self.n.unwrap_or(DEFAULT_N);
        if n < 2 {
            return Err(Error::invalid(
                "n",
                format!("need at least 2 iterations, got {n}"),
            ));
        }
        if n > MAX_N {
            return Err(Error::invalid(
                "n",
                format!("at most {MAX_N} iterations, got {n}"),
            ));
        }
        let ci_level = self.ci_level.unwrap_or(DEFAULT_CI_LEVEL);
        if !(ci_level > 0.0 && ci_level < 1.0) {
            return Err(Error::invalid(
                "ci_level",
                format!("credible level must lie in (0, 1), got {ci_level}"),
            ));
        }
        let seed = self.seed.unwrap_or_else(choose_seed);
        Ok(ResolvedRequest {
            prior,
            cfg,
            n,
            seed,
            ci_level,
        })
    }
}

fn strip_field(e: Error) -> String {
    match e {
        Error::InvalidParameter { message, .. } => message,
        other => other.to_string(),
    }
}

impl ResolvedRequest {
    pub fn from_scenario(spec: &ScenarioSpec) -> Self {
        Self {
            prior: spec.prior,
            cfg: spec.cfg,
            n: spec.n,
            seed: spec.seed,
            ci_level: DEFAULT_CI_LEVEL,
        }
    }

    pub fn compute(&self) -> Result<ComputeResponse> {
        let prior = prior_summary(self.prior.dist(), self.ci_level)?;
        let samples = propagate(&self.prior, &self.cfg, self.n, self.seed)?;
        let posterior = summarize(&samples, self.ci_level)?;
        Ok(ComputeResponse {
            posterior,
            prior,
            request: self.clone(),
        })
    }
}
