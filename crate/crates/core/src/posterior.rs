//! Posterior probability of the null given a significant result.

use serde::{Deserialize, Serialize};

use crate::beta::BetaParams;
use crate::error::{Error, Result};

/// Distribution of `θ`, the prior probability that the null is true.
///
/// The null itself is a Bernoulli event with success probability `θ`; only
/// the Beta law of `θ` is needed here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NullPrior(BetaParams);

impl NullPrior {
    pub fn new(dist: BetaParams) -> Self {
        Self(dist)
    }

    pub fn dist(&self) -> &BetaParams {
        &self.0
    }
}

impl From<BetaParams> for NullPrior {
    fn from(dist: BetaParams) -> Self {
        Self(dist)
    }
}

/// Type II error `β`: fixed, or uncertain with a Beta law. Power is `1 − β`.
///
/// Serialized as `{"point": β}` or `{"a": .., "b": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TypeIIRepr", into = "TypeIIRepr")]
pub enum TypeIISpec {
    Point(f64),
    Beta(BetaParams),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TypeIIRepr {
    Point { point: f64 },
    Beta { a: f64, b: f64 },
}

impl TryFrom<TypeIIRepr> for TypeIISpec {
    type Error = Error;

    fn try_from(repr: TypeIIRepr) -> Result<Self> {
        match repr {
            TypeIIRepr::Point { point } => TypeIISpec::point(point),
            TypeIIRepr::Beta { a, b } => Ok(TypeIISpec::Beta(BetaParams::new(a, b)?)),
        }
    }
}

impl From<TypeIISpec> for TypeIIRepr {
    fn from(spec: TypeIISpec) -> Self {
        match spec {
            TypeIISpec::Point(point) => TypeIIRepr::Point { point },
            TypeIISpec::Beta(p) => TypeIIRepr::Beta { a: p.a(), b: p.b() },
        }
    }
}

impl TypeIISpec {
    /// A fixed Type II error in `[0, 1)`.
    pub fn point(beta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::invalid(
                "type2",
                format!("point Type II error must lie in [0, 1), got {beta}"),
            ));
        }
        Ok(TypeIISpec::Point(beta))
    }

    pub fn beta(a: f64, b: f64) -> Result<Self> {
        BetaParams::new(a, b)
            .map(TypeIISpec::Beta)
            .map_err(|e| Error::invalid("type2", e.to_string()))
    }

    /// Expected Type II error.
    pub fn mean(&self) -> f64 {
        match self {
            TypeIISpec::Point(b) => *b,
            TypeIISpec::Beta(p) => p.mean(),
        }
    }
}

/// Type I error `α` together with the Type II specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawErrorConfig")]
pub struct ErrorConfig {
    alpha: f64,
    type2: TypeIISpec,
}

#[derive(Deserialize)]
struct RawErrorConfig {
    alpha: f64,
    type2: TypeIISpec,
}

impl TryFrom<RawErrorConfig> for ErrorConfig {
    type Error = Error;

    fn try_from(raw: RawErrorConfig) -> Result<Self> {
        ErrorConfig::new(raw.alpha, raw.type2)
    }
}

impl ErrorConfig {
    pub fn new(alpha: f64, type2: TypeIISpec) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::invalid(
                "alpha",
                format!("Type I error must lie in (0, 1], got {alpha}"),
            ));
        }
        Ok(Self { alpha, type2 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn type2(&self) -> &TypeIISpec {
        &self.type2
    }
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: p,
            domain: "[0, 1]",
        })
    }
}

/// Marginal probability of a significant result, `α·θ + power·(1 − θ)`.
pub fn prob_sig(theta: f64, alpha: f64, power: f64) -> Result<f64> {
    check_probability("theta", theta)?;
    check_probability("alpha", alpha)?;
    check_probability("power", power)?;
    Ok(alpha * theta + power * (1.0 - theta))
}

/// `P(H0 true | sig) = α·θ / (α·θ + power·(1 − θ))`.
///
/// Fails with [`Error::Degenerate`] when the denominator is zero, which for
/// in-range inputs means `θ = 1, α = 0` or `θ = 0, power = 0`.
pub fn posterior_null_given_sig(theta: f64, alpha: f64, power: f64) -> Result<f64> {
    let denom = prob_sig(theta, alpha, power)?;
    if denom == 0.0 {
        return Err(Error::Degenerate {
            theta,
            alpha,
            power,
        });
    }
    Ok(posterior_formula(theta, alpha, power, denom))
}

#[inline]
fn posterior_formula(theta: f64, alpha: f64, power: f64, denom: f64) -> f64 {
    // An uninformative test returns the prior exactly; the general
    // expression can be an ulp off.
    if alpha == power {
        return theta;
    }
    (alpha * theta / denom).min(1.0)
}

/// Posterior for Monte Carlo draws, where `α > 0` is guaranteed by
/// [`ErrorConfig`] and a draw of exactly `θ = 0` collapses to `0` even when
/// the power draw is also `0`.
#[inline]
pub(crate) fn posterior_collapsed(theta: f64, alpha: f64, power: f64) -> f64 {
    if theta == 0.0 {
        return 0.0;
    }
    let denom = alpha * theta + power * (1.0 - theta);
    posterior_formula(theta, alpha, power, denom)
}

/// Exact `u`-quantile of the posterior when the Type II error is a point.
///
/// The posterior is strictly increasing in `θ` for fixed `α` and power, so
/// its quantiles are the images of the prior's quantiles.
pub fn analytic_posterior_quantile(prior: &NullPrior, cfg: &ErrorConfig, u: f64) -> Result<f64> {
    let beta = match cfg.type2() {
        TypeIISpec::Point(b) => *b,
        TypeIISpec::Beta(_) => return Err(Error::PointTypeIIRequired),
    };
    let theta = prior.dist().quantile(u)?;
    posterior_null_given_sig(theta, cfg.alpha(), 1.0 - beta)
}
