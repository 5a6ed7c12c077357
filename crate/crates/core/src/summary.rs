//! Summaries of posterior draws and of Beta priors.

use serde::{Deserialize, Serialize};

use crate::beta::BetaParams;
use crate::error::{Error, Result};
use crate::propagate::SampleSet;

/// Bins in a [`Histogram`].
pub const HISTOGRAM_BINS: usize = 512;

/// Counts over equal-width bins on `[0, 1]`. A draw of exactly `1.0` lands in
/// the last bin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub bins: usize,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn from_draws(draws: &[f64], bins: usize) -> Self {
        let mut counts = vec![0u64; bins];
        for &d in draws {
            let idx = ((d * bins as f64) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        Self { bins, counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Mean, equal-tailed credible interval and histogram of a [`SampleSet`].
///
/// JSON: `{"mean", "ci": [lo, hi], "ci_level", "n", "histogram": {"bins", "counts"}, "seed"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    pub mean: f64,
    pub ci: [f64; 2],
    pub ci_level: f64,
    pub n: usize,
    pub histogram: Histogram,
    pub seed: u64,
}

impl PosteriorSummary {
    pub fn ci_lower(&self) -> f64 {
        self.ci[0]
    }

    pub fn ci_upper(&self) -> f64 {
        self.ci[1]
    }
}

/// Analytic mean and equal-tailed interval of a Beta distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorSummary {
    pub mean: f64,
    pub ci: [f64; 2],
    pub ci_level: f64,
}

fn check_level(ci_level: f64) -> Result<()> {
    if ci_level > 0.0 && ci_level < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "ci_level",
            format!("credible level must lie in (0, 1), got {ci_level}"),
        ))
    }
}

/// Quantile of sorted data by linear interpolation between order statistics
/// (`h = (n − 1)·p`).
pub fn sorted_quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    debug_assert!(n > 0);
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

pub fn summarize(samples: &SampleSet, ci_level: f64) -> Result<PosteriorSummary> {
    check_level(ci_level)?;
    let n = samples.draws.len();
    if n < 2 {
        return Err(Error::TooFewDraws(n));
    }
    let mean = samples.draws.iter().sum::<f64>() / n as f64;
    let mut sorted = samples.draws.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    let tail = (1.0 - ci_level) / 2.0;
    let ci = [
        sorted_quantile(&sorted, tail),
        sorted_quantile(&sorted, 1.0 - tail),
    ];
    Ok(PosteriorSummary {
        mean,
        ci,
        ci_level,
        n,
        histogram: Histogram::from_draws(&samples.draws, HISTOGRAM_BINS),
        seed: samples.seed,
    })
}

pub fn prior_summary(dist: &BetaParams, ci_level: f64) -> Result<PriorSummary> {
    check_level(ci_level)?;
    let tail = (1.0 - ci_level) / 2.0;
    Ok(PriorSummary {
        mean: dist.mean(),
        ci: [dist.quantile(tail)?, dist.quantile(1.0 - tail)?],
        ci_level,
    })
}
