//! Monte Carlo propagation of prior uncertainty in `θ` and `β`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::posterior::{posterior_collapsed, ErrorConfig, NullPrior, TypeIISpec};
use crate::rng::{stream_rng, SimRng};

/// Draws of the posterior probability of the null, with the seed that
/// produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub draws: Vec<f64>,
    pub seed: u64,
    pub n: usize,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }
}

/// How the iterations are split into random streams.
///
/// Chunk `c` covers iterations `c·chunk_len .. (c+1)·chunk_len` and draws from
/// stream `c` of the seed, so the draws depend on `(seed, n, chunk_len)` only.
/// `parallel` changes who computes each chunk, never what it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub chunk_len: usize,
    pub parallel: bool,
}

impl Layout {
    pub const DEFAULT_CHUNK_LEN: usize = 8192;

    pub fn serial() -> Self {
        Self {
            parallel: false,
            ..Self::default()
        }
    }
}

impl Default for Layout {
    fn default() -> Self {
        Self {
            chunk_len: Self::DEFAULT_CHUNK_LEN,
            parallel: true,
        }
    }
}

/// `n` draws of `P(H0 | sig)` with `θ` from the prior and `β` from the Type II
/// specification, using the default [`Layout`].
pub fn propagate(prior: &NullPrior, cfg: &ErrorConfig, n: usize, seed: u64) -> Result<SampleSet> {
    propagate_with(prior, cfg, n, seed, Layout::default())
}

pub fn propagate_with(
    prior: &NullPrior,
    cfg: &ErrorConfig,
    n: usize,
    seed: u64,
    layout: Layout,
) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::invalid("n", "at least one iteration is required"));
    }
    if layout.chunk_len == 0 {
        return Err(Error::invalid("chunk_len", "must be positive"));
    }
    let mut draws = vec![0.0; n];
    let fill = |(chunk, out): (usize, &mut [f64])| {
        let mut rng = stream_rng(seed, chunk as u64);
        fill_chunk(&mut rng, prior, cfg, out);
    };
    if layout.parallel {
        draws
            .par_chunks_mut(layout.chunk_len)
            .enumerate()
            .for_each(fill);
    } else {
        draws
            .chunks_mut(layout.chunk_len)
            .enumerate()
            .for_each(fill);
    }
    Ok(SampleSet { draws, seed, n })
}

fn fill_chunk(rng: &mut SimRng, prior: &NullPrior, cfg: &ErrorConfig, out: &mut [f64]) {
    let alpha = cfg.alpha();
    let dist = prior.dist();
    match *cfg.type2() {
        TypeIISpec::Point(beta) => {
            let power = 1.0 - beta;
            for slot in out {
                *slot = posterior_collapsed(dist.sample(rng), alpha, power);
            }
        }
        TypeIISpec::Beta(type2) => {
            for slot in out {
                let theta = dist.sample(rng);
                let beta = type2.sample(rng);
                *slot = posterior_collapsed(theta, alpha, 1.0 - beta);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::BetaParams;

    fn prior(a: f64, b: f64) -> NullPrior {
        NullPrior::new(BetaParams::new(a, b).unwrap())
    }

    #[test]
    fn rejects_zero_iterations() {
        let cfg = ErrorConfig::new(0.05, TypeIISpec::Point(0.9)).unwrap();
        assert!(propagate(&prior(60.0, 6.0), &cfg, 0, 1).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let cfg = ErrorConfig::new(0.01, TypeIISpec::beta(10.0, 4.0).unwrap()).unwrap();
        let p = prior(60.0, 6.0);
        for chunk_len in [1, 777, 8192] {
            let par = propagate_with(
                &p,
                &cfg,
                30_001,
                42,
                Layout {
                    chunk_len,
                    parallel: true,
                },
            )
            .unwrap();
            let ser = propagate_with(
                &p,
                &cfg,
                30_001,
                42,
                Layout {
                    chunk_len,
                    parallel: false,
                },
            )
            .unwrap();
            assert_eq!(par, ser);
        }
    }

    #[test]
    fn seed_changes_draws() {
        let cfg = ErrorConfig::new(0.05, TypeIISpec::Point(0.9)).unwrap();
        let p = prior(60.0, 6.0);
        let a = propagate(&p, &cfg, 100, 1).unwrap();
        let b = propagate(&p, &cfg, 100, 2).unwrap();
        assert_ne!(a.draws, b.draws);
        assert_eq!(a, propagate(&p, &cfg, 100, 1).unwrap());
    }

    #[test]
    fn prefix_is_stable_when_n_grows() {
        let cfg = ErrorConfig::new(0.05, TypeIISpec::beta(2.0, 20.0).unwrap()).unwrap();
        let p = prior(15.0, 15.0);
        let short = propagate(&p, &cfg, 10_000, 9).unwrap();
        let long = propagate(&p, &cfg, 20_000, 9).unwrap();
        assert_eq!(short.draws[..], long.draws[..10_000]);
    }

    #[test]
    fn draws_in_unit_interval() {
        let cfg = ErrorConfig::new(0.5, TypeIISpec::beta(0.3, 0.3).unwrap()).unwrap();
        let s = propagate(&prior(0.3, 0.3), &cfg, 50_000, 3).unwrap();
        assert_eq!(s.len(), 50_000);
        assert!(s.draws.iter().all(|d| (0.0..=1.0).contains(d)));
    }

    #[test]
    fn uninformative_test_reproduces_prior_draws() {
        // α = power leaves each θ draw untouched
        let cfg = ErrorConfig::new(0.5, TypeIISpec::Point(0.5)).unwrap();
        let p = prior(60.0, 6.0);
        let s = propagate_with(&p, &cfg, 1000, 5, Layout::serial()).unwrap();
        let mut rng = stream_rng(5, 0);
        let thetas: Vec<f64> = (0..1000).map(|_| p.dist().sample(&mut rng)).collect();
        assert_eq!(s.draws, thetas);
    }
}
