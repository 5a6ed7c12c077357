//! Named scenarios and the prior × power × α grid.
//!
//! The builtin registry holds two point-power scenarios (`S1`, `S2`) and 27
//! grid cells crossing three priors on `θ`, three Beta priors on `β` and three
//! Type I error levels. Grid cell ids read
//! `"{prior}-prior/{power}-power/alpha-{α}"`, e.g.
//! `"high-prior/low-power/alpha-0.05"`.
//!
//! Seeds are fixed functions of a root seed: `S1` and `S2` use
//! [`derive_named_seed`] with tags 1 and 2, and cell `(i, j, k)` uses
//! [`derive_cell_seed`], where `i`, `j`, `k` index the prior, power and α axes.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beta::BetaParams;
use crate::error::{Error, Result};
use crate::posterior::{ErrorConfig, NullPrior, TypeIISpec};
use crate::propagate::propagate;
use crate::rng::{derive_cell_seed, derive_named_seed};
use crate::summary::{prior_summary, summarize, PosteriorSummary, PriorSummary};
use crate::{DEFAULT_CI_LEVEL, DEFAULT_N, DEFAULT_SEED};

/// Priors on `θ`: key, shapes and a description.
pub const PRIOR_LEVELS: [(&str, f64, f64, &str); 3] = [
    (
        "high",
        60.0,
        6.0,
        "high prior probability of the null, mean 10/11",
    ),
    (
        "medium",
        15.0,
        15.0,
        "medium prior probability of the null, mean 1/2",
    ),
    (
        "low",
        3.0,
        8.0,
        "low prior probability of the null (described as a 10% average; Beta(3,8) has mean 3/11)",
    ),
];

/// Priors on the Type II error `β`: key, shapes and mean power.
pub const POWER_LEVELS: [(&str, f64, f64, &str); 3] = [
    ("low", 10.0, 4.0, "low power, mean power 2/7"),
    ("medium", 8.0, 8.0, "medium power, mean power 1/2"),
    ("high", 2.0, 20.0, "high power, mean power 10/11"),
];

pub const ALPHA_LEVELS: [f64; 3] = [0.05, 0.01, 0.005];

/// One named configuration of the Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub id: String,
    pub label: String,
    pub prior: NullPrior,
    #[serde(flatten)]
    pub cfg: ErrorConfig,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub spec: ScenarioSpec,
    pub prior_summary: PriorSummary,
    pub posterior: PosteriorSummary,
}

pub fn grid_cell_id(prior_key: &str, power_key: &str, alpha: f64) -> String {
    format!("{prior_key}-prior/{power_key}-power/alpha-{alpha}")
}

fn shapes(a: f64, b: f64) -> BetaParams {
    BetaParams::new(a, b).expect("builtin shapes are positive")
}

fn point_scenario(tag: u8, alpha: f64, n: usize, root_seed: u64) -> ScenarioSpec {
    let (_, a, b, _) = PRIOR_LEVELS[0];
    ScenarioSpec {
        id: format!("S{tag}"),
        label: format!("Scenario {tag}: high prior Beta(60,6), point power 0.10, alpha = {alpha}"),
        prior: NullPrior::new(shapes(a, b)),
        cfg: ErrorConfig::new(alpha, TypeIISpec::Point(0.9)).expect("valid alpha"),
        n,
        seed: derive_named_seed(root_seed, tag),
    }
}

/// Paper scenario number for a cell of the high-prior row, if it has one.
fn scenario_number(i: usize, j: usize, k: usize) -> Option<usize> {
    match (i, j) {
        (0, 0) => Some(3 + k),
        (0, 2) => Some(6 + k),
        _ => None,
    }
}

/// The 27 builtin grid cells, ordered by `(prior, power, α)` index.
pub fn builtin_grid_specs(n: usize, root_seed: u64) -> Vec<ScenarioSpec> {
    let mut specs = Vec::with_capacity(27);
    for (i, (pk, pa, pb, pdesc)) in PRIOR_LEVELS.iter().enumerate() {
        for (j, (wk, wa, wb, wdesc)) in POWER_LEVELS.iter().enumerate() {
            for (k, &alpha) in ALPHA_LEVELS.iter().enumerate() {
                let mut label = format!(
                    "{pdesc}; {wdesc} (beta ~ Beta({wa},{wb})); alpha = {alpha}; theta ~ Beta({pa},{pb})"
                );
                if let Some(s) = scenario_number(i, j, k) {
                    label = format!("Scenario {s}: {label}");
                }
                specs.push(ScenarioSpec {
                    id: grid_cell_id(pk, wk, alpha),
                    label,
                    prior: NullPrior::new(shapes(*pa, *pb)),
                    cfg: ErrorConfig::new(alpha, TypeIISpec::Beta(shapes(*wa, *wb)))
                        .expect("valid alpha"),
                    n,
                    seed: derive_cell_seed(root_seed, i, j, k),
                });
            }
        }
    }
    specs
}

/// `S1`, `S2` and the 27 grid cells with the given iteration count and root
/// seed.
pub fn builtin_scenarios_with(n: usize, root_seed: u64) -> Vec<ScenarioSpec> {
    let mut specs = vec![
        point_scenario(1, 0.05, n, root_seed),
        point_scenario(2, 0.01, n, root_seed),
    ];
    specs.extend(builtin_grid_specs(n, root_seed));
    specs
}

/// The registry at the default iteration count and root seed.
pub fn builtin_scenarios() -> Vec<ScenarioSpec> {
    builtin_scenarios_with(DEFAULT_N, DEFAULT_SEED)
}

pub fn find_scenario(id: &str) -> Option<ScenarioSpec> {
    builtin_scenarios().into_iter().find(|s| s.id == id)
}

/// Registry entry for paper scenario `1..=8`. Scenarios 3 to 8 are cells of
/// the high-prior row.
pub fn paper_scenario(number: usize) -> Option<ScenarioSpec> {
    let id = match number {
        1 | 2 => format!("S{number}"),
        3..=5 => grid_cell_id("high", "low", ALPHA_LEVELS[number - 3]),
        6..=8 => grid_cell_id("high", "high", ALPHA_LEVELS[number - 6]),
        _ => return None,
    };
    find_scenario(&id)
}

/// Analytic prior summary plus Monte Carlo posterior summary at 95%.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<ScenarioResult> {
    let prior = prior_summary(spec.prior.dist(), DEFAULT_CI_LEVEL)?;
    let samples = propagate(&spec.prior, &spec.cfg, spec.n, spec.seed)?;
    let posterior = summarize(&samples, DEFAULT_CI_LEVEL)?;
    Ok(ScenarioResult {
        spec: spec.clone(),
        prior_summary: prior,
        posterior,
    })
}

/// Results over a prior × Type II × α grid, stored in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    shape: [usize; 3],
    cells: Vec<ScenarioResult>,
}

impl Grid {
    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<&ScenarioResult> {
        let [ni, nj, nk] = self.shape;
        (i < ni && j < nj && k < nk).then(|| &self.cells[(i * nj + j) * nk + k])
    }

    /// Cells with their `(i, j, k)` coordinates, in index order.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], &ScenarioResult)> {
        let [_, nj, nk] = self.shape;
        self.cells
            .iter()
            .enumerate()
            .map(move |(flat, cell)| ([flat / (nj * nk), (flat / nk) % nj, flat % nk], cell))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `{"shape": [ni, nj, nk], "cells": {"i,j,k": ScenarioResult, ...}}`
    pub fn to_json(&self) -> serde_json::Value {
        let cells: BTreeMap<String, &ScenarioResult> = self
            .iter()
            .map(|([i, j, k], cell)| (format!("{i},{j},{k}"), cell))
            .collect();
        serde_json::json!({ "shape": self.shape, "cells": cells })
    }

    /// One row per cell under the header
    /// `prior_a,prior_b,type2_form,type2_p1,type2_p2,alpha,mean,ci_lo,ci_hi,n,seed`.
    ///
    /// A point Type II error is written as `point,β,` and a Beta one as
    /// `beta,a,b`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut writer = csv::Writer::from_writer(out);
        for (_, cell) in self.iter() {
            writer.serialize(CsvRow::from(cell))?;
        }
        writer.flush()?;
        Ok(())
    }
}

#[derive(Serialize)]
struct CsvRow {
    prior_a: f64,
    prior_b: f64,
    type2_form: &'static str,
    type2_p1: f64,
    type2_p2: Option<f64>,
    alpha: f64,
    mean: f64,
    ci_lo: f64,
    ci_hi: f64,
    n: usize,
    seed: u64,
}

impl From<&ScenarioResult> for CsvRow {
    fn from(r: &ScenarioResult) -> Self {
        let (type2_form, type2_p1, type2_p2) = match *r.spec.cfg.type2() {
            TypeIISpec::Point(b) => ("point", b, None),
            TypeIISpec::Beta(p) => ("beta", p.a(), Some(p.b())),
        };
        CsvRow {
            prior_a: r.spec.prior.dist().a(),
            prior_b: r.spec.prior.dist().b(),
            type2_form,
            type2_p1,
            type2_p2,
            alpha: r.spec.cfg.alpha(),
            mean: r.posterior.mean,
            ci_lo: r.posterior.ci[0],
            ci_hi: r.posterior.ci[1],
            n: r.posterior.n,
            seed: r.posterior.seed,
        }
    }
}

/// Specs for every cell of a grid, ids `cell-i-j-k`, seeds from
/// [`derive_cell_seed`].
pub fn grid_specs(
    priors: &[NullPrior],
    type2s: &[TypeIISpec],
    alphas: &[f64],
    n: usize,
    root_seed: u64,
) -> Result<Vec<ScenarioSpec>> {
    if priors.is_empty() || type2s.is_empty() || alphas.is_empty() {
        return Err(Error::invalid(
            "grid",
            "every axis needs at least one value",
        ));
    }
    let mut specs = Vec::with_capacity(priors.len() * type2s.len() * alphas.len());
    for (i, prior) in priors.iter().enumerate() {
        for (j, type2) in type2s.iter().enumerate() {
            for (k, &alpha) in alphas.iter().enumerate() {
                specs.push(ScenarioSpec {
                    id: format!("cell-{i}-{j}-{k}"),
                    label: format!("prior {i}, type II {j}, alpha {alpha}"),
                    prior: *prior,
                    cfg: ErrorConfig::new(alpha, *type2)?,
                    n,
                    seed: derive_cell_seed(root_seed, i, j, k),
                });
            }
        }
    }
    Ok(specs)
}

pub fn run_grid(
    priors: &[NullPrior],
    type2s: &[TypeIISpec],
    alphas: &[f64],
    n: usize,
    root_seed: u64,
) -> Result<Grid> {
    let specs = grid_specs(priors, type2s, alphas, n, root_seed)?;
    run_specs([priors.len(), type2s.len(), alphas.len()], &specs)
}

/// The builtin 3×3×3 grid at the given iteration count and root seed.
pub fn run_builtin_grid(n: usize, root_seed: u64) -> Result<Grid> {
    run_specs([3, 3, 3], &builtin_grid_specs(n, root_seed))
}

fn run_specs(shape: [usize; 3], specs: &[ScenarioSpec]) -> Result<Grid> {
    let cells = specs
        .par_iter()
        .map(run_scenario)
        .collect::<Result<Vec<_>>>()?;
    Ok(Grid { shape, cells })
}
