//! Output set for reproducing every figure:
//!
//! ```text
//! <out>/scenarios/<id>.json      one ScenarioResult per builtin scenario ('/' in ids becomes "__")
//! <out>/grid.csv, grid.json      the 27 grid cells
//! <out>/type2-priors/<level>-power.json   Beta priors on the Type II error, 512-point density
//! <out>/theta-priors/<level>-prior.json   Beta priors on the null, 512-point density
//! ```
//!
//! Files written before a failure are removed.

use std::fs;
use std::path::{Path, PathBuf};

use probnull_core::scenario::{
    builtin_scenarios_with, run_builtin_grid, POWER_LEVELS, PRIOR_LEVELS,
};
use probnull_core::{run_scenario, Error as CoreError};
use probnull_server::preview;
use serde::Serialize;

use crate::CliError;

struct Writer {
    root: PathBuf,
    written: Vec<PathBuf>,
    dirs: Vec<PathBuf>,
}

impl Writer {
    fn ensure_dir(&mut self, dir: &Path) -> Result<(), CliError> {
        if !dir.exists() {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::Failure(format!("cannot create {}: {e}", dir.display())))?;
            self.dirs.push(dir.to_path_buf());
        }
        Ok(())
    }

    fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            self.ensure_dir(parent)?;
        }
        fs::write(&path, bytes)
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?;
        self.written.push(path);
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, rel: &str, value: &T) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(value)
            .map_err(|e| CliError::Failure(format!("cannot encode {rel}: {e}")))?;
        bytes.push(b'\n');
        self.write(rel, &bytes)
    }

    fn roll_back(&self) {
        for path in &self.written {
            let _ = fs::remove_file(path);
        }
        for dir in self.dirs.iter().rev() {
            let _ = fs::remove_dir(dir);
        }
    }
}

fn core_failure(err: CoreError) -> CliError {
    CliError::Failure(err.to_string())
}

/// Returns the number of files written.
pub fn run(out_dir: &Path, n: usize, seed: u64) -> Result<usize, CliError> {
    let mut writer = Writer {
        root: out_dir.to_path_buf(),
        written: Vec::new(),
        dirs: Vec::new(),
    };
    match write_all(&mut writer, n, seed) {
        Ok(()) => Ok(writer.written.len()),
        Err(e) => {
            writer.roll_back();
            Err(e)
        }
    }
}

fn scenario_file(id: &str) -> String {
    format!("scenarios/{}.json", id.replace('/', "__"))
}

fn write_all(w: &mut Writer, n: usize, seed: u64) -> Result<(), CliError> {
    let root = w.root.clone();
    w.ensure_dir(&root)?;

    let grid = run_builtin_grid(n, seed).map_err(core_failure)?;
    for spec in builtin_scenarios_with(n, seed) {
        // grid cells are already computed
        if let Some((_, cell)) = grid.iter().find(|(_, c)| c.spec.id == spec.id) {
            w.write_json(&scenario_file(&spec.id), cell)?;
        } else {
            let result = run_scenario(&spec).map_err(core_failure)?;
            w.write_json(&scenario_file(&spec.id), &result)?;
        }
    }

    let mut csv = Vec::new();
    grid.write_csv(&mut csv)
        .map_err(|e| CliError::Failure(format!("cannot encode grid.csv: {e}")))?;
    w.write("grid.csv", &csv)?;
    w.write_json("grid.json", &grid.to_json())?;

    for (key, a, b, _) in POWER_LEVELS {
        let density = preview(a, b).map_err(core_failure)?;
        w.write_json(&format!("type2-priors/{key}-power.json"), &density)?;
    }
    for (key, a, b, _) in PRIOR_LEVELS {
        let density = preview(a, b).map_err(core_failure)?;
        w.write_json(&format!("theta-priors/{key}-prior.json"), &density)?;
    }
    Ok(())
}
