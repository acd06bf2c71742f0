//! Command-line front end: config files, presets, report files and the
//! entry point used by the `cellsim` binary.

mod config;
mod preset;

use std::path::{Path, PathBuf};

pub use config::{parse_config, parse_policy_name, parse_ratio, ConfigFile, Overrides, ResolvedConfig};
pub use preset::{
    plan_preset, run_plan, ExperimentPreset, PresetPlan, PresetResult, Series, GAMMA0_POINTS, LOAD_POINTS,
    RATIO_SERIES,
};

use crate::error::Error;
use crate::sim::Simulation;

/// Exit status for a config problem.
pub const EXIT_CONFIG: i32 = 1;
/// Exit status for a failure while running.
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Config(Error),
    Runtime(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "config error: {e}"),
            CliError::Runtime(e) => write!(f, "runtime error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Everything the binary needs, already parsed from flags.
#[derive(Debug, Clone, Default)]
pub struct Invocation {
    pub config: Option<PathBuf>,
    pub preset: Option<String>,
    pub overrides: Overrides,
    pub out: PathBuf,
    pub dump_state: bool,
}

/// Files written by [`execute`].
#[derive(Debug, Clone, PartialEq)]
pub struct Outputs {
    pub resolved_config: PathBuf,
    pub csv: PathBuf,
    pub dat: PathBuf,
    pub dumps: Vec<PathBuf>,
}

/// Resolves the config, runs the preset (or the single configured run) and
/// writes reports into `inv.out`.
pub fn execute(inv: &Invocation) -> Result<Outputs, CliError> {
    let resolved = parse_config(inv.config.as_deref(), &inv.overrides).map_err(CliError::Config)?;
    let preset = match &inv.preset {
        Some(name) => name.parse().map_err(CliError::Config)?,
        None => ExperimentPreset::Custom,
    };
    let plan = plan_preset(preset, &resolved).map_err(CliError::Config)?;

    std::fs::create_dir_all(&inv.out).map_err(|e| CliError::Runtime(e.into()))?;
    let resolved_config = inv.out.join("config.resolved.toml");
    std::fs::write(&resolved_config, resolved.echo()).map_err(|e| CliError::Runtime(e.into()))?;

    let result = run_plan(&plan).map_err(CliError::Runtime)?;
    let (csv, dat) = result.write(&inv.out).map_err(CliError::Runtime)?;
    let dumps = if inv.dump_state {
        dump_state(&resolved, &inv.out).map_err(CliError::Runtime)?
    } else {
        Vec::new()
    };
    Ok(Outputs {
        resolved_config,
        csv,
        dat,
        dumps,
    })
}

/// Runs the configured simulation and writes the final allocation matrix,
/// per-cell powers and the gain matrix as CSV.
pub fn dump_state(resolved: &ResolvedConfig, dir: &Path) -> crate::Result<Vec<PathBuf>> {
    let mut sim = Simulation::new(resolved.to_sim_config()?)?;
    sim.run_to_end()?;
    std::fs::create_dir_all(dir)?;
    let files = [
        ("allocation.csv", sim.state().allocation_csv()),
        ("power.csv", sim.state().power_csv()),
        ("gains.csv", sim.gains().to_csv()),
    ];
    let mut paths = Vec::new();
    for (name, text) in files {
        let p = dir.join(name);
        std::fs::write(&p, text)?;
        paths.push(p);
    }
    Ok(paths)
}
