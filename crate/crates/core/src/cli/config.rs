//! Flat key-value configuration files.
//!
//! A config file is TOML with top-level keys only. Every key is optional;
//! missing keys take the benchmark defaults. Unknown keys are rejected.
//! Resolution produces a [`ResolvedConfig`] with every value materialized,
//! which serializes back to the same schema.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::admission::Policy;
use crate::error::{Error, Result};
use crate::hexgrid::{build_grid, GainModel};
use crate::netstate::build_channel_plan;
use crate::power::QosParams;
use crate::sim::{SimConfig, TrafficProfile};

/// Raw file contents; `None` means "use the default".
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub duration: Option<f64>,
    pub warmup: Option<f64>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub path_loss_exponent: Option<f64>,
    pub min_distance: Option<f64>,
    pub self_gain: Option<f64>,
    pub total_channels: Option<usize>,
    pub ratio: Option<String>,
    pub cluster_size: Option<usize>,
    pub mean_holding: Option<f64>,
    pub load_multiplier: Option<f64>,
    pub arrival_rates: Option<Vec<f64>>,
    pub policy: Option<String>,
    pub p_fixed: Option<f64>,
    pub d_reuse: Option<f64>,
    pub gamma0: Option<f64>,
    pub noise: Option<f64>,
    pub power_cap: Option<f64>,
    pub audit: Option<bool>,
}

/// Values given on the command line; they win over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub gamma0: Option<f64>,
    pub ratio: Option<String>,
    pub policy: Option<String>,
    pub load_multiplier: Option<f64>,
    pub duration: Option<f64>,
}

/// Fully materialized configuration, same keys as [`ConfigFile`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolvedConfig {
    pub seed: u64,
    pub duration: f64,
    pub warmup: f64,
    pub rows: usize,
    pub cols: usize,
    pub path_loss_exponent: f64,
    pub min_distance: f64,
    pub self_gain: f64,
    pub total_channels: usize,
    pub ratio: String,
    pub cluster_size: usize,
    pub mean_holding: f64,
    pub load_multiplier: f64,
    pub arrival_rates: Vec<f64>,
    pub policy: String,
    pub p_fixed: f64,
    pub d_reuse: f64,
    pub gamma0: f64,
    pub noise: f64,
    pub power_cap: f64,
    pub audit: bool,
}

fn key_error(key: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidConfig(format!("{key}: {msg}"))
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(key_error(key, format!("must be > 0 (got {v})")))
    }
}

/// Parses `"FC:DC"`.
pub fn parse_ratio(s: &str) -> Result<(usize, usize)> {
    let bad = || key_error("ratio", format!("expected two counts as FC:DC, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

pub fn parse_policy_name(s: &str) -> Result<&'static str> {
    match s.to_ascii_lowercase().as_str() {
        "pc" => Ok("pc"),
        "fp" => Ok("fp"),
        "rd" => Ok("rd"),
        _ => Err(key_error("policy", format!("unknown policy {s:?}, expected pc, fp or rd"))),
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.seed {
            self.seed = Some(v);
        }
        if let Some(v) = o.gamma0 {
            self.gamma0 = Some(v);
        }
        if let Some(v) = &o.ratio {
            self.ratio = Some(v.clone());
            // an explicit ratio on the command line defines the channel total
            self.total_channels = None;
        }
        if let Some(v) = &o.policy {
            self.policy = Some(v.clone());
        }
        if let Some(v) = o.load_multiplier {
            self.load_multiplier = Some(v);
        }
        if let Some(v) = o.duration {
            self.duration = Some(v);
            self.warmup = None;
        }
    }

    /// Fills defaults and checks every value, naming the offending key on
    /// failure.
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let bench = SimConfig::benchmark();
        let bench_traffic = TrafficProfile::benchmark();

        let duration = positive("duration", self.duration.unwrap_or(bench.duration))?;
        let warmup = self.warmup.unwrap_or(0.1 * duration);
        if !(warmup >= 0.0 && warmup < duration) {
            return Err(key_error(
                "warmup",
                format!("must lie in [0, duration = {duration}) (got {warmup})"),
            ));
        }
        let rows = self.rows.unwrap_or(bench.rows);
        let cols = self.cols.unwrap_or(bench.cols);
        if rows == 0 {
            return Err(key_error("rows", "must be >= 1"));
        }
        if cols == 0 {
            return Err(key_error("cols", "must be >= 1"));
        }
        let gain = GainModel {
            path_loss_exponent: positive(
                "path_loss_exponent",
                self.path_loss_exponent.unwrap_or(bench.gain.path_loss_exponent),
            )?,
            min_distance: positive("min_distance", self.min_distance.unwrap_or(bench.gain.min_distance))?,
            self_gain: positive("self_gain", self.self_gain.unwrap_or(bench.gain.self_gain))?,
        };
        if gain.min_distance > 1.0 {
            return Err(key_error(
                "min_distance",
                format!("must be <= 1 (got {})", gain.min_distance),
            ));
        }
        if gain.self_gain <= gain.cross_gain(1.0) {
            return Err(key_error(
                "self_gain",
                format!(
                    "must exceed the adjacent-cell gain {} (got {})",
                    gain.cross_gain(1.0),
                    gain.self_gain
                ),
            ));
        }

        let ratio = self.ratio.clone().unwrap_or_else(|| "21:49".to_string());
        let (fc, dc) = parse_ratio(&ratio)?;
        let total_channels = self.total_channels.unwrap_or(fc + dc);
        if total_channels != fc + dc {
            return Err(key_error(
                "total_channels",
                format!("{total_channels} disagrees with ratio {ratio}"),
            ));
        }
        if total_channels == 0 {
            return Err(key_error("ratio", "needs at least one channel"));
        }
        let cluster_size = self.cluster_size.unwrap_or(bench.cluster_size);
        if cluster_size == 0 {
            return Err(key_error("cluster_size", "must be >= 1"));
        }
        let geom = build_grid(rows, cols)?;
        if fc % cluster_size != 0 {
            return Err(key_error(
                "ratio",
                format!(
                    "fixed channel count {fc} must be a multiple of the reuse cluster size {cluster_size}"
                ),
            ));
        }
        build_channel_plan(total_channels, fc, cluster_size, &geom)
            .map_err(|e| key_error("cluster_size", e))?;

        let cells = rows * cols;
        let arrival_rates = match &self.arrival_rates {
            Some(r) => r.clone(),
            None if cells == bench_traffic.arrival_rates.len() && rows == 7 => {
                bench_traffic.arrival_rates.clone()
            }
            None => {
                return Err(key_error(
                    "arrival_rates",
                    format!("required for a {rows}x{cols} grid (the bundled pattern is 7x7)"),
                ))
            }
        };
        if arrival_rates.len() != cells {
            return Err(key_error(
                "arrival_rates",
                format!("has {} entries, grid has {cells} cells", arrival_rates.len()),
            ));
        }
        if let Some((i, r)) = arrival_rates
            .iter()
            .enumerate()
            .find(|(_, r)| !(**r >= 0.0 && r.is_finite()))
        {
            return Err(key_error("arrival_rates", format!("entry {i} = {r} must be >= 0")));
        }
        let mean_holding = positive("mean_holding", self.mean_holding.unwrap_or(bench_traffic.mean_holding))?;
        let load_multiplier = positive("load_multiplier", self.load_multiplier.unwrap_or(1.0))?;

        let gamma0 = positive("gamma0", self.gamma0.unwrap_or(bench.qos.gamma0))?;
        let noise = positive("noise", self.noise.unwrap_or(bench.qos.eta[0]))?;
        let power_cap = positive("power_cap", self.power_cap.unwrap_or(bench.qos.power_cap))?;
        let policy = parse_policy_name(self.policy.as_deref().unwrap_or("pc"))?.to_string();
        let p_fixed = positive("p_fixed", self.p_fixed.unwrap_or(power_cap))?;
        if p_fixed > power_cap {
            return Err(key_error(
                "p_fixed",
                format!("must not exceed power_cap = {power_cap} (got {p_fixed})"),
            ));
        }
        let d_reuse = positive("d_reuse", self.d_reuse.unwrap_or(3.0))?;

        Ok(ResolvedConfig {
            seed: self.seed.unwrap_or(bench.seed),
            duration,
            warmup,
            rows,
            cols,
            path_loss_exponent: gain.path_loss_exponent,
            min_distance: gain.min_distance,
            self_gain: gain.self_gain,
            total_channels,
            ratio: format!("{fc}:{dc}"),
            cluster_size,
            mean_holding,
            load_multiplier,
            arrival_rates,
            policy,
            p_fixed,
            d_reuse,
            gamma0,
            noise,
            power_cap,
            audit: self.audit.unwrap_or(false),
        })
    }
}

impl From<&ResolvedConfig> for ConfigFile {
    fn from(r: &ResolvedConfig) -> Self {
        Self {
            seed: Some(r.seed),
            duration: Some(r.duration),
            warmup: Some(r.warmup),
            rows: Some(r.rows),
            cols: Some(r.cols),
            path_loss_exponent: Some(r.path_loss_exponent),
            min_distance: Some(r.min_distance),
            self_gain: Some(r.self_gain),
            total_channels: Some(r.total_channels),
            ratio: Some(r.ratio.clone()),
            cluster_size: Some(r.cluster_size),
            mean_holding: Some(r.mean_holding),
            load_multiplier: Some(r.load_multiplier),
            arrival_rates: Some(r.arrival_rates.clone()),
            policy: Some(r.policy.clone()),
            p_fixed: Some(r.p_fixed),
            d_reuse: Some(r.d_reuse),
            gamma0: Some(r.gamma0),
            noise: Some(r.noise),
            power_cap: Some(r.power_cap),
            audit: Some(r.audit),
        }
    }
}

impl ResolvedConfig {
    /// Defaults for every key.
    pub fn defaults() -> Self {
        ConfigFile::default().resolve().expect("defaults are valid")
    }

    /// TOML text listing every key.
    pub fn echo(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn policy(&self) -> Policy {
        match self.policy.as_str() {
            "fp" => Policy::FixedPower { p_fixed: self.p_fixed },
            "rd" => Policy::ReuseDistance { d_reuse: self.d_reuse },
            _ => Policy::OptimalPc,
        }
    }

    pub fn ratio_counts(&self) -> (usize, usize) {
        parse_ratio(&self.ratio).expect("resolved ratio is well formed")
    }

    pub fn to_sim_config(&self) -> Result<SimConfig> {
        let cells = self.rows * self.cols;
        let c = SimConfig {
            seed: self.seed,
            duration: self.duration,
            warmup: self.warmup,
            rows: self.rows,
            cols: self.cols,
            gain: GainModel {
                path_loss_exponent: self.path_loss_exponent,
                min_distance: self.min_distance,
                self_gain: self.self_gain,
            },
            total_channels: self.total_channels,
            fc_channels: self.ratio_counts().0,
            cluster_size: self.cluster_size,
            traffic: TrafficProfile {
                arrival_rates: self.arrival_rates.clone(),
                mean_holding: self.mean_holding,
                load_multiplier: self.load_multiplier,
            },
            policy: self.policy(),
            qos: QosParams::uniform(self.gamma0, self.noise, self.power_cap, cells)?,
            audit: self.audit,
        };
        c.validate()?;
        Ok(c)
    }
}

/// Reads `path` (or nothing), applies the overrides and resolves.
pub fn parse_config(path: Option<&Path>, overrides: &Overrides) -> Result<ResolvedConfig> {
    let mut file = match path {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    file.apply(overrides);
    file.resolve()
}
