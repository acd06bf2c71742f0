//! Named experiment sweeps and their report files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::admission::Policy;
use crate::error::{Error, Result};
use crate::sim::{sweep, SimConfig, SweepAxis, SweepPoint, SweepValue};

use super::config::ResolvedConfig;

/// Load multipliers swept by the load-axis presets.
pub const LOAD_POINTS: [f64; 6] = [0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
/// CIR thresholds swept by `fig6_like`.
pub const GAMMA0_POINTS: [f64; 4] = [1.0, 2.0, 4.0, 8.0];
/// FC:DC splits compared by `fig5_like`.
pub const RATIO_SERIES: [(usize, usize); 3] = [(21, 49), (35, 35), (49, 21)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentPreset {
    /// PC, FP and RD against load, FC-light split.
    Fig3Like,
    /// PC, FP and RD against load, FC-heavy split.
    Fig4Like,
    /// PC against load for three FC:DC splits.
    Fig5Like,
    /// PC against the CIR threshold.
    Fig6Like,
    /// The configured policy at the configured load.
    Custom,
}

impl ExperimentPreset {
    pub const ALL: [ExperimentPreset; 5] = [
        ExperimentPreset::Fig3Like,
        ExperimentPreset::Fig4Like,
        ExperimentPreset::Fig5Like,
        ExperimentPreset::Fig6Like,
        ExperimentPreset::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentPreset::Fig3Like => "fig3_like",
            ExperimentPreset::Fig4Like => "fig4_like",
            ExperimentPreset::Fig5Like => "fig5_like",
            ExperimentPreset::Fig6Like => "fig6_like",
            ExperimentPreset::Custom => "custom",
        }
    }
}

impl FromStr for ExperimentPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|p| p.name()).collect();
                Error::InvalidConfig(format!("preset: unknown preset {s:?}, expected one of {}", names.join(", ")))
            })
    }
}

/// One curve of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub config: SimConfig,
}

/// A preset with every parameter filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetPlan {
    pub preset: ExperimentPreset,
    pub base: ResolvedConfig,
    pub axis: SweepAxis,
    pub values: Vec<SweepValue>,
    pub series: Vec<Series>,
}

fn with_ratio(base: &ResolvedConfig, fc: usize, dc: usize) -> ResolvedConfig {
    ResolvedConfig {
        ratio: format!("{fc}:{dc}"),
        total_channels: fc + dc,
        ..base.clone()
    }
}

fn series(label: String, r: &ResolvedConfig, policy: &str) -> Result<Series> {
    let r = ResolvedConfig {
        policy: policy.to_string(),
        ..r.clone()
    };
    Ok(Series {
        label,
        config: r.to_sim_config()?,
    })
}

fn scalars(v: &[f64]) -> Vec<SweepValue> {
    v.iter().map(|&x| SweepValue::Scalar(x)).collect()
}

/// Expands `preset` on top of `base`. Seeds, duration, traffic and the
/// propagation model come from `base`; the preset fixes what it compares.
pub fn plan_preset(preset: ExperimentPreset, base: &ResolvedConfig) -> Result<PresetPlan> {
    let policy_comparison = |fc, dc| -> Result<Vec<Series>> {
        let r = ResolvedConfig {
            gamma0: 2.0,
            d_reuse: 3.0,
            ..with_ratio(base, fc, dc)
        };
        ["pc", "fp", "rd"]
            .into_iter()
            .map(|p| series(p.to_uppercase(), &r, p))
            .collect()
    };
    let (axis, values, series) = match preset {
        ExperimentPreset::Fig3Like => (SweepAxis::LoadMultiplier, scalars(&LOAD_POINTS), policy_comparison(21, 49)?),
        ExperimentPreset::Fig4Like => (SweepAxis::LoadMultiplier, scalars(&LOAD_POINTS), policy_comparison(49, 21)?),
        ExperimentPreset::Fig5Like => (
            SweepAxis::LoadMultiplier,
            scalars(&LOAD_POINTS),
            RATIO_SERIES
                .iter()
                .map(|&(fc, dc)| series(format!("PC {fc}:{dc}"), &with_ratio(base, fc, dc), "pc"))
                .collect::<Result<_>>()?,
        ),
        ExperimentPreset::Fig6Like => (
            SweepAxis::Gamma0,
            scalars(&GAMMA0_POINTS),
            vec![series("PC 21:49".into(), &with_ratio(base, 21, 49), "pc")?],
        ),
        ExperimentPreset::Custom => (
            SweepAxis::LoadMultiplier,
            scalars(&[base.load_multiplier]),
            vec![series(base.policy.to_uppercase(), base, &base.policy)?],
        ),
    };
    Ok(PresetPlan {
        preset,
        base: base.clone(),
        axis,
        values,
        series,
    })
}

/// Results of one preset, grouped by series.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetResult {
    pub plan: PresetPlan,
    pub curves: Vec<(String, Vec<SweepPoint>)>,
}

pub fn run_plan(plan: &PresetPlan) -> Result<PresetResult> {
    let curves = plan
        .series
        .iter()
        .map(|s| Ok((s.label.clone(), sweep(&s.config, plan.axis, &plan.values)?)))
        .collect::<Result<_>>()?;
    Ok(PresetResult {
        plan: plan.clone(),
        curves,
    })
}

fn axis_name(axis: SweepAxis) -> &'static str {
    match axis {
        SweepAxis::LoadMultiplier => "load_multiplier",
        SweepAxis::Gamma0 => "gamma0",
        SweepAxis::Ratio => "ratio",
    }
}

fn describe_policy(p: &Policy) -> String {
    match p {
        Policy::OptimalPc => "PC".into(),
        Policy::FixedPower { p_fixed } => format!("FP(p_fixed={p_fixed})"),
        Policy::ReuseDistance { d_reuse } => format!("RD(d_reuse={d_reuse})"),
    }
}

impl PresetResult {
    /// Blocking table with a commented header describing the run.
    pub fn to_csv(&self) -> Result<String> {
        let plan = &self.plan;
        let b = &plan.base;
        let mut head = String::new();
        let _ = writeln!(head, "# preset = {}", plan.preset.name());
        let _ = writeln!(head, "# axis = {}", axis_name(plan.axis));
        let _ = writeln!(head, "# seed = {} (point i uses seed ^ i)", b.seed);
        for s in &plan.series {
            let c = &s.config;
            let gamma0 = if plan.axis == SweepAxis::Gamma0 {
                "swept".to_string()
            } else {
                c.qos.gamma0.to_string()
            };
            let _ = writeln!(
                head,
                "# series {}: policy = {}, ratio = {}:{}, gamma0 = {}",
                s.label,
                describe_policy(&c.policy),
                c.fc_channels,
                c.total_channels - c.fc_channels,
                gamma0
            );
        }
        let _ = writeln!(
            head,
            "# calibration: grid = {}x{}, path_loss_exponent = {}, min_distance = {}, self_gain = {}, \
             noise = {}, power_cap = {}, cluster_size = {}, mean_holding = {}",
            b.rows, b.cols, b.path_loss_exponent, b.min_distance, b.self_gain, b.noise, b.power_cap,
            b.cluster_size, b.mean_holding
        );
        let _ = writeln!(head, "# duration = {}, warmup = {}", b.duration, b.warmup);

        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "series",
            "value",
            "arrivals",
            "blocked",
            "blocking_probability",
            "mean_total_power",
            "peak_total_power",
        ])?;
        for (label, points) in &self.curves {
            for p in points {
                let m = &p.metrics;
                w.write_record([
                    label.clone(),
                    p.value.to_string(),
                    m.arrivals.to_string(),
                    m.blocked.to_string(),
                    m.blocking_probability().to_string(),
                    m.mean_total_power.to_string(),
                    m.peak_total_power.to_string(),
                ])?;
            }
        }
        let body = String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
            .expect("csv output is utf-8");
        Ok(head + &body)
    }

    /// gnuplot data: one indexed block per series, `value blocking`.
    pub fn to_dat(&self) -> String {
        let mut out = String::new();
        for (label, points) in &self.curves {
            let _ = writeln!(out, "# {label}");
            let _ = writeln!(out, "# {} blocking_probability", axis_name(self.plan.axis));
            for p in points {
                let _ = writeln!(out, "{} {}", p.value, p.metrics.blocking_probability());
            }
            out.push_str("\n\n");
        }
        out
    }

    /// Writes `<name>.csv` and `<name>.dat` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let name = self.plan.preset.name();
        let csv_path = dir.join(format!("{name}.csv"));
        let dat_path = dir.join(format!("{name}.dat"));
        std::fs::write(&csv_path, self.to_csv()?)?;
        std::fs::write(&dat_path, self.to_dat())?;
        Ok((csv_path, dat_path))
    }

    pub fn curve(&self, label: &str) -> Option<&[SweepPoint]> {
        self.curves
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, p)| p.as_slice())
    }
}
