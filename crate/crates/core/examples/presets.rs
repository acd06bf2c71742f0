//! Runs a named experiment preset and writes its CSV and gnuplot files.
//!
//!     cargo run --release --example presets -- fig6_like /tmp/cellsim-out [hours]

use std::path::PathBuf;

use cellsim::cli::{parse_config, plan_preset, run_plan, ExperimentPreset, Overrides};

fn main() -> cellsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset: ExperimentPreset = args.next().as_deref().unwrap_or("fig6_like").parse()?;
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out".into()));
    let hours: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2.0);

    let config = parse_config(
        None,
        &Overrides {
            duration: Some(hours * 3600.0),
            ..Default::default()
        },
    )?;
    let plan = plan_preset(preset, &config)?;
    for s in &plan.series {
        println!("series {}: {} points", s.label, plan.values.len());
    }
    let result = run_plan(&plan)?;
    let (csv, dat) = result.write(&out)?;
    print!("{}", result.to_dat());
    println!("wrote {} and {}", csv.display(), dat.display());
    Ok(())
}
