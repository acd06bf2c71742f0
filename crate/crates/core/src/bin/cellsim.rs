use std::path::PathBuf;
use std::process::ExitCode;

use cellsim::cli::{execute, Invocation, Overrides};
use clap::Parser;

/// Blocking-probability simulator for hybrid channel allocation with power control.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    /// Flat TOML config file; missing keys take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// fig3_like, fig4_like, fig5_like, fig6_like or custom.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// CIR threshold.
    #[arg(long)]
    gamma0: Option<f64>,
    /// FC:DC channel split, e.g. 21:49.
    #[arg(long)]
    ratio: Option<String>,
    /// pc, fp or rd.
    #[arg(long)]
    policy: Option<String>,
    #[arg(long)]
    load_multiplier: Option<f64>,
    /// Simulated seconds.
    #[arg(long)]
    duration: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Also write the final allocation, power and gain matrices.
    #[arg(long)]
    dump_state: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let inv = Invocation {
        config: args.config,
        preset: args.preset,
        overrides: Overrides {
            seed: args.seed,
            gamma0: args.gamma0,
            ratio: args.ratio,
            policy: args.policy,
            load_multiplier: args.load_multiplier,
            duration: args.duration,
        },
        out: args.out,
        dump_state: args.dump_state,
    };
    match execute(&inv) {
        Ok(out) => {
            println!("{}", out.csv.display());
            println!("{}", out.dat.display());
            println!("{}", out.resolved_config.display());
            for p in &out.dumps {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
