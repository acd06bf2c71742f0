//! Blocking probability of PC, FP and RD on the 7x7 benchmark against
//! offered load.
//!
//!     cargo run --release --example load_sweep -- [hours]

use cellsim::admission::Policy;
use cellsim::sim::{sweep, SimConfig, SweepAxis, SweepValue};

fn main() -> cellsim::Result<()> {
    let hours: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4.0);
    let loads = [0.75, 1.0, 1.5, 2.0];
    let values: Vec<SweepValue> = loads.iter().map(|&v| SweepValue::Scalar(v)).collect();

    println!("{:>6} {:>10} {:>10} {:>10}", "load", "PC", "FP", "RD");
    let mut table = Vec::new();
    for policy in [
        Policy::OptimalPc,
        Policy::FixedPower { p_fixed: 10.0 },
        Policy::ReuseDistance { d_reuse: 3.0 },
    ] {
        let base = SimConfig {
            duration: hours * 3600.0,
            warmup: hours * 360.0,
            policy,
            ..SimConfig::benchmark()
        };
        table.push(sweep(&base, SweepAxis::LoadMultiplier, &values)?);
    }
    for (i, load) in loads.iter().enumerate() {
        println!(
            "{load:>6} {:>10.4} {:>10.4} {:>10.4}",
            table[0][i].metrics.blocking_probability(),
            table[1][i].metrics.blocking_probability(),
            table[2][i].metrics.blocking_probability()
        );
    }
    Ok(())
}
