//! A single cell with three channels is an M/M/3/3 loss system. Compares
//! the simulated blocking probability with the Erlang-B formula.
//!
//!     cargo run --release --example erlang_b

use cellsim::admission::Policy;
use cellsim::hexgrid::GainModel;
use cellsim::power::QosParams;
use cellsim::sim::{run, SimConfig, TrafficProfile};

fn erlang_b(servers: usize, erlangs: f64) -> f64 {
    (1..=servers).fold(1.0, |b, n| erlangs * b / (n as f64 + erlangs * b))
}

fn main() -> cellsim::Result<()> {
    let rate_per_hour = 40.0;
    let mean_holding = 180.0;
    let config = SimConfig {
        seed: 7,
        duration: 100.0 * 86400.0,
        warmup: 3600.0,
        rows: 1,
        cols: 1,
        gain: GainModel::default(),
        total_channels: 3,
        fc_channels: 3,
        cluster_size: 1,
        traffic: TrafficProfile::uniform(1, rate_per_hour, mean_holding),
        policy: Policy::OptimalPc,
        qos: QosParams::uniform(2.0, 0.01, 10.0, 1)?,
        audit: false,
    };
    let m = run(&config)?;
    let a = config.traffic.offered_erlangs(0);
    println!("offered load {a} Erl, {} arrivals", m.arrivals);
    println!(
        "simulated {:.4} +- {:.4}, Erlang-B {:.4}",
        m.blocking_probability(),
        m.standard_error(),
        erlang_b(3, a)
    );
    Ok(())
}
