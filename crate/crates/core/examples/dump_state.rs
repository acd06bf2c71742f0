//! Runs a short simulation and prints the network state it ends in: the
//! cell-by-channel allocation, per-link powers and the busiest channels.
//!
//!     cargo run --release --example dump_state

use cellsim::sim::{SimConfig, Simulation};

fn main() -> cellsim::Result<()> {
    let config = SimConfig {
        duration: 3600.0,
        warmup: 360.0,
        ..SimConfig::benchmark()
    };
    let mut sim = Simulation::new(config)?;
    let m = sim.run_to_end()?;
    let state = sim.state();
    println!(
        "t = {}: {} live calls, total power {:.4}, blocking {:.4}",
        sim.now(),
        state.num_live_calls(),
        state.total_power(),
        m.blocking_probability()
    );
    state.check_invariants().map_err(cellsim::Error::InvalidConfig)?;

    let mut busiest: Vec<_> = (0..state.num_channels())
        .map(|l| (state.cochannel_cells(l).map(|c| c.len()).unwrap_or(0), l))
        .collect();
    busiest.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(n, l) in busiest.iter().take(5) {
        let powers: Vec<String> = state
            .channel_powers(l)
            .iter()
            .map(|(c, p)| format!("{c}:{p:.3}"))
            .collect();
        println!("channel {l} ({}) {n} users  {}", state.plan().class_of(l).label(), powers.join(" "));
    }
    println!("\nallocation matrix (first 4 rows):");
    for line in state.allocation_csv().lines().take(5) {
        println!("{line}");
    }
    Ok(())
}
