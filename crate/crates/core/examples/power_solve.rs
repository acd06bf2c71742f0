//! Minimum-power solve for a set of co-channel cells, then a check that
//! every link sits exactly at the CIR threshold and that shaving power
//! anywhere breaks it.
//!
//!     cargo run --example power_solve -- 0 3 24 45

use cellsim::hexgrid::{build_gain_matrix, build_grid, GainModel};
use cellsim::power::{cir, solve_min_power, verify_cir, PowerSolveResult, QosParams};

fn main() -> cellsim::Result<()> {
    let mut active: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if active.is_empty() {
        active = vec![0, 3, 24, 45];
    }
    active.sort_unstable();
    active.dedup();

    let geom = build_grid(7, 7)?;
    let gains = build_gain_matrix(&geom, &GainModel::default())?;
    let qos = QosParams::uniform(2.0, 0.01, 10.0, geom.num_cells())?;

    match solve_min_power(&gains, &active, &qos) {
        PowerSolveResult::Feasible(p) => {
            println!("{:>5} {:>12} {:>10}", "cell", "power", "CIR");
            for &(c, pw) in p.entries() {
                println!("{c:>5} {pw:>12.6} {:>10.6}", cir(&gains, p.entries(), &qos.eta, c));
            }
            println!("total power {:.6}", p.total());
            for i in 0..p.len() {
                let mut shaved = p.entries().to_vec();
                shaved[i].1 *= 0.99;
                assert!(!verify_cir(&gains, &shaved, &qos));
            }
            println!("lowering any single power by 1% violates the threshold");
        }
        PowerSolveResult::Infeasible(reason) => println!("infeasible: {reason:?}"),
    }
    Ok(())
}
