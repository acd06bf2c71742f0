//! Feeds the same stream of call requests to the three admission policies
//! and shows where each one places the calls.
//!
//!     cargo run --example admission_policies

use cellsim::admission::{admit, commit, count_cir_violations, AdmissionOutcome, Network, Policy};
use cellsim::hexgrid::{build_gain_matrix, build_grid, GainModel};
use cellsim::netstate::{build_channel_plan, ChannelClass, NetworkState};
use cellsim::power::QosParams;

fn main() -> cellsim::Result<()> {
    let geom = build_grid(7, 7)?;
    let gains = build_gain_matrix(&geom, &GainModel::default())?;
    let qos = QosParams::uniform(2.0, 0.01, 10.0, geom.num_cells())?;
    let net = Network {
        geom: &geom,
        gains: &gains,
        qos: &qos,
    };
    // a hot spot: cell 24 and its six neighbours each ask for far more
    // than their three fixed channels
    let requests: Vec<usize> = (0..30).flat_map(|_| [24, 17, 18, 23, 25, 30, 31]).collect();

    for policy in [
        Policy::OptimalPc,
        Policy::FixedPower { p_fixed: 10.0 },
        Policy::ReuseDistance { d_reuse: 3.0 },
    ] {
        let mut state = NetworkState::new(build_channel_plan(70, 21, 7, &geom)?);
        let (mut fc, mut dc, mut blocked) = (0, 0, 0);
        for (id, &k) in requests.iter().enumerate() {
            match admit(&policy, net, &state, k)? {
                AdmissionOutcome::Admitted(a) => {
                    match a.class {
                        ChannelClass::Fixed => fc += 1,
                        ChannelClass::Dynamic => dc += 1,
                    }
                    commit(&mut state, &a, id as u64, k, 0.0, f64::INFINITY)?;
                }
                AdmissionOutcome::Blocked => blocked += 1,
            }
        }
        println!(
            "{}: {fc} on fixed, {dc} on dynamic, {blocked} blocked, total power {:.3}, channels below threshold {}",
            policy.label(),
            state.total_power(),
            count_cir_violations(&state, &gains, &qos)
        );
    }
    Ok(())
}
