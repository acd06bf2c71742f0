//! Call admission: the joint channel + power optimizer and the fixed-power
//! and reuse-distance baselines.
//!
//! Every policy searches the arriving cell's fixed channels first, in
//! ascending id order, and falls back to the dynamic pool. Under
//! [`Policy::OptimalPc`] the dynamic phase picks, among all free dynamic
//! channels, the one whose co-channel set (plus the new call) admits the
//! smallest total transmit power. Because exactly one channel is selected
//! per call, the joint mixed-integer program decomposes into one
//! minimal-power solve per candidate channel followed by an argmin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{CellId, GainMatrix, GridGeometry};
use crate::netstate::{CallId, CallRecord, ChannelClass, ChannelId, NetworkState};
use crate::power::{solve_min_power, verify_cir, PowerSolveResult, PowerVector, QosParams};

/// Relative gap below which two candidate totals count as a tie.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Policy {
    /// Minimal-power channel selection with power control on the chosen
    /// channel.
    OptimalPc,
    /// Every transmitter runs at `p_fixed`; a channel is usable if all
    /// co-channel links still meet γ0.
    FixedPower { p_fixed: f64 },
    /// A channel is usable if every co-channel cell is at least `d_reuse`
    /// away.
    ReuseDistance { d_reuse: f64 },
}

impl Policy {
    pub fn validate(&self, qos: &QosParams) -> Result<()> {
        match *self {
            Policy::OptimalPc => Ok(()),
            Policy::FixedPower { p_fixed } => {
                if p_fixed > 0.0 && p_fixed <= qos.power_cap {
                    Ok(())
                } else {
                    Err(Error::InvalidPolicy(format!(
                        "p_fixed = {p_fixed} must lie in (0, {}]",
                        qos.power_cap
                    )))
                }
            }
            Policy::ReuseDistance { d_reuse } => {
                if d_reuse > 0.0 && d_reuse.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidPolicy(format!("d_reuse = {d_reuse} must be > 0")))
                }
            }
        }
    }

    /// Short label used in reports: `PC`, `FP` or `RD`.
    pub fn label(&self) -> &'static str {
        match self {
            Policy::OptimalPc => "PC",
            Policy::FixedPower { .. } => "FP",
            Policy::ReuseDistance { .. } => "RD",
        }
    }

    /// Whether live calls under this policy carry a CIR guarantee.
    pub fn guards_cir(&self) -> bool {
        !matches!(self, Policy::ReuseDistance { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Admission {
    pub channel: ChannelId,
    pub class: ChannelClass,
    /// Powers for every transmitter on `channel` after admission, new call
    /// included.
    pub powers: PowerVector,
    pub total_power: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AdmissionOutcome {
    Admitted(Admission),
    Blocked,
}

impl AdmissionOutcome {
    pub fn admitted(&self) -> Option<&Admission> {
        match self {
            AdmissionOutcome::Admitted(a) => Some(a),
            AdmissionOutcome::Blocked => None,
        }
    }

    pub fn is_blocked(&self) -> bool {
        matches!(self, AdmissionOutcome::Blocked)
    }
}

fn admitted(state: &NetworkState, channel: ChannelId, powers: PowerVector) -> AdmissionOutcome {
    let total_power = powers.total();
    AdmissionOutcome::Admitted(Admission {
        channel,
        class: state.plan().class_of(channel),
        powers,
        total_power,
    })
}

fn check_cell(state: &NetworkState, k: CellId) -> Result<()> {
    if k < state.num_cells() {
        Ok(())
    } else {
        Err(Error::InvalidCell {
            cell: k,
            cells: state.num_cells(),
        })
    }
}

/// Co-channel cells of `l` with `k` inserted in ascending position.
fn with_new_cell(state: &NetworkState, l: ChannelId, k: CellId) -> Vec<CellId> {
    let cur = &state.cochannel_cells(l).expect("channel from plan");
    let mut v = Vec::with_capacity(cur.len() + 1);
    let pos = cur.partition_point(|&c| c < k);
    v.extend_from_slice(&cur[..pos]);
    v.push(k);
    v.extend_from_slice(&cur[pos..]);
    v
}

fn free_fc_channels(state: &NetworkState, k: CellId) -> impl Iterator<Item = ChannelId> + '_ {
    state
        .plan()
        .fc_channels(k)
        .iter()
        .copied()
        .filter(move |&l| !state.is_occupied(k, l))
}

/// Minimal-power solve for channel `l` with a new call in `k`.
pub fn evaluate_channel(
    state: &NetworkState,
    gains: &GainMatrix,
    qos: &QosParams,
    k: CellId,
    l: ChannelId,
) -> PowerSolveResult {
    solve_min_power(gains, &with_new_cell(state, l, k), qos)
}

/// Joint channel selection and power control for a call arriving in `k`.
///
/// Fixed channels are tried first and the first feasible one is taken.
/// Otherwise every free dynamic channel is solved and the minimum total
/// power wins; totals within [`TIE_TOLERANCE`] of the minimum count as
/// ties and go to the lowest channel id. A blocked call leaves
/// the state untouched.
pub fn admit_optimal(
    state: &NetworkState,
    gains: &GainMatrix,
    qos: &QosParams,
    k: CellId,
) -> Result<AdmissionOutcome> {
    check_cell(state, k)?;
    for l in free_fc_channels(state, k) {
        if let PowerSolveResult::Feasible(p) = evaluate_channel(state, gains, qos, k, l) {
            return Ok(admitted(state, l, p));
        }
    }
    let mut feasible = Vec::new();
    for l in state.free_dc_channels(k)? {
        if let PowerSolveResult::Feasible(p) = evaluate_channel(state, gains, qos, k, l) {
            feasible.push((l, p));
        }
    }
    let min = feasible.iter().map(|(_, p)| p.total()).fold(f64::INFINITY, f64::min);
    Ok(
        match feasible
            .into_iter()
            .find(|(_, p)| p.total() <= min * (1.0 + TIE_TOLERANCE))
        {
            Some((l, p)) => admitted(state, l, p),
            None => AdmissionOutcome::Blocked,
        },
    )
}

/// Fixed-power baseline: first channel, fixed before dynamic, on which all
/// co-channel links including the new one meet γ0 at `p_fixed`.
pub fn admit_fixed_power(
    state: &NetworkState,
    gains: &GainMatrix,
    qos: &QosParams,
    k: CellId,
    p_fixed: f64,
) -> Result<AdmissionOutcome> {
    check_cell(state, k)?;
    Policy::FixedPower { p_fixed }.validate(qos)?;
    let candidates: Vec<ChannelId> = free_fc_channels(state, k)
        .chain(state.free_dc_channels(k)?)
        .collect();
    for l in candidates {
        let powers: Vec<(CellId, f64)> = with_new_cell(state, l, k)
            .into_iter()
            .map(|c| (c, p_fixed))
            .collect();
        if verify_cir(gains, &powers, qos) {
            return Ok(admitted(state, l, PowerVector::new(powers)));
        }
    }
    Ok(AdmissionOutcome::Blocked)
}

/// Reuse-distance baseline. A fixed channel of `k` is usable whenever it
/// is free there, since the reuse pattern already separates its users; a
/// dynamic channel is usable when every current user is at least
/// `d_reuse` from `k`. The new call is booked at `p_book`.
pub fn admit_reuse_distance(
    state: &NetworkState,
    geom: &GridGeometry,
    k: CellId,
    d_reuse: f64,
    p_book: f64,
) -> Result<AdmissionOutcome> {
    check_cell(state, k)?;
    if !(d_reuse > 0.0) {
        return Err(Error::InvalidPolicy(format!("d_reuse = {d_reuse} must be > 0")));
    }
    let book = |l: ChannelId| {
        let mut powers = state.channel_powers(l);
        let pos = powers.partition_point(|e| e.0 < k);
        powers.insert(pos, (k, p_book));
        admitted(state, l, PowerVector::new(powers))
    };
    if let Some(l) = free_fc_channels(state, k).next() {
        return Ok(book(l));
    }
    for l in state.free_dc_channels(k)? {
        let mut far = true;
        for &c in state.cochannel_cells(l)? {
            if geom.distance(c, k)? < d_reuse {
                far = false;
                break;
            }
        }
        if far {
            return Ok(book(l));
        }
    }
    Ok(AdmissionOutcome::Blocked)
}

/// Everything an admission decision may look at.
#[derive(Debug, Clone, Copy)]
pub struct Network<'a> {
    pub geom: &'a GridGeometry,
    pub gains: &'a GainMatrix,
    pub qos: &'a QosParams,
}

/// Dispatches to the admission routine of `policy`.
pub fn admit(
    policy: &Policy,
    net: Network<'_>,
    state: &NetworkState,
    k: CellId,
) -> Result<AdmissionOutcome> {
    match *policy {
        Policy::OptimalPc => admit_optimal(state, net.gains, net.qos, k),
        Policy::FixedPower { p_fixed } => admit_fixed_power(state, net.gains, net.qos, k, p_fixed),
        Policy::ReuseDistance { d_reuse } => {
            admit_reuse_distance(state, net.geom, k, d_reuse, net.qos.power_cap)
        }
    }
}

/// Applies an admission to the state as call `id`.
pub fn commit(
    state: &mut NetworkState,
    admission: &Admission,
    id: CallId,
    k: CellId,
    start_time: f64,
    departure_time: f64,
) -> Result<CallRecord> {
    let record = CallRecord {
        id,
        cell: k,
        channel: admission.channel,
        class: admission.class,
        start_time,
        departure_time,
    };
    state.occupy(record.clone(), admission.powers.entries())?;
    Ok(record)
}

/// Ends call `id`. Under power control the surviving co-channel
/// transmitters drop to the minimum for the smaller set; the baselines keep
/// their powers.
pub fn release_call(
    state: &mut NetworkState,
    policy: &Policy,
    gains: &GainMatrix,
    qos: &QosParams,
    id: CallId,
) -> Result<CallRecord> {
    let record = state.release(id)?;
    if let Policy::OptimalPc = policy {
        let l = record.channel;
        let survivors = state.cochannel_cells(l)?.to_vec();
        match solve_min_power(gains, &survivors, qos) {
            PowerSolveResult::Feasible(p) => state.set_channel_powers(l, p.entries())?,
            PowerSolveResult::Infeasible(_) => return Err(Error::ResolveFailed(l)),
        }
    }
    Ok(record)
}

/// Every live transmitter on channel `l` meets γ0.
pub fn channel_meets_cir(state: &NetworkState, gains: &GainMatrix, qos: &QosParams, l: ChannelId) -> bool {
    verify_cir(gains, &state.channel_powers(l), qos)
}

/// Number of channels on which some live call is below γ0.
pub fn count_cir_violations(state: &NetworkState, gains: &GainMatrix, qos: &QosParams) -> usize {
    (0..state.num_channels())
        .filter(|&l| !channel_meets_cir(state, gains, qos, l))
        .count()
}
