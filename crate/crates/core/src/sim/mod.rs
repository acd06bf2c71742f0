//! Discrete-event call simulator under blocked-calls-cleared discipline.
//!
//! Each cell generates Poisson arrivals; admitted calls hold their channel
//! for an exponentially distributed time and then depart. Blocked arrivals
//! are discarded. Counters only cover arrivals at or after the warmup
//! instant, while the network evolves from an empty state at time zero.

mod events;
mod traffic;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admission::{self, AdmissionOutcome, Network, Policy};
use crate::error::{Error, Result};
use crate::hexgrid::{build_gain_matrix, build_grid, GainMatrix, GainModel, GridGeometry};
use crate::netstate::{build_channel_plan, CallId, ChannelClass, NetworkState};
use crate::power::QosParams;

pub use events::{Event, EventKind, EventQueue};
pub use traffic::{CellStreams, TrafficProfile};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub seed: u64,
    /// Simulated horizon in seconds.
    pub duration: f64,
    /// Arrivals before this instant are not counted.
    pub warmup: f64,
    pub rows: usize,
    pub cols: usize,
    pub gain: GainModel,
    pub total_channels: usize,
    pub fc_channels: usize,
    pub cluster_size: usize,
    pub traffic: TrafficProfile,
    pub policy: Policy,
    pub qos: QosParams,
    /// Check every live link's CIR after each event.
    pub audit: bool,
}

impl SimConfig {
    /// 7×7 grid, 70 channels split 21:49, γ0 = 2, power control, bundled
    /// traffic at normal load for 24 simulated hours.
    pub fn benchmark() -> Self {
        let duration = 86_400.0;
        Self {
            seed: 1,
            duration,
            warmup: 0.1 * duration,
            rows: 7,
            cols: 7,
            gain: GainModel::default(),
            total_channels: 70,
            fc_channels: 21,
            cluster_size: 7,
            traffic: TrafficProfile::benchmark(),
            policy: Policy::OptimalPc,
            qos: QosParams::uniform(2.0, 0.01, 10.0, 49).expect("valid defaults"),
            audit: false,
        }
    }

    pub fn num_cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::InvalidConfig(format!("duration = {} must be > 0", self.duration)));
        }
        if !(self.warmup >= 0.0 && self.warmup < self.duration) {
            return Err(Error::InvalidConfig(format!(
                "warmup = {} must lie in [0, duration = {})",
                self.warmup, self.duration
            )));
        }
        self.gain.validate()?;
        self.qos.validate()?;
        if self.qos.eta.len() != self.num_cells() {
            return Err(Error::InvalidConfig(format!(
                "noise vector has {} entries but the grid has {} cells",
                self.qos.eta.len(),
                self.num_cells()
            )));
        }
        self.traffic.validate(self.num_cells())?;
        self.policy.validate(&self.qos)?;
        Ok(())
    }

    /// Expected number of counted arrivals.
    pub fn expected_arrivals(&self) -> f64 {
        self.traffic.total_rate_per_second() * (self.duration - self.warmup)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCounters {
    pub arrivals: u64,
    pub admitted: u64,
    pub blocked: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub arrivals: u64,
    pub admitted: u64,
    pub blocked: u64,
    pub admitted_fc: u64,
    pub admitted_dc: u64,
    pub per_cell: Vec<CellCounters>,
    /// Time-averaged sum of all transmit powers over the counted interval.
    pub mean_total_power: f64,
    pub peak_total_power: f64,
    /// Number of (event, channel) pairs on which some live link was below γ0.
    pub cir_violations: u64,
    /// Events after which the CIR audit ran.
    pub audited_events: u64,
    /// Admissions over the whole run, warmup included.
    pub admitted_all: u64,
    pub departed: u64,
    pub live_at_end: u64,
}

impl Metrics {
    fn new(cells: usize) -> Self {
        Self {
            arrivals: 0,
            admitted: 0,
            blocked: 0,
            admitted_fc: 0,
            admitted_dc: 0,
            per_cell: vec![CellCounters::default(); cells],
            mean_total_power: 0.0,
            peak_total_power: 0.0,
            cir_violations: 0,
            audited_events: 0,
            admitted_all: 0,
            departed: 0,
            live_at_end: 0,
        }
    }

    /// Blocked over counted arrivals; zero when nothing arrived (see
    /// [`Self::is_undefined`]).
    pub fn blocking_probability(&self) -> f64 {
        if self.arrivals == 0 {
            0.0
        } else {
            self.blocked as f64 / self.arrivals as f64
        }
    }

    /// True when there were no counted arrivals and the blocking
    /// probability is reported as zero by convention.
    pub fn is_undefined(&self) -> bool {
        self.arrivals == 0
    }

    /// Binomial standard error of the blocking estimate.
    pub fn standard_error(&self) -> f64 {
        if self.arrivals == 0 {
            return 0.0;
        }
        let p = self.blocking_probability();
        (p * (1.0 - p) / self.arrivals as f64).sqrt()
    }
}

/// A configured network plus its evolving state.
pub struct Simulation {
    config: SimConfig,
    geom: GridGeometry,
    gains: GainMatrix,
    state: NetworkState,
    streams: Vec<CellStreams>,
    queue: EventQueue,
    metrics: Metrics,
    next_call: CallId,
    now: f64,
    channel_power: Vec<f64>,
    power_area: f64,
}

impl Simulation {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let geom = build_grid(config.rows, config.cols)?;
        let gains = build_gain_matrix(&geom, &config.gain)?;
        let plan = build_channel_plan(config.total_channels, config.fc_channels, config.cluster_size, &geom)?;
        let state = NetworkState::new(plan);
        let cells = geom.num_cells();
        let streams = (0..cells)
            .map(|c| {
                CellStreams::new(
                    config.seed,
                    c,
                    config.traffic.rate_per_second(c),
                    config.traffic.mean_holding,
                )
            })
            .collect();
        let mut sim = Self {
            channel_power: vec![0.0; config.total_channels],
            metrics: Metrics::new(cells),
            config,
            geom,
            gains,
            state,
            streams,
            queue: EventQueue::default(),
            next_call: 0,
            now: 0.0,
            power_area: 0.0,
        };
        for c in 0..cells {
            if let Some(gap) = sim.streams[c].next_interarrival() {
                sim.queue.push(gap, EventKind::Arrival { cell: c });
            }
        }
        Ok(sim)
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn state(&self) -> &NetworkState {
        &self.state
    }

    pub fn gains(&self) -> &GainMatrix {
        &self.gains
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geom
    }

    pub fn now(&self) -> f64 {
        self.now
    }

    fn network(&self) -> Network<'_> {
        Network {
            geom: &self.geom,
            gains: &self.gains,
            qos: &self.config.qos,
        }
    }

    fn total_power(&self) -> f64 {
        self.channel_power.iter().sum()
    }

    fn refresh_channel_power(&mut self, l: usize) {
        self.channel_power[l] = self.state.channel_powers(l).iter().map(|e| e.1).sum();
    }

    /// Accumulates the power integral and peak up to `t`, counted interval only.
    fn advance_to(&mut self, t: f64) {
        let from = self.now.max(self.config.warmup);
        let to = t.max(self.config.warmup);
        if to > from {
            let p = self.total_power();
            self.power_area += p * (to - from);
            self.metrics.peak_total_power = self.metrics.peak_total_power.max(p);
        }
        self.now = t;
    }

    fn audit(&mut self) {
        if !(self.config.audit && self.config.policy.guards_cir()) {
            return;
        }
        self.metrics.audited_events += 1;
        self.metrics.cir_violations +=
            admission::count_cir_violations(&self.state, &self.gains, &self.config.qos) as u64;
    }

    /// Processes the next event; returns `false` once the horizon is reached.
    pub fn step(&mut self) -> Result<bool> {
        let Some(event) = self.queue.peek() else {
            return Ok(false);
        };
        if event.time > self.config.duration {
            return Ok(false);
        }
        let event = self.queue.pop().expect("peeked");
        self.advance_to(event.time);
        match event.kind {
            EventKind::Arrival { cell } => self.on_arrival(cell)?,
            EventKind::Departure { call } => self.on_departure(call)?,
        }
        self.audit();
        Ok(true)
    }

    fn on_arrival(&mut self, cell: usize) -> Result<()> {
        let t = self.now;
        let holding = self.streams[cell].next_holding();
        if let Some(gap) = self.streams[cell].next_interarrival() {
            self.queue.push(t + gap, EventKind::Arrival { cell });
        }
        let counted = t >= self.config.warmup;
        if counted {
            self.metrics.arrivals += 1;
            self.metrics.per_cell[cell].arrivals += 1;
        }
        let outcome = admission::admit(&self.config.policy, self.network(), &self.state, cell)?;
        match outcome {
            AdmissionOutcome::Blocked => {
                if counted {
                    self.metrics.blocked += 1;
                    self.metrics.per_cell[cell].blocked += 1;
                }
            }
            AdmissionOutcome::Admitted(adm) => {
                let id = self.next_call;
                self.next_call += 1;
                let departure = t + holding;
                admission::commit(&mut self.state, &adm, id, cell, t, departure)?;
                self.refresh_channel_power(adm.channel);
                self.queue.push(departure, EventKind::Departure { call: id });
                self.metrics.admitted_all += 1;
                if counted {
                    self.metrics.admitted += 1;
                    self.metrics.per_cell[cell].admitted += 1;
                    match adm.class {
                        ChannelClass::Fixed => self.metrics.admitted_fc += 1,
                        ChannelClass::Dynamic => self.metrics.admitted_dc += 1,
                    }
                }
            }
        }
        Ok(())
    }

    fn on_departure(&mut self, call: CallId) -> Result<()> {
        let record = admission::release_call(
            &mut self.state,
            &self.config.policy,
            &self.gains,
            &self.config.qos,
            call,
        )?;
        self.refresh_channel_power(record.channel);
        self.metrics.departed += 1;
        Ok(())
    }

    /// Runs to the horizon and returns the final metrics.
    pub fn run_to_end(&mut self) -> Result<Metrics> {
        while self.step()? {}
        self.advance_to(self.config.duration);
        let span = self.config.duration - self.config.warmup;
        self.metrics.mean_total_power = self.power_area / span;
        self.metrics.live_at_end = self.state.num_live_calls() as u64;
        Ok(self.metrics.clone())
    }
}

/// Runs one simulation from an empty network.
pub fn run(config: &SimConfig) -> Result<Metrics> {
    Simulation::new(config.clone())?.run_to_end()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    LoadMultiplier,
    Gamma0,
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SweepValue {
    Scalar(f64),
    /// `(|FC|, |DC|)`.
    Ratio(usize, usize),
}

impl std::fmt::Display for SweepValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepValue::Scalar(v) => write!(f, "{v}"),
            SweepValue::Ratio(a, b) => write!(f, "{a}:{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: SweepValue,
    pub config: SimConfig,
    pub metrics: Metrics,
}

/// Seed used for the `index`-th point of a sweep.
pub fn derive_seed(base: u64, index: usize) -> u64 {
    base ^ index as u64
}

/// Config for one sweep point: `value` applied along `axis`, seed derived
/// from the point's index.
pub fn sweep_config(base: &SimConfig, axis: SweepAxis, index: usize, value: SweepValue) -> Result<SimConfig> {
    let mut c = base.clone();
    c.seed = derive_seed(base.seed, index);
    match (axis, value) {
        (SweepAxis::LoadMultiplier, SweepValue::Scalar(v)) => c.traffic.load_multiplier = v,
        (SweepAxis::Gamma0, SweepValue::Scalar(v)) => c.qos.gamma0 = v,
        (SweepAxis::Ratio, SweepValue::Ratio(fc, dc)) => {
            c.fc_channels = fc;
            c.total_channels = fc + dc;
        }
        (axis, value) => {
            return Err(Error::InvalidConfig(format!(
                "sweep value {value} does not fit axis {axis:?}"
            )))
        }
    }
    c.validate()?;
    Ok(c)
}

/// One run per value. Points are independent and run in parallel; the
/// output keeps the order of `values`.
pub fn sweep(base: &SimConfig, axis: SweepAxis, values: &[SweepValue]) -> Result<Vec<SweepPoint>> {
    if values.is_empty() {
        return Err(Error::InvalidConfig("sweep needs at least one value".into()));
    }
    let configs = values
        .iter()
        .enumerate()
        .map(|(i, &v)| sweep_config(base, axis, i, v))
        .collect::<Result<Vec<_>>>()?;
    configs
        .into_par_iter()
        .zip(values.par_iter())
        .map(|(config, &value)| {
            let metrics = run(&config)?;
            Ok(SweepPoint {
                value,
                config,
                metrics,
            })
        })
        .collect()
}
