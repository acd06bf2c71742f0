use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::CellId;

const BENCHMARK_TOML: &str = include_str!("../../configs/benchmark_traffic.toml");

/// Per-cell Poisson arrival rates plus an exponential holding time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrafficProfile {
    /// Calls per hour for each cell at normal load.
    pub arrival_rates: Vec<f64>,
    /// Mean call duration in seconds.
    pub mean_holding: f64,
    /// Uniform scaling applied to every arrival rate.
    pub load_multiplier: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundledTraffic {
    mean_holding: f64,
    arrival_rates: Vec<f64>,
}

impl TrafficProfile {
    /// Representative non-uniform pattern for the 7×7 benchmark grid.
    pub fn benchmark() -> Self {
        let t: BundledTraffic = toml::from_str(BENCHMARK_TOML).expect("bundled traffic file parses");
        Self {
            arrival_rates: t.arrival_rates,
            mean_holding: t.mean_holding,
            load_multiplier: 1.0,
        }
    }

    pub fn uniform(cells: usize, calls_per_hour: f64, mean_holding: f64) -> Self {
        Self {
            arrival_rates: vec![calls_per_hour; cells],
            mean_holding,
            load_multiplier: 1.0,
        }
    }

    pub fn validate(&self, cells: usize) -> Result<()> {
        if self.arrival_rates.len() != cells {
            return Err(Error::InvalidConfig(format!(
                "arrival_rates has {} entries but the grid has {cells} cells",
                self.arrival_rates.len()
            )));
        }
        if let Some((i, r)) = self
            .arrival_rates
            .iter()
            .enumerate()
            .find(|(_, r)| !(**r >= 0.0 && r.is_finite()))
        {
            return Err(Error::InvalidConfig(format!("arrival_rates[{i}] = {r} must be >= 0")));
        }
        if !(self.mean_holding > 0.0 && self.mean_holding.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "mean_holding = {} must be > 0",
                self.mean_holding
            )));
        }
        if !(self.load_multiplier > 0.0 && self.load_multiplier.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "load_multiplier = {} must be > 0",
                self.load_multiplier
            )));
        }
        Ok(())
    }

    /// Arrival rate of `cell` in calls per second, load multiplier applied.
    pub fn rate_per_second(&self, cell: CellId) -> f64 {
        self.arrival_rates[cell] * self.load_multiplier / 3600.0
    }

    /// Offered load of `cell` in Erlangs.
    pub fn offered_erlangs(&self, cell: CellId) -> f64 {
        self.rate_per_second(cell) * self.mean_holding
    }

    /// Network-wide arrivals per second.
    pub fn total_rate_per_second(&self) -> f64 {
        (0..self.arrival_rates.len()).map(|c| self.rate_per_second(c)).sum()
    }
}

/// Independent random streams for one cell: inter-arrival gaps and holding
/// times are drawn from separate ChaCha8 streams keyed by the cell id, so
/// the draws of a cell never depend on other cells or on admission
/// decisions.
#[derive(Debug, Clone)]
pub struct CellStreams {
    arrivals: ChaCha8Rng,
    holding: ChaCha8Rng,
    gap: Option<Exp<f64>>,
    hold: Exp<f64>,
}

impl CellStreams {
    pub fn new(seed: u64, cell: CellId, rate_per_second: f64, mean_holding: f64) -> Self {
        let mut arrivals = ChaCha8Rng::seed_from_u64(seed);
        arrivals.set_stream(2 * cell as u64);
        let mut holding = ChaCha8Rng::seed_from_u64(seed);
        holding.set_stream(2 * cell as u64 + 1);
        Self {
            arrivals,
            holding,
            gap: (rate_per_second > 0.0).then(|| Exp::new(rate_per_second).expect("positive rate")),
            hold: Exp::new(1.0 / mean_holding).expect("positive holding time"),
        }
    }

    /// Seconds until the next arrival, `None` for an idle cell.
    pub fn next_interarrival(&mut self) -> Option<f64> {
        self.gap.map(|d| d.sample(&mut self.arrivals))
    }

    pub fn next_holding(&mut self) -> f64 {
        // an exact zero would make a call depart at its own arrival instant
        loop {
            let h = self.hold.sample(&mut self.holding);
            if h > 0.0 {
                return h;
            }
        }
    }
}
