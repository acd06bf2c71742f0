//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use cellsim::hexgrid::{build_grid, CellId, GainMatrix, GridGeometry};
use cellsim::netstate::{build_channel_plan, CallRecord, ChannelId, NetworkState};
use cellsim::power::QosParams;
use rand::Rng;

/// Outcome of the fixed-point power iteration.
#[derive(Debug, Clone, PartialEq)]
pub enum Fixpoint {
    Feasible(Vec<f64>),
    Infeasible,
    /// Converging too slowly, or landing too close to the cap, to call.
    Undecided,
}

/// Minimal powers for `active` by the synchronous iteration
/// `p_i <- γ0 (η_i + Σ_j g_ij p_j) / g_ii` started at zero. The iterates
/// increase monotonically towards the least solution, so crossing the cap
/// proves infeasibility.
pub fn fixpoint_powers(gains: &GainMatrix, active: &[CellId], qos: &QosParams) -> Fixpoint {
    let n = active.len();
    let mut p = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut prev_step = f64::INFINITY;
    for _ in 0..5_000_000 {
        for (a, &i) in active.iter().enumerate() {
            let mut interference = qos.eta[i];
            for (b, &j) in active.iter().enumerate() {
                if a != b {
                    interference += gains.get(i, j) * p[b];
                }
            }
            next[a] = qos.gamma0 * interference / gains.get(i, i);
        }
        let step = next
            .iter()
            .zip(&p)
            .map(|(x, y)| x - y)
            .fold(0.0f64, f64::max);
        std::mem::swap(&mut p, &mut next);
        let top = p.iter().cloned().fold(0.0f64, f64::max);
        if top > qos.power_cap * (1.0 + 1e-7) {
            return Fixpoint::Infeasible;
        }
        let rate = step / prev_step;
        prev_step = step;
        // geometric tail bound step * r / (1 - r)
        if step == 0.0 || (rate > 0.0 && rate < 0.999 && step * rate / (1.0 - rate) <= 1e-13 * top) {
            if top > qos.power_cap * (1.0 - 1e-7) {
                return Fixpoint::Undecided;
            }
            return Fixpoint::Feasible(p);
        }
    }
    Fixpoint::Undecided
}

/// Random symmetric gain matrix with every cross gain below both
/// diagonal entries.
pub fn random_gains<R: Rng>(rng: &mut R, n: usize) -> GainMatrix {
    let diag: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..3.0)).collect();
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[i][i] = diag[i];
        for j in 0..i {
            let g = rng.random_range(0.01..0.6) * diag[i].min(diag[j]);
            rows[i][j] = g;
            rows[j][i] = g;
        }
    }
    GainMatrix::from_rows(rows).expect("valid random gains")
}

/// A `1 x cells` strip where every cell shares the same fixed channels.
pub fn strip_state(cells: usize, fc: usize, dc: usize) -> (GridGeometry, NetworkState) {
    let geom = build_grid(1, cells).unwrap();
    let plan = build_channel_plan(fc + dc, fc, 1, &geom).unwrap();
    (geom, NetworkState::new(plan))
}

/// Places a call of `cell` on `channel` at power `p`.
pub fn place(state: &mut NetworkState, id: u64, cell: CellId, channel: ChannelId, p: f64) {
    let class = state.plan().class_of(channel);
    let call = CallRecord {
        id,
        cell,
        channel,
        class,
        start_time: 0.0,
        departure_time: 1.0,
    };
    state.occupy(call, &[(cell, p)]).unwrap();
}

#[derive(Debug, Clone, PartialEq)]
pub enum Choice {
    Admit { channel: ChannelId, total: f64 },
    Blocked,
    Undecided,
}

fn with_cell(state: &NetworkState, l: ChannelId, k: CellId) -> Vec<CellId> {
    let mut set: Vec<CellId> = (0..state.num_cells())
        .filter(|&c| state.is_occupied(c, l))
        .collect();
    set.push(k);
    set.sort_unstable();
    set
}

/// Exhaustive per-channel enumeration of the admission problem: first
/// feasible fixed channel in id order, otherwise the dynamic channel of
/// least total power with near-ties to the lowest id.
pub fn enumerate_admission(state: &NetworkState, gains: &GainMatrix, qos: &QosParams, k: CellId) -> Choice {
    let plan = state.plan();
    for &l in plan.fc_channels(k) {
        if state.is_occupied(k, l) {
            continue;
        }
        match fixpoint_powers(gains, &with_cell(state, l, k), qos) {
            Fixpoint::Feasible(p) => {
                return Choice::Admit {
                    channel: l,
                    total: p.iter().sum(),
                }
            }
            Fixpoint::Undecided => return Choice::Undecided,
            Fixpoint::Infeasible => {}
        }
    }
    let mut totals = Vec::new();
    for &l in plan.dc_channels() {
        if state.is_occupied(k, l) {
            continue;
        }
        match fixpoint_powers(gains, &with_cell(state, l, k), qos) {
            Fixpoint::Feasible(p) => totals.push((l, p.iter().sum::<f64>())),
            Fixpoint::Undecided => return Choice::Undecided,
            Fixpoint::Infeasible => {}
        }
    }
    let min = totals.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    match totals.into_iter().find(|t| t.1 <= min * (1.0 + 1e-9)) {
        Some((channel, total)) => Choice::Admit { channel, total },
        None => Choice::Blocked,
    }
}

fn cir_at(gains: &GainMatrix, active: &[CellId], p: &[f64], eta: &[f64], a: usize) -> f64 {
    let i = active[a];
    let mut interference = eta[i];
    for (b, &j) in active.iter().enumerate() {
        if b != a {
            interference += gains.get(i, j) * p[b];
        }
    }
    gains.get(i, i) * p[a] / interference
}

#[derive(Debug, Clone, Default)]
pub struct GridSearch {
    pub boxes: u64,
    pub leaves: u64,
    /// A grid vector meeting every threshold with total below the bound.
    pub counterexample: Option<Vec<f64>>,
}

/// Searches the power grid `{0, h, 2h, ..} ∩ [0, cap]` for a vector that
/// meets γ0 on every link with total below `bound`, by branch and bound on
/// boxes of grid indices. A box is discarded when its smallest total
/// already reaches `bound`, or when some link fails even with its own power
/// at the box maximum and every other power at the box minimum.
pub fn grid_search_below(
    gains: &GainMatrix,
    active: &[CellId],
    qos: &QosParams,
    h: f64,
    bound: f64,
    max_boxes: u64,
) -> GridSearch {
    let n = active.len();
    let top = (qos.power_cap / h).floor() as i64;
    let mut out = GridSearch::default();
    let mut stack = vec![(vec![0i64; n], vec![top; n])];
    let floor = qos.gamma0;
    while let Some((lo, hi)) = stack.pop() {
        out.boxes += 1;
        assert!(out.boxes <= max_boxes, "grid search exceeded {max_boxes} boxes");
        let lo_p: Vec<f64> = lo.iter().map(|&x| x as f64 * h).collect();
        if lo_p.iter().sum::<f64>() >= bound {
            continue;
        }
        let mut hopeless = false;
        for a in 0..n {
            let mut q = lo_p.clone();
            q[a] = hi[a] as f64 * h;
            if cir_at(gains, active, &q, &qos.eta, a) < floor {
                hopeless = true;
                break;
            }
        }
        if hopeless {
            continue;
        }
        let widest = (0..n).max_by_key(|&a| hi[a] - lo[a]).unwrap();
        if hi[widest] == lo[widest] {
            out.leaves += 1;
            if (0..n).all(|a| cir_at(gains, active, &lo_p, &qos.eta, a) >= floor) {
                out.counterexample = Some(lo_p);
                return out;
            }
            continue;
        }
        // the lowest corner meeting every threshold is a witness already
        if (0..n).all(|a| cir_at(gains, active, &lo_p, &qos.eta, a) >= floor) {
            out.counterexample = Some(lo_p);
            return out;
        }
        let mid = lo[widest] + (hi[widest] - lo[widest]) / 2;
        let mut hi_left = hi.clone();
        hi_left[widest] = mid;
        let mut lo_right = lo.clone();
        lo_right[widest] = mid + 1;
        stack.push((lo_right, hi));
        stack.push((lo, hi_left));
    }
    out
}

/// Blocking probability of an M/M/c/c system offered `erlangs`.
pub fn erlang_b(servers: usize, erlangs: f64) -> f64 {
    let mut b = 1.0;
    for n in 1..=servers {
        b = erlangs * b / (n as f64 + erlangs * b);
    }
    b
}

/// Size of a maximum independent set of the graph given by `adj`, by
/// branching on the highest-degree vertex.
pub fn max_independent_set(adj: &[Vec<bool>]) -> usize {
    fn go(adj: &[Vec<bool>], alive: &mut Vec<bool>, best: &mut usize, chosen: usize) {
        let remaining: Vec<usize> = (0..adj.len()).filter(|&v| alive[v]).collect();
        if chosen + remaining.len() <= *best {
            return;
        }
        if remaining.is_empty() {
            *best = chosen;
            return;
        }
        let degree = |v: usize| remaining.iter().filter(|&&u| adj[v][u]).count();
        let v = *remaining.iter().max_by_key(|&&v| degree(v)).unwrap();
        if degree(v) == 0 {
            *best = (*best).max(chosen + remaining.len());
            return;
        }
        // take v: drop it and its neighbours
        let dropped: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&u| u == v || adj[v][u])
            .collect();
        for &u in &dropped {
            alive[u] = false;
        }
        go(adj, alive, best, chosen + 1);
        for &u in &dropped {
            alive[u] = true;
        }
        // leave v out
        alive[v] = false;
        go(adj, alive, best, chosen);
        alive[v] = true;
    }
    let mut alive = vec![true; adj.len()];
    let mut best = 0;
    go(adj, &mut alive, &mut best, 0);
    best
}

/// Relative difference.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
