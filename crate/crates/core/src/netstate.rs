//! Channel plan and the live network state: allocation matrix, power
//! matrix, and the registry of ongoing calls.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{Axial, CellId, GridGeometry};

pub type ChannelId = usize;
pub type CallId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelClass {
    Fixed,
    Dynamic,
}

impl ChannelClass {
    pub fn label(self) -> &'static str {
        match self {
            ChannelClass::Fixed => "FC",
            ChannelClass::Dynamic => "DC",
        }
    }
}

/// Shift parameters `(i, j)` of a hexagonal reuse cluster, `N = i² + ij + j²`.
fn cluster_shift(size: usize) -> Option<(i64, i64)> {
    let n = size as i64;
    (1..=n).find_map(|i| {
        (0..=i)
            .find(|&j| i * i + i * j + j * j == n)
            .map(|j| (i, j))
    })
}

/// Hybrid split of the channel set into per-cell fixed channels (assigned
/// through a compact hexagonal reuse pattern) and a dynamic pool shared by
/// every cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelPlan {
    total: usize,
    cluster_size: usize,
    reuse_distance: f64,
    slot_of_cell: Vec<usize>,
    fc_per_cell: Vec<Vec<ChannelId>>,
    dc_set: Vec<ChannelId>,
    fc_count: usize,
}

/// Splits `total` channels into `ratio_fc` fixed channels, spread over the
/// slots of a `cluster_size` reuse pattern, and a dynamic remainder.
///
/// Fixed channels take ids `[0, ratio_fc)`; slot `s` owns the contiguous
/// block `[s·m, (s+1)·m)` with `m = ratio_fc / cluster_size`.
pub fn build_channel_plan(
    total: usize,
    ratio_fc: usize,
    cluster_size: usize,
    geom: &GridGeometry,
) -> Result<ChannelPlan> {
    if total == 0 {
        return Err(Error::InvalidChannelPlan("total channel count must be positive".into()));
    }
    if ratio_fc > total {
        return Err(Error::InvalidChannelPlan(format!(
            "fixed channel count {ratio_fc} exceeds total {total}"
        )));
    }
    if cluster_size == 0 {
        return Err(Error::InvalidChannelPlan("cluster size must be positive".into()));
    }
    if ratio_fc % cluster_size != 0 {
        return Err(Error::InvalidChannelPlan(format!(
            "fixed channel count {ratio_fc} must be a multiple of the reuse cluster size {cluster_size}"
        )));
    }
    let (i, j) = cluster_shift(cluster_size).ok_or_else(|| {
        Error::InvalidChannelPlan(format!(
            "cluster size {cluster_size} is not of the hexagonal form i^2 + ij + j^2"
        ))
    })?;
    let n = cluster_size as i64;

    // Two cells share a slot iff their axial difference lies in the lattice
    // spanned by (i, j) and its 60° rotation (-j, i + j).
    let same_slot = |p: Axial, q: Axial| {
        let (da, db) = (p.a - q.a, p.b - q.b);
        ((i + j) * da + j * db).rem_euclid(n) == 0 && (-j * da + i * db).rem_euclid(n) == 0
    };
    let cells = geom.num_cells();
    let mut reps: Vec<Axial> = Vec::new();
    let mut slot_of_cell = Vec::with_capacity(cells);
    for c in 0..cells {
        let ax = geom.axial(c)?;
        let slot = match reps.iter().position(|&r| same_slot(r, ax)) {
            Some(s) => s,
            None => {
                reps.push(ax);
                reps.len() - 1
            }
        };
        slot_of_cell.push(slot);
    }
    if reps.len() != cluster_size {
        return Err(Error::InvalidChannelPlan(format!(
            "cluster size {cluster_size} is not realizable on a {}x{} grid ({} slots present)",
            geom.rows(),
            geom.cols(),
            reps.len()
        )));
    }

    let per_slot = ratio_fc / cluster_size;
    let fc_per_cell = slot_of_cell
        .iter()
        .map(|&s| (s * per_slot..(s + 1) * per_slot).collect())
        .collect();
    let reuse_distance = {
        let (x, y) = Axial::new(i, j).center();
        x.hypot(y)
    };
    Ok(ChannelPlan {
        total,
        cluster_size,
        reuse_distance,
        slot_of_cell,
        fc_per_cell,
        dc_set: (ratio_fc..total).collect(),
        fc_count: ratio_fc,
    })
}

impl ChannelPlan {
    pub fn total_channels(&self) -> usize {
        self.total
    }

    pub fn num_cells(&self) -> usize {
        self.slot_of_cell.len()
    }

    /// `(|FC|, |DC|)`.
    pub fn ratio(&self) -> (usize, usize) {
        (self.fc_count, self.total - self.fc_count)
    }

    pub fn cluster_size(&self) -> usize {
        self.cluster_size
    }

    /// Center distance between nearest cells of the same cluster slot.
    pub fn fc_reuse_distance(&self) -> f64 {
        self.reuse_distance
    }

    pub fn slot_of(&self, cell: CellId) -> usize {
        self.slot_of_cell[cell]
    }

    pub fn fc_channels(&self, cell: CellId) -> &[ChannelId] {
        &self.fc_per_cell[cell]
    }

    pub fn dc_channels(&self) -> &[ChannelId] {
        &self.dc_set
    }

    pub fn class_of(&self, channel: ChannelId) -> ChannelClass {
        if channel < self.fc_count {
            ChannelClass::Fixed
        } else {
            ChannelClass::Dynamic
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CallRecord {
    pub id: CallId,
    pub cell: CellId,
    pub channel: ChannelId,
    pub class: ChannelClass,
    pub start_time: f64,
    pub departure_time: f64,
}

/// Single authoritative store of channel usage and transmit powers.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkState {
    plan: ChannelPlan,
    cells: usize,
    channels: usize,
    occupant: Vec<Option<CallId>>,
    power: Vec<f64>,
    cochannel: Vec<Vec<CellId>>,
    calls: BTreeMap<CallId, CallRecord>,
}

impl NetworkState {
    pub fn new(plan: ChannelPlan) -> Self {
        let cells = plan.num_cells();
        let channels = plan.total_channels();
        Self {
            plan,
            cells,
            channels,
            occupant: vec![None; cells * channels],
            power: vec![0.0; cells * channels],
            cochannel: vec![Vec::new(); channels],
            calls: BTreeMap::new(),
        }
    }

    pub fn plan(&self) -> &ChannelPlan {
        &self.plan
    }

    pub fn num_cells(&self) -> usize {
        self.cells
    }

    pub fn num_channels(&self) -> usize {
        self.channels
    }

    fn idx(&self, cell: CellId, channel: ChannelId) -> usize {
        cell * self.channels + channel
    }

    fn check_cell(&self, cell: CellId) -> Result<()> {
        if cell < self.cells {
            Ok(())
        } else {
            Err(Error::InvalidCell {
                cell,
                cells: self.cells,
            })
        }
    }

    fn check_channel(&self, channel: ChannelId) -> Result<()> {
        if channel < self.channels {
            Ok(())
        } else {
            Err(Error::InvalidChannel {
                channel,
                channels: self.channels,
            })
        }
    }

    /// `a_il`.
    pub fn is_occupied(&self, cell: CellId, channel: ChannelId) -> bool {
        self.occupant[self.idx(cell, channel)].is_some()
    }

    /// `p_il`.
    pub fn power(&self, cell: CellId, channel: ChannelId) -> f64 {
        self.power[self.idx(cell, channel)]
    }

    /// Dynamic channels not in use in cell `k`.
    pub fn free_dc_channels(&self, k: CellId) -> Result<Vec<ChannelId>> {
        self.check_cell(k)?;
        Ok(self
            .plan
            .dc_channels()
            .iter()
            .copied()
            .filter(|&l| !self.is_occupied(k, l))
            .collect())
    }

    /// Cells with a live call on channel `l`, ascending.
    pub fn cochannel_cells(&self, l: ChannelId) -> Result<&[CellId]> {
        self.check_channel(l)?;
        Ok(&self.cochannel[l])
    }

    /// `(cell, power)` for every live transmitter on channel `l`.
    pub fn channel_powers(&self, l: ChannelId) -> Vec<(CellId, f64)> {
        self.cochannel[l]
            .iter()
            .map(|&c| (c, self.power(c, l)))
            .collect()
    }

    pub fn call(&self, id: CallId) -> Option<&CallRecord> {
        self.calls.get(&id)
    }

    pub fn live_calls(&self) -> impl Iterator<Item = &CallRecord> {
        self.calls.values()
    }

    pub fn num_live_calls(&self) -> usize {
        self.calls.len()
    }

    /// Number of live calls in `cell`.
    pub fn calls_in_cell(&self, cell: CellId) -> usize {
        (0..self.channels)
            .filter(|&l| self.is_occupied(cell, l))
            .count()
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }

    fn validate_powers(
        &self,
        channel: ChannelId,
        powers: &[(CellId, f64)],
        new_cell: Option<CellId>,
    ) -> Result<()> {
        for (n, &(cell, p)) in powers.iter().enumerate() {
            self.check_cell(cell)?;
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::InvalidPower(format!(
                    "power {p} for cell {cell} on channel {channel} must be positive and finite"
                )));
            }
            if !self.is_occupied(cell, channel) && Some(cell) != new_cell {
                return Err(Error::InvalidPower(format!(
                    "cell {cell} has no call on channel {channel}"
                )));
            }
            if powers[..n].iter().any(|&(c, _)| c == cell) {
                return Err(Error::InvalidPower(format!(
                    "cell {cell} listed twice for channel {channel}"
                )));
            }
        }
        Ok(())
    }

    /// Registers `call` and writes `powers` on the call's channel column.
    /// Cells not listed keep their current power; the new call's own cell
    /// must be listed.
    pub fn occupy(&mut self, call: CallRecord, powers: &[(CellId, f64)]) -> Result<()> {
        self.check_cell(call.cell)?;
        self.check_channel(call.channel)?;
        if self.is_occupied(call.cell, call.channel) {
            return Err(Error::DoubleOccupy {
                cell: call.cell,
                channel: call.channel,
            });
        }
        if self.calls.contains_key(&call.id) {
            return Err(Error::DuplicateCall(call.id));
        }
        if !(call.departure_time > call.start_time) {
            return Err(Error::InvalidPower(format!(
                "call {} departs at {} which is not after its start {}",
                call.id, call.departure_time, call.start_time
            )));
        }
        if call.class != self.plan.class_of(call.channel) {
            return Err(Error::InvalidPower(format!(
                "call {} is tagged {:?} but channel {} is {:?}",
                call.id,
                call.class,
                call.channel,
                self.plan.class_of(call.channel)
            )));
        }
        self.validate_powers(call.channel, powers, Some(call.cell))?;
        if !powers.iter().any(|&(c, _)| c == call.cell) {
            return Err(Error::InvalidPower(format!(
                "no power given for the new call in cell {}",
                call.cell
            )));
        }

        let l = call.channel;
        let i = self.idx(call.cell, l);
        self.occupant[i] = Some(call.id);
        let list = &mut self.cochannel[l];
        let pos = list.partition_point(|&c| c < call.cell);
        list.insert(pos, call.cell);
        for &(cell, p) in powers {
            let i = self.idx(cell, l);
            self.power[i] = p;
        }
        self.calls.insert(call.id, call);
        Ok(())
    }

    /// Removes a live call, clearing its allocation and power entries.
    pub fn release(&mut self, id: CallId) -> Result<CallRecord> {
        let call = self.calls.remove(&id).ok_or(Error::UnknownCall(id))?;
        let i = self.idx(call.cell, call.channel);
        self.occupant[i] = None;
        self.power[i] = 0.0;
        let list = &mut self.cochannel[call.channel];
        if let Ok(pos) = list.binary_search(&call.cell) {
            list.remove(pos);
        }
        Ok(call)
    }

    /// Overwrites the powers of already-live transmitters on channel `l`.
    pub fn set_channel_powers(&mut self, l: ChannelId, powers: &[(CellId, f64)]) -> Result<()> {
        self.check_channel(l)?;
        self.validate_powers(l, powers, None)?;
        for &(cell, p) in powers {
            let i = self.idx(cell, l);
            self.power[i] = p;
        }
        Ok(())
    }

    /// Allocation matrix rebuilt from the call registry alone.
    pub fn allocation_from_registry(&self) -> Vec<Vec<bool>> {
        let mut a = vec![vec![false; self.channels]; self.cells];
        for c in self.calls.values() {
            a[c.cell][c.channel] = true;
        }
        a
    }

    pub fn allocation_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.cells)
            .map(|i| (0..self.channels).map(|l| self.is_occupied(i, l)).collect())
            .collect()
    }

    /// Checks the structural invariants linking the registry, the
    /// allocation matrix, the power matrix, and the FC reuse pattern.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.allocation_from_registry() != self.allocation_matrix() {
            return Err("allocation matrix disagrees with the call registry".into());
        }
        for i in 0..self.cells {
            for l in 0..self.channels {
                let p = self.power(i, l);
                let a = self.is_occupied(i, l);
                if (p > 0.0) != a || p < 0.0 || !p.is_finite() {
                    return Err(format!("cell {i} channel {l}: a = {a}, p = {p}"));
                }
            }
        }
        for (l, list) in self.cochannel.iter().enumerate() {
            let scan: Vec<CellId> = (0..self.cells).filter(|&i| self.is_occupied(i, l)).collect();
            if &scan != list {
                return Err(format!("co-channel index for channel {l} is stale"));
            }
        }
        for c in self.calls.values() {
            if c.class == ChannelClass::Fixed && !self.plan.fc_channels(c.cell).contains(&c.channel) {
                return Err(format!(
                    "call {} uses FC channel {} not owned by cell {}",
                    c.id, c.channel, c.cell
                ));
            }
        }
        Ok(())
    }

    fn matrix_csv(&self, value: impl Fn(CellId, ChannelId) -> String) -> String {
        let mut out = String::from("cell");
        for l in 0..self.channels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for i in 0..self.cells {
            let _ = write!(out, "{i}");
            for l in 0..self.channels {
                let _ = write!(out, ",{}", value(i, l));
            }
            out.push('\n');
        }
        out
    }

    /// Allocation matrix as CSV: header of channel ids, one row per cell.
    pub fn allocation_csv(&self) -> String {
        self.matrix_csv(|i, l| u8::from(self.is_occupied(i, l)).to_string())
    }

    /// Power matrix as CSV, same layout as [`Self::allocation_csv`].
    pub fn power_csv(&self) -> String {
        self.matrix_csv(|i, l| format!("{:?}", self.power(i, l)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::build_grid;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bench_plan(fc: usize) -> ChannelPlan {
        build_channel_plan(70, fc, 7, &build_grid(7, 7).unwrap()).unwrap()
    }

    fn call(id: CallId, cell: CellId, channel: ChannelId, plan: &ChannelPlan) -> CallRecord {
        CallRecord {
            id,
            cell,
            channel,
            class: plan.class_of(channel),
            start_time: 0.0,
            departure_time: 1.0,
        }
    }

    #[test]
    fn ratio_21_49() {
        let p = bench_plan(21);
        assert_eq!(p.ratio(), (21, 49));
        assert_eq!(p.dc_channels().len(), 49);
        for c in 0..49 {
            assert_eq!(p.fc_channels(c).len(), 3);
        }
    }

    #[test]
    fn pure_dca_when_fc_is_empty() {
        let p = bench_plan(0);
        assert_eq!(p.dc_channels(), (0..70).collect::<Vec<_>>().as_slice());
        assert!((0..49).all(|c| p.fc_channels(c).is_empty()));
    }

    #[test]
    fn fc_and_dc_partition_channels() {
        for fc in [0, 21, 35, 49, 70] {
            let p = bench_plan(fc);
            let mut seen = vec![0u32; 70];
            for slot_channels in (0..49).map(|c| p.fc_channels(c)) {
                for &l in slot_channels {
                    assert_eq!(p.class_of(l), ChannelClass::Fixed);
                }
            }
            for l in 0..fc {
                seen[l] += 1;
            }
            for &l in p.dc_channels() {
                assert_eq!(p.class_of(l), ChannelClass::Dynamic);
                seen[l] += 1;
            }
            assert!(seen.iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn cluster_seven_slots_are_balanced() {
        let p = bench_plan(49);
        let mut per_slot = [0usize; 7];
        for c in 0..49 {
            per_slot[p.slot_of(c)] += 1;
        }
        assert_eq!(per_slot, [7; 7]);
        assert!((p.fc_reuse_distance() - 7f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn shared_fc_channels_respect_reuse_distance() {
        // exhaustive pairwise check over the generated plan
        let geom = build_grid(7, 7).unwrap();
        let p = bench_plan(49);
        let reuse = 7f64.sqrt();
        let mut pairs = 0;
        for i in 0..49 {
            assert_eq!(p.fc_channels(i).len(), 7);
            for j in (i + 1)..49 {
                let shared = p.fc_channels(i).iter().any(|l| p.fc_channels(j).contains(l));
                if shared {
                    pairs += 1;
                    assert!(geom.distance(i, j).unwrap() >= reuse - 1e-12, "{i} {j}");
                }
            }
        }
        // 7 slots × C(7, 2)
        assert_eq!(pairs, 7 * 21);
    }

    #[test]
    fn other_cluster_sizes() {
        let geom = build_grid(7, 7).unwrap();
        for (n, d2) in [(1usize, 1.0), (3, 3.0), (4, 4.0), (9, 9.0), (12, 12.0)] {
            let p = build_channel_plan(72, n * 2, n, &geom).unwrap();
            for i in 0..49 {
                for j in (i + 1)..49 {
                    if p.slot_of(i) == p.slot_of(j) {
                        let d = geom.distance(i, j).unwrap();
                        assert!(d * d >= d2 - 1e-9, "N={n}: {i},{j} at {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn plan_errors() {
        let geom = build_grid(7, 7).unwrap();
        let err = build_channel_plan(70, 22, 7, &geom).unwrap_err().to_string();
        assert!(err.contains("multiple of the reuse cluster size 7"), "{err}");
        assert!(build_channel_plan(70, 71, 7, &geom).is_err());
        assert!(build_channel_plan(70, 10, 5, &geom).is_err());
        let single = build_grid(1, 1).unwrap();
        let err = build_channel_plan(70, 21, 7, &single).unwrap_err().to_string();
        assert!(err.contains("not realizable"), "{err}");
        let p = build_channel_plan(3, 3, 1, &single).unwrap();
        assert_eq!(p.fc_channels(0), &[0, 1, 2]);
    }

    #[test]
    fn free_dc_channels_set_difference() {
        let p = bench_plan(21);
        let mut s = NetworkState::new(p.clone());
        assert_eq!(s.free_dc_channels(3).unwrap(), p.dc_channels());
        s.occupy(call(1, 3, 26, &p), &[(3, 0.5)]).unwrap();
        s.occupy(call(2, 3, 30, &p), &[(3, 0.5)]).unwrap();
        let expected: Vec<_> = p.dc_channels().iter().copied().filter(|&l| l != 26 && l != 30).collect();
        assert_eq!(s.free_dc_channels(3).unwrap(), expected);
        assert!(s.free_dc_channels(49).is_err());
    }

    #[test]
    fn free_dc_matches_column_scan() {
        let p = bench_plan(35);
        let mut s = NetworkState::new(p.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut id = 0;
        for _ in 0..400 {
            let cell = rng.random_range(0..49);
            let ch = rng.random_range(0..70);
            if s.is_occupied(cell, ch) || (ch < 35 && !p.fc_channels(cell).contains(&ch)) {
                continue;
            }
            id += 1;
            s.occupy(call(id, cell, ch, &p), &[(cell, 1.0)]).unwrap();
        }
        let alloc = s.allocation_matrix();
        for k in 0..49 {
            let brute: Vec<_> = (35..70).filter(|&l| !alloc[k][l]).collect();
            assert_eq!(s.free_dc_channels(k).unwrap(), brute);
        }
    }

    #[test]
    fn cochannel_cells_tracks_occupancy() {
        let p = bench_plan(0);
        let mut s = NetworkState::new(p.clone());
        assert!(s.cochannel_cells(4).unwrap().is_empty());
        s.occupy(call(1, 40, 4, &p), &[(40, 1.0)]).unwrap();
        s.occupy(call(2, 2, 4, &p), &[(2, 1.0)]).unwrap();
        assert_eq!(s.cochannel_cells(4).unwrap(), &[2, 40]);
        s.release(1).unwrap();
        assert_eq!(s.cochannel_cells(4).unwrap(), &[2]);
        assert!(s.cochannel_cells(70).is_err());
    }

    #[test]
    fn occupy_release_round_trip() {
        let p = bench_plan(21);
        let mut s = NetworkState::new(p.clone());
        s.occupy(call(1, 0, 0, &p), &[(0, 0.3)]).unwrap();
        let before = s.clone();
        s.occupy(call(2, 10, 30, &p), &[(10, 0.7)]).unwrap();
        s.release(2).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn occupy_touches_only_its_column() {
        let p = bench_plan(0);
        let mut s = NetworkState::new(p.clone());
        s.occupy(call(1, 0, 5, &p), &[(0, 0.3)]).unwrap();
        s.occupy(call(2, 20, 6, &p), &[(20, 0.3)]).unwrap();
        let before = s.clone();
        s.occupy(call(3, 30, 5, &p), &[(0, 0.4), (30, 0.5)]).unwrap();
        for i in 0..49 {
            for l in (0..70).filter(|&l| l != 5) {
                assert_eq!(s.power(i, l).to_bits(), before.power(i, l).to_bits());
                assert_eq!(s.is_occupied(i, l), before.is_occupied(i, l));
            }
        }
        assert_eq!(s.power(0, 5), 0.4);
    }

    #[test]
    fn occupy_errors_leave_state_untouched() {
        let p = bench_plan(0);
        let mut s = NetworkState::new(p.clone());
        s.occupy(call(1, 0, 5, &p), &[(0, 0.3)]).unwrap();
        let before = s.clone();
        assert!(matches!(
            s.occupy(call(2, 0, 5, &p), &[(0, 0.3)]),
            Err(Error::DoubleOccupy { .. })
        ));
        assert!(matches!(
            s.occupy(call(1, 1, 5, &p), &[(1, 0.3)]),
            Err(Error::DuplicateCall(1))
        ));
        // power for a cell with no call on the channel
        assert!(s.occupy(call(3, 1, 5, &p), &[(1, 0.3), (2, 0.3)]).is_err());
        // new cell missing from the power list
        assert!(s.occupy(call(3, 1, 5, &p), &[(0, 0.3)]).is_err());
        assert!(s.occupy(call(3, 1, 5, &p), &[(1, 0.0)]).is_err());
        assert!(s.occupy(call(3, 1, 70, &p), &[(1, 0.3)]).is_err());
        let mut bad = call(3, 1, 5, &p);
        bad.departure_time = bad.start_time;
        assert!(s.occupy(bad, &[(1, 0.3)]).is_err());
        assert_eq!(s, before);
        assert!(matches!(s.release(99), Err(Error::UnknownCall(99))));
    }

    #[test]
    fn csv_dump_layout() {
        let p = build_channel_plan(3, 3, 1, &build_grid(1, 2).unwrap()).unwrap();
        let mut s = NetworkState::new(p.clone());
        s.occupy(call(1, 1, 2, &p), &[(1, 0.25)]).unwrap();
        assert_eq!(s.allocation_csv(), "cell,0,1,2\n0,0,0,0\n1,0,0,1\n");
        assert_eq!(s.power_csv(), "cell,0,1,2\n0,0.0,0.0,0.0\n1,0.0,0.0,0.25\n");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]
            #[test]
            fn random_mutations_keep_invariants(seed in any::<u64>()) {
                let p = bench_plan(21);
                let mut s = NetworkState::new(p.clone());
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut live: Vec<CallId> = Vec::new();
                let mut next = 0;
                for _ in 0..1000 {
                    if !live.is_empty() && rng.random_bool(0.45) {
                        let id = live.swap_remove(rng.random_range(0..live.len()));
                        s.release(id).unwrap();
                    } else {
                        let cell = rng.random_range(0..49);
                        let ch = if rng.random_bool(0.3) {
                            p.fc_channels(cell)[rng.random_range(0..3)]
                        } else {
                            rng.random_range(21..70)
                        };
                        if s.is_occupied(cell, ch) {
                            continue;
                        }
                        next += 1;
                        let mut powers = s.channel_powers(ch);
                        for e in powers.iter_mut() {
                            e.1 *= 1.1;
                        }
                        powers.push((cell, rng.random_range(0.01..1.0)));
                        s.occupy(call(next, cell, ch, &p), &powers).unwrap();
                        live.push(next);
                    }
                    prop_assert_eq!(s.check_invariants(), Ok(()));
                }
            }
        }
    }
}
