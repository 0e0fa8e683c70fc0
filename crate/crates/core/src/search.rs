//! Partial-assignment state shared by the branch-and-bound searches.
//!
//! Devices are split into groups (all devices in one group for the NOC
//! search, equal-power classes for LPCF); a caller-supplied predicate says
//! which groups an unplaced job may still use. The lower bound on any
//! completion is the larger of two admissible bounds, each starting from
//! `committed`, the cost of dependent pairs with both jobs placed:
//!
//! * *Charged pairs.* Every dependent pair with both jobs unplaced is
//!   charged to the endpoint placed later in branching order, at the
//!   cheapest distance to any device the other endpoint may still use. Each
//!   unplaced job then takes its cheapest admissible device for its
//!   placed-neighbour cost (`fixed[j][e] = Σ w(j, i) · d(f(i), e)`) plus its
//!   charged pairs.
//! * *Product pairing* (Gilmore–Lawler style). The cheapest placed-neighbour
//!   cost per job, plus the `k` heaviest open pair weights (descending)
//!   paired with the `k` cheapest distances between free devices
//!   (ascending). Distinct job pairs land on distinct device pairs, so by
//!   the rearrangement inequality this never exceeds their true cost.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::Instance;

pub(crate) const UNPLACED: usize = usize::MAX;

pub(crate) struct PartialAssignment<'a> {
    instance: &'a Instance,
    n: usize,
    adjacency: Vec<Vec<(usize, f64)>>,
    device_of: Vec<usize>,
    free: Vec<bool>,
    fixed: Vec<f64>,
    placed_neighbours: Vec<u32>,
    committed: f64,
    group_of: Vec<usize>,
    groups: usize,
    /// Position of each job in branching order.
    rank: Vec<usize>,
    /// `(distance, a, b)` over device pairs `a < b`, ascending.
    pairs_by_distance: Vec<(f64, usize, usize)>,
    /// `(weight, i, j)` over dependent job pairs, descending weight.
    deps_by_weight: Vec<(f64, usize, usize)>,
    /// Scratch: nearest free device of each group, per device.
    nearest: Vec<f64>,
}

impl<'a> PartialAssignment<'a> {
    /// `group_of[e]` must be `< groups` for every device `e`.
    pub fn new(instance: &'a Instance, group_of: Vec<usize>, groups: usize) -> Self {
        let n = instance.n();
        debug_assert!(group_of.len() == n && group_of.iter().all(|&g| g < groups));
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j, w) in instance.deps() {
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        let d = instance.d_conn();
        let mut pairs_by_distance = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                pairs_by_distance.push((d.get(a, b), a, b));
            }
        }
        pairs_by_distance.sort_by(|x, y| x.0.total_cmp(&y.0).then((x.1, x.2).cmp(&(y.1, y.2))));
        let mut deps_by_weight: Vec<_> =
            instance.deps().iter().map(|&(i, j, w)| (w, i, j)).collect();
        deps_by_weight.sort_by(|x, y| y.0.total_cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));

        Self {
            instance,
            n,
            adjacency,
            device_of: vec![UNPLACED; n],
            free: vec![true; n],
            fixed: vec![0.0; n * n],
            placed_neighbours: vec![0; n],
            committed: 0.0,
            group_of,
            groups,
            rank: (0..n).collect(),
            pairs_by_distance,
            deps_by_weight,
            nearest: vec![0.0; n * groups],
        }
    }

    /// Sets the branching order used to orient charged pairs.
    pub fn set_order(&mut self, order: &[usize]) {
        for (pos, &job) in order.iter().enumerate() {
            self.rank[job] = pos;
        }
    }

    /// Sum of job dependence weights, used for branching order.
    pub fn dependence(&self, job: usize) -> f64 {
        self.adjacency[job].iter().map(|&(_, w)| w).sum()
    }

    #[inline]
    pub fn is_free(&self, device: usize) -> bool {
        self.free[device]
    }

    /// Cost added by placing `job` on `device` now.
    #[inline]
    pub fn increment(&self, job: usize, device: usize) -> f64 {
        self.fixed[job * self.n + device]
    }

    pub fn committed(&self) -> f64 {
        self.committed
    }

    pub fn mapping(&self) -> &[usize] {
        &self.device_of
    }

    pub fn place(&mut self, job: usize, device: usize) {
        debug_assert!(self.device_of[job] == UNPLACED && self.free[device]);
        self.committed += self.fixed[job * self.n + device];
        self.device_of[job] = device;
        self.free[device] = false;
        let d = self.instance.d_conn().row(device);
        for &(nb, w) in &self.adjacency[job] {
            if self.device_of[nb] == UNPLACED {
                self.placed_neighbours[nb] += 1;
                let row = &mut self.fixed[nb * self.n..(nb + 1) * self.n];
                for (slot, &dist) in row.iter_mut().zip(d) {
                    *slot += w * dist;
                }
            }
        }
    }

    /// Reverts the most recent [`place`](Self::place) of `job`.
    pub fn unplace(&mut self, job: usize) {
        let device = self.device_of[job];
        debug_assert!(device != UNPLACED);
        let d = self.instance.d_conn().row(device);
        for &(nb, w) in &self.adjacency[job] {
            if self.device_of[nb] == UNPLACED {
                self.placed_neighbours[nb] -= 1;
                let row = &mut self.fixed[nb * self.n..(nb + 1) * self.n];
                if self.placed_neighbours[nb] == 0 {
                    row.fill(0.0);
                } else {
                    for (slot, &dist) in row.iter_mut().zip(d) {
                        *slot -= w * dist;
                    }
                }
            }
        }
        self.device_of[job] = UNPLACED;
        self.free[device] = true;
        self.committed -= self.fixed[job * self.n + device];
    }

    /// Lower bound on every completion, where unplaced job `j` may only use
    /// free devices of groups `g` with `allowed(j, g)`. Infinite if some job
    /// has no admissible device.
    #[allow(clippy::needless_range_loop)]
    pub fn lower_bound(&mut self, allowed: impl Fn(usize, usize) -> bool) -> f64 {
        let n = self.n;
        let groups = self.groups;
        let d = self.instance.d_conn();

        self.nearest.fill(f64::INFINITY);
        for e in 0..n {
            if !self.free[e] {
                continue;
            }
            let near = &mut self.nearest[e * groups..(e + 1) * groups];
            for (f, &dist) in d.row(e).iter().enumerate() {
                if f != e && self.free[f] && dist < near[self.group_of[f]] {
                    near[self.group_of[f]] = dist;
                }
            }
        }

        let mut charged = self.committed;
        let mut linear = self.committed;
        for j in 0..n {
            if self.device_of[j] != UNPLACED {
                continue;
            }
            let row = &self.fixed[j * n..(j + 1) * n];
            let mut best_charged = f64::INFINITY;
            let mut best_fixed = f64::INFINITY;
            for e in 0..n {
                if !self.free[e] || !allowed(j, self.group_of[e]) {
                    continue;
                }
                best_fixed = best_fixed.min(row[e]);
                let near = &self.nearest[e * groups..(e + 1) * groups];
                let mut cost = row[e];
                for &(k, w) in &self.adjacency[j] {
                    if self.device_of[k] != UNPLACED || self.rank[k] > self.rank[j] {
                        continue;
                    }
                    let mut closest = f64::INFINITY;
                    for (g, &dist) in near.iter().enumerate() {
                        if dist < closest && allowed(k, g) {
                            closest = dist;
                        }
                    }
                    cost += w * closest;
                }
                best_charged = best_charged.min(cost);
            }
            if best_fixed == f64::INFINITY {
                return f64::INFINITY;
            }
            charged += best_charged;
            linear += best_fixed;
        }
        charged.max(linear + self.open_pair_bound())
    }

    fn open_pair_bound(&self) -> f64 {
        let open = |&&(_, i, j): &&(f64, usize, usize)| {
            self.device_of[i] == UNPLACED && self.device_of[j] == UNPLACED
        };
        let free_pair = |&&(_, a, b): &&(f64, usize, usize)| self.free[a] && self.free[b];
        self.deps_by_weight
            .iter()
            .filter(open)
            .zip(self.pairs_by_distance.iter().filter(free_pair))
            .map(|(&(w, _, _), &(d, _, _))| w * d)
            .sum()
    }
}

/// First-improvement descent over pairwise exchanges `f[a] <-> f[b]` for
/// which `swappable(a, b, f)` holds.
pub(crate) fn improve_by_swaps(
    instance: &Instance,
    f: &mut [usize],
    swappable: impl Fn(usize, usize, &[usize]) -> bool,
) {
    let n = f.len();
    let d = instance.d_conn();
    let mut adjacency = vec![Vec::new(); n];
    for &(i, j, w) in instance.deps() {
        adjacency[i].push((j, w));
        adjacency[j].push((i, w));
    }
    // cost change from exchanging the devices of jobs `a` and `b`
    let delta = |f: &[usize], a: usize, b: usize| -> f64 {
        let (da, db) = (f[a], f[b]);
        let mut change = 0.0;
        for &(k, w) in &adjacency[a] {
            if k != b {
                change += w * (d.get(db, f[k]) - d.get(da, f[k]));
            }
        }
        for &(k, w) in &adjacency[b] {
            if k != a {
                change += w * (d.get(da, f[k]) - d.get(db, f[k]));
            }
        }
        change
    };
    let mut improved = true;
    while improved {
        improved = false;
        for a in 0..n {
            for b in a + 1..n {
                if swappable(a, b, f) && delta(f, a, b) < 0.0 {
                    f.swap(a, b);
                    improved = true;
                }
            }
        }
    }
}
