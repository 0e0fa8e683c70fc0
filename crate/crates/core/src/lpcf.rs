//! Least Processing Cost First.
//!
//! 1. Solve the linear assignment problem on `size / power`; its solution
//!    (the *base*) has the least processing cost.
//! 2. Group devices by equal power and jobs by equal size. Moving work
//!    between equal-power devices, or exchanging the devices of equal-size
//!    jobs, leaves the processing cost unchanged. The assignments reachable
//!    from the base by such moves form the *orbit*.
//! 3. Return the orbit member with the least network cost, found by a
//!    branch-and-bound scan of the orbit.
//!
//! An assignment `g` is in the orbit of `f` exactly when, for every job
//! class `J` and device class `D`, `g` sends as many jobs of `J` into `D` as
//! `f` does. [`enumerate_orbit`] and the step 3 search both walk the
//! assignments that respect this class-count table, which visits every orbit
//! member once and nothing else.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::budget::{Clock, Meter, SolverBudget};
use crate::cost::{ascending_sum, is_permutation, network_cost_unchecked};
use crate::lap::{build_processing_matrix, solve_lap};
use crate::model::{Assignment, Instance};
use crate::search::{improve_by_swaps, PartialAssignment, UNPLACED};

/// Partition of devices by equal power and of jobs by equal size.
///
/// Class ids are numbered by first occurrence. Equality is exact `f64`
/// equality.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceClasses {
    device_class: Vec<usize>,
    job_class: Vec<usize>,
    class_power: Vec<f64>,
    class_size: Vec<f64>,
}

impl EquivalenceClasses {
    /// Builds classes directly from power and size vectors.
    pub fn from_values(device_power: &[f64], job_size: &[f64]) -> Self {
        let (device_class, class_power) = group_by_value(device_power);
        let (job_class, class_size) = group_by_value(job_size);
        Self {
            device_class,
            job_class,
            class_power,
            class_size,
        }
    }

    pub fn n(&self) -> usize {
        self.device_class.len()
    }

    /// Class id of each device.
    pub fn device_class_of(&self) -> &[usize] {
        &self.device_class
    }

    pub fn job_class_of(&self) -> &[usize] {
        &self.job_class
    }

    pub fn device_class_count(&self) -> usize {
        self.class_power.len()
    }

    pub fn job_class_count(&self) -> usize {
        self.class_size.len()
    }

    /// Device indices per class, each ascending.
    pub fn device_classes(&self) -> Vec<Vec<usize>> {
        members(&self.device_class, self.device_class_count())
    }

    pub fn job_classes(&self) -> Vec<Vec<usize>> {
        members(&self.job_class, self.job_class_count())
    }

    /// Processing cost of `f` computed from class values only.
    pub fn processing_cost(&self, f: &[usize]) -> f64 {
        ascending_sum(f.iter().enumerate().map(|(job, &dev)| {
            self.class_size[self.job_class[job]] / self.class_power[self.device_class[dev]]
        }))
    }

    /// `counts[J * device_class_count + D]`: jobs of class `J` that `f`
    /// places on devices of class `D`.
    pub fn class_counts(&self, f: &[usize]) -> Vec<u32> {
        let width = self.device_class_count();
        let mut counts = vec![0u32; self.job_class_count() * width];
        for (job, &dev) in f.iter().enumerate() {
            counts[self.job_class[job] * width + self.device_class[dev]] += 1;
        }
        counts
    }
}

fn group_by_value(values: &[f64]) -> (Vec<usize>, Vec<f64>) {
    let mut ids: BTreeMap<u64, usize> = BTreeMap::new();
    let mut class_values = Vec::new();
    let class = values
        .iter()
        .map(|&v| {
            *ids.entry(v.to_bits()).or_insert_with(|| {
                class_values.push(v);
                class_values.len() - 1
            })
        })
        .collect();
    (class, class_values)
}

fn members(class_of: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); count];
    for (i, &c) in class_of.iter().enumerate() {
        out[c].push(i);
    }
    out
}

pub fn equivalence_classes(instance: &Instance) -> EquivalenceClasses {
    EquivalenceClasses::from_values(instance.device_power(), instance.job_size())
}

/// Size of an orbit. `exact` is `None` when the count exceeds `u128`;
/// `approx` is always available (and `inf` past `f64` range).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceSize {
    pub exact: Option<u128>,
    pub approx: f64,
}

impl fmt::Display for SpaceSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{:e}", self.approx),
        }
    }
}

/// Number of distinct assignments in the orbit of `base`:
///
/// `Π_D |D|! · Π_J |J|! / Π_{J,D} N[J][D]!`
///
/// where `N` is the class-count table of `base`. Jobs of each class are first
/// split among device classes (a multinomial), then each device class orders
/// the jobs it receives.
pub fn reduced_space_size(base: &[usize], classes: &EquivalenceClasses) -> SpaceSize {
    let counts = classes.class_counts(base);
    let width = classes.device_class_count();
    let mut exact = Some(1u128);
    let mut approx = 1.0f64;
    let mut mul = |k: u128| {
        exact = exact.and_then(|e| e.checked_mul(k));
        approx *= k as f64;
    };
    for class in classes.device_classes() {
        for k in 2..=class.len() as u128 {
            mul(k);
        }
    }
    for (j, class) in classes.job_classes().iter().enumerate() {
        // |J|! / Π N! as a product of binomials C(sum, n)
        let mut sum = 0u128;
        for &c in &counts[j * width..(j + 1) * width] {
            for k in 1..=c as u128 {
                sum += 1;
                let before = exact;
                exact = before.and_then(|e| e.checked_mul(sum)).map(|e| e / k);
                approx = approx * sum as f64 / k as f64;
            }
        }
        debug_assert_eq!(sum, class.len() as u128);
    }
    SpaceSize { exact, approx }
}

/// Every orbit member of `base`, each once, `base` first.
///
/// Jobs are assigned in index order; at each level the base device is tried
/// first, then the other admissible devices ascending.
pub fn enumerate_orbit(base: &[usize], classes: &EquivalenceClasses) -> Orbit {
    assert!(
        base.len() == classes.n() && is_permutation(base),
        "base must be a permutation of the classified indices"
    );
    Orbit {
        base_cost: if cfg!(debug_assertions) {
            classes.processing_cost(base)
        } else {
            0.0
        },
        width: classes.device_class_count(),
        remaining: classes.class_counts(base),
        free: vec![true; base.len()],
        f: vec![UNPLACED; base.len()],
        cursor: vec![0; base.len()],
        base: base.to_vec(),
        classes: classes.clone(),
        started: false,
        done: false,
    }
}

/// Iterator returned by [`enumerate_orbit`].
pub struct Orbit {
    base: Vec<usize>,
    classes: EquivalenceClasses,
    width: usize,
    remaining: Vec<u32>,
    free: Vec<bool>,
    f: Vec<usize>,
    cursor: Vec<usize>,
    base_cost: f64,
    started: bool,
    done: bool,
}

impl Orbit {
    fn candidate(&self, job: usize, pos: usize) -> Option<usize> {
        match pos {
            0 => Some(self.base[job]),
            _ if pos - 1 == self.base[job] => None,
            _ => Some(pos - 1),
        }
    }

    fn slot(&self, job: usize, dev: usize) -> usize {
        self.classes.job_class[job] * self.width + self.classes.device_class[dev]
    }

    /// Places `job` on the first admissible candidate at or after `start`.
    fn place_from(&mut self, job: usize, start: usize) -> bool {
        for pos in start..=self.base.len() {
            let Some(dev) = self.candidate(job, pos) else {
                continue;
            };
            let slot = self.slot(job, dev);
            if self.free[dev] && self.remaining[slot] > 0 {
                self.remaining[slot] -= 1;
                self.free[dev] = false;
                self.f[job] = dev;
                self.cursor[job] = pos;
                return true;
            }
        }
        false
    }

    fn unplace(&mut self, job: usize) {
        let dev = self.f[job];
        let slot = self.slot(job, dev);
        self.remaining[slot] += 1;
        self.free[dev] = true;
        self.f[job] = UNPLACED;
    }

    fn fill_from(&mut self, job: usize) {
        for j in job..self.base.len() {
            // any partial assignment that respects the counts can be completed
            let placed = self.place_from(j, 0);
            debug_assert!(placed);
        }
    }

    fn emit(&self) -> Vec<usize> {
        debug_assert_eq!(
            self.classes.processing_cost(&self.f).to_bits(),
            self.base_cost.to_bits(),
            "orbit member changed the processing cost"
        );
        self.f.clone()
    }
}

impl Iterator for Orbit {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return Some(self.emit());
        }
        let mut job = self.base.len();
        while job > 0 {
            job -= 1;
            let pos = self.cursor[job];
            self.unplace(job);
            if self.place_from(job, pos + 1) {
                self.fill_from(job + 1);
                return Some(self.emit());
            }
        }
        self.done = true;
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpcfReport {
    pub best: Assignment,
    /// Optimal value of the processing-cost LAP.
    pub lap_value: f64,
    pub reduced_space_size: SpaceSize,
    /// The whole orbit was covered (explicitly or by pruning), so `best` has
    /// the least network cost in it.
    pub space_exhausted: bool,
    /// `best` is the lexicographically smallest orbit member of least
    /// network cost. Only meaningful when `space_exhausted`.
    pub lexicographic_tie_break: bool,
    pub nodes_explored: u64,
    /// Complete orbit members whose network cost was evaluated.
    pub leaves_evaluated: u64,
    pub wall_time: Duration,
}

/// Orbits up to this size are scanned member by member.
pub const SCAN_LIMIT: u128 = 1 << 16;

/// Runs the three LPCF steps.
///
/// Step 3 scans small orbits (at most [`SCAN_LIMIT`] members) exhaustively;
/// larger ones go through a branch and bound over the class-count table,
/// seeded with the base improved by orbit-preserving exchanges.
///
/// Network-cost ties go to the lexicographically smaller mapping. For the
/// branch and bound this takes a second, index-ordered pass which may use
/// at most as many nodes as the first; if that allowance runs out the first
/// optimum found is kept and `lexicographic_tie_break` is `false`.
///
/// If the budget runs out during step 3 the best member found so far is
/// returned with `space_exhausted = false`; the base LAP assignment is
/// always a valid fallback.
pub fn solve_lpcf<C: Clock + ?Sized>(
    instance: &Instance,
    budget: SolverBudget,
    clock: &C,
) -> LpcfReport {
    let lap = solve_lap(&build_processing_matrix(instance)).expect("instance entries are finite");
    let classes = equivalence_classes(instance);
    let reduced_space_size = reduced_space_size(&lap.f, &classes);
    let mut meter = Meter::new(budget, clock);

    let (best, leaves, tie_break) = if reduced_space_size.exact.is_some_and(|c| c <= SCAN_LIMIT) {
        let (best, leaves) = scan_orbit(instance, &lap.f, &classes, &mut meter);
        (best, leaves, true)
    } else {
        let mut search = OrbitSearch::new(instance, &classes, &lap.f, &mut meter);
        search.minimize();
        let mut tie_break = false;
        if !search.meter.exhausted() {
            let allowance = search.meter.nodes().max(1024);
            tie_break = search.lexicographic_tie_break(allowance);
        }
        (search.incumbent, search.leaves, tie_break)
    };

    let space_exhausted = !meter.exhausted();
    let best = Assignment::new_unchecked(best, instance);
    debug_assert_eq!(best.processing_cost().to_bits(), lap.value.to_bits());
    LpcfReport {
        lap_value: lap.value,
        reduced_space_size,
        space_exhausted,
        lexicographic_tie_break: space_exhausted && tie_break,
        nodes_explored: meter.nodes(),
        leaves_evaluated: leaves,
        wall_time: meter.elapsed(),
        best,
    }
}

/// Depth-first walk of the orbit. Each next job is the one most strongly
/// tied to those already placed, so partial network cost grows early; since
/// it never decreases, branches above the incumbent are cut. Equal-cost
/// branches are kept and compared lexicographically at the leaves.
struct Scan<'a, 'm, C: Clock + ?Sized> {
    instance: &'a Instance,
    job_class: &'a [usize],
    device_class: &'a [usize],
    width: usize,
    remaining: Vec<u32>,
    order: Vec<usize>,
    /// Dependences of each job on jobs placed before it.
    earlier: Vec<Vec<(usize, f64)>>,
    f: Vec<usize>,
    free: Vec<bool>,
    best: Vec<usize>,
    best_cost: f64,
    leaves: u64,
    meter: &'m mut Meter<'a, C>,
}

/// Greedy order: repeatedly the unordered job with the heaviest dependence
/// on ordered ones, then heaviest total dependence, then lowest index.
fn connected_order(instance: &Instance) -> Vec<usize> {
    let n = instance.n();
    let j = instance.j_conn();
    let total: Vec<f64> = (0..n).map(|i| j.row(i).iter().sum()).collect();
    let mut tie = vec![0.0f64; n];
    let mut taken = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&i| !taken[i])
            .min_by(|&a, &b| {
                tie[b]
                    .total_cmp(&tie[a])
                    .then(total[b].total_cmp(&total[a]))
                    .then(a.cmp(&b))
            })
            .expect("an unordered job remains");
        taken[next] = true;
        order.push(next);
        for (i, w) in tie.iter_mut().enumerate() {
            *w += j.get(next, i);
        }
    }
    order
}

/// `base` improved by exchanges that keep the class-count table.
fn orbit_local_optimum(
    instance: &Instance,
    classes: &EquivalenceClasses,
    base: &[usize],
) -> Vec<usize> {
    let mut f = base.to_vec();
    improve_by_swaps(instance, &mut f, |a, b, f| {
        classes.job_class[a] == classes.job_class[b]
            || classes.device_class[f[a]] == classes.device_class[f[b]]
    });
    f
}

fn scan_orbit<'a, C: Clock + ?Sized>(
    instance: &'a Instance,
    base: &[usize],
    classes: &'a EquivalenceClasses,
    meter: &mut Meter<'a, C>,
) -> (Vec<usize>, u64) {
    let n = instance.n();
    let order = connected_order(instance);
    let mut position = vec![0; n];
    for (pos, &job) in order.iter().enumerate() {
        position[job] = pos;
    }
    let mut earlier = vec![Vec::new(); n];
    for &(i, j, w) in instance.deps() {
        let (first, second) = if position[i] < position[j] { (i, j) } else { (j, i) };
        earlier[second].push((first, w));
    }
    let start = orbit_local_optimum(instance, classes, base);
    let mut scan = Scan {
        best_cost: network_cost_unchecked(&start, instance),
        best: start,
        instance,
        job_class: &classes.job_class,
        device_class: &classes.device_class,
        width: classes.device_class_count(),
        remaining: classes.class_counts(base),
        order,
        earlier,
        f: vec![UNPLACED; n],
        free: vec![true; n],
        leaves: 0,
        meter,
    };
    scan.walk(0, 0.0);
    (scan.best, scan.leaves)
}

impl<C: Clock + ?Sized> Scan<'_, '_, C> {
    /// `false` once the budget runs out.
    fn walk(&mut self, depth: usize, cost: f64) -> bool {
        let n = self.f.len();
        if depth == n {
            self.leaves += 1;
            // the running sum may differ from the canonical one in the last bits
            if cost <= self.best_cost + 1e-9 * self.best_cost.abs().max(1.0) {
                let exact = network_cost_unchecked(&self.f, self.instance);
                if exact < self.best_cost || (exact == self.best_cost && self.f < self.best) {
                    self.best_cost = exact;
                    self.best.copy_from_slice(&self.f);
                }
            }
            return true;
        }
        let job = self.order[depth];
        let row = self.job_class[job] * self.width;
        for dev in 0..n {
            let slot = row + self.device_class[dev];
            if !self.free[dev] || self.remaining[slot] == 0 {
                continue;
            }
            if !self.meter.tick() {
                return false;
            }
            let d = self.instance.d_conn();
            let added: f64 = self.earlier[job]
                .iter()
                .map(|&(i, w)| w * d.get(self.f[i], dev))
                .sum();
            // costs only grow down the tree
            if cost + added > self.best_cost + 1e-9 * self.best_cost.abs().max(1.0) {
                continue;
            }
            self.f[job] = dev;
            self.free[dev] = false;
            self.remaining[slot] -= 1;
            let go_on = self.walk(depth + 1, cost + added);
            self.remaining[slot] += 1;
            self.free[dev] = true;
            self.f[job] = UNPLACED;
            if !go_on {
                return false;
            }
        }
        true
    }
}

struct OrbitSearch<'a, 'm, C: Clock + ?Sized> {
    instance: &'a Instance,
    classes: &'a EquivalenceClasses,
    state: PartialAssignment<'a>,
    remaining: Vec<u32>,
    width: usize,
    order: Vec<usize>,
    incumbent: Vec<usize>,
    incumbent_cost: f64,
    leaves: u64,
    meter: &'m mut Meter<'a, C>,
}

impl<'a, 'm, C: Clock + ?Sized> OrbitSearch<'a, 'm, C> {
    fn new(
        instance: &'a Instance,
        classes: &'a EquivalenceClasses,
        base: &[usize],
        meter: &'m mut Meter<'a, C>,
    ) -> Self {
        let mut state = PartialAssignment::new(
            instance,
            classes.device_class.clone(),
            classes.device_class_count(),
        );
        let remaining = classes.class_counts(base);
        let width = classes.device_class_count();
        let device_classes = classes.device_classes();

        // Fewest admissible devices first (forced jobs cost no branching),
        // then heaviest dependence.
        let domain: Vec<usize> = (0..instance.n())
            .map(|j| {
                let row = &remaining[classes.job_class[j] * width..][..width];
                row.iter()
                    .zip(&device_classes)
                    .filter(|(&c, _)| c > 0)
                    .map(|(_, members)| members.len())
                    .sum()
            })
            .collect();
        let mut order: Vec<usize> = (0..instance.n()).collect();
        order.sort_by(|&a, &b| {
            domain[a]
                .cmp(&domain[b])
                .then(state.dependence(b).total_cmp(&state.dependence(a)))
                .then(a.cmp(&b))
        });

        state.set_order(&order);

        let start = orbit_local_optimum(instance, classes, base);

        Self {
            incumbent_cost: network_cost_unchecked(&start, instance),
            incumbent: start,
            instance,
            classes,
            state,
            remaining,
            width,
            order,
            leaves: 0,
            meter,
        }
    }

    #[inline]
    fn slot(&self, job: usize, dev: usize) -> usize {
        self.classes.job_class[job] * self.width + self.classes.device_class[dev]
    }

    fn admissible(&self, job: usize, dev: usize) -> bool {
        self.state.is_free(dev) && self.remaining[self.slot(job, dev)] > 0
    }

    fn bound(&mut self) -> f64 {
        let (remaining, job_class, width) = (&self.remaining, &self.classes.job_class, self.width);
        self.state
            .lower_bound(|j, g| remaining[job_class[j] * width + g] > 0)
    }

    fn place(&mut self, job: usize, dev: usize) {
        let slot = self.slot(job, dev);
        self.remaining[slot] -= 1;
        self.state.place(job, dev);
    }

    fn unplace(&mut self, job: usize, dev: usize) {
        let slot = self.slot(job, dev);
        self.remaining[slot] += 1;
        self.state.unplace(job);
    }

    fn minimize(&mut self) {
        if self.meter.tick() && self.bound() < self.incumbent_cost {
            self.descend(0);
        }
    }

    fn descend(&mut self, depth: usize) {
        let n = self.order.len();
        if depth == n {
            self.leaves += 1;
            let cost = network_cost_unchecked(self.state.mapping(), self.instance);
            if cost < self.incumbent_cost
                || (cost == self.incumbent_cost && self.state.mapping() < &self.incumbent[..])
            {
                self.incumbent_cost = cost;
                self.incumbent.copy_from_slice(self.state.mapping());
            }
            return;
        }
        let job = self.order[depth];
        let mut candidates: Vec<(f64, usize)> = (0..n)
            .filter(|&e| self.admissible(job, e))
            .map(|e| (self.state.increment(job, e), e))
            .collect();
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        for (added, dev) in candidates {
            if self.state.committed() + added >= self.incumbent_cost {
                break;
            }
            if !self.meter.tick() {
                return;
            }
            self.place(job, dev);
            if self.bound() < self.incumbent_cost {
                self.descend(depth + 1);
            }
            self.unplace(job, dev);
            if self.meter.exhausted() {
                return;
            }
        }
    }

    /// After `minimize` proved the optimum, looks for the lexicographically
    /// smallest orbit member attaining it: jobs in index order, devices
    /// ascending, pruning nodes whose bound exceeds the optimum. Returns
    /// whether the pass finished within `allowance` nodes.
    fn lexicographic_tie_break(&mut self, allowance: u64) -> bool {
        let identity: Vec<usize> = (0..self.order.len()).collect();
        self.state.set_order(&identity);
        let target = self.incumbent_cost;
        let limit = target + 1e-9 * target.abs().max(1.0);
        let mut pass = TieBreak {
            target,
            limit,
            nodes_left: allowance,
            found: None,
        };
        let finished = self.first_within(0, &mut pass);
        if let Some(f) = pass.found {
            self.incumbent = f;
        }
        finished && pass.nodes_left > 0
    }

    /// Depth-first in index order; `true` once a member is found or the
    /// node allowance or budget runs out.
    fn first_within(&mut self, job: usize, pass: &mut TieBreak) -> bool {
        let n = self.order.len();
        if job == n {
            let mapping = self.state.mapping();
            if network_cost_unchecked(mapping, self.instance) <= pass.target {
                pass.found = Some(mapping.to_vec());
                return true;
            }
            return false;
        }
        for dev in 0..n {
            // members after the incumbent's first device cannot be smaller
            if job == 0 && dev > self.incumbent[0] {
                break;
            }
            if !self.admissible(job, dev)
                || self.state.committed() + self.state.increment(job, dev) > pass.limit
            {
                continue;
            }
            if pass.nodes_left == 0 || !self.meter.tick() {
                pass.nodes_left = 0;
                return true;
            }
            pass.nodes_left -= 1;
            self.place(job, dev);
            let done = self.bound() <= pass.limit && self.first_within(job + 1, pass);
            self.unplace(job, dev);
            if done {
                return true;
            }
        }
        false
    }
}

struct TieBreak {
    target: f64,
    limit: f64,
    nodes_left: u64,
    found: Option<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::NoClock;
    use crate::matrix::SquareMatrix;
    use alloc::collections::BTreeSet;

    #[test]
    fn classes_group_equal_values() {
        let c = EquivalenceClasses::from_values(&[2.0, 2.0, 8.0], &[1.0, 3.0, 1.0]);
        assert_eq!(c.device_classes(), vec![vec![0, 1], vec![2]]);
        assert_eq!(c.job_classes(), vec![vec![0, 2], vec![1]]);

        let distinct = EquivalenceClasses::from_values(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]);
        assert!(distinct.device_classes().iter().all(|c| c.len() == 1));
        assert!(distinct.job_classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn singleton_classes_give_singleton_orbit() {
        let c = EquivalenceClasses::from_values(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 3.0, 4.0]);
        let base = [2, 0, 3, 1];
        let orbit: Vec<_> = enumerate_orbit(&base, &c).collect();
        assert_eq!(orbit, vec![base.to_vec()]);
        assert_eq!(reduced_space_size(&base, &c).exact, Some(1));
    }

    #[test]
    fn equal_power_pair_with_equal_size_jobs() {
        // powers [2,2,8], sizes [4,4,8]; the LAP puts both size-4 jobs on the
        // power-2 devices, and the only other member swaps them.
        let c = EquivalenceClasses::from_values(&[2.0, 2.0, 8.0], &[4.0, 4.0, 8.0]);
        let orbit: Vec<_> = enumerate_orbit(&[0, 1, 2], &c).collect();
        assert_eq!(orbit, vec![vec![0, 1, 2], vec![1, 0, 2]]);
        assert_eq!(reduced_space_size(&[0, 1, 2], &c).exact, Some(2));
    }

    #[test]
    fn one_device_class_gives_factorial() {
        let c = EquivalenceClasses::from_values(&[5.0; 5], &[1.0, 2.0, 3.0, 4.0, 5.0]);
        let base = [4, 3, 2, 1, 0];
        let orbit: BTreeSet<_> = enumerate_orbit(&base, &c).collect();
        assert_eq!(orbit.len(), 120);
        assert_eq!(reduced_space_size(&base, &c).exact, Some(120));
    }

    #[test]
    fn space_size_overflow_keeps_approximation() {
        let c = EquivalenceClasses::from_values(&[1.0; 40], &[1.0; 40]);
        let base: Vec<usize> = (0..40).collect();
        let s = reduced_space_size(&base, &c);
        assert_eq!(s.exact, None);
        assert!((s.approx / 8.159_152_832_478_977e47 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lpcf_on_singletons_is_lap_solution() {
        let inst = Instance::new(
            vec![1.0, 2.0, 4.0],
            vec![3.0, 5.0, 7.0],
            SquareMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 }),
            SquareMatrix::from_fn(3, |i, j| if i == j { 0.0 } else { 1.0 }),
        )
        .unwrap();
        let r = solve_lpcf(&inst, SolverBudget::UNLIMITED, &NoClock);
        let lap = solve_lap(&build_processing_matrix(&inst)).unwrap();
        assert_eq!(r.best.mapping(), &lap.f[..]);
        assert_eq!(r.reduced_space_size.exact, Some(1));
        assert!(r.space_exhausted);
        assert_eq!(r.best.processing_cost(), r.lap_value);
    }
}
