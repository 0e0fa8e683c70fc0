//! Network-only-cost (NOC) baselines: minimize [`network_cost`](crate::network_cost)
//! alone, ignoring processing cost. This is a quadratic assignment problem.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::budget::{Clock, Meter, SolverBudget};
use crate::cost::network_cost_unchecked;
use crate::model::{Assignment, Instance};
use crate::search::{improve_by_swaps, PartialAssignment};

#[derive(Clone, Debug, PartialEq)]
pub struct NocReport {
    pub best: Assignment,
    /// The search finished inside the budget, so `best` is a global optimum.
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

/// Rearranges `p` into the next permutation in lexicographic order. Returns
/// `false` (leaving `p` sorted ascending) after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        p.reverse();
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Scores every permutation in lexicographic order. Ties keep the earlier
/// (lexicographically smaller) permutation. Each permutation is one node.
pub fn solve_noc_exhaustive<C: Clock + ?Sized>(
    instance: &Instance,
    budget: SolverBudget,
    clock: &C,
) -> NocReport {
    let mut meter = Meter::new(budget, clock);
    let mut perm: Vec<usize> = (0..instance.n()).collect();
    let mut best = perm.clone();
    let mut best_cost = f64::INFINITY;
    let mut complete = false;
    while meter.tick() {
        let cost = network_cost_unchecked(&perm, instance);
        if cost < best_cost {
            best_cost = cost;
            best.copy_from_slice(&perm);
        }
        if !next_permutation(&mut perm) {
            complete = true;
            break;
        }
    }
    NocReport {
        best: Assignment::new_unchecked(best, instance),
        proven_optimal: complete,
        nodes_explored: meter.nodes(),
        wall_time: meter.elapsed(),
    }
}

/// Depth-first branch and bound.
///
/// Jobs are placed in descending order of total dependence weight; devices
/// are tried in ascending order of the cost they add. A node is pruned when
/// its lower bound reaches the incumbent. The bound is the larger of a
/// Gilmore–Lawler style product pairing and a per-job charged-pair bound;
/// both are described in the `search` module. The first incumbent is the
/// identity assignment improved by pairwise exchanges. On budget exhaustion
/// the incumbent is returned with `proven_optimal = false`.
pub fn solve_noc_bnb<C: Clock + ?Sized>(
    instance: &Instance,
    budget: SolverBudget,
    clock: &C,
) -> NocReport {
    let n = instance.n();
    let mut start: Vec<usize> = (0..n).collect();
    improve_by_swaps(instance, &mut start, |_, _, _| true);
    let mut state = PartialAssignment::new(instance, vec![0; n], 1);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        state
            .dependence(b)
            .total_cmp(&state.dependence(a))
            .then(a.cmp(&b))
    });
    state.set_order(&order);
    let mut search = Bnb {
        incumbent_cost: network_cost_unchecked(&start, instance),
        incumbent: start,
        state,
        order,
        meter: Meter::new(budget, clock),
        instance,
    };

    if search.meter.tick() && search.state.lower_bound(|_, _| true) < search.incumbent_cost {
        search.descend(0);
    }
    NocReport {
        proven_optimal: !search.meter.exhausted(),
        nodes_explored: search.meter.nodes(),
        wall_time: search.meter.elapsed(),
        best: Assignment::new_unchecked(search.incumbent, instance),
    }
}

struct Bnb<'a, C: Clock + ?Sized> {
    instance: &'a Instance,
    state: PartialAssignment<'a>,
    order: Vec<usize>,
    incumbent: Vec<usize>,
    incumbent_cost: f64,
    meter: Meter<'a, C>,
}

impl<C: Clock + ?Sized> Bnb<'_, C> {
    fn descend(&mut self, depth: usize) {
        let n = self.order.len();
        if depth == n {
            let cost = network_cost_unchecked(self.state.mapping(), self.instance);
            if cost < self.incumbent_cost {
                self.incumbent_cost = cost;
                self.incumbent.copy_from_slice(self.state.mapping());
            }
            return;
        }
        let job = self.order[depth];
        let mut candidates: Vec<(f64, usize)> = (0..n)
            .filter(|&e| self.state.is_free(e))
            .map(|e| (self.state.increment(job, e), e))
            .collect();
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        for (added, device) in candidates {
            if self.state.committed() + added >= self.incumbent_cost {
                // candidates are sorted, later ones cannot do better
                break;
            }
            if !self.meter.tick() {
                return;
            }
            self.state.place(job, device);
            if self.state.lower_bound(|_, _| true) < self.incumbent_cost {
                self.descend(depth + 1);
            }
            self.state.unplace(job);
            if self.meter.exhausted() {
                return;
            }
        }
    }
}
