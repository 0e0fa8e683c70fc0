use core::time::Duration;

/// Limits on a search. Both `None` means run to completion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverBudget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl SolverBudget {
    pub const UNLIMITED: Self = Self {
        time_limit: None,
        node_limit: None,
    };

    pub fn with_time_limit(time_limit: Duration) -> Self {
        Self {
            time_limit: Some(time_limit),
            node_limit: None,
        }
    }

    pub fn with_node_limit(node_limit: u64) -> Self {
        Self {
            time_limit: None,
            node_limit: Some(node_limit),
        }
    }
}

/// Source of elapsed time since the solve started.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// Clock that never advances; time limits are ignored.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

impl<F: Fn() -> Duration> Clock for F {
    fn elapsed(&self) -> Duration {
        self()
    }
}

/// Counts expanded nodes and decides when the budget is spent.
/// The clock is read once every this many nodes.
const CLOCK_STRIDE: u64 = 64;

pub(crate) struct Meter<'a, C: Clock + ?Sized> {
    budget: SolverBudget,
    clock: &'a C,
    nodes: u64,
    exhausted: bool,
}

impl<'a, C: Clock + ?Sized> Meter<'a, C> {
    pub fn new(budget: SolverBudget, clock: &'a C) -> Self {
        Self {
            budget,
            clock,
            nodes: 0,
            exhausted: false,
        }
    }

    /// Records one node expansion. Returns `false` once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if let Some(limit) = self.budget.node_limit {
            if self.nodes >= limit {
                self.exhausted = true;
                return false;
            }
        }
        if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(CLOCK_STRIDE) && self.clock.elapsed() >= limit {
                self.exhausted = true;
                return false;
            }
        }
        self.nodes += 1;
        true
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn elapsed(&self) -> Duration {
        self.clock.elapsed()
    }
}
