//! Runs one solver on one instance and times it.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use edgefog_core::lap::{build_processing_matrix, solve_lap};
use edgefog_core::lpcf::solve_lpcf;
use edgefog_core::noc::{solve_noc_bnb, solve_noc_exhaustive};
use edgefog_core::{Assignment, Instance, SolverBudget};

use crate::doc::{AssignmentDoc, SpaceSizeDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Solver {
    Lap,
    Lpcf,
    NocPerm,
    NocBnb,
}

impl Solver {
    pub const ALL: [Solver; 4] = [Solver::Lap, Solver::Lpcf, Solver::NocPerm, Solver::NocBnb];

    pub fn name(self) -> &'static str {
        match self {
            Solver::Lap => "lap",
            Solver::Lpcf => "lpcf",
            Solver::NocPerm => "noc-perm",
            Solver::NocBnb => "noc-bnb",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Solver::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown solver `{s}` (expected lap, lpcf, noc-perm or noc-bnb)"))
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub solver: Solver,
    pub assignment: Assignment,
    /// LAP: always; LPCF: orbit exhausted; NOC: proven optimal.
    pub complete: bool,
    pub nodes_explored: u64,
    /// Solver execution only.
    pub wall_time: Duration,
    pub lap_value: Option<f64>,
    pub reduced_space_size: Option<SpaceSizeDoc>,
}

pub fn solve(instance: &Instance, solver: Solver, budget: SolverBudget) -> Outcome {
    let start = Instant::now();
    let clock = || start.elapsed();
    match solver {
        Solver::Lap => {
            let lap = solve_lap(&build_processing_matrix(instance)).expect("instance entries are finite");
            let wall_time = start.elapsed();
            let assignment = Assignment::new(lap.f, instance).expect("LAP returns a permutation");
            Outcome {
                solver,
                assignment,
                complete: true,
                nodes_explored: 0,
                wall_time,
                lap_value: None,
                reduced_space_size: None,
            }
        }
        Solver::Lpcf => {
            let r = solve_lpcf(instance, budget, &clock);
            Outcome {
                solver,
                assignment: r.best,
                complete: r.space_exhausted,
                nodes_explored: r.nodes_explored,
                wall_time: r.wall_time,
                lap_value: Some(r.lap_value),
                reduced_space_size: Some((&r.reduced_space_size).into()),
            }
        }
        Solver::NocPerm | Solver::NocBnb => {
            let r = if solver == Solver::NocPerm {
                solve_noc_exhaustive(instance, budget, &clock)
            } else {
                solve_noc_bnb(instance, budget, &clock)
            };
            Outcome {
                solver,
                assignment: r.best,
                complete: r.proven_optimal,
                nodes_explored: r.nodes_explored,
                wall_time: r.wall_time,
                lap_value: None,
                reduced_space_size: None,
            }
        }
    }
}

impl Outcome {
    pub fn document(&self, instance: &Instance) -> AssignmentDoc {
        let mut doc = AssignmentDoc::new(self.solver.name(), &self.assignment, instance);
        match self.solver {
            Solver::Lap => {}
            Solver::Lpcf => {
                doc.lap_value = self.lap_value;
                doc.reduced_space_size = self.reduced_space_size;
                doc.space_exhausted = Some(self.complete);
            }
            Solver::NocPerm | Solver::NocBnb => doc.proven_optimal = Some(self.complete),
        }
        doc
    }
}
