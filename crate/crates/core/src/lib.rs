//! Assignment of interdependent jobs to a two-layer Edge-Fog resource graph.
//!
//! The crate provides the problem model ([`ResourceGraph`], [`JobGraph`], the
//! normalized [`Instance`]), the two objectives ([`network_cost`] and
//! [`processing_cost`]), and three solvers:
//!
//!  1. [`lap::solve_lap`]: Hungarian algorithm for the processing-cost-only
//!     linear assignment problem.
//!  2. [`noc`]: network-only-cost baselines: lexicographic permutation
//!     enumeration and a depth-first branch-and-bound QAP search.
//!  3. [`lpcf::solve_lpcf`]: Least Processing Cost First: solve the LAP,
//!     build the set of assignments reachable by swapping work between
//!     equal-power devices and equal-size jobs, then pick the member of that
//!     set with the least network cost.
//!
//! A seeded topology generator ([`gen`]) reproduces the simulator defaults used
//! for experiments.
//!
//! ## Numbers
//! All costs are `f64`. Generated instances use small integers for powers,
//! sizes, link costs and dependence weights, so network costs are exact.
//! Processing costs are sums of quotients; they are always summed in ascending
//! term order so that two assignments with the same multiset of
//! `size / power` terms get bit-identical totals.
//!
//! The crate is `no_std` and only needs `alloc`. Solvers that honor a time
//! budget take a [`Clock`] from the caller.
#![no_std]

extern crate alloc;

mod budget;
mod cost;
mod error;
pub mod gen;
pub mod lap;
pub mod lpcf;
mod matrix;
mod model;
pub mod noc;
mod normalize;
mod paths;
mod search;

pub use budget::{Clock, NoClock, SolverBudget};
pub use cost::{network_cost, processing_cost};
pub use error::{Entity, Error};
pub use matrix::SquareMatrix;
pub use model::{
    Assignment, Dep, Device, Instance, Job, JobGraph, Layer, Link, ResourceGraph,
};
pub use normalize::normalize_instance;
pub use paths::{effective_connectivity, shortest_path_closure};
