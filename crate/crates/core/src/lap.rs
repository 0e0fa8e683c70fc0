//! Linear assignment over the processing-cost matrix.
//!
//! [`solve_lap`] is the shortest-augmenting-path form of the Hungarian
//! algorithm with row/column potentials: `n` augmentations of `O(n²)` each,
//! so `O(n³)` overall.

use alloc::vec;
use alloc::vec::Vec;

use crate::cost::ascending_sum;
use crate::error::Error;
use crate::matrix::SquareMatrix;
use crate::model::Instance;

/// `entries[i][j]`: cost of running job `i` on device `j`.
pub type CostMatrix = SquareMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct LapSolution {
    /// `f[i]` = column assigned to row `i`.
    pub f: Vec<usize>,
    pub value: f64,
}

/// `entries[i][j] = job_size[i] / device_power[j]`.
pub fn build_processing_matrix(instance: &Instance) -> CostMatrix {
    let size = instance.job_size();
    let power = instance.device_power();
    SquareMatrix::from_fn(instance.n(), |i, j| size[i] / power[j])
}

/// Optimal assignment for a square matrix of finite entries. Ties between
/// optimal permutations are resolved by a fixed scan order, so the output is
/// deterministic, but no particular optimum is promised.
pub fn solve_lap(m: &CostMatrix) -> Result<LapSolution, Error> {
    let n = m.n();
    if m.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidMatrix("cost entries must be finite"));
    }
    if n == 0 {
        return Ok(LapSolution {
            f: Vec::new(),
            value: 0.0,
        });
    }

    // 1-based with column 0 as the virtual root of each augmenting tree.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut min_slack = vec![0.0f64; n + 1];
    let mut used = vec![false; n + 1];

    for row in 1..=n {
        row_of[0] = row;
        let mut col0 = 0usize;
        min_slack.fill(f64::INFINITY);
        used.fill(false);

        loop {
            used[col0] = true;
            let i0 = row_of[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = m.get(i0 - 1, j - 1) - u[i0] - v[j];
                if reduced < min_slack[j] {
                    min_slack[j] = reduced;
                    way[j] = col0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    col1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            col0 = col1;
            if row_of[col0] == 0 {
                break;
            }
        }

        loop {
            let col1 = way[col0];
            row_of[col0] = row_of[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut f = vec![0usize; n];
    for j in 1..=n {
        f[row_of[j] - 1] = j - 1;
    }
    let value = ascending_sum(f.iter().enumerate().map(|(i, &j)| m.get(i, j)));
    Ok(LapSolution { f, value })
}
