use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::model::Instance;

/// Total communication cost of placing jobs with `f`: every dependent pair
/// `{i, j}` contributes `j_conn[i][j] * d_conn[f(i)][f(j)]` once.
pub fn network_cost(f: &[usize], instance: &Instance) -> Result<f64, Error> {
    check_permutation(f, instance)?;
    Ok(network_cost_unchecked(f, instance))
}

/// `Σ_i job_size[i] / device_power[f(i)]`.
pub fn processing_cost(f: &[usize], instance: &Instance) -> Result<f64, Error> {
    check_permutation(f, instance)?;
    Ok(processing_cost_unchecked(f, instance))
}

pub(crate) fn check_permutation(f: &[usize], instance: &Instance) -> Result<(), Error> {
    let n = instance.n();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    if !is_permutation(f) {
        return Err(Error::NotAPermutation);
    }
    Ok(())
}

pub(crate) fn is_permutation(f: &[usize]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter()
        .all(|&d| d < f.len() && !core::mem::replace(&mut seen[d], true))
}

pub(crate) fn network_cost_unchecked(f: &[usize], instance: &Instance) -> f64 {
    let d = instance.d_conn();
    instance
        .deps()
        .iter()
        .map(|&(i, j, w)| w * d.get(f[i], f[j]))
        .fold(0.0, |acc, x| acc + x)
}

pub(crate) fn processing_cost_unchecked(f: &[usize], instance: &Instance) -> f64 {
    let power = instance.device_power();
    ascending_sum(
        instance
            .job_size()
            .iter()
            .zip(f)
            .map(|(&s, &d)| s / power[d]),
    )
}

/// Sums in ascending order so equal multisets give identical bits.
pub(crate) fn ascending_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut terms: Vec<f64> = terms.collect();
    terms.sort_unstable_by(f64::total_cmp);
    // fold from +0.0: `Sum` starts at -0.0
    terms.into_iter().fold(0.0, |acc, x| acc + x)
}
