use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::Error;
use crate::matrix::SquareMatrix;
use crate::model::{Instance, JobGraph, ResourceGraph};
use crate::paths::effective_connectivity;

/// Pairs a resource graph with a job graph so that both sides have the same
/// number of entries.
///
/// * More jobs than devices: extra virtual copies are handed out round-robin
///   over the devices sorted by descending power (then ascending id). A copy
///   keeps the full power of its parent, costs nothing to reach from its
///   siblings and otherwise reuses the parent's distances. Copies are
///   appended after the physical devices.
/// * More devices than jobs: devices are dropped lowest power first; ties go
///   to the device with the larger shortest-path row sum (the more remote one),
///   then to the larger id. Dropped devices still relay traffic, so distances
///   are computed on the full graph.
pub fn normalize_instance(rg: &ResourceGraph, jg: &JobGraph) -> Result<Instance, Error> {
    if rg.is_empty() || jg.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let dist = effective_connectivity(rg)?;
    let devices = rg.devices();
    let n = jg.len();

    let slots = if n >= devices.len() {
        split_slots(rg, n)
    } else {
        kept_slots(rg, &dist, n)
    };

    let d_conn = SquareMatrix::from_fn(n, |a, b| dist.get(slots[a], slots[b]));
    let device_power = slots.iter().map(|&s| devices[s].power).collect();
    let device_ids = slots.iter().map(|&s| devices[s].id).collect();

    let jobs = jg.jobs();
    let mut j_conn = SquareMatrix::zeros(n);
    for dep in jg.deps() {
        let a = jg.index_of(dep.a).expect("validated dependence endpoint");
        let b = jg.index_of(dep.b).expect("validated dependence endpoint");
        j_conn[(a, b)] = dep.weight;
        j_conn[(b, a)] = dep.weight;
    }

    Instance::with_ids(
        device_power,
        jobs.iter().map(|j| j.size).collect(),
        d_conn,
        j_conn,
        device_ids,
        jobs.iter().map(|j| j.id).collect(),
    )
}

fn split_slots(rg: &ResourceGraph, n: usize) -> Vec<usize> {
    let devices = rg.devices();
    let mut by_power: Vec<usize> = (0..devices.len()).collect();
    by_power.sort_by(|&a, &b| {
        devices[b]
            .power
            .total_cmp(&devices[a].power)
            .then(devices[a].id.cmp(&devices[b].id))
    });
    let mut slots: Vec<usize> = (0..devices.len()).collect();
    slots.extend((0..n - devices.len()).map(|k| by_power[k % devices.len()]));
    slots
}

fn kept_slots(rg: &ResourceGraph, dist: &SquareMatrix, n: usize) -> Vec<usize> {
    let devices = rg.devices();
    let row_sum: Vec<f64> = (0..devices.len()).map(|i| dist.row(i).iter().sum()).collect();
    let mut drop_order: Vec<usize> = (0..devices.len()).collect();
    drop_order.sort_by(|&a, &b| -> Ordering {
        devices[a]
            .power
            .total_cmp(&devices[b].power)
            .then(row_sum[b].total_cmp(&row_sum[a]))
            .then(devices[b].id.cmp(&devices[a].id))
    });
    let mut dropped = alloc::vec![false; devices.len()];
    for &i in &drop_order[..devices.len() - n] {
        dropped[i] = true;
    }
    (0..devices.len()).filter(|&i| !dropped[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Dep, Device, Job, Layer, Link};
    use alloc::vec;

    fn devices(powers: &[f64]) -> Vec<Device> {
        powers
            .iter()
            .enumerate()
            .map(|(i, &power)| Device {
                id: i as u64,
                layer: Layer::Edge,
                power,
            })
            .collect()
    }

    fn jobs(n: u64) -> JobGraph {
        JobGraph::new(
            (0..n).map(|id| Job { id, size: 1.0 }).collect(),
            (1..n)
                .map(|b| Dep {
                    a: 0,
                    b,
                    weight: 1.0,
                })
                .collect(),
        )
        .unwrap()
    }

    fn path(powers: &[f64]) -> ResourceGraph {
        let links = (1..powers.len() as u64)
            .map(|b| Link {
                a: b - 1,
                b,
                cost: b as f64,
            })
            .collect();
        ResourceGraph::new(devices(powers), links).unwrap()
    }

    #[test]
    fn equal_sizes_keep_everything() {
        let inst = normalize_instance(&path(&[1.0, 2.0, 3.0]), &jobs(3)).unwrap();
        assert_eq!(inst.device_ids(), &[0, 1, 2]);
        assert_eq!(inst.device_power(), &[1.0, 2.0, 3.0]);
        assert_eq!(inst.d_conn().get(0, 2), 3.0);
    }

    #[test]
    fn splits_strongest_device() {
        let inst = normalize_instance(&path(&[8.0, 2.0]), &jobs(3)).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.device_ids(), &[0, 1, 0]);
        assert_eq!(inst.device_power(), &[8.0, 2.0, 8.0]);
        assert_eq!(inst.d_conn().get(0, 2), 0.0);
        assert_eq!(inst.d_conn().get(2, 1), inst.d_conn().get(0, 1));
    }

    #[test]
    fn split_is_round_robin() {
        let inst = normalize_instance(&path(&[2.0, 8.0, 5.0]), &jobs(8)).unwrap();
        // descending power: 1 (8), 2 (5), 0 (2)
        assert_eq!(inst.device_ids(), &[0, 1, 2, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn drops_weakest_then_most_remote() {
        // row sums: device 1 = 1 + 1 + 5 = 7, device 2 = 4 + 5 + 6 = 15
        let rg = ResourceGraph::new(
            devices(&[3.0, 5.0, 5.0, 7.0]),
            vec![
                Link { a: 0, b: 1, cost: 1.0 },
                Link { a: 1, b: 3, cost: 1.0 },
                Link { a: 3, b: 2, cost: 4.0 },
            ],
        )
        .unwrap();
        let inst = normalize_instance(&rg, &jobs(2)).unwrap();
        assert_eq!(inst.device_ids(), &[1, 3]);
        assert_eq!(inst.d_conn().get(0, 1), 1.0);
    }

    #[test]
    fn drop_tie_falls_back_to_larger_id() {
        let links = vec![
            Link { a: 0, b: 1, cost: 1.0 },
            Link { a: 0, b: 2, cost: 1.0 },
            Link { a: 0, b: 3, cost: 1.0 },
        ];
        let rg = ResourceGraph::new(devices(&[7.0, 5.0, 5.0, 3.0]), links).unwrap();
        let inst = normalize_instance(&rg, &jobs(2)).unwrap();
        assert_eq!(inst.device_ids(), &[0, 1]);
    }

    #[test]
    fn rejects_empty_and_disconnected() {
        let empty = ResourceGraph::new(vec![], vec![]).unwrap();
        assert_eq!(normalize_instance(&empty, &jobs(1)), Err(Error::EmptyGraph));
        let split = ResourceGraph::new(devices(&[1.0, 1.0]), vec![]).unwrap();
        assert_eq!(
            normalize_instance(&split, &jobs(2)),
            Err(Error::UnreachablePair(0, 1))
        );
    }
}
