use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::cost;
use crate::error::{Entity, Error};
use crate::matrix::SquareMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "lowercase")
)]
pub enum Layer {
    Edge,
    Fog,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Device {
    pub id: u64,
    pub layer: Layer,
    /// Processing units offered.
    pub power: f64,
}

/// Undirected communication link between two devices.
#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub a: u64,
    pub b: u64,
    pub cost: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Job {
    pub id: u64,
    /// Processing units required.
    pub size: f64,
}

/// Two-way dependence between jobs.
#[derive(Clone, Debug, PartialEq)]
pub struct Dep {
    pub a: u64,
    pub b: u64,
    pub weight: f64,
}

/// Devices and the (possibly sparse) links between them.
#[derive(Clone, Debug, PartialEq)]
pub struct ResourceGraph {
    devices: Vec<Device>,
    links: Vec<Link>,
}

impl ResourceGraph {
    pub fn new(devices: Vec<Device>, links: Vec<Link>) -> Result<Self, Error> {
        let index = unique_ids(devices.iter().map(|d| d.id), Entity::Device)?;
        for (i, d) in devices.iter().enumerate() {
            if !(d.power.is_finite() && d.power > 0.0) {
                return Err(Error::InvalidValue {
                    entity: Entity::Device,
                    index: i,
                    field: "power",
                    value: d.power,
                });
            }
        }
        check_edges(
            links.iter().map(|l| (l.a, l.b, l.cost)),
            &index,
            Entity::Link,
            "cost",
            |c| c.is_finite() && c >= 0.0,
        )?;
        Ok(Self { devices, links })
    }

    pub fn devices(&self) -> &[Device] {
        &self.devices
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.devices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.devices.is_empty()
    }

    /// Position of the device with `id` in [`devices`](Self::devices).
    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.devices.iter().position(|d| d.id == id)
    }
}

/// Jobs and their symmetric dependences.
#[derive(Clone, Debug, PartialEq)]
pub struct JobGraph {
    jobs: Vec<Job>,
    deps: Vec<Dep>,
}

impl JobGraph {
    pub fn new(jobs: Vec<Job>, deps: Vec<Dep>) -> Result<Self, Error> {
        let index = unique_ids(jobs.iter().map(|j| j.id), Entity::Job)?;
        for (i, j) in jobs.iter().enumerate() {
            if !(j.size.is_finite() && j.size > 0.0) {
                return Err(Error::InvalidValue {
                    entity: Entity::Job,
                    index: i,
                    field: "size",
                    value: j.size,
                });
            }
        }
        check_edges(
            deps.iter().map(|d| (d.a, d.b, d.weight)),
            &index,
            Entity::Dep,
            "weight",
            |w| w.is_finite() && w > 0.0,
        )?;
        Ok(Self { jobs, deps })
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn deps(&self) -> &[Dep] {
        &self.deps
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.jobs.iter().position(|j| j.id == id)
    }
}

fn unique_ids(
    ids: impl Iterator<Item = u64>,
    entity: Entity,
) -> Result<BTreeMap<u64, usize>, Error> {
    let mut index = BTreeMap::new();
    for (i, id) in ids.enumerate() {
        if index.insert(id, i).is_some() {
            return Err(Error::DuplicateId {
                entity,
                index: i,
                id,
            });
        }
    }
    Ok(index)
}

fn check_edges(
    edges: impl Iterator<Item = (u64, u64, f64)>,
    ids: &BTreeMap<u64, usize>,
    entity: Entity,
    field: &'static str,
    valid: impl Fn(f64) -> bool,
) -> Result<(), Error> {
    let mut seen = BTreeSet::new();
    for (index, (a, b, value)) in edges.enumerate() {
        for id in [a, b] {
            if !ids.contains_key(&id) {
                return Err(Error::UnknownId { entity, index, id });
            }
        }
        if a == b {
            return Err(Error::InvalidEdge {
                entity,
                index,
                a,
                b,
                reason: "self-loop",
            });
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::InvalidEdge {
                entity,
                index,
                a,
                b,
                reason: "repeated pair",
            });
        }
        if !valid(value) {
            return Err(Error::InvalidValue {
                entity,
                index,
                field,
                value,
            });
        }
    }
    Ok(())
}

/// Equal-cardinality problem with dense cost matrices.
///
/// Device index `k` is a (possibly virtual) device whose physical id is
/// `device_ids()[k]`; job index `i` is the job with id `job_ids()[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    device_power: Vec<f64>,
    job_size: Vec<f64>,
    d_conn: SquareMatrix,
    j_conn: SquareMatrix,
    /// `(i, j, weight)` with `i < j` and `weight > 0`, sorted by `(i, j)`.
    deps: Vec<(usize, usize, f64)>,
    device_ids: Vec<u64>,
    job_ids: Vec<u64>,
}

impl Instance {
    /// Builds an instance with identity provenance (`device_ids = job_ids = 0..n`).
    ///
    /// `d_conn` must be a metric closure: symmetric, zero diagonal and
    /// satisfying the triangle inequality. See [`crate::shortest_path_closure`].
    pub fn new(
        device_power: Vec<f64>,
        job_size: Vec<f64>,
        d_conn: SquareMatrix,
        j_conn: SquareMatrix,
    ) -> Result<Self, Error> {
        let n = device_power.len();
        let ids = (0..n as u64).collect::<Vec<_>>();
        Self::with_ids(device_power, job_size, d_conn, j_conn, ids.clone(), ids)
    }

    pub fn with_ids(
        device_power: Vec<f64>,
        job_size: Vec<f64>,
        d_conn: SquareMatrix,
        j_conn: SquareMatrix,
        device_ids: Vec<u64>,
        job_ids: Vec<u64>,
    ) -> Result<Self, Error> {
        let n = device_power.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for len in [job_size.len(), d_conn.n(), j_conn.n(), device_ids.len(), job_ids.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        for (i, &p) in device_power.iter().enumerate() {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::InvalidValue {
                    entity: Entity::Device,
                    index: i,
                    field: "power",
                    value: p,
                });
            }
        }
        for (i, &s) in job_size.iter().enumerate() {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::InvalidValue {
                    entity: Entity::Job,
                    index: i,
                    field: "size",
                    value: s,
                });
            }
        }
        check_cost_matrix(&d_conn, "d_conn")?;
        check_cost_matrix(&j_conn, "j_conn")?;
        if !satisfies_triangle_inequality(&d_conn) {
            return Err(Error::InvalidMatrix("d_conn violates the triangle inequality"));
        }

        let mut deps = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = j_conn.get(i, j);
                if w > 0.0 {
                    deps.push((i, j, w));
                }
            }
        }
        Ok(Self {
            device_power,
            job_size,
            d_conn,
            j_conn,
            deps,
            device_ids,
            job_ids,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.device_power.len()
    }

    pub fn device_power(&self) -> &[f64] {
        &self.device_power
    }

    pub fn job_size(&self) -> &[f64] {
        &self.job_size
    }

    pub fn d_conn(&self) -> &SquareMatrix {
        &self.d_conn
    }

    pub fn j_conn(&self) -> &SquareMatrix {
        &self.j_conn
    }

    /// Dependent job pairs `(i, j, weight)` with `i < j`.
    pub fn deps(&self) -> &[(usize, usize, f64)] {
        &self.deps
    }

    /// Physical device id behind each (virtual) device index.
    pub fn device_ids(&self) -> &[u64] {
        &self.device_ids
    }

    pub fn job_ids(&self) -> &[u64] {
        &self.job_ids
    }

    /// Copy of the instance with every `d_conn` entry passed through `f`.
    /// `f` must preserve the metric properties (e.g. scaling by `k > 0`).
    pub fn map_distances(&self, f: impl Fn(f64) -> f64) -> Result<Self, Error> {
        Self::with_ids(
            self.device_power.clone(),
            self.job_size.clone(),
            self.d_conn.map(f),
            self.j_conn.clone(),
            self.device_ids.clone(),
            self.job_ids.clone(),
        )
    }

    pub fn map_powers(&self, f: impl Fn(f64) -> f64) -> Result<Self, Error> {
        Self::with_ids(
            self.device_power.iter().map(|&p| f(p)).collect(),
            self.job_size.clone(),
            self.d_conn.clone(),
            self.j_conn.clone(),
            self.device_ids.clone(),
            self.job_ids.clone(),
        )
    }
}

fn check_cost_matrix(m: &SquareMatrix, name: &'static str) -> Result<(), Error> {
    let n = m.n();
    for i in 0..n {
        if m.get(i, i) != 0.0 {
            return Err(Error::InvalidMatrix(match name {
                "d_conn" => "d_conn diagonal must be zero",
                _ => "j_conn diagonal must be zero",
            }));
        }
        for j in 0..n {
            let x = m.get(i, j);
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::InvalidMatrix(match name {
                    "d_conn" => "d_conn entries must be finite and non-negative",
                    _ => "j_conn entries must be finite and non-negative",
                }));
            }
        }
    }
    if !m.is_symmetric() {
        return Err(Error::InvalidMatrix(match name {
            "d_conn" => "d_conn must be symmetric",
            _ => "j_conn must be symmetric",
        }));
    }
    Ok(())
}

fn satisfies_triangle_inequality(d: &SquareMatrix) -> bool {
    let n = d.n();
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k);
            for j in 0..n {
                let via = dik + d.get(k, j);
                if d.get(i, j) > via + 1e-9 * via.max(1.0) {
                    return false;
                }
            }
        }
    }
    true
}

/// A bijection from jobs to devices with its two costs.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    f: Vec<usize>,
    processing_cost: f64,
    network_cost: f64,
}

impl Assignment {
    /// `f[i]` is the device index hosting job `i`.
    pub fn new(f: Vec<usize>, instance: &Instance) -> Result<Self, Error> {
        cost::check_permutation(&f, instance)?;
        Ok(Self::new_unchecked(f, instance))
    }

    pub(crate) fn new_unchecked(f: Vec<usize>, instance: &Instance) -> Self {
        let processing_cost = cost::processing_cost_unchecked(&f, instance);
        let network_cost = cost::network_cost_unchecked(&f, instance);
        Self {
            f,
            processing_cost,
            network_cost,
        }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.f
    }

    pub fn into_mapping(self) -> Vec<usize> {
        self.f
    }

    pub fn processing_cost(&self) -> f64 {
        self.processing_cost
    }

    pub fn network_cost(&self) -> f64 {
        self.network_cost
    }

    /// `(job id, physical device id)` pairs in job order.
    pub fn physical_mapping<'a>(
        &'a self,
        instance: &'a Instance,
    ) -> impl Iterator<Item = (u64, u64)> + 'a {
        self.f
            .iter()
            .enumerate()
            .map(|(i, &d)| (instance.job_ids()[i], instance.device_ids()[d]))
    }
}
