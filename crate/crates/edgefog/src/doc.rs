//! JSON instance and assignment documents.
//!
//! Instance document:
//!
//! ```json
//! {
//!   "devices": [{"id": 0, "layer": "fog", "power": 8.0}],
//!   "links":   [{"a": 0, "b": 1, "cost": 2.0}],
//!   "jobs":    [{"id": 0, "size": 3.0}],
//!   "deps":    [{"a": 0, "b": 1, "weight": 1.0}],
//!   "meta":    {"params": {...}, "repair_links": 0}
//! }
//! ```
//!
//! `links`, `deps` and `meta` may be omitted; a dep without `weight` weighs 1.
//! Unknown keys are rejected.

use std::collections::HashMap;

use edgefog_core::gen::GenParams;
use edgefog_core::lpcf::SpaceSize;
use edgefog_core::{Assignment, Dep, Device, Instance, Job, JobGraph, Layer, Link, ResourceGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] edgefog_core::Error),
    #[error("mapping: {0}")]
    Mapping(String),
}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        let text = e.to_string();
        // drop serde_json's own " at line X column Y" suffix
        let message = match text.rfind(" at line ") {
            Some(i) => text[..i].to_string(),
            None => text,
        };
        DocError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// Generator parameters echoed into generated instances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub params: GenParams,
    pub repair_links: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    devices: Vec<DeviceDoc>,
    #[serde(default)]
    links: Vec<LinkDoc>,
    jobs: Vec<JobDoc>,
    #[serde(default)]
    deps: Vec<DepDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceDoc {
    id: u64,
    layer: Layer,
    power: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkDoc {
    a: u64,
    b: u64,
    cost: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobDoc {
    id: u64,
    size: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DepDoc {
    a: u64,
    b: u64,
    #[serde(default = "one")]
    weight: f64,
}

/// A parsed instance document.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub resources: ResourceGraph,
    pub jobs: JobGraph,
    pub meta: Option<Meta>,
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, DocError> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    let devices = doc
        .devices
        .into_iter()
        .map(|d| Device {
            id: d.id,
            layer: d.layer,
            power: d.power,
        })
        .collect();
    let links = doc
        .links
        .into_iter()
        .map(|l| Link {
            a: l.a,
            b: l.b,
            cost: l.cost,
        })
        .collect();
    let jobs = doc
        .jobs
        .into_iter()
        .map(|j| Job {
            id: j.id,
            size: j.size,
        })
        .collect();
    let deps = doc
        .deps
        .into_iter()
        .map(|d| Dep {
            a: d.a,
            b: d.b,
            weight: d.weight,
        })
        .collect();
    Ok(InstanceFile {
        resources: ResourceGraph::new(devices, links)?,
        jobs: JobGraph::new(jobs, deps)?,
        meta: doc.meta,
    })
}

/// Pretty-printed document with a trailing newline.
pub fn emit_instance(rg: &ResourceGraph, jg: &JobGraph, meta: Option<&Meta>) -> String {
    let doc = InstanceDoc {
        devices: rg
            .devices()
            .iter()
            .map(|d| DeviceDoc {
                id: d.id,
                layer: d.layer,
                power: d.power,
            })
            .collect(),
        links: rg
            .links()
            .iter()
            .map(|l| LinkDoc {
                a: l.a,
                b: l.b,
                cost: l.cost,
            })
            .collect(),
        jobs: jg
            .jobs()
            .iter()
            .map(|j| JobDoc {
                id: j.id,
                size: j.size,
            })
            .collect(),
        deps: jg
            .deps()
            .iter()
            .map(|d| DepDoc {
                a: d.a,
                b: d.b,
                weight: d.weight,
            })
            .collect(),
        meta: meta.cloned(),
    };
    to_pretty(&doc)
}

pub(crate) fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingEntry {
    pub job: u64,
    pub device: u64,
}

/// Exact orbit size when it fits in 64 bits (so JSON readers keep it
/// exact), otherwise its floating-point approximation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceSizeDoc {
    Exact(u64),
    Approx(f64),
}

impl From<&SpaceSize> for SpaceSizeDoc {
    fn from(s: &SpaceSize) -> Self {
        match s.exact.and_then(|x| u64::try_from(x).ok()) {
            Some(x) => SpaceSizeDoc::Exact(x),
            None => SpaceSizeDoc::Approx(s.approx),
        }
    }
}

impl std::fmt::Display for SpaceSizeDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpaceSizeDoc::Exact(x) => write!(f, "{x}"),
            SpaceSizeDoc::Approx(x) => write!(f, "{x:e}"),
        }
    }
}

/// Solver output. Devices are physical ids; virtual copies of one device
/// show up as repeated ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentDoc {
    pub solver: String,
    pub mapping: Vec<MappingEntry>,
    pub processing_cost: f64,
    pub network_cost: f64,
    /// NOC solvers: the search finished within its budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proven_optimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lap_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_space_size: Option<SpaceSizeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space_exhausted: Option<bool>,
}

impl AssignmentDoc {
    pub fn new(solver: &str, assignment: &Assignment, instance: &Instance) -> Self {
        Self {
            solver: solver.to_string(),
            mapping: assignment
                .physical_mapping(instance)
                .map(|(job, device)| MappingEntry { job, device })
                .collect(),
            processing_cost: assignment.processing_cost(),
            network_cost: assignment.network_cost(),
            proven_optimal: None,
            lap_value: None,
            reduced_space_size: None,
            space_exhausted: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    /// Rebuilds the assignment on `instance` and recomputes both costs.
    /// Repeated physical ids take that device's virtual copies in order.
    pub fn recompute(&self, instance: &Instance) -> Result<Assignment, DocError> {
        let n = instance.n();
        if self.mapping.len() != n {
            return Err(DocError::Mapping(format!(
                "{} entries for {n} jobs",
                self.mapping.len()
            )));
        }
        let job_index: HashMap<u64, usize> = instance
            .job_ids()
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i))
            .collect();
        let mut copies: HashMap<u64, Vec<usize>> = HashMap::new();
        for (e, &id) in instance.device_ids().iter().enumerate().rev() {
            copies.entry(id).or_default().push(e);
        }
        let mut f = vec![usize::MAX; n];
        for (k, entry) in self.mapping.iter().enumerate() {
            let job = *job_index
                .get(&entry.job)
                .ok_or_else(|| DocError::Mapping(format!("mapping[{k}].job: unknown id {}", entry.job)))?;
            if f[job] != usize::MAX {
                return Err(DocError::Mapping(format!("mapping[{k}].job: {} repeated", entry.job)));
            }
            let device = copies
                .get_mut(&entry.device)
                .and_then(Vec::pop)
                .ok_or_else(|| {
                    DocError::Mapping(format!("mapping[{k}].device: {} unknown or overused", entry.device))
                })?;
            f[job] = device;
        }
        Ok(Assignment::new(f, instance)?)
    }
}
