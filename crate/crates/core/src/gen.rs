//! Seeded Edge-Fog topology and job-graph generator.
//!
//! Draw order for a fixed [`GenParams::seed`] (ChaCha8, `seed_from_u64`):
//!
//! 1. device powers, by id (edge devices `0..n_edge`, then fog);
//! 2. for every device pair `a < b` in lexicographic order: one Bernoulli
//!    draw with the layer-pair density, then the integer cost if included;
//! 3. job sizes, by id;
//! 4. for every job pair `a < b`: one Bernoulli draw with `dep_density`.
//!
//! If the resource graph is disconnected, a repair pass joins the
//! components Kruskal-style, each repair link costing the top of its
//! layer-pair range. No randomness is consumed by the repair.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::model::{Dep, Device, Job, JobGraph, Layer, Link, ResourceGraph};

/// Inclusive integer range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl IntRange {
    pub const fn new(lo: u32, hi: u32) -> Self {
        Self { lo, hi }
    }

    fn draw(self, rng: &mut ChaCha8Rng) -> u32 {
        rng.gen_range(self.lo..=self.hi)
    }

    fn contains(self, x: u32) -> bool {
        (self.lo..=self.hi).contains(&x)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GenParams {
    pub n_total: usize,
    pub edge_fraction: f64,
    pub fog_fraction: f64,
    pub edge_power_range: IntRange,
    pub fog_power_range: IntRange,
    pub edge_density: f64,
    pub fog_density: f64,
    pub inter_density: f64,
    pub job_size_range: IntRange,
    pub dep_density: f64,
    pub edge_link_cost: IntRange,
    pub fog_link_cost: IntRange,
    pub inter_link_cost: IntRange,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            n_total: 10,
            edge_fraction: 0.6,
            fog_fraction: 0.4,
            edge_power_range: IntRange::new(2, 5),
            fog_power_range: IntRange::new(7, 9),
            edge_density: 0.2,
            fog_density: 0.6,
            inter_density: 0.5,
            job_size_range: IntRange::new(2, 6),
            dep_density: 0.2,
            edge_link_cost: IntRange::new(1, 4),
            fog_link_cost: IntRange::new(1, 2),
            inter_link_cost: IntRange::new(4, 8),
            seed: 0,
        }
    }
}

impl GenParams {
    pub fn with_size(n_total: usize, seed: u64) -> Self {
        Self {
            n_total,
            seed,
            ..Self::default()
        }
    }

    /// `round(n_total · edge_fraction)`, halves rounded away from zero.
    pub fn edge_count(&self) -> usize {
        let x = self.n_total as f64 * self.edge_fraction;
        ((x + 0.5) as usize).min(self.n_total)
    }

    pub fn fog_count(&self) -> usize {
        self.n_total - self.edge_count()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: &str| Err(Error::ParamInvalid(msg.into()));
        if self.n_total == 0 {
            return bad("n_total must be at least 1");
        }
        let fractions = [self.edge_fraction, self.fog_fraction];
        if fractions.iter().any(|f| !(0.0..=1.0).contains(f)) {
            return bad("layer fractions must lie in [0, 1]");
        }
        let total = self.edge_fraction + self.fog_fraction;
        if !(total - 1.0 < 1e-9 && 1.0 - total < 1e-9) {
            return bad("edge_fraction + fog_fraction must equal 1");
        }
        for (name, d) in [
            ("edge_density", self.edge_density),
            ("fog_density", self.fog_density),
            ("inter_density", self.inter_density),
            ("dep_density", self.dep_density),
        ] {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::ParamInvalid(format!("{name} must lie in [0, 1], got {d}")));
            }
        }
        for (name, r) in [
            ("edge_power_range", self.edge_power_range),
            ("fog_power_range", self.fog_power_range),
            ("job_size_range", self.job_size_range),
            ("edge_link_cost", self.edge_link_cost),
            ("fog_link_cost", self.fog_link_cost),
            ("inter_link_cost", self.inter_link_cost),
        ] {
            if r.lo == 0 || r.lo > r.hi {
                return Err(Error::ParamInvalid(format!(
                    "{name} must be a non-empty range of positive integers, got {}..={}",
                    r.lo, r.hi
                )));
            }
        }
        Ok(())
    }

    fn density(&self, a: Layer, b: Layer) -> f64 {
        match (a, b) {
            (Layer::Edge, Layer::Edge) => self.edge_density,
            (Layer::Fog, Layer::Fog) => self.fog_density,
            _ => self.inter_density,
        }
    }

    fn link_cost(&self, a: Layer, b: Layer) -> IntRange {
        match (a, b) {
            (Layer::Edge, Layer::Edge) => self.edge_link_cost,
            (Layer::Fog, Layer::Fog) => self.fog_link_cost,
            _ => self.inter_link_cost,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generated {
    pub resources: ResourceGraph,
    pub jobs: JobGraph,
    /// Links added by the connectivity repair pass (already in `resources`).
    pub repair_links: usize,
}

pub fn generate(params: &GenParams) -> Result<Generated, Error> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n_total;
    let n_edge = params.edge_count();

    let devices: Vec<Device> = (0..n)
        .map(|i| {
            let (layer, range) = if i < n_edge {
                (Layer::Edge, params.edge_power_range)
            } else {
                (Layer::Fog, params.fog_power_range)
            };
            Device {
                id: i as u64,
                layer,
                power: f64::from(range.draw(&mut rng)),
            }
        })
        .collect();

    let mut links = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (la, lb) = (devices[a].layer, devices[b].layer);
            if rng.gen_bool(params.density(la, lb)) {
                links.push(Link {
                    a: a as u64,
                    b: b as u64,
                    cost: f64::from(params.link_cost(la, lb).draw(&mut rng)),
                });
            }
        }
    }
    let repair_links = repair_connectivity(params, &devices, &mut links);

    let jobs: Vec<Job> = (0..n)
        .map(|i| Job {
            id: i as u64,
            size: f64::from(params.job_size_range.draw(&mut rng)),
        })
        .collect();
    let mut deps = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(params.dep_density) {
                deps.push(Dep {
                    a: a as u64,
                    b: b as u64,
                    weight: 1.0,
                });
            }
        }
    }

    Ok(Generated {
        resources: ResourceGraph::new(devices, links)?,
        jobs: JobGraph::new(jobs, deps)?,
        repair_links,
    })
}

fn repair_connectivity(params: &GenParams, devices: &[Device], links: &mut Vec<Link>) -> usize {
    let n = devices.len();
    let mut uf = UnionFind::new(n);
    let mut linked = alloc::vec![false; n * n];
    for l in links.iter() {
        uf.union(l.a as usize, l.b as usize);
        linked[l.a as usize * n + l.b as usize] = true;
    }
    if uf.components == 1 {
        return 0;
    }
    let mut candidates: Vec<(u32, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !linked[a * n + b] {
                let cost = params.link_cost(devices[a].layer, devices[b].layer).hi;
                candidates.push((cost, a, b));
            }
        }
    }
    candidates.sort_unstable();
    let mut added = 0;
    for (cost, a, b) in candidates {
        if uf.components == 1 {
            break;
        }
        if uf.union(a, b) {
            links.push(Link {
                a: a as u64,
                b: b as u64,
                cost: f64::from(cost),
            });
            added += 1;
        }
    }
    added
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.components -= 1;
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SweepAxis {
    EdgeDensity,
    FogDensity,
    InterDensity,
    DepDensity,
}

/// Seed offset between consecutive sweep points (the 64-bit golden ratio).
pub const SWEEP_SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// One parameter set per value, identical to `base` except for the swept
/// density and the seed, which for point `i` is
/// `base.seed + i * SWEEP_SEED_STRIDE` (wrapping).
pub fn sweep_params(
    base: &GenParams,
    axis: SweepAxis,
    values: &[f64],
) -> Result<Vec<GenParams>, Error> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ParamInvalid(format!("sweep value {v} outside [0, 1]")));
            }
            let mut p = base.clone();
            match axis {
                SweepAxis::EdgeDensity => p.edge_density = v,
                SweepAxis::FogDensity => p.fog_density = v,
                SweepAxis::InterDensity => p.inter_density = v,
                SweepAxis::DepDensity => p.dep_density = v,
            }
            p.seed = base.seed.wrapping_add((i as u64).wrapping_mul(SWEEP_SEED_STRIDE));
            Ok(p)
        })
        .collect()
}

impl Generated {
    /// Whether every drawn power and size lies within the configured ranges.
    pub fn within_ranges(&self, params: &GenParams) -> bool {
        let powers_ok = self.resources.devices().iter().all(|d| {
            let range = match d.layer {
                Layer::Edge => params.edge_power_range,
                Layer::Fog => params.fog_power_range,
            };
            is_int_in(range, d.power)
        });
        let sizes_ok = self
            .jobs
            .jobs()
            .iter()
            .all(|j| is_int_in(params.job_size_range, j.size));
        powers_ok && sizes_ok
    }
}

fn is_int_in(range: IntRange, x: f64) -> bool {
    let k = x as u32;
    f64::from(k) == x && range.contains(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_split_is_six_four() {
        let g = generate(&GenParams::with_size(10, 1)).unwrap();
        let edge = g.resources.devices().iter().filter(|d| d.layer == Layer::Edge).count();
        assert_eq!(edge, 6);
        assert_eq!(g.resources.len() - edge, 4);
        assert_eq!(g.jobs.len(), 10);
    }

    #[test]
    fn full_density_gives_complete_graph() {
        let p = GenParams {
            edge_density: 1.0,
            fog_density: 1.0,
            inter_density: 1.0,
            dep_density: 1.0,
            ..GenParams::with_size(9, 3)
        };
        let g = generate(&p).unwrap();
        assert_eq!(g.resources.links().len(), 36);
        assert_eq!(g.jobs.deps().len(), 36);
        assert_eq!(g.repair_links, 0);
    }

    #[test]
    fn zero_density_is_repaired_into_a_tree() {
        let p = GenParams {
            edge_density: 0.0,
            fog_density: 0.0,
            inter_density: 0.0,
            ..GenParams::with_size(12, 7)
        };
        let g = generate(&p).unwrap();
        assert_eq!(g.repair_links, 11);
        assert_eq!(g.resources.links().len(), 11);
        assert!(crate::effective_connectivity(&g.resources).is_ok());
        // repair prefers the cheapest layer pair: fog-fog links cost 2
        let fog_links = g.resources.links().iter().filter(|l| l.a >= 7 && l.b >= 7).count();
        assert_eq!(fog_links, 4);
    }

    #[test]
    fn same_seed_same_output() {
        let p = GenParams::with_size(25, 99);
        assert_eq!(generate(&p).unwrap(), generate(&p).unwrap());
        let q = GenParams::with_size(25, 100);
        assert_ne!(generate(&p).unwrap(), generate(&q).unwrap());
    }

    #[test]
    fn invalid_params_are_rejected() {
        let cases = [
            GenParams { n_total: 0, ..GenParams::default() },
            GenParams { edge_fraction: 0.7, ..GenParams::default() },
            GenParams { dep_density: 1.5, ..GenParams::default() },
            GenParams { edge_power_range: IntRange::new(5, 2), ..GenParams::default() },
            GenParams { job_size_range: IntRange::new(0, 2), ..GenParams::default() },
        ];
        for p in cases {
            assert!(matches!(generate(&p), Err(Error::ParamInvalid(_))), "{p:?}");
        }
    }

    #[test]
    fn sweep_varies_one_axis() {
        let base = GenParams::with_size(30, 5);
        let pts = sweep_params(&base, SweepAxis::EdgeDensity, &[0.2, 0.8]).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].edge_density, 0.2);
        assert_eq!(pts[1].edge_density, 0.8);
        for p in &pts {
            assert_eq!(
                GenParams { edge_density: base.edge_density, seed: base.seed, ..p.clone() },
                base
            );
        }
        assert_ne!(pts[0].seed, pts[1].seed);
        assert!(sweep_params(&base, SweepAxis::DepDensity, &[]).unwrap().is_empty());
        assert!(sweep_params(&base, SweepAxis::FogDensity, &[1.2]).is_err());
    }

    #[test]
    fn dependence_sweep_is_increasing() {
        let values: Vec<f64> = (1..=10).map(|i| f64::from(i) / 10.0).collect();
        let pts = sweep_params(&GenParams::default(), SweepAxis::DepDensity, &values).unwrap();
        assert_eq!(pts.len(), 10);
        assert!(pts.windows(2).all(|w| w[0].dep_density < w[1].dep_density));
    }
}
