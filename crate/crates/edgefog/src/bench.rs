//! Benchmark grids and density sweeps with resumable CSV or JSON output.
//!
//! Output files are rewritten in full (through a temporary file and a
//! rename) every time a row completes, so an interrupted run leaves a valid
//! file behind. Rows already present are skipped on the next run.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use anyhow::{bail, Context, Result};
use edgefog_core::gen::{generate, sweep_params, GenParams, SweepAxis};
use edgefog_core::{normalize_instance, Instance, SolverBudget};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::run::{solve, Solver};

/// Column order of benchmark CSV files.
pub const BENCH_HEADER: &str =
    "n,solver,seed,wall_time_ms,processing_cost,network_cost,optimal,reduced_space_size,nodes_explored";

/// Column order of sweep CSV files.
pub const SWEEP_HEADER: &str = "axis,value,n,seeds,mean_network_cost,stddev_network_cost,stderr_network_cost,mean_processing_cost,exhausted_runs";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub solver: String,
    pub seed: u64,
    /// Solver execution only, rounded to microseconds.
    pub wall_time_ms: f64,
    pub processing_cost: f64,
    pub network_cost: f64,
    /// LAP: always; LPCF: orbit exhausted; NOC: proven optimal.
    pub optimal: bool,
    /// LPCF only.
    pub reduced_space_size: Option<String>,
    pub nodes_explored: u64,
}

impl BenchRow {
    fn key(&self) -> (usize, String, u64) {
        (self.n, self.solver.clone(), self.seed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis: String,
    pub value: f64,
    pub n: usize,
    pub seeds: u64,
    pub mean_network_cost: f64,
    /// Sample standard deviation (zero for a single seed).
    pub stddev_network_cost: f64,
    pub stderr_network_cost: f64,
    pub mean_processing_cost: f64,
    /// Runs whose orbit search finished within the budget.
    pub exhausted_runs: u64,
}

pub fn axis_name(axis: SweepAxis) -> &'static str {
    match axis {
        SweepAxis::EdgeDensity => "edge-density",
        SweepAxis::FogDensity => "fog-density",
        SweepAxis::InterDensity => "inter-density",
        SweepAxis::DepDensity => "dep-density",
    }
}

pub fn parse_axis(s: &str) -> Result<SweepAxis, String> {
    [
        SweepAxis::EdgeDensity,
        SweepAxis::FogDensity,
        SweepAxis::InterDensity,
        SweepAxis::DepDensity,
    ]
    .into_iter()
    .find(|&a| axis_name(a) == s)
    .ok_or_else(|| format!("unknown axis `{s}` (expected edge-density, fog-density, inter-density or dep-density)"))
}

/// `start:end:step` (inclusive, values rounded to 12 decimals) or a comma
/// separated list.
pub fn parse_values(s: &str) -> Result<Vec<f64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{t}` is not a number"))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, end, step] => {
            let (start, end, step) = (num(start)?, num(end)?, num(step)?);
            if step.is_nan() || step <= 0.0 || end < start {
                return Err(format!("`{s}`: need start <= end and step > 0"));
            }
            let count = ((end - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count)
                .map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12)
                .collect())
        }
        [_] => s.split(',').map(num).collect(),
        _ => Err(format!("`{s}`: expected start:end:step or a comma separated list")),
    }
}

/// Instance for grid point `(n, seed)` at default generator parameters.
pub fn grid_instance(params: &GenParams) -> Result<Instance> {
    let g = generate(params)?;
    Ok(normalize_instance(&g.resources, &g.jobs)?)
}

fn load_rows<R: DeserializeOwned>(path: &Path, format: Format, header: &str) -> Result<Vec<R>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    match format {
        Format::Json => serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())),
        Format::Csv => {
            let first = text.lines().next().unwrap_or_default();
            if first != header {
                bail!("{}: header `{first}` differs from `{header}`", path.display());
            }
            let mut reader = csv::Reader::from_reader(text.as_bytes());
            reader
                .deserialize()
                .enumerate()
                .map(|(i, r)| r.with_context(|| format!("{}: row {}", path.display(), i + 1)))
                .collect()
        }
    }
}

fn store_rows<R: Serialize>(path: &Path, format: Format, header: &str, rows: &[R]) -> Result<()> {
    let text = match format {
        Format::Json => crate::doc::to_pretty(&rows),
        Format::Csv => {
            let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            for r in rows {
                writer.serialize(r)?;
            }
            format!("{header}\n{}", String::from_utf8(writer.into_inner()?)?)
        }
    };
    let tmp = temp_path(path);
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    path.with_file_name(name)
}

/// Runs `task` over `items` on `workers` threads, handing each result to
/// `sink` on the calling thread as it completes.
fn run_parallel<T: Sync, O: Send>(
    items: &[T],
    workers: usize,
    task: impl Fn(&T) -> Result<O> + Sync,
    mut sink: impl FnMut(O) -> Result<()>,
) -> Result<()> {
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    thread::scope(|scope| {
        for _ in 0..workers.max(1).min(items.len()) {
            let tx = tx.clone();
            let (next, task) = (&next, &task);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let failed = {
                    let r = task(item);
                    let failed = r.is_err();
                    if tx.send(r).is_err() {
                        break;
                    }
                    failed
                };
                if failed {
                    // stop handing out work
                    next.store(items.len(), Ordering::Relaxed);
                    break;
                }
            });
        }
        drop(tx);
        for r in rx {
            sink(r?)?;
        }
        Ok(())
    })
}

#[derive(Clone, Debug)]
pub struct BenchPlan {
    pub sizes: Vec<usize>,
    pub solvers: Vec<Solver>,
    /// Seeds `first_seed .. first_seed + seeds`.
    pub seeds: u64,
    pub first_seed: u64,
    pub budget: SolverBudget,
    pub workers: usize,
    /// Where to write one assignment document per row.
    pub assignments: Option<PathBuf>,
}

impl BenchPlan {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.solvers.is_empty() {
            bail!("sizes and solvers must not be empty");
        }
        if self.sizes.contains(&0) {
            bail!("sizes must be at least 1");
        }
        if self.seeds == 0 {
            bail!("seeds must be at least 1");
        }
        Ok(())
    }
}

/// File name of the assignment document for one bench row.
pub fn assignment_file_name(solver: Solver, n: usize, seed: u64) -> String {
    format!("{solver}_n{n}_seed{seed}.json")
}

/// Runs every missing `(n, solver, seed)` point and returns all rows, sorted.
pub fn run_bench(plan: &BenchPlan, out: &Path, format: Format) -> Result<Vec<BenchRow>> {
    plan.validate()?;
    let mut rows: BTreeMap<(usize, String, u64), BenchRow> = load_rows(out, format, BENCH_HEADER)?
        .into_iter()
        .map(|r: BenchRow| (r.key(), r))
        .collect();
    if let Some(dir) = &plan.assignments {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut todo = Vec::new();
    for &n in &plan.sizes {
        for &solver in &plan.solvers {
            for seed in plan.first_seed..plan.first_seed + plan.seeds {
                if !rows.contains_key(&(n, solver.name().to_string(), seed)) {
                    todo.push((n, solver, seed));
                }
            }
        }
    }
    // header-only file even if nothing runs
    store_rows(out, format, BENCH_HEADER, &rows.values().collect::<Vec<_>>())?;

    let task = |&(n, solver, seed): &(usize, Solver, u64)| -> Result<BenchRow> {
        let instance = grid_instance(&GenParams::with_size(n, seed))?;
        let outcome = solve(&instance, solver, plan.budget);
        if let Some(dir) = &plan.assignments {
            let path = dir.join(assignment_file_name(solver, n, seed));
            fs::write(&path, outcome.document(&instance).to_json())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(BenchRow {
            n,
            solver: solver.name().to_string(),
            seed,
            wall_time_ms: (outcome.wall_time.as_secs_f64() * 1e6).round() / 1e3,
            processing_cost: outcome.assignment.processing_cost(),
            network_cost: outcome.assignment.network_cost(),
            optimal: outcome.complete,
            reduced_space_size: outcome.reduced_space_size.map(|s| s.to_string()),
            nodes_explored: outcome.nodes_explored,
        })
    };
    run_parallel(&todo, plan.workers, task, |row| {
        rows.insert(row.key(), row);
        store_rows(out, format, BENCH_HEADER, &rows.values().collect::<Vec<_>>())
    })?;
    Ok(rows.into_values().collect())
}

#[derive(Clone, Debug)]
pub struct SweepPlan {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub n: usize,
    /// Replicate `r` starts from seed `first_seed + r`; sweep points are
    /// spread from there by [`sweep_params`].
    pub seeds: u64,
    pub first_seed: u64,
    pub budget: SolverBudget,
    pub workers: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stats {
    pub mean: f64,
    pub stddev: f64,
    pub stderr: f64,
}

/// Mean, sample standard deviation and standard error.
pub fn stats(xs: &[f64]) -> Stats {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    Stats {
        mean,
        stddev: var.sqrt(),
        stderr: var.sqrt() / k.sqrt(),
    }
}

/// Runs LPCF on every missing sweep point and returns all rows in value
/// order (then any unrelated rows already in the file).
/// (network cost, processing cost, orbit exhausted) for one replicate.
type Run = (f64, f64, bool);

pub fn run_sweep(plan: &SweepPlan, out: &Path, format: Format) -> Result<Vec<SweepRow>> {
    if plan.values.is_empty() || plan.seeds == 0 || plan.n == 0 {
        bail!("need at least one value, one seed and n >= 1");
    }
    let axis = axis_name(plan.axis);
    let mut rows: Vec<SweepRow> = load_rows(out, format, SWEEP_HEADER)?;
    let done = |rows: &[SweepRow], v: f64| {
        rows.iter()
            .any(|r| r.axis == axis && r.value == v && r.n == plan.n && r.seeds == plan.seeds)
    };

    let mut points: Vec<Vec<GenParams>> = vec![Vec::new(); plan.values.len()];
    for r in 0..plan.seeds {
        let base = GenParams::with_size(plan.n, plan.first_seed.wrapping_add(r));
        for (i, p) in sweep_params(&base, plan.axis, &plan.values)?.into_iter().enumerate() {
            points[i].push(p);
        }
    }
    let todo: Vec<(usize, usize)> = (0..plan.values.len())
        .filter(|&i| !done(&rows, plan.values[i]))
        .flat_map(|i| (0..plan.seeds as usize).map(move |r| (i, r)))
        .collect();
    store_rows(out, format, SWEEP_HEADER, &rows)?;

    let task = |&(i, r): &(usize, usize)| -> Result<(usize, usize, f64, f64, bool)> {
        let instance = grid_instance(&points[i][r])?;
        let o = solve(&instance, Solver::Lpcf, plan.budget);
        Ok((i, r, o.assignment.network_cost(), o.assignment.processing_cost(), o.complete))
    };
    let mut pending: HashMap<usize, Vec<Option<Run>>> = HashMap::new();
    run_parallel(&todo, plan.workers, task, |(i, r, net, proc_, complete)| {
        let slots = pending
            .entry(i)
            .or_insert_with(|| vec![None; plan.seeds as usize]);
        slots[r] = Some((net, proc_, complete));
        if slots.iter().all(Option::is_some) {
            let runs: Vec<Run> = slots.iter().flatten().copied().collect();
            let net: Vec<f64> = runs.iter().map(|x| x.0).collect();
            let proc_: Vec<f64> = runs.iter().map(|x| x.1).collect();
            let s = stats(&net);
            rows.push(SweepRow {
                axis: axis.to_string(),
                value: plan.values[i],
                n: plan.n,
                seeds: plan.seeds,
                mean_network_cost: s.mean,
                stddev_network_cost: s.stddev,
                stderr_network_cost: s.stderr,
                mean_processing_cost: stats(&proc_).mean,
                exhausted_runs: runs.iter().filter(|x| x.2).count() as u64,
            });
            sort_sweep(&mut rows);
            store_rows(out, format, SWEEP_HEADER, &rows)?;
        }
        Ok(())
    })?;
    Ok(rows)
}

fn sort_sweep(rows: &mut [SweepRow]) {
    rows.sort_by(|a, b| {
        (&a.axis, a.n, a.seeds)
            .cmp(&(&b.axis, b.n, b.seeds))
            .then(a.value.total_cmp(&b.value))
    });
}
