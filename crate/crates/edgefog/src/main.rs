use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use edgefog::bench::{self, BenchPlan, Format, SweepPlan};
use edgefog::doc::{self, Meta};
use edgefog::run::{solve, Solver};
use edgefog_core::gen::{generate, GenParams, SweepAxis};
use edgefog_core::{normalize_instance, SolverBudget};

#[derive(Parser)]
#[command(name = "edgefog", version, about = "Assign interdependent jobs to Edge-Fog devices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random two-layer instance.
    Gen {
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        edge_density: Option<f64>,
        #[arg(long)]
        fog_density: Option<f64>,
        #[arg(long)]
        inter_density: Option<f64>,
        #[arg(long)]
        dep_density: Option<f64>,
        /// Share of devices in the edge layer; the rest are fog.
        #[arg(long)]
        edge_fraction: Option<f64>,
        /// Output file (standard output if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve one instance file.
    Solve {
        #[arg(long, default_value = "lpcf", value_parser = parse_solver)]
        solver: Solver,
        /// Instance file, `-` for standard input.
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        time_limit_ms: Option<u64>,
        #[arg(long)]
        node_limit: Option<u64>,
        /// `json`: assignment document; `csv`: job,device table.
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Run a solver x size x seed grid on generated instances.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "lpcf,noc-bnb", value_parser = parse_solver)]
        solvers: Vec<Solver>,
        /// Seeds per grid point.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 60_000)]
        time_limit_ms: u64,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Directory for one assignment document per row.
        #[arg(long)]
        assignments: Option<PathBuf>,
        #[arg(short, long, default_value = "bench.csv")]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Sweep one generator density and record LPCF network cost.
    Sweep {
        #[arg(long, value_parser = bench::parse_axis)]
        axis: SweepAxis,
        /// `start:end:step` or a comma separated list.
        #[arg(long, value_parser = bench::parse_values)]
        values: std::vec::Vec<f64>,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        time_limit_ms: Option<u64>,
        #[arg(long, default_value_t = 50_000)]
        node_limit: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(short, long, default_value = "sweep.csv")]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
}

fn parse_solver(s: &str) -> Result<Solver, String> {
    s.parse()
}

fn budget(time_limit_ms: Option<u64>, node_limit: Option<u64>) -> SolverBudget {
    SolverBudget {
        time_limit: time_limit_ms.map(Duration::from_millis),
        node_limit,
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            n,
            seed,
            edge_density,
            fog_density,
            inter_density,
            dep_density,
            edge_fraction,
            output,
        } => {
            let mut params = GenParams::with_size(n, seed);
            params.edge_density = edge_density.unwrap_or(params.edge_density);
            params.fog_density = fog_density.unwrap_or(params.fog_density);
            params.inter_density = inter_density.unwrap_or(params.inter_density);
            params.dep_density = dep_density.unwrap_or(params.dep_density);
            if let Some(f) = edge_fraction {
                params.edge_fraction = f;
                params.fog_fraction = 1.0 - f;
            }
            let g = generate(&params)?;
            let meta = Meta {
                params,
                repair_links: g.repair_links,
            };
            write_output(output.as_deref(), &doc::emit_instance(&g.resources, &g.jobs, Some(&meta)))
        }
        Command::Solve {
            solver,
            input,
            output,
            time_limit_ms,
            node_limit,
            format,
        } => {
            let text = read_input(&input)?;
            let file = doc::parse_instance(&text).with_context(|| format!("{}", input.display()))?;
            let instance = normalize_instance(&file.resources, &file.jobs)?;
            let outcome = solve(&instance, solver, budget(time_limit_ms, node_limit));
            let document = outcome.document(&instance);
            let text = match format {
                FormatArg::Json => document.to_json(),
                FormatArg::Csv => {
                    let mut t = String::from("job,device\n");
                    for m in &document.mapping {
                        t += &format!("{},{}\n", m.job, m.device);
                    }
                    t
                }
            };
            write_output(output.as_deref(), &text)
        }
        Command::Bench {
            sizes,
            solvers,
            seeds,
            seed,
            time_limit_ms,
            node_limit,
            jobs,
            assignments,
            output,
            format,
        } => {
            let plan = BenchPlan {
                sizes,
                solvers,
                seeds,
                first_seed: seed,
                budget: budget(Some(time_limit_ms), node_limit),
                workers: jobs,
                assignments,
            };
            let rows = bench::run_bench(&plan, &output, format.into())?;
            eprintln!("{} rows in {}", rows.len(), output.display());
            Ok(())
        }
        Command::Sweep {
            axis,
            values,
            n,
            seeds,
            seed,
            time_limit_ms,
            node_limit,
            jobs,
            output,
            format,
        } => {
            let plan = SweepPlan {
                axis,
                values,
                n,
                seeds,
                first_seed: seed,
                budget: budget(time_limit_ms, Some(node_limit)),
                workers: jobs,
            };
            let rows = bench::run_sweep(&plan, &output, format.into())?;
            eprintln!("{} rows in {}", rows.len(), output.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
