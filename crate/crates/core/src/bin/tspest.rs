use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sublinear_tsp::bench::{
    check_output, exact_bad_vertices, run_experiment, trail_scaling, ExperimentConfig, GeneratorSpec, TrailConfig,
};
use sublinear_tsp::exact::{
    exact_bridges, exact_cut_vertices, exact_max_matching, exact_max_path_cover, exact_tsp, solve_ratio_program,
    RatioProgram, MAX_TSP_N,
};
use sublinear_tsp::graph::{MetricKind, SimpleGraph, TspInstance};
use sublinear_tsp::{Error, Result};

#[derive(Parser)]
#[command(
    name = "tspest",
    version,
    about = "Sublinear TSP and path-cover estimators: experiments and exact baselines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        /// Generator spec: JSON or `family:key=value,...`.
        #[arg(long, conflicts_with = "config")]
        spec: Option<String>,
        /// JSON file holding a generator spec.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge-list output path; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment config and write CSV and JSON reports.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Replace the config's seed list with this single seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path; overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads across cells; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Evaluate every guarantee against exact values; exit nonzero on failure.
        #[arg(long)]
        check: bool,
    },
    /// Exact path cover, tour cost, matching, bridges and bad vertices of one graph.
    SolveExact {
        /// Edge-list input file.
        #[arg(long, conflicts_with_all = ["spec", "config"])]
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "config")]
        spec: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Metric::OneTwo)]
        metric: Metric,
        /// JSON output path; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the three ratio programs of the graphic estimators.
    Ratios {
        #[arg(long, default_value_t = 1e-4)]
        grid_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Oracle cost and query growth across a size sweep.
    Trails {
        /// JSON trail config; defaults to 3-regular graphs at n = 2^8..2^12.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    OneTwo,
    Graphic,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            spec,
            config,
            seed,
            out,
        } => {
            let spec = load_spec(spec, config)?;
            let g = spec.generate_full(seed)?;
            g.verify(&spec)?;
            emit(out.as_deref(), &g.graph.to_edge_list())?;
        }
        Command::Run {
            config,
            seed,
            out,
            jobs,
            check,
        } => {
            let mut cfg = ExperimentConfig::from_json_file(&config)?;
            if let Some(s) = seed {
                cfg.seeds = vec![s];
            }
            if out.is_some() {
                cfg.out = out;
            }
            let output = run_experiment(&cfg, jobs)?;
            match &cfg.out {
                Some(path) => {
                    let (csv, json) = output.write(path)?;
                    eprintln!("wrote {} and {}", csv.display(), json.display());
                }
                None => print!("{}", output.to_csv()?),
            }
            if check {
                let summary = check_output(&output);
                for g in &summary.groups {
                    eprintln!(
                        "{} {} {} n={}: {}/{} within guarantee, {} errors",
                        match (g.ok, g.checked) {
                            (false, _) => "FAIL",
                            (true, 0) => "SKIP",
                            (true, _) => "PASS",
                        },
                        g.algorithm,
                        g.family,
                        g.n,
                        g.passed,
                        g.checked,
                        g.errors
                    );
                }
                if !summary.passed {
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        Command::SolveExact {
            input,
            spec,
            config,
            seed,
            metric,
            out,
        } => {
            let g = match input {
                Some(path) => SimpleGraph::read_edge_list(BufReader::new(File::open(path)?))?,
                None => load_spec(spec, config)?.generate(seed)?,
            };
            let metric = match metric {
                Metric::OneTwo => MetricKind::OneTwo,
                Metric::Graphic => MetricKind::Graphic,
            };
            emit(
                out.as_deref(),
                &(serde_json::to_string_pretty(&solve_exact(&g, metric)?)? + "\n"),
            )?;
        }
        Command::Ratios { grid_step, out } => {
            let mut text = String::new();
            for (name, p) in [
                ("path_cover_bad_vertices", RatioProgram::GRAPHIC_BAD_VERTICES),
                ("path_cover_bridges", RatioProgram::GRAPHIC_BRIDGES),
                ("matching_bridges", RatioProgram::GRAPHIC_MATCHING),
            ] {
                text += &format!("{name}\t{:.9}\n", solve_ratio_program(&p, grid_step)?);
            }
            emit(out.as_deref(), &text)?;
        }
        Command::Trails { config, seed, out } => {
            let mut cfg = match config {
                Some(path) => serde_json::from_reader(BufReader::new(File::open(path)?))?,
                None => TrailConfig {
                    generator: GeneratorSpec::Regular { n: 256, d: 3 },
                    n: (8..=12).map(|e| 1 << e).collect(),
                    k: 20,
                    vo_samples: 200,
                    path_cover_r: Some(50),
                    seed: 0,
                },
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let scaling = trail_scaling(&cfg)?;
            for p in &scaling.points {
                eprintln!(
                    "n={:>6}  eo/vo={:>8.3}  max_depth={:>3}  path_cover_queries={}",
                    p.n,
                    p.mean_eo_per_vo,
                    p.max_depth,
                    p.path_cover_queries.map_or("-".into(), |q| q.to_string())
                );
            }
            emit(out.as_deref(), &(serde_json::to_string_pretty(&scaling)? + "\n"))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_spec(spec: Option<String>, config: Option<PathBuf>) -> Result<GeneratorSpec> {
    match (spec, config) {
        (Some(s), _) => s.parse(),
        (None, Some(path)) => Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?),
        (None, None) => Err(Error::InvalidParameter("pass --spec or --config".into())),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct ExactSummary {
    n: usize,
    m: usize,
    path_cover: Option<usize>,
    tour_cost: Option<u64>,
    matching: Option<usize>,
    bridges: usize,
    cut_vertices: usize,
    bad_vertices: usize,
    notes: Vec<String>,
}

fn keep<T>(r: Result<T>, what: &str, notes: &mut Vec<String>) -> Option<T> {
    r.map_err(|e| notes.push(format!("{what}: {e}"))).ok()
}

fn solve_exact(g: &SimpleGraph, metric: MetricKind) -> Result<ExactSummary> {
    let mut notes = Vec::new();
    let path_cover = keep(exact_max_path_cover(g), "path_cover", &mut notes);
    let tour = if g.n() <= MAX_TSP_N {
        TspInstance::new(metric, g.clone()).and_then(|i| exact_tsp(&i))
    } else {
        Err(Error::SizeGuard(format!("n = {} above {MAX_TSP_N}", g.n())))
    };
    let tour_cost = keep(tour, "tour_cost", &mut notes);
    let matching = keep(exact_max_matching(g).map(|m| m.size), "matching", &mut notes);
    Ok(ExactSummary {
        n: g.n(),
        m: g.m(),
        path_cover,
        tour_cost,
        matching,
        bridges: exact_bridges(g).len(),
        cut_vertices: exact_cut_vertices(g).len(),
        bad_vertices: exact_bad_vertices(g),
        notes,
    })
}
