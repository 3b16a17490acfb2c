use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use orca_core::baselines::{run_ba, run_pso};
use orca_core::harness::{
    self, classes_csv, load_experiment_instances, read_report, write_report, write_runs, Algorithm,
    ExperimentConfig, InstanceSpace, ReportFormat, SweepGrid,
};
use orca_core::maze::Move;
use orca_core::maze_io::{build_dataset, DatasetSpec};
use orca_core::{run_aoa, RunResult, SearchSpace};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "orca",
    version,
    about = "Orca swarm search on mazes and continuous benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a maze corpus with its manifest.
    Generate(GenerateArgs),
    /// Solve one instance once and print the result as JSON.
    Solve(SolveArgs),
    /// Run a multi-run experiment and print the class table.
    Bench(BenchArgs),
    /// Run a parameter grid and rank the cells.
    Sweep(SweepArgs),
    /// Convert a class report between CSV and JSON.
    Report(ReportArgs),
}

#[derive(Args)]
struct Overrides {
    /// Config file (flat key = value lines or a JSON object).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra KEY=VALUE settings applied after the config file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Overrides {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        cfg.apply_overrides(self.set.iter().map(String::as_str))?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated WxH sizes.
    #[arg(long, default_value = "15x15,30x30")]
    sizes: String,
    /// Comma-separated connectivity percentages.
    #[arg(long, default_value = "0,30,60,100")]
    classes: String,
    #[arg(long, default_value_t = 10)]
    mazes: usize,
    #[arg(long, default_value_t = 12)]
    starts: usize,
    #[arg(long, default_value_t = 0.25)]
    density: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    /// Maze file; omit for continuous problems.
    #[arg(long)]
    maze: Option<PathBuf>,
    /// Start cell as ROW,COL.
    #[arg(long)]
    start: Option<String>,
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    overrides: Overrides,
    /// Class report destination (.csv or .json).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Per-run CSV destination.
    #[arg(long)]
    runs_output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    overrides: Overrides,
    /// Grid file: `key = v1;v2` lines, or a JSON object of arrays.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Named grids (population, iterations, frequency, gamma, delta, w0, alpha).
    #[arg(long)]
    preset: Vec<String>,
    /// Directory receiving one report per cell and ranking.csv.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Defaults to the output extension.
    #[arg(long)]
    format: Option<String>,
}

fn generate(args: &GenerateArgs) -> Result<()> {
    let mut probe = ExperimentConfig::default();
    probe.set("sizes", &args.sizes)?;
    probe.set("classes", &args.classes)?;
    let spec = DatasetSpec {
        classes: probe.classes,
        mazes_per_class: args.mazes,
        starts_per_maze: args.starts,
        sizes: probe.sizes,
        density: args.density,
        master_seed: args.seed,
    };
    let corpus = build_dataset(&spec, &args.out)?;
    println!(
        "wrote {} mazes and {} instances to {}",
        corpus.mazes.len(),
        corpus.instances.len(),
        args.out.display()
    );
    Ok(())
}

fn move_letters(moves: &[Move]) -> String {
    moves
        .iter()
        .map(|m| match m {
            Move::Left => 'L',
            Move::Right => 'R',
            Move::Up => 'U',
            Move::Down => 'D',
        })
        .collect()
}

fn solve(args: &SolveArgs) -> Result<()> {
    let mut cfg = args.overrides.resolve()?;
    if let Some(m) = &args.maze {
        cfg.maze = Some(m.clone());
        cfg.manifest = None;
    }
    if let Some(s) = &args.start {
        cfg.set("start", s)?;
    }
    if let Some(a) = &args.algorithm {
        cfg.set("algorithm", a)?;
    }
    cfg.runs = 1;
    cfg.validate()?;
    let instances = load_experiment_instances(&cfg)?;
    let inst = &instances[0];
    let seed = args.seed;
    let (summary, best) = match &inst.space {
        InstanceSpace::Maze(space) => {
            let r = run_with(&cfg, space, seed)?;
            let best = json!({
                "moves": move_letters(r.best_position.moves()),
                "terminal": [r.best_position.terminal().row, r.best_position.terminal().col],
            });
            (summarize(space, &r), best)
        }
        InstanceSpace::Continuous(space) => {
            let r = run_with(&cfg, space, seed)?;
            let best = json!({ "coords": r.best_position.coords() });
            (summarize(space, &r), best)
        }
    };
    let mut out = json!({
        "instance": inst.id,
        "algorithm": cfg.algorithm.as_str(),
        "best_position": best,
    });
    out.as_object_mut()
        .expect("object")
        .extend(summary.as_object().expect("object").clone());
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn summarize<S: SearchSpace>(space: &S, r: &RunResult<S::Position>) -> serde_json::Value {
    json!({
        "seed": r.seed,
        "success": r.success,
        "solution_size": space.solution_size(&r.best_position),
        "best_fitness": r.best_fitness,
        "iterations_used": r.iterations_used,
        "phase_reached": r.phase_reached.as_str(),
        "wall_time_s": r.wall_time,
    })
}

fn run_with<S: SearchSpace>(
    cfg: &ExperimentConfig,
    space: &S,
    seed: u64,
) -> Result<RunResult<S::Position>> {
    Ok(match cfg.algorithm {
        Algorithm::Aoa => run_aoa(space, &cfg.params, &cfg.shape, &cfg.budgets, seed)?,
        Algorithm::Pso => run_pso(space, &cfg.baselines.pso, seed)?,
        Algorithm::Ba => run_ba(space, &cfg.baselines.ba, seed)?,
    })
}

fn bench(args: &BenchArgs) -> Result<()> {
    let mut cfg = args.overrides.resolve()?;
    if args.output.is_some() {
        cfg.output = args.output.clone();
    }
    if args.runs_output.is_some() {
        cfg.runs_output = args.runs_output.clone();
    }
    let report = harness::run_experiment(&cfg)?;
    print!("{}", classes_csv(&report.classes)?);
    let failed = report.runs.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        bail!("{failed} runs failed");
    }
    Ok(())
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let template = args.overrides.resolve()?;
    template.validate()?;
    let mut grid = match &args.grid {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            SweepGrid::parse(&text)?
        }
        None => SweepGrid::default(),
    };
    let names: Vec<&str> = args.preset.iter().map(String::as_str).collect();
    grid.axes.extend(SweepGrid::from_presets(&names)?.axes);
    grid.validate(&template)?;
    let instances = load_experiment_instances(&template)?;
    let outcome = harness::sweep(&template, &grid, &instances)?;
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    for (name, report) in &outcome.cells {
        write_report(
            &report.classes,
            &args.out_dir.join(format!("{name}.csv")),
            ReportFormat::Csv,
        )?;
        write_runs(&report.runs, &args.out_dir.join(format!("{name}.runs.csv")))?;
    }
    let mut text = String::from("rank,cell,success_rate_pct,mean_solution_size,mean_runtime_s\n");
    for (i, e) in outcome.ranking.iter().enumerate() {
        let ss = e
            .mean_solution_size
            .map(|v| format!("{v:.2}"))
            .unwrap_or_default();
        text.push_str(&format!(
            "{},{},{:.1},{ss},{:.4}\n",
            i + 1,
            e.name,
            e.success_rate_pct,
            e.mean_runtime_s
        ));
    }
    let ranking = args.out_dir.join("ranking.csv");
    fs::write(&ranking, &text).with_context(|| format!("writing {}", ranking.display()))?;
    print!("{text}");
    Ok(())
}

fn report(args: &ReportArgs) -> Result<()> {
    let rows = read_report(&args.input)?;
    let format = match &args.format {
        Some(f) => f.parse()?,
        None => ReportFormat::from_path(&args.output),
    };
    write_report(&rows, &args.output, format)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Sweep(a) => sweep(a),
        Command::Report(a) => report(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
