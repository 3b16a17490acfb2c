use std::collections::BTreeMap;
use std::fs;

use rayon::prelude::*;

use super::config::{Algorithm, ExperimentConfig};
use super::report::{ClassRow, InstanceRow, RunRecord, StatsReport};
use crate::baselines::{run_ba, run_pso};
use crate::continuous::{ContinuousProblem, ContinuousSpace};
use crate::engine::{run_aoa, RunResult};
use crate::maze::MazeSpace;
use crate::maze_io::{class_label, load_instances, parse_maze_file};
use crate::seed::run_seed;
use crate::{Error, Result, SearchSpace};

#[derive(Debug, Clone)]
pub enum InstanceSpace {
    Maze(MazeSpace),
    Continuous(ContinuousSpace),
}

/// A named problem instance with its report class.
#[derive(Debug, Clone)]
pub struct ExperimentInstance {
    pub id: String,
    pub class: String,
    pub space: InstanceSpace,
}

impl ExperimentInstance {
    pub fn maze(id: impl Into<String>, class: impl Into<String>, space: MazeSpace) -> Self {
        ExperimentInstance {
            id: id.into(),
            class: class.into(),
            space: InstanceSpace::Maze(space),
        }
    }

    pub fn continuous(
        id: impl Into<String>,
        class: impl Into<String>,
        space: ContinuousSpace,
    ) -> Self {
        ExperimentInstance {
            id: id.into(),
            class: class.into(),
            space: InstanceSpace::Continuous(space),
        }
    }
}

/// Report class of a corpus maze: size and SCMP label, e.g. `15x15/SCMP4`.
pub fn maze_class(width: usize, height: usize, connectivity: u32) -> String {
    format!("{width}x{height}/{}", class_label(connectivity))
}

fn maze_space(cfg: &ExperimentConfig, grid: crate::maze::MazeGrid) -> Result<MazeSpace> {
    match cfg.max_length {
        Some(cap) => MazeSpace::with_max_length(grid, cap),
        None => Ok(MazeSpace::new(grid)),
    }
}

/// Resolves the instance set named by the config.
pub fn load_experiment_instances(cfg: &ExperimentConfig) -> Result<Vec<ExperimentInstance>> {
    if let Some(objective) = cfg.problem.objective() {
        let problem =
            ContinuousProblem::cube(objective, cfg.dimension, cfg.lower, cfg.upper, cfg.epsilon)?;
        let id = format!("{}-d{}", objective.name(), cfg.dimension);
        return Ok(vec![ExperimentInstance::continuous(
            id,
            objective.name(),
            ContinuousSpace::new(problem),
        )]);
    }
    let mut out = Vec::new();
    if let Some(path) = &cfg.maze {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file = parse_maze_file(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let starts = match cfg.start {
            Some(s) => vec![s],
            None if file.starts.is_empty() => vec![file.grid.entrance()],
            None => file.starts.clone(),
        };
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "maze".into());
        for (i, s) in starts.into_iter().enumerate() {
            let grid = file.grid.with_entrance(s)?;
            out.push(ExperimentInstance::maze(
                format!("{stem}-s{i:02}"),
                stem.clone(),
                maze_space(cfg, grid)?,
            ));
        }
    }
    if let Some(manifest) = &cfg.manifest {
        for inst in load_instances(manifest)? {
            if !cfg.classes.is_empty() && !cfg.classes.contains(&inst.class) {
                continue;
            }
            if !cfg.sizes.is_empty() && !cfg.sizes.contains(&(inst.width, inst.height)) {
                continue;
            }
            let class = maze_class(inst.width, inst.height, inst.class);
            out.push(ExperimentInstance::maze(
                inst.id,
                class,
                maze_space(cfg, inst.grid)?,
            ));
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no instances selected".into()));
    }
    Ok(out)
}

fn solve<S: SearchSpace>(
    cfg: &ExperimentConfig,
    space: &S,
    seed: u64,
) -> Result<RunResult<S::Position>> {
    match cfg.algorithm {
        Algorithm::Aoa => run_aoa(space, &cfg.params, &cfg.shape, &cfg.budgets, seed),
        Algorithm::Pso => run_pso(space, &cfg.baselines.pso, seed),
        Algorithm::Ba => run_ba(space, &cfg.baselines.ba, seed),
    }
}

fn record<S: SearchSpace>(
    cfg: &ExperimentConfig,
    inst: &ExperimentInstance,
    space: &S,
    run: usize,
) -> RunRecord {
    let seed = run_seed(cfg.seed, &inst.id, run);
    let base = RunRecord {
        instance_id: inst.id.clone(),
        class: inst.class.clone(),
        algorithm: cfg.algorithm.to_string(),
        run,
        seed,
        success: false,
        solution_size: f64::NAN,
        best_fitness: f64::NAN,
        iterations: 0,
        phase: String::new(),
        runtime_s: 0.0,
        error: None,
    };
    match solve(cfg, space, seed) {
        Ok(r) => RunRecord {
            success: r.success,
            solution_size: space.solution_size(&r.best_position),
            best_fitness: r.best_fitness,
            iterations: r.iterations_used,
            phase: r.phase_reached.to_string(),
            runtime_s: r.wall_time,
            ..base
        },
        Err(e) => RunRecord {
            error: Some(e.to_string()),
            ..base
        },
    }
}

/// Executes one run of `inst`; the seed depends only on the master seed,
/// the instance id and `run`, so any cell can be replayed alone.
pub fn run_single(cfg: &ExperimentConfig, inst: &ExperimentInstance, run: usize) -> RunRecord {
    match &inst.space {
        InstanceSpace::Maze(s) => record(cfg, inst, s, run),
        InstanceSpace::Continuous(s) => record(cfg, inst, s, run),
    }
}

#[derive(Default)]
struct Tally {
    runs: usize,
    successes: usize,
    size_sum: f64,
    time_sum: f64,
    instances: std::collections::BTreeSet<String>,
}

impl Tally {
    fn add(&mut self, r: &RunRecord) {
        self.runs += 1;
        self.time_sum += r.runtime_s;
        if r.success {
            self.successes += 1;
            self.size_sum += r.solution_size;
        }
        self.instances.insert(r.instance_id.clone());
    }

    fn success_rate(&self) -> f64 {
        100.0 * self.successes as f64 / self.runs as f64
    }

    fn mean_size(&self) -> Option<f64> {
        (self.successes > 0).then(|| self.size_sum / self.successes as f64)
    }

    fn mean_time(&self) -> f64 {
        self.time_sum / self.runs as f64
    }
}

/// Class and instance aggregates of per-run rows. Rows are sorted first, so
/// the result does not depend on the order runs finished in.
pub fn aggregate(mut runs: Vec<RunRecord>) -> StatsReport {
    runs.sort_by(|a, b| {
        (&a.class, &a.instance_id, &a.algorithm, a.run).cmp(&(
            &b.class,
            &b.instance_id,
            &b.algorithm,
            b.run,
        ))
    });
    let mut classes: BTreeMap<(String, String), Tally> = BTreeMap::new();
    let mut instances: BTreeMap<(String, String, String), Tally> = BTreeMap::new();
    for r in &runs {
        classes
            .entry((r.class.clone(), r.algorithm.clone()))
            .or_default()
            .add(r);
        instances
            .entry((r.class.clone(), r.instance_id.clone(), r.algorithm.clone()))
            .or_default()
            .add(r);
    }
    StatsReport {
        classes: classes
            .into_iter()
            .map(|((class, algorithm), t)| ClassRow {
                class,
                algorithm,
                success_rate_pct: t.success_rate(),
                mean_solution_size: t.mean_size(),
                mean_runtime_s: t.mean_time(),
                runs: t.runs,
                instances: t.instances.len(),
            })
            .collect(),
        instances: instances
            .into_iter()
            .map(|((class, instance_id, algorithm), t)| InstanceRow {
                instance_id,
                class,
                algorithm,
                success_rate_pct: t.success_rate(),
                mean_solution_size: t.mean_size(),
                mean_runtime_s: t.mean_time(),
                runs: t.runs,
            })
            .collect(),
        runs,
    }
}

/// Runs `cfg.runs` seeded runs on every instance and aggregates them.
pub fn run_instances(
    cfg: &ExperimentConfig,
    instances: &[ExperimentInstance],
) -> Result<StatsReport> {
    if cfg.runs == 0 {
        return Err(Error::param("runs", "must be at least 1"));
    }
    let jobs: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..cfg.runs).map(move |r| (i, r)))
        .collect();
    let work = || -> Vec<RunRecord> {
        jobs.par_iter()
            .map(|&(i, r)| run_single(cfg, &instances[i], r))
            .collect()
    };
    let runs = match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let failed = runs.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        log::warn!("{failed} runs failed; see the error column");
    }
    Ok(aggregate(runs))
}

/// Loads the configured instances, runs them and writes the configured
/// outputs.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<StatsReport> {
    cfg.validate()?;
    let instances = load_experiment_instances(cfg)?;
    let report = run_instances(cfg, &instances)?;
    if let Some(out) = &cfg.output {
        super::report::write_report(
            &report.classes,
            out,
            super::report::ReportFormat::from_path(out),
        )?;
    }
    if let Some(out) = &cfg.runs_output {
        super::report::write_runs(&report.runs, out)?;
    }
    Ok(report)
}
