use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::BaselineParams;
use crate::continuous::Objective;
use crate::engine::{AlgorithmParams, PhaseBudgets, PopulationShape};
use crate::maze::Cell;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Aoa,
    Pso,
    Ba,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Aoa => "aoa",
            Algorithm::Pso => "pso",
            Algorithm::Ba => "ba",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "aoa" => Ok(Algorithm::Aoa),
            "pso" => Ok(Algorithm::Pso),
            "ba" => Ok(Algorithm::Ba),
            other => Err(Error::param(
                "algorithm",
                format!("unknown algorithm `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Maze,
    Sphere,
    Rastrigin,
}

impl Problem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Problem::Maze => "maze",
            Problem::Sphere => "sphere",
            Problem::Rastrigin => "rastrigin",
        }
    }

    pub fn objective(&self) -> Option<Objective> {
        match self {
            Problem::Maze => None,
            Problem::Sphere => Some(Objective::Sphere),
            Problem::Rastrigin => Some(Objective::Rastrigin),
        }
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "maze" => Ok(Problem::Maze),
            "sphere" => Ok(Problem::Sphere),
            "rastrigin" => Ok(Problem::Rastrigin),
            other => Err(Error::param(
                "problem",
                format!("unknown problem `{other}`"),
            )),
        }
    }
}

/// Everything one experiment needs. Built from defaults and then patched
/// key by key through [`ExperimentConfig::set`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub problem: Problem,
    /// Dataset manifest; all of its instances are candidates.
    pub manifest: Option<PathBuf>,
    /// Connectivity classes kept from the manifest; empty keeps all.
    pub classes: Vec<u32>,
    /// Maze sizes kept from the manifest; empty keeps all.
    pub sizes: Vec<(usize, usize)>,
    /// A single maze file instead of a manifest.
    pub maze: Option<PathBuf>,
    /// Start cell for `maze`; defaults to the file's starts.
    pub start: Option<Cell>,
    /// Length cap for maze paths; `None` uses the space default.
    pub max_length: Option<usize>,
    pub dimension: usize,
    pub lower: f64,
    pub upper: f64,
    pub epsilon: f64,
    pub shape: PopulationShape,
    pub budgets: PhaseBudgets,
    pub params: AlgorithmParams,
    pub baselines: BaselineParams,
    pub runs: usize,
    pub seed: u64,
    /// Worker threads; `None` lets the pool decide.
    pub workers: Option<usize>,
    /// Class report destination.
    pub output: Option<PathBuf>,
    /// Per-run CSV destination.
    pub runs_output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algorithm: Algorithm::Aoa,
            problem: Problem::Maze,
            manifest: None,
            classes: Vec::new(),
            sizes: Vec::new(),
            maze: None,
            start: None,
            max_length: None,
            dimension: 10,
            lower: -5.0,
            upper: 5.0,
            epsilon: 1e-2,
            shape: PopulationShape::tuned(),
            budgets: PhaseBudgets::tuned(),
            params: AlgorithmParams::tuned(),
            baselines: BaselineParams::default(),
            runs: 50,
            seed: 1,
            workers: None,
            output: None,
            runs_output: None,
        }
    }
}

/// Every key accepted by [`ExperimentConfig::set`].
pub const CONFIG_KEYS: &[&str] = &[
    "algorithm",
    "problem",
    "manifest",
    "classes",
    "sizes",
    "maze",
    "start",
    "max_length",
    "dimension",
    "lower",
    "upper",
    "epsilon",
    "shape",
    "clans",
    "pods",
    "individuals",
    "budgets",
    "max_iter",
    "max_motions",
    "max_echo_motions",
    "max_hunt_motions",
    "frequency",
    "w0",
    "gamma",
    "delta",
    "alpha",
    "f_min",
    "f_max",
    "a0",
    "a_min",
    "pso.inertia",
    "pso.cognitive",
    "pso.social",
    "pso.swarm_size",
    "pso.iterations",
    "ba.f_min",
    "ba.f_max",
    "ba.loudness",
    "ba.pulse_rate",
    "ba.decay",
    "ba.loudness_floor",
    "ba.swarm_size",
    "ba.iterations",
    "runs",
    "seed",
    "workers",
    "output",
    "runs_output",
];

fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::param(key, format!("cannot parse `{value}`")))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| num(key, s))
        .collect()
}

fn parse_size(key: &str, value: &str) -> Result<(usize, usize)> {
    let (w, h) = value
        .trim()
        .split_once('x')
        .ok_or_else(|| Error::param(key, format!("expected WxH, got `{value}`")))?;
    Ok((num(key, w)?, num(key, h)?))
}

/// `CxPxI`, for instance `4x2x5`.
pub fn parse_shape(value: &str) -> Result<PopulationShape> {
    let parts: Vec<usize> = value
        .trim()
        .split('x')
        .map(|p| num("shape", p))
        .collect::<Result<_>>()?;
    match parts[..] {
        [c, p, i] => PopulationShape::new(c, p, i),
        _ => Err(Error::param(
            "shape",
            format!("expected CxPxI, got `{value}`"),
        )),
    }
}

/// `G/M/E/H`, for instance `5/50/30/30`.
pub fn parse_budgets(value: &str) -> Result<PhaseBudgets> {
    let parts: Vec<usize> = value
        .trim()
        .split('/')
        .map(|p| num("budgets", p))
        .collect::<Result<_>>()?;
    match parts[..] {
        [g, m, e, h] => PhaseBudgets::new(g, m, e, h),
        _ => Err(Error::param(
            "budgets",
            format!("expected G/M/E/H, got `{value}`"),
        )),
    }
}

fn optional_count(key: &str, value: &str) -> Result<Option<usize>> {
    match value.trim() {
        "" | "auto" => Ok(None),
        v => num(key, v).map(Some),
    }
}

fn path(value: &str) -> Option<PathBuf> {
    match value.trim() {
        "" => None,
        v => Some(PathBuf::from(v)),
    }
}

impl ExperimentConfig {
    /// Applies one `key = value` setting. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        let v = value.trim();
        match key {
            "algorithm" => self.algorithm = v.parse()?,
            "problem" => self.problem = v.parse()?,
            "manifest" => self.manifest = path(v),
            "classes" => self.classes = list(key, v)?,
            "sizes" => {
                self.sizes = v
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_size(key, s))
                    .collect::<Result<_>>()?
            }
            "maze" => self.maze = path(v),
            "start" => {
                self.start = match v {
                    "" => None,
                    _ => {
                        let rc: Vec<usize> = list(key, v)?;
                        match rc[..] {
                            [r, c] => Some(Cell::new(r, c)),
                            _ => return Err(Error::param(key, "expected ROW,COL")),
                        }
                    }
                }
            }
            "max_length" => self.max_length = optional_count(key, v)?,
            "dimension" => self.dimension = num(key, v)?,
            "lower" => self.lower = num(key, v)?,
            "upper" => self.upper = num(key, v)?,
            "epsilon" => self.epsilon = num(key, v)?,
            "shape" => self.shape = parse_shape(v)?,
            "clans" => self.shape.clans = num(key, v)?,
            "pods" => self.shape.pods_per_clan = num(key, v)?,
            "individuals" => self.shape.individuals_per_pod = num(key, v)?,
            "budgets" => self.budgets = parse_budgets(v)?,
            "max_iter" => self.budgets.max_iter = num(key, v)?,
            "max_motions" => self.budgets.max_motions = num(key, v)?,
            "max_echo_motions" => self.budgets.max_echo_motions = num(key, v)?,
            "max_hunt_motions" => self.budgets.max_hunt_motions = num(key, v)?,
            "frequency" => {
                let f: Vec<f64> = v
                    .split([',', ':'])
                    .map(|p| num(key, p))
                    .collect::<Result<_>>()?;
                match f[..] {
                    [lo, hi] => {
                        self.params.f_min = lo;
                        self.params.f_max = hi;
                    }
                    _ => return Err(Error::param(key, "expected F_MIN,F_MAX")),
                }
            }
            "w0" => self.params.w0 = num(key, v)?,
            "gamma" => self.params.gamma = num(key, v)?,
            "delta" => self.params.delta = num(key, v)?,
            "alpha" => self.params.alpha = num(key, v)?,
            "f_min" => self.params.f_min = num(key, v)?,
            "f_max" => self.params.f_max = num(key, v)?,
            "a0" => self.params.a0 = num(key, v)?,
            "a_min" => self.params.a_min = num(key, v)?,
            "pso.inertia" => self.baselines.pso.inertia = num(key, v)?,
            "pso.cognitive" => self.baselines.pso.cognitive = num(key, v)?,
            "pso.social" => self.baselines.pso.social = num(key, v)?,
            "pso.swarm_size" => self.baselines.pso.swarm_size = optional_count(key, v)?,
            "pso.iterations" => self.baselines.pso.iterations = optional_count(key, v)?,
            "ba.f_min" => self.baselines.ba.f_min = num(key, v)?,
            "ba.f_max" => self.baselines.ba.f_max = num(key, v)?,
            "ba.loudness" => self.baselines.ba.loudness = num(key, v)?,
            "ba.pulse_rate" => self.baselines.ba.pulse_rate = num(key, v)?,
            "ba.decay" => self.baselines.ba.decay = num(key, v)?,
            "ba.loudness_floor" => self.baselines.ba.loudness_floor = num(key, v)?,
            "ba.swarm_size" => self.baselines.ba.swarm_size = optional_count(key, v)?,
            "ba.iterations" => self.baselines.ba.iterations = optional_count(key, v)?,
            "runs" => self.runs = num(key, v)?,
            "seed" => self.seed = num(key, v)?,
            "workers" => self.workers = optional_count(key, v)?,
            "output" => self.output = path(v),
            "runs_output" => self.runs_output = path(v),
            _ => return Err(Error::UnknownParameter(key.to_string())),
        }
        Ok(())
    }

    /// Applies `KEY=VALUE` overrides in order.
    pub fn apply_overrides<'a>(&mut self, pairs: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for pair in pairs {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected KEY=VALUE, got `{pair}`")))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Patches the config from flat `key = value` lines or a flat JSON
    /// object. `#` starts a comment in the line format.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (key, value) in parse_settings(text)? {
            self.set(&key, &value)?;
        }
        Ok(())
    }

    /// Defaults patched by a config file. Relative paths inside the file are
    /// resolved against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = ExperimentConfig::default();
        cfg.apply_text(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if let Some(dir) = path.parent() {
            for inner in [&mut cfg.manifest, &mut cfg.maze].into_iter().flatten() {
                if inner.is_relative() {
                    *inner = dir.join(&*inner);
                }
            }
        }
        Ok(cfg)
    }

    /// Full check, including that referenced files exist.
    pub fn validate(&self) -> Result<()> {
        self.validate_solver()?;
        if self.problem == Problem::Maze {
            if self.manifest.is_none() && self.maze.is_none() {
                return Err(Error::Config(
                    "maze problems need `manifest` or `maze`".into(),
                ));
            }
            for p in self.manifest.iter().chain(self.maze.iter()) {
                if !p.exists() {
                    return Err(Error::Config(format!("{} does not exist", p.display())));
                }
            }
        } else if self.dimension == 0
            || self.lower.is_nan()
            || self.upper.is_nan()
            || self.lower >= self.upper
            || self.epsilon.is_nan()
            || self.epsilon <= 0.0
        {
            return Err(Error::Config(
                "continuous problems need dimension >= 1, lower < upper, epsilon > 0".into(),
            ));
        }
        Ok(())
    }

    /// Checks the run settings alone, for callers that bring their own
    /// instances.
    pub fn validate_solver(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::param("runs", "must be at least 1"));
        }
        if self.workers == Some(0) {
            return Err(Error::param("workers", "must be at least 1"));
        }
        self.shape.validate()?;
        self.budgets.validate()?;
        match self.algorithm {
            Algorithm::Aoa => self.params.validate()?,
            Algorithm::Pso => self.baselines.pso.validate()?,
            Algorithm::Ba => self.baselines.ba.validate()?,
        }
        Ok(())
    }

    /// The config as flat `key = value` lines that [`ExperimentConfig::apply_text`]
    /// reads back to an equal value.
    pub fn to_settings(&self) -> String {
        let p = &self.params;
        let pso = &self.baselines.pso;
        let ba = &self.baselines.ba;
        let opt = |o: Option<usize>| o.map_or_else(|| "auto".to_string(), |v| v.to_string());
        let opt_path = |o: &Option<PathBuf>| {
            o.as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default()
        };
        let join = |v: Vec<String>| v.join(",");
        let b = &self.budgets;
        let lines = [
            ("algorithm", self.algorithm.to_string()),
            ("problem", self.problem.as_str().to_string()),
            ("manifest", opt_path(&self.manifest)),
            (
                "classes",
                join(self.classes.iter().map(u32::to_string).collect()),
            ),
            (
                "sizes",
                join(self.sizes.iter().map(|(w, h)| format!("{w}x{h}")).collect()),
            ),
            ("maze", opt_path(&self.maze)),
            (
                "start",
                self.start
                    .map(|c| format!("{},{}", c.row, c.col))
                    .unwrap_or_default(),
            ),
            ("max_length", opt(self.max_length)),
            ("dimension", self.dimension.to_string()),
            ("lower", self.lower.to_string()),
            ("upper", self.upper.to_string()),
            ("epsilon", self.epsilon.to_string()),
            ("shape", self.shape.to_string()),
            (
                "budgets",
                format!(
                    "{}/{}/{}/{}",
                    b.max_iter, b.max_motions, b.max_echo_motions, b.max_hunt_motions
                ),
            ),
            ("w0", p.w0.to_string()),
            ("gamma", p.gamma.to_string()),
            ("delta", p.delta.to_string()),
            ("alpha", p.alpha.to_string()),
            ("f_min", p.f_min.to_string()),
            ("f_max", p.f_max.to_string()),
            ("a0", p.a0.to_string()),
            ("a_min", p.a_min.to_string()),
            ("pso.inertia", pso.inertia.to_string()),
            ("pso.cognitive", pso.cognitive.to_string()),
            ("pso.social", pso.social.to_string()),
            ("pso.swarm_size", opt(pso.swarm_size)),
            ("pso.iterations", opt(pso.iterations)),
            ("ba.f_min", ba.f_min.to_string()),
            ("ba.f_max", ba.f_max.to_string()),
            ("ba.loudness", ba.loudness.to_string()),
            ("ba.pulse_rate", ba.pulse_rate.to_string()),
            ("ba.decay", ba.decay.to_string()),
            ("ba.loudness_floor", ba.loudness_floor.to_string()),
            ("ba.swarm_size", opt(ba.swarm_size)),
            ("ba.iterations", opt(ba.iterations)),
            ("runs", self.runs.to_string()),
            ("seed", self.seed.to_string()),
            ("workers", opt(self.workers)),
            ("output", opt_path(&self.output)),
            ("runs_output", opt_path(&self.runs_output)),
        ];
        lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

fn json_scalar(key: &str, v: &serde_json::Value) -> Result<String> {
    use serde_json::Value;
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        Value::Null => Ok(String::new()),
        Value::Array(items) => items
            .iter()
            .map(|i| json_scalar(key, i))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.join(",")),
        Value::Object(_) => Err(Error::Config(format!(
            "`{key}`: nested objects are not supported"
        ))),
    }
}

/// Reads flat settings as ordered `(key, value)` pairs, from either the line
/// format or a JSON object.
pub fn parse_settings(text: &str) -> Result<Vec<(String, String)>> {
    if text.trim_start().starts_with('{') {
        let map: serde_json::Map<String, serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
        return map
            .iter()
            .map(|(k, v)| Ok((k.clone(), json_scalar(k, v)?)))
            .collect();
    }
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected KEY = VALUE", n + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}
