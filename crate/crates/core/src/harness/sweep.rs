use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::config::{parse_settings, ExperimentConfig, CONFIG_KEYS};
use super::experiment::{run_instances, ExperimentInstance};
use super::report::StatsReport;
use crate::{Error, Result};

/// One swept setting with an optional display label per value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub key: String,
    pub values: Vec<String>,
    pub labels: Vec<String>,
}

impl SweepAxis {
    pub fn new(key: &str, values: &[&str]) -> Self {
        SweepAxis {
            key: key.to_string(),
            values: values.iter().map(|v| v.to_string()).collect(),
            labels: values.iter().map(|v| format!("{key}={v}")).collect(),
        }
    }

    fn labelled(key: &str, prefix: &str, values: &[&str]) -> Self {
        SweepAxis {
            key: key.to_string(),
            values: values.iter().map(|v| v.to_string()).collect(),
            labels: (1..=values.len()).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    /// Named grids: `population` (Pop1-Pop8), `iterations` (Iter1-Iter16),
    /// `frequency`, `gamma`, `delta`, `w0` and `alpha`.
    pub fn preset(name: &str) -> Result<Self> {
        const LEVELS: [&str; 3] = ["0.25", "0.5", "0.75"];
        Ok(match name {
            "population" => SweepAxis::labelled(
                "shape",
                "Pop",
                &[
                    "2x2x5", "2x2x10", "2x4x5", "2x4x10", "4x2x5", "4x2x10", "4x4x5", "4x4x10",
                ],
            ),
            "iterations" => SweepAxis::labelled(
                "budgets",
                "Iter",
                &[
                    "5/30/30/30",
                    "5/30/30/50",
                    "5/30/50/30",
                    "5/30/50/50",
                    "5/50/30/30",
                    "5/50/30/50",
                    "5/50/50/30",
                    "5/50/50/50",
                    "10/30/30/30",
                    "10/30/30/50",
                    "10/30/50/30",
                    "10/30/50/50",
                    "10/50/30/30",
                    "10/50/30/50",
                    "10/50/50/30",
                    "10/50/50/50",
                ],
            ),
            "frequency" => SweepAxis::new("frequency", &["0:1", "1:2", "0:2"]),
            "gamma" | "delta" | "w0" | "alpha" => SweepAxis::new(name, &LEVELS),
            other => return Err(Error::UnknownParameter(format!("preset {other}"))),
        })
    }
}

/// Cartesian product of axes; the last axis varies fastest.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub axes: Vec<SweepAxis>,
}

/// One configured cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub name: String,
    pub config: ExperimentConfig,
}

impl SweepGrid {
    pub fn from_presets(names: &[&str]) -> Result<Self> {
        Ok(SweepGrid {
            axes: names
                .iter()
                .map(|n| SweepAxis::preset(n))
                .collect::<Result<_>>()?,
        })
    }

    /// Reads `key = v1;v2;...` lines, or a JSON object of arrays. The key
    /// `preset` adds named grids.
    pub fn parse(text: &str) -> Result<Self> {
        let mut axes = Vec::new();
        let json = text.trim_start().starts_with('{');
        for (key, value) in parse_settings(text)? {
            let sep = if json { ',' } else { ';' };
            let values: Vec<&str> = value
                .split(sep)
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .collect();
            if key == "preset" {
                for name in values {
                    axes.push(SweepAxis::preset(name)?);
                }
            } else {
                axes.push(SweepAxis::new(&key, &values));
            }
        }
        Ok(SweepGrid { axes })
    }

    /// Rejects unknown keys and unparsable values before anything runs.
    pub fn validate(&self, template: &ExperimentConfig) -> Result<()> {
        for axis in &self.axes {
            if !CONFIG_KEYS.contains(&axis.key.as_str()) {
                return Err(Error::UnknownParameter(axis.key.clone()));
            }
            if axis.values.is_empty() {
                return Err(Error::param(&axis.key, "sweep axis has no values"));
            }
            for v in &axis.values {
                template.clone().set(&axis.key, v)?;
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every cell of the product; an empty grid yields the template alone.
    pub fn cells(&self, template: &ExperimentConfig) -> Result<Vec<SweepCell>> {
        self.validate(template)?;
        if self.axes.is_empty() {
            return Ok(vec![SweepCell {
                name: "base".into(),
                config: template.clone(),
            }]);
        }
        let mut out = Vec::with_capacity(self.len());
        let mut index = vec![0usize; self.axes.len()];
        loop {
            let mut cfg = template.clone();
            let mut names = Vec::with_capacity(self.axes.len());
            for (axis, &i) in self.axes.iter().zip(&index) {
                cfg.set(&axis.key, &axis.values[i])?;
                names.push(axis.labels[i].clone());
            }
            out.push(SweepCell {
                name: names.join("_"),
                config: cfg,
            });
            let mut d = self.axes.len();
            loop {
                if d == 0 {
                    return Ok(out);
                }
                d -= 1;
                index[d] += 1;
                if index[d] < self.axes[d].values.len() {
                    break;
                }
                index[d] = 0;
            }
        }
    }
}

/// Pooled statistics of one sweep cell, used for ranking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub name: String,
    pub success_rate_pct: f64,
    pub mean_solution_size: Option<f64>,
    pub mean_runtime_s: f64,
}

impl RankEntry {
    pub fn from_report(name: &str, report: &StatsReport) -> Self {
        let runs = report.runs.len().max(1) as f64;
        let ok: Vec<_> = report.runs.iter().filter(|r| r.success).collect();
        RankEntry {
            name: name.to_string(),
            success_rate_pct: 100.0 * ok.len() as f64 / runs,
            mean_solution_size: (!ok.is_empty())
                .then(|| ok.iter().map(|r| r.solution_size).sum::<f64>() / ok.len() as f64),
            mean_runtime_s: report.runs.iter().map(|r| r.runtime_s).sum::<f64>() / runs,
        }
    }
}

/// Higher success rate first, then smaller solution size, then shorter
/// runtime.
pub fn rank_order(a: &RankEntry, b: &RankEntry) -> Ordering {
    let size = |e: &RankEntry| e.mean_solution_size.unwrap_or(f64::INFINITY);
    b.success_rate_pct
        .total_cmp(&a.success_rate_pct)
        .then(size(a).total_cmp(&size(b)))
        .then(a.mean_runtime_s.total_cmp(&b.mean_runtime_s))
}

pub fn rank(entries: &mut [RankEntry]) {
    entries.sort_by(rank_order);
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub cells: Vec<(String, StatsReport)>,
    pub ranking: Vec<RankEntry>,
}

/// Runs every cell of `grid` on `instances`.
pub fn sweep(
    template: &ExperimentConfig,
    grid: &SweepGrid,
    instances: &[ExperimentInstance],
) -> Result<SweepOutcome> {
    let cells = grid.cells(template)?;
    let mut reports = Vec::with_capacity(cells.len());
    for cell in cells {
        cell.config.validate_solver()?;
        let report = run_instances(&cell.config, instances)?;
        reports.push((cell.name, report));
    }
    let mut ranking: Vec<RankEntry> = reports
        .iter()
        .map(|(n, r)| RankEntry::from_report(n, r))
        .collect();
    rank(&mut ranking);
    Ok(SweepOutcome {
        cells: reports,
        ranking,
    })
}
