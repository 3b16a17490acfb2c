use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Outcome of one seeded run inside an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: String,
    pub class: String,
    pub algorithm: String,
    pub run: usize,
    pub seed: u64,
    pub success: bool,
    pub solution_size: f64,
    pub best_fitness: f64,
    pub iterations: usize,
    pub phase: String,
    pub runtime_s: f64,
    /// Set when the run could not be carried out; such runs count as
    /// failures.
    pub error: Option<String>,
}

/// One aggregated line of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub class: String,
    pub algorithm: String,
    pub success_rate_pct: f64,
    /// Mean over successful runs; absent when no run succeeded.
    pub mean_solution_size: Option<f64>,
    pub mean_runtime_s: f64,
    pub runs: usize,
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRow {
    pub instance_id: String,
    pub class: String,
    pub algorithm: String,
    pub success_rate_pct: f64,
    pub mean_solution_size: Option<f64>,
    pub mean_runtime_s: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub classes: Vec<ClassRow>,
    pub instances: Vec<InstanceRow>,
    pub runs: Vec<RunRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    /// Guesses the format from a file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ReportFormat::Json,
            _ => ReportFormat::Csv,
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::param(
                "format",
                format!("expected csv or json, got `{other}`"),
            )),
        }
    }
}

/// Column order of the class report.
pub const CLASS_COLUMNS: [&str; 7] = [
    "class",
    "algorithm",
    "success_rate_pct",
    "mean_solution_size",
    "mean_runtime_s",
    "runs",
    "instances",
];

/// Rounds to `places` decimals, the precision the CSV prints.
fn round(v: f64, places: i32) -> f64 {
    let s = 10f64.powi(places);
    (v * s).round() / s
}

impl ClassRow {
    /// The row as printed: SR to one decimal, SS to two, RT to four.
    pub fn rounded(&self) -> ClassRow {
        ClassRow {
            success_rate_pct: round(self.success_rate_pct, 1),
            mean_solution_size: self.mean_solution_size.map(|v| round(v, 2)),
            mean_runtime_s: round(self.mean_runtime_s, 4),
            ..self.clone()
        }
    }

    fn fields(&self) -> [String; 7] {
        [
            self.class.clone(),
            self.algorithm.clone(),
            format!("{:.1}", self.success_rate_pct),
            self.mean_solution_size
                .map(|v| format!("{v:.2}"))
                .unwrap_or_default(),
            format!("{:.4}", self.mean_runtime_s),
            self.runs.to_string(),
            self.instances.to_string(),
        ]
    }
}

fn csv_text(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |source| Error::Csv {
        path: "<memory>".into(),
        source,
    };
    w.write_record(header).map_err(wrap)?;
    for r in rows {
        w.write_record(&r).map_err(wrap)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// The class table as CSV; an empty report yields just the header.
pub fn classes_csv(rows: &[ClassRow]) -> Result<String> {
    csv_text(&CLASS_COLUMNS, rows.iter().map(|r| r.fields().to_vec()))
}

/// The class table as JSON, numbers rounded like the CSV.
pub fn classes_json(rows: &[ClassRow]) -> Result<String> {
    let rounded: Vec<ClassRow> = rows.iter().map(ClassRow::rounded).collect();
    serde_json::to_string_pretty(&rounded).map_err(|source| Error::Json {
        path: "<memory>".into(),
        source,
    })
}

pub fn instances_csv(rows: &[InstanceRow]) -> Result<String> {
    let header = [
        "instance_id",
        "class",
        "algorithm",
        "success_rate_pct",
        "mean_solution_size",
        "mean_runtime_s",
        "runs",
    ];
    csv_text(
        &header,
        rows.iter().map(|r| {
            vec![
                r.instance_id.clone(),
                r.class.clone(),
                r.algorithm.clone(),
                format!("{:.1}", r.success_rate_pct),
                r.mean_solution_size
                    .map(|v| format!("{v:.2}"))
                    .unwrap_or_default(),
                format!("{:.4}", r.mean_runtime_s),
                r.runs.to_string(),
            ]
        }),
    )
}

pub fn runs_csv(rows: &[RunRecord]) -> Result<String> {
    let header = [
        "instance_id",
        "class",
        "algorithm",
        "run",
        "seed",
        "success",
        "solution_size",
        "best_fitness",
        "iterations",
        "phase",
        "runtime_s",
        "error",
    ];
    csv_text(
        &header,
        rows.iter().map(|r| {
            vec![
                r.instance_id.clone(),
                r.class.clone(),
                r.algorithm.clone(),
                r.run.to_string(),
                r.seed.to_string(),
                r.success.to_string(),
                r.solution_size.to_string(),
                r.best_fitness.to_string(),
                r.iterations.to_string(),
                r.phase.clone(),
                format!("{:.6}", r.runtime_s),
                r.error.clone().unwrap_or_default(),
            ]
        }),
    )
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes the class table to `path`.
pub fn write_report(rows: &[ClassRow], path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => classes_csv(rows)?,
        ReportFormat::Json => classes_json(rows)?,
    };
    write_text(path, &text)
}

pub fn write_runs(rows: &[RunRecord], path: &Path) -> Result<()> {
    write_text(path, &runs_csv(rows)?)
}

pub fn write_instances(rows: &[InstanceRow], path: &Path) -> Result<()> {
    write_text(path, &instances_csv(rows)?)
}

fn field<T: FromStr>(record: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    let raw = record.get(i).unwrap_or("");
    raw.parse().map_err(|_| {
        Error::Config(format!(
            "report line {line}: cannot parse `{raw}` in column {}",
            CLASS_COLUMNS[i]
        ))
    })
}

/// Parses a class table written as CSV.
pub fn parse_classes_csv(text: &str) -> Result<Vec<ClassRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr
        .headers()
        .map_err(|source| Error::Csv {
            path: "<report>".into(),
            source,
        })?
        .clone();
    if header.iter().ne(CLASS_COLUMNS) {
        return Err(Error::Config(format!(
            "unexpected report header {header:?}"
        )));
    }
    let mut out = Vec::new();
    for (n, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|source| Error::Csv {
            path: "<report>".into(),
            source,
        })?;
        let line = n + 2;
        let ss = rec.get(3).unwrap_or("");
        out.push(ClassRow {
            class: rec.get(0).unwrap_or("").to_string(),
            algorithm: rec.get(1).unwrap_or("").to_string(),
            success_rate_pct: field(&rec, 2, line)?,
            mean_solution_size: if ss.is_empty() {
                None
            } else {
                Some(field(&rec, 3, line)?)
            },
            mean_runtime_s: field(&rec, 4, line)?,
            runs: field(&rec, 5, line)?,
            instances: field(&rec, 6, line)?,
        });
    }
    Ok(out)
}

pub fn parse_classes_json(text: &str) -> Result<Vec<ClassRow>> {
    serde_json::from_str(text).map_err(|source| Error::Json {
        path: "<report>".into(),
        source,
    })
}

/// Reads a class table in either format, chosen by extension.
pub fn read_report(path: &Path) -> Result<Vec<ClassRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let parsed = match ReportFormat::from_path(path) {
        ReportFormat::Csv => parse_classes_csv(&text),
        ReportFormat::Json => parse_classes_json(&text),
    };
    parsed.map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}
