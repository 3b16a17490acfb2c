//! Experiment runner: configs, seeded multi-run statistics, sweeps and
//! reports.

mod config;
mod experiment;
mod report;
mod sweep;

pub use config::{
    parse_budgets, parse_settings, parse_shape, Algorithm, ExperimentConfig, Problem, CONFIG_KEYS,
};
pub use experiment::{
    aggregate, load_experiment_instances, maze_class, run_experiment, run_instances, run_single,
    ExperimentInstance, InstanceSpace,
};
pub use report::{
    classes_csv, classes_json, instances_csv, parse_classes_csv, parse_classes_json, read_report,
    runs_csv, write_instances, write_report, write_runs, ClassRow, InstanceRow, ReportFormat,
    RunRecord, StatsReport, CLASS_COLUMNS,
};
pub use sweep::{
    rank, rank_order, sweep, RankEntry, SweepAxis, SweepCell, SweepGrid, SweepOutcome,
};
