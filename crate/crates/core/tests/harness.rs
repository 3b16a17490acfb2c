use std::collections::BTreeMap;
use std::path::Path;

use orca_core::harness::{
    aggregate, classes_csv, classes_json, load_experiment_instances, parse_budgets,
    parse_classes_csv, parse_classes_json, parse_shape, rank, run_instances, runs_csv, sweep,
    Algorithm, ClassRow, ExperimentConfig, ExperimentInstance, Problem, RankEntry, RunRecord,
    SweepAxis, SweepGrid,
};
use orca_core::maze::{Cell, MazeGrid, MazeSpace};
use orca_core::{AlgorithmParams, Error, PhaseBudgets, PopulationShape};

fn record(class: &str, inst: &str, run: usize, success: bool, size: f64, rt: f64) -> RunRecord {
    RunRecord {
        instance_id: inst.into(),
        class: class.into(),
        algorithm: "aoa".into(),
        run,
        seed: run as u64,
        success,
        solution_size: size,
        best_fitness: if success { 0.0 } else { 3.0 },
        iterations: 1,
        phase: "motion".into(),
        runtime_s: rt,
        error: None,
    }
}

fn trivial_instance() -> ExperimentInstance {
    let grid = MazeGrid::trivial(5, 5, [Cell::new(0, 0)], Cell::new(2, 2)).unwrap();
    ExperimentInstance::maze("trivial", "5x5/SCMP1", MazeSpace::new(grid))
}

fn open_instances() -> Vec<ExperimentInstance> {
    (0..2)
        .map(|i| {
            let grid = MazeGrid::open(8, 8, Cell::new(i, 0), Cell::new(7, 7)).unwrap();
            ExperimentInstance::maze(format!("open-{i}"), "8x8/open", MazeSpace::new(grid))
        })
        .collect()
}

fn small_config() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    cfg.apply_text("runs = 4\nbudgets = 3/10/10/10\n").unwrap();
    cfg
}

fn tuned_file() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/tuned.conf")
}

#[test]
fn tuned_file_matches_defaults() {
    let cfg = ExperimentConfig::load(&tuned_file()).unwrap();
    assert_eq!(cfg, ExperimentConfig::default());
    assert_eq!(cfg.params, AlgorithmParams::tuned());
    assert_eq!(cfg.shape, PopulationShape::tuned());
    assert_eq!(cfg.budgets, PhaseBudgets::tuned());
}

#[test]
fn line_and_json_configs_agree() {
    let mut a = ExperimentConfig::default();
    a.apply_text("# comment\nalgorithm = pso\ngamma = 0.75  # trailing\nsizes = 15x15,30x30\nfrequency = 1,2\n")
        .unwrap();
    let mut b = ExperimentConfig::default();
    b.apply_text(
        r#"{"algorithm": "pso", "gamma": 0.75, "sizes": ["15x15", "30x30"], "frequency": [1, 2]}"#,
    )
    .unwrap();
    assert_eq!(a, b);
    assert_eq!(a.algorithm, Algorithm::Pso);
    assert_eq!(a.sizes, vec![(15, 15), (30, 30)]);
    assert_eq!((a.params.f_min, a.params.f_max), (1.0, 2.0));
}

#[test]
fn settings_text_round_trips() {
    let mut cfg = ExperimentConfig::default();
    cfg.apply_overrides([
        "problem=rastrigin",
        "dimension=4",
        "shape=2x4x10",
        "pso.swarm_size=12",
        "workers=2",
    ])
    .unwrap();
    let mut back = ExperimentConfig::default();
    back.apply_text(&cfg.to_settings()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn unknown_and_bad_settings_are_rejected() {
    let mut cfg = ExperimentConfig::default();
    assert!(matches!(
        cfg.set("gama", "0.5"),
        Err(Error::UnknownParameter(_))
    ));
    assert!(cfg.set("gamma", "half").is_err());
    assert!(cfg.set("algorithm", "ga").is_err());
    assert!(cfg.apply_overrides(["gamma"]).is_err());
    assert!(parse_shape("4x2").is_err());
    assert!(parse_budgets("5/50/30").is_err());
    cfg.set("gamma", "-1").unwrap();
    assert!(cfg.validate_solver().is_err());
}

#[test]
fn shape_and_budget_strings() {
    let s = parse_shape("4x4x10").unwrap();
    assert_eq!(
        (s.clans, s.pods_per_clan, s.individuals_per_pod, s.size()),
        (4, 4, 10, 160)
    );
    let b = parse_budgets("10/50/50/50").unwrap();
    assert_eq!((b.max_iter, b.total_inner()), (10, 1500));
}

#[test]
fn aggregate_matches_brute_force() {
    let mut runs = Vec::new();
    let mut k = 0u32;
    for class in ["a", "b"] {
        for inst in 0..3 {
            for run in 0..5 {
                k = k.wrapping_mul(1_103_515_245).wrapping_add(12_345);
                let ok = !k.is_multiple_of(3);
                runs.push(record(
                    class,
                    &format!("{class}{inst}"),
                    run,
                    ok,
                    f64::from(k % 40),
                    f64::from(k % 7) / 1e3,
                ));
            }
        }
    }
    runs.reverse();
    let report = aggregate(runs.clone());
    let mut by_class: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
    for r in &runs {
        by_class.entry(r.class.as_str()).or_default().push(r);
    }
    assert_eq!(report.classes.len(), by_class.len());
    for row in &report.classes {
        let rs = &by_class[row.class.as_str()];
        let ok: Vec<_> = rs.iter().filter(|r| r.success).collect();
        let sr = 100.0 * ok.len() as f64 / rs.len() as f64;
        let ss = ok.iter().map(|r| r.solution_size).sum::<f64>() / ok.len() as f64;
        let rt = rs.iter().map(|r| r.runtime_s).sum::<f64>() / rs.len() as f64;
        assert!((row.success_rate_pct - sr).abs() < 1e-9);
        assert!((row.mean_solution_size.unwrap() - ss).abs() < 1e-9);
        assert!((row.mean_runtime_s - rt).abs() < 1e-12);
        assert_eq!((row.runs, row.instances), (15, 3));
    }
    assert_eq!(report.instances.len(), 6);
    assert_eq!(
        aggregate(runs.into_iter().rev().collect()).classes,
        report.classes
    );
}

#[test]
fn unsolved_class_has_no_size() {
    let report = aggregate(vec![record("x", "x0", 0, false, 12.0, 0.0)]);
    assert_eq!(report.classes[0].success_rate_pct, 0.0);
    assert_eq!(report.classes[0].mean_solution_size, None);
    let csv = classes_csv(&report.classes).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("x,aoa,0.0,,"));
}

#[test]
fn trivial_instance_reports_full_success_and_empty_path() {
    let mut cfg = small_config();
    cfg.runs = 3;
    let report = run_instances(&cfg, &[trivial_instance()]).unwrap();
    let row = &report.classes[0];
    assert_eq!(row.success_rate_pct, 100.0);
    assert_eq!(row.mean_solution_size, Some(0.0));
    assert_eq!((row.runs, row.instances), (3, 1));
    assert!(report
        .runs
        .iter()
        .all(|r| r.iterations == 1 && r.error.is_none()));
}

fn strip_runtime(csv: &str, column: usize) -> String {
    csv.lines()
        .map(|l| {
            let mut f: Vec<&str> = l.split(',').collect();
            f.remove(column);
            f.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn repeated_experiments_agree_except_runtime() {
    let inst = open_instances();
    for algorithm in ["aoa", "pso", "ba"] {
        let mut cfg = small_config();
        cfg.set("algorithm", algorithm).unwrap();
        let a = run_instances(&cfg, &inst).unwrap();
        cfg.workers = Some(1);
        let b = run_instances(&cfg, &inst).unwrap();
        assert_eq!(
            strip_runtime(&classes_csv(&a.classes).unwrap(), 4),
            strip_runtime(&classes_csv(&b.classes).unwrap(), 4)
        );
        assert_eq!(
            strip_runtime(&runs_csv(&a.runs).unwrap(), 10),
            strip_runtime(&runs_csv(&b.runs).unwrap(), 10)
        );
    }
}

#[test]
fn master_seed_changes_run_seeds() {
    let inst = open_instances();
    let mut cfg = small_config();
    let a = run_instances(&cfg, &inst).unwrap();
    cfg.seed = 2;
    let b = run_instances(&cfg, &inst).unwrap();
    assert!(a.runs.iter().zip(&b.runs).all(|(x, y)| x.seed != y.seed));
}

#[test]
fn csv_and_json_reports_round_trip() {
    assert_eq!(
        classes_csv(&[]).unwrap().trim_end(),
        "class,algorithm,success_rate_pct,mean_solution_size,mean_runtime_s,runs,instances"
    );
    assert!(parse_classes_csv(&classes_csv(&[]).unwrap())
        .unwrap()
        .is_empty());
    let rows = vec![
        ClassRow {
            class: "15x15/SCMP1".into(),
            algorithm: "aoa".into(),
            success_rate_pct: 98.333_333,
            mean_solution_size: Some(41.256),
            mean_runtime_s: 0.001,
            runs: 6000,
            instances: 120,
        },
        ClassRow {
            class: "30x30/SCMP4".into(),
            algorithm: "ba".into(),
            success_rate_pct: 0.0,
            mean_solution_size: None,
            mean_runtime_s: 0.123_456,
            runs: 50,
            instances: 1,
        },
    ];
    let csv = classes_csv(&rows).unwrap();
    assert_eq!(
        csv.lines().nth(1).unwrap(),
        "15x15/SCMP1,aoa,98.3,41.26,0.0010,6000,120"
    );
    let parsed = parse_classes_csv(&csv).unwrap();
    let rounded: Vec<_> = rows.iter().map(ClassRow::rounded).collect();
    assert_eq!(parsed, rounded);
    assert_eq!(
        parse_classes_json(&classes_json(&parsed).unwrap()).unwrap(),
        rounded
    );
    assert_eq!(
        classes_csv(&parse_classes_json(&classes_json(&rows).unwrap()).unwrap()).unwrap(),
        csv
    );
    assert!(parse_classes_csv("class,algo\nx,y\n").is_err());
}

#[test]
fn continuous_config_builds_one_instance() {
    let mut cfg = ExperimentConfig::default();
    cfg.apply_overrides(["problem=sphere", "dimension=3"])
        .unwrap();
    assert_eq!(cfg.problem, Problem::Sphere);
    let inst = load_experiment_instances(&cfg).unwrap();
    assert_eq!(inst.len(), 1);
    assert_eq!(inst[0].id, "sphere-d3");
    assert!(load_experiment_instances(&ExperimentConfig::default()).is_err());
}

#[test]
fn preset_grids_have_the_table_values() {
    let pop = SweepAxis::preset("population").unwrap();
    let sizes: Vec<usize> = pop
        .values
        .iter()
        .map(|v| parse_shape(v).unwrap().size())
        .collect();
    assert_eq!(sizes, [20, 40, 40, 80, 40, 80, 80, 160]);
    assert_eq!(pop.labels[0], "Pop1");
    let iter = SweepAxis::preset("iterations").unwrap();
    let totals: Vec<usize> = iter
        .values
        .iter()
        .map(|v| parse_budgets(v).unwrap().total_inner())
        .collect();
    let oracle: Vec<usize> = iter
        .values
        .iter()
        .map(|v| {
            let n: Vec<usize> = v.split('/').map(|x| x.parse().unwrap()).collect();
            n[0] * (n[1] + n[2] + n[3])
        })
        .collect();
    assert_eq!(totals, oracle);
    assert_eq!(
        totals,
        [450, 550, 550, 650, 550, 650, 650, 750, 900, 1100, 1100, 1300, 1100, 1300, 1300, 1500]
    );
    assert_eq!(iter.labels[15], "Iter16");
    assert!(SweepAxis::preset("colour").is_err());
}

#[test]
fn sweep_grid_cells_and_validation() {
    let template = small_config();
    assert_eq!(
        SweepGrid::default().cells(&template).unwrap()[0].name,
        "base"
    );
    let grid = SweepGrid::parse("gamma = 0.25;0.75\nshape = 2x2x5;4x2x5;4x4x10\n").unwrap();
    let cells = grid.cells(&template).unwrap();
    assert_eq!(grid.len(), 6);
    let names: Vec<_> = cells.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names[0], "gamma=0.25_shape=2x2x5");
    assert_eq!(names[1], "gamma=0.25_shape=4x2x5");
    assert_eq!(names[3], "gamma=0.75_shape=2x2x5");
    assert_eq!(cells[5].config.shape.size(), 160);
    assert_eq!(cells[5].config.params.gamma, 0.75);
    let json = SweepGrid::parse(r#"{"delta": [0.25, 0.5], "preset": "frequency"}"#).unwrap();
    assert_eq!(json.len(), 6);
    assert!(matches!(
        SweepGrid::parse("gama = 1;2").unwrap().validate(&template),
        Err(Error::UnknownParameter(_))
    ));
    assert!(SweepGrid::parse("gamma = 0.5;x")
        .unwrap()
        .validate(&template)
        .is_err());
}

#[test]
fn ranking_orders_by_rate_then_size_then_time() {
    let e = |name: &str, sr: f64, ss: Option<f64>, rt: f64| RankEntry {
        name: name.into(),
        success_rate_pct: sr,
        mean_solution_size: ss,
        mean_runtime_s: rt,
    };
    let mut v = vec![
        e("slow", 100.0, Some(10.0), 2.0),
        e("none", 0.0, None, 0.1),
        e("long", 100.0, Some(12.0), 0.1),
        e("fast", 100.0, Some(10.0), 1.0),
        e("weak", 90.0, Some(1.0), 0.1),
    ];
    rank(&mut v);
    let order: Vec<_> = v.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(order, ["fast", "slow", "long", "weak", "none"]);
}

#[test]
fn sweep_runs_every_cell() {
    let template = small_config();
    let grid = SweepGrid::parse("algorithm = aoa;pso").unwrap();
    let out = sweep(&template, &grid, &open_instances()).unwrap();
    assert_eq!(out.cells.len(), 2);
    assert_eq!(out.ranking.len(), 2);
    for (_, report) in &out.cells {
        assert_eq!(report.runs.len(), 8);
    }
}
