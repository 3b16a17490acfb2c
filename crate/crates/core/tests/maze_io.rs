use std::collections::HashSet;
use std::fs;

use orca_core::maze::{Cell, MazeGrid};
use orca_core::maze_io::{
    build_dataset, class_label, generate_corpus, generate_maze, load_instances,
    measure_connectivity, parse_maze, parse_maze_file, read_manifest, serialize_maze, DatasetSpec,
    MazeFile, MANIFEST_FILE,
};
use orca_core::{Error, ParseErrorKind};
use proptest::prelude::*;

// Oracles read the serialized text, not the grid type.
fn text_rows(grid: &MazeGrid) -> Vec<Vec<char>> {
    serialize_maze(&MazeFile {
        grid: grid.clone(),
        starts: vec![],
    })
    .lines()
    .map(|l| l.chars().collect())
    .collect()
}

fn find(rows: &[Vec<char>], ch: char) -> (usize, usize) {
    for (r, row) in rows.iter().enumerate() {
        if let Some(c) = row.iter().position(|&x| x == ch) {
            return (r, c);
        }
    }
    panic!("no {ch}");
}

fn reachable_by_dfs(rows: &[Vec<char>], from: (usize, usize), to: (usize, usize)) -> bool {
    let h = rows.len() as i64;
    let w = rows[0].len() as i64;
    let mut seen = HashSet::new();
    let mut stack = vec![(from.0 as i64, from.1 as i64)];
    while let Some((r, c)) = stack.pop() {
        if r < 0 || c < 0 || r >= h || c >= w || rows[r as usize][c as usize] == '#' {
            continue;
        }
        if !seen.insert((r, c)) {
            continue;
        }
        if (r as usize, c as usize) == to {
            return true;
        }
        stack.extend([(r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)]);
    }
    false
}

fn connectivity_by_count(rows: &[Vec<char>]) -> f64 {
    let wall = |r: i64, c: i64| {
        r >= 0
            && c >= 0
            && (r as usize) < rows.len()
            && (c as usize) < rows[0].len()
            && rows[r as usize][c as usize] == '#'
    };
    let (mut total, mut linked) = (0, 0);
    for r in 0..rows.len() as i64 {
        for c in 0..rows[0].len() as i64 {
            if wall(r, c) {
                total += 1;
                if wall(r + 1, c) || wall(r - 1, c) || wall(r, c + 1) || wall(r, c - 1) {
                    linked += 1;
                }
            }
        }
    }
    if total == 0 {
        0.0
    } else {
        100.0 * linked as f64 / total as f64
    }
}

#[test]
fn generated_mazes_meet_their_contract() {
    for &(w, h) in &[(15, 15), (30, 30)] {
        for class in [0u32, 30, 60, 100] {
            for seed in 0..5 {
                let grid = generate_maze(w, h, f64::from(class), 0.25, seed).unwrap();
                let rows = text_rows(&grid);
                assert_eq!(rows.len(), h);
                assert!(rows.iter().all(|r| r.len() == w));
                assert_eq!(find(&rows, 'S'), (0, 0));
                assert_eq!(find(&rows, 'E'), (h - 1, w - 1));
                let walls = rows.iter().flatten().filter(|&&c| c == '#').count();
                assert_eq!(walls, (0.25 * (w * h) as f64).floor() as usize);
                assert!(reachable_by_dfs(&rows, (0, 0), (h - 1, w - 1)));
                let conn = connectivity_by_count(&rows);
                assert!((conn - measure_connectivity(&grid)).abs() < 1e-12);
                assert!(
                    (conn - f64::from(class)).abs() <= 5.0,
                    "{w}x{h} c{class} s{seed}: {conn}"
                );
            }
        }
    }
}

#[test]
fn generation_is_seeded() {
    let a = generate_maze(15, 15, 60.0, 0.25, 9).unwrap();
    let b = generate_maze(15, 15, 60.0, 0.25, 9).unwrap();
    let c = generate_maze(15, 15, 60.0, 0.25, 10).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn generator_rejects_bad_arguments() {
    assert!(generate_maze(1, 1, 0.0, 0.25, 0).is_err());
    assert!(generate_maze(15, 15, 101.0, 0.25, 0).is_err());
    assert!(generate_maze(15, 15, 50.0, 1.0, 0).is_err());
}

#[test]
fn starts_are_reachable_and_far_from_exit() {
    let spec = DatasetSpec {
        mazes_per_class: 3,
        sizes: vec![(15, 15)],
        ..DatasetSpec::default()
    };
    let corpus = generate_corpus(&spec).unwrap();
    assert_eq!(corpus.instances.len(), 4 * 3 * 12);
    let ids: HashSet<_> = corpus.instances.iter().map(|i| i.id.clone()).collect();
    assert_eq!(ids.len(), corpus.instances.len());
    for inst in &corpus.instances {
        let rows = text_rows(&inst.grid);
        let exit = (14, 14);
        assert_eq!(find(&rows, 'S'), (inst.start.row, inst.start.col));
        assert!(reachable_by_dfs(
            &rows,
            (inst.start.row, inst.start.col),
            exit
        ));
        assert!(inst.start.manhattan(&Cell::new(14, 14)) >= 8);
    }
    for m in &corpus.mazes {
        let starts: HashSet<_> = m.maze.starts.iter().collect();
        assert_eq!(starts.len(), 12);
    }
}

#[test]
fn dataset_directory_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let spec = DatasetSpec {
        mazes_per_class: 2,
        starts_per_maze: 3,
        sizes: vec![(15, 15), (30, 30)],
        classes: vec![0, 100],
        ..DatasetSpec::default()
    };
    let corpus = build_dataset(&spec, dir.path()).unwrap();
    let manifest = dir.path().join(MANIFEST_FILE);
    let rows = read_manifest(&manifest).unwrap();
    assert_eq!(rows, corpus.manifest());
    assert_eq!(rows.len(), 2 * 2 * 2 * 3);
    for m in &corpus.mazes {
        let text = fs::read_to_string(dir.path().join(&m.file)).unwrap();
        assert_eq!(parse_maze_file(&text).unwrap(), m.maze);
    }
    let loaded = load_instances(&manifest).unwrap();
    assert_eq!(loaded, corpus.instances);
    let again = tempfile::tempdir().unwrap();
    build_dataset(&spec, again.path()).unwrap();
    assert_eq!(
        fs::read(manifest).unwrap(),
        fs::read(again.path().join(MANIFEST_FILE)).unwrap()
    );
}

#[test]
fn missing_maze_file_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let spec = DatasetSpec {
        mazes_per_class: 1,
        starts_per_maze: 1,
        sizes: vec![(15, 15)],
        classes: vec![30],
        ..DatasetSpec::default()
    };
    let corpus = build_dataset(&spec, dir.path()).unwrap();
    fs::remove_file(dir.path().join(&corpus.mazes[0].file)).unwrap();
    assert!(matches!(
        load_instances(&dir.path().join(MANIFEST_FILE)),
        Err(Error::Io { .. })
    ));
}

#[test]
fn class_labels() {
    assert_eq!(class_label(0), "SCMP1");
    assert_eq!(class_label(30), "SCMP2");
    assert_eq!(class_label(60), "SCMP3");
    assert_eq!(class_label(100), "SCMP4");
    assert_eq!(class_label(45), "C045");
}

#[test]
fn parse_errors_carry_positions() {
    let cases: [(&str, usize, usize); 5] = [
        ("S..\n.x.\n..E\n", 2, 2),
        ("S..\n..\n..E\n", 2, 3),
        ("S.S\n...\n..E\n", 1, 3),
        ("S..\n...\n...\n", 3, 1),
        ("", 1, 1),
    ];
    for (text, line, column) in cases {
        match parse_maze(text) {
            Err(Error::Parse {
                line: l, column: c, ..
            }) => {
                assert_eq!((l, c), (line, column), "{text:?}")
            }
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(matches!(
        parse_maze("S.\n.E\n#"),
        Err(Error::Parse {
            kind: ParseErrorKind::NotRectangular {
                expected: 2,
                found: 1
            },
            ..
        })
    ));
}

#[test]
fn start_headers_must_name_free_cells() {
    assert_eq!(
        parse_maze_file("start: 1,0\nS.\n.E\n").unwrap().starts,
        vec![Cell::new(1, 0)]
    );
    assert!(parse_maze_file("start: 0,1\nS#\n.E\n").is_err());
    assert!(parse_maze_file("start: x\nS.\n.E\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips(w in 2usize..12, h in 2usize..12, walls in prop::collection::vec(any::<bool>(), 144)) {
        let obstacles: Vec<Cell> = (0..h)
            .flat_map(|r| (0..w).map(move |c| Cell::new(r, c)))
            .filter(|c| walls[c.row * 12 + c.col])
            .filter(|c| *c != Cell::new(0, 0) && *c != Cell::new(h - 1, w - 1))
            .collect();
        let grid = MazeGrid::new(w, h, obstacles, Cell::new(0, 0), Cell::new(h - 1, w - 1)).unwrap();
        let file = MazeFile { grid, starts: vec![Cell::new(0, 0)] };
        let text = serialize_maze(&file);
        prop_assert_eq!(parse_maze_file(&text).unwrap(), file.clone());
        prop_assert_eq!(serialize_maze(&parse_maze_file(&text).unwrap()), text);
        let rows = text_rows(&file.grid);
        prop_assert_eq!(file.grid.exit_reachable(), reachable_by_dfs(&rows, (0, 0), (h - 1, w - 1)));
    }
}
