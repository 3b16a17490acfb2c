use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::format::{parse_maze_file, serialize_maze, MazeFile};
use super::generate::generate_maze;
use crate::maze::{Cell, MazeGrid};
use crate::seed::{mix, rng_from_seed};
use crate::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.csv";
const START_STREAM: u64 = 0x5354_4152_5453;

/// Shape of a generated maze corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    /// Connectivity percentages, one class each.
    pub classes: Vec<u32>,
    pub mazes_per_class: usize,
    pub starts_per_maze: usize,
    /// (width, height) pairs.
    pub sizes: Vec<(usize, usize)>,
    pub density: f64,
    pub master_seed: u64,
}

impl Default for DatasetSpec {
    /// Four classes of ten mazes with twelve starts, in 15x15 and 30x30.
    fn default() -> Self {
        DatasetSpec {
            classes: vec![0, 30, 60, 100],
            mazes_per_class: 10,
            starts_per_maze: 12,
            sizes: vec![(15, 15), (30, 30)],
            density: 0.25,
            master_seed: 1,
        }
    }
}

impl DatasetSpec {
    pub fn validate(&self) -> Result<()> {
        if self.classes.is_empty() || self.sizes.is_empty() {
            return Err(Error::param(
                "dataset",
                "needs at least one class and one size",
            ));
        }
        if let Some(c) = self.classes.iter().find(|c| **c > 100) {
            return Err(Error::param(
                "classes",
                format!("connectivity {c} exceeds 100"),
            ));
        }
        if self.mazes_per_class == 0 || self.starts_per_maze == 0 {
            return Err(Error::param(
                "dataset",
                "maze and start counts must be positive",
            ));
        }
        Ok(())
    }

    pub fn instances_per_class(&self) -> usize {
        self.mazes_per_class * self.starts_per_maze
    }
}

/// Table label of a connectivity class: 0/30/60/100 map to SCMP1..SCMP4.
pub fn class_label(connectivity: u32) -> String {
    match connectivity {
        0 => "SCMP1".into(),
        30 => "SCMP2".into(),
        60 => "SCMP3".into(),
        100 => "SCMP4".into(),
        other => format!("C{other:03}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedMaze {
    pub width: usize,
    pub height: usize,
    pub class: u32,
    pub index: usize,
    pub seed: u64,
    /// Path relative to the dataset root, `/`-separated.
    pub file: String,
    pub maze: MazeFile,
}

/// One (maze, start) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: String,
    pub file: String,
    pub class: u32,
    pub width: usize,
    pub height: usize,
    pub start: Cell,
    pub seed: u64,
    /// The maze with its entrance moved to `start`.
    pub grid: MazeGrid,
}

impl Instance {
    pub fn size_label(&self) -> String {
        format!("{}x{}", self.width, self.height)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ManifestRow {
    pub instance_id: String,
    pub file: String,
    pub class: u32,
    pub size: String,
    pub start_row: usize,
    pub start_col: usize,
    pub seed: u64,
}

impl From<&Instance> for ManifestRow {
    fn from(i: &Instance) -> Self {
        ManifestRow {
            instance_id: i.id.clone(),
            file: i.file.clone(),
            class: i.class,
            size: i.size_label(),
            start_row: i.start.row,
            start_col: i.start.col,
            seed: i.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub mazes: Vec<GeneratedMaze>,
    pub instances: Vec<Instance>,
}

impl Corpus {
    pub fn manifest(&self) -> Vec<ManifestRow> {
        self.instances.iter().map(ManifestRow::from).collect()
    }
}

fn pick_starts(grid: &MazeGrid, count: usize, seed: u64) -> Result<Vec<Cell>> {
    let exit = grid.exit();
    let min_distance = (grid.width() + grid.height()).div_ceil(4);
    let reachable = grid.flood_fill(exit);
    let mut eligible: Vec<Cell> = (0..grid.height())
        .flat_map(|r| (0..grid.width()).map(move |c| Cell::new(r, c)))
        .filter(|c| reachable[grid.offset(*c)] && c.manhattan(&exit) >= min_distance)
        .collect();
    if eligible.len() < count {
        return Err(Error::InvalidMaze(format!(
            "only {} start cells at distance >= {min_distance} from the exit",
            eligible.len()
        )));
    }
    let mut rng = rng_from_seed(mix(&[seed, START_STREAM]));
    eligible.shuffle(&mut rng);
    eligible.truncate(count);
    Ok(eligible)
}

/// Generates the corpus in memory.
pub fn generate_corpus(spec: &DatasetSpec) -> Result<Corpus> {
    spec.validate()?;
    let mut mazes = Vec::new();
    let mut instances = Vec::new();
    for &(width, height) in &spec.sizes {
        for &class in &spec.classes {
            for index in 0..spec.mazes_per_class {
                let seed = mix(&[
                    spec.master_seed,
                    width as u64,
                    height as u64,
                    u64::from(class),
                    index as u64,
                ]);
                let grid = generate_maze(width, height, f64::from(class), spec.density, seed)?;
                let starts = pick_starts(&grid, spec.starts_per_maze, seed)?;
                let file = format!("{width}x{height}/c{class:03}/maze_{index:02}.txt");
                for (s, &start) in starts.iter().enumerate() {
                    instances.push(Instance {
                        id: format!("{width}x{height}-c{class:03}-m{index:02}-s{s:02}"),
                        file: file.clone(),
                        class,
                        width,
                        height,
                        start,
                        seed,
                        grid: grid.with_entrance(start)?,
                    });
                }
                mazes.push(GeneratedMaze {
                    width,
                    height,
                    class,
                    index,
                    seed,
                    file,
                    maze: MazeFile { grid, starts },
                });
            }
        }
    }
    Ok(Corpus { mazes, instances })
}

pub fn write_manifest(path: &Path, rows: &[ManifestRow]) -> Result<()> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().map(|row| row.map_err(csv_err)).collect()
}

/// Writes every maze file plus `manifest.csv` under `dir`.
pub fn build_dataset(spec: &DatasetSpec, dir: &Path) -> Result<Corpus> {
    let corpus = generate_corpus(spec)?;
    for m in &corpus.mazes {
        let path = dir.join(&m.file);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        fs::write(&path, serialize_maze(&m.maze)).map_err(|e| Error::io(&path, e))?;
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_manifest(&dir.join(MANIFEST_FILE), &corpus.manifest())?;
    Ok(corpus)
}

/// Loads every manifest instance, reading maze files relative to the
/// manifest's directory.
pub fn load_instances(manifest: &Path) -> Result<Vec<Instance>> {
    let root = manifest.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut files: HashMap<String, MazeGrid> = HashMap::new();
    let mut out = Vec::new();
    for row in read_manifest(manifest)? {
        if !files.contains_key(&row.file) {
            let path: PathBuf = root.join(&row.file);
            let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let grid = parse_maze_file(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
                .grid;
            files.insert(row.file.clone(), grid);
        }
        let grid = &files[&row.file];
        let start = Cell::new(row.start_row, row.start_col);
        out.push(Instance {
            id: row.instance_id,
            file: row.file,
            class: row.class,
            width: grid.width(),
            height: grid.height(),
            start,
            seed: row.seed,
            grid: grid.with_entrance(start)?,
        });
    }
    Ok(out)
}
