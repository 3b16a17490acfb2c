//! Maze files, the connectivity-controlled generator, and corpus building.

mod dataset;
mod format;
mod generate;

pub use dataset::{
    build_dataset, class_label, generate_corpus, load_instances, read_manifest, write_manifest,
    Corpus, DatasetSpec, GeneratedMaze, Instance, ManifestRow, MANIFEST_FILE,
};
pub use format::{parse_maze, parse_maze_file, serialize_maze, MazeFile};
pub use generate::{generate_maze, measure_connectivity, GENERATION_ATTEMPTS};
