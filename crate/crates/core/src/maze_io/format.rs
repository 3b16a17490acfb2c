//! Plain-text maze format.
//!
//! ```text
//! start: 3,0
//! start: 9,4
//! S..#.
//! .#...
//! ...#E
//! ```
//!
//! Optional `start: row,col` header lines list alternative entrances. The
//! grid has one line per row: `#` obstacle, `.` free, `S` entrance, `E` exit.
//! The canonical form ends every line with `\n`.

use std::fmt::Write as _;

use crate::maze::{Cell, MazeGrid};
use crate::{Error, ParseErrorKind, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MazeFile {
    pub grid: MazeGrid,
    pub starts: Vec<Cell>,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> Error {
    Error::Parse { line, column, kind }
}

fn parse_start(line_no: usize, rest: &str, raw: &str) -> Result<Cell> {
    let bad = || err(line_no, 1, ParseErrorKind::BadHeader(raw.to_string()));
    let (r, c) = rest.trim().split_once(',').ok_or_else(bad)?;
    let row = r.trim().parse().map_err(|_| bad())?;
    let col = c.trim().parse().map_err(|_| bad())?;
    Ok(Cell::new(row, col))
}

pub fn parse_maze_file(text: &str) -> Result<MazeFile> {
    let mut starts = Vec::new();
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if let Some(rest) = line.strip_prefix("start:") {
            if !rows.is_empty() {
                return Err(err(line_no, 1, ParseErrorKind::BadHeader(line.to_string())));
            }
            starts.push((line_no, parse_start(line_no, rest, line)?));
        } else {
            rows.push((line_no, line));
        }
    }
    let (first_line, first) = *rows.first().ok_or(err(1, 1, ParseErrorKind::EmptyGrid))?;
    if first.is_empty() {
        return Err(err(first_line, 1, ParseErrorKind::EmptyGrid));
    }
    let width = first.chars().count();
    let height = rows.len();
    let mut obstacles = Vec::new();
    let mut entrance = None;
    let mut exit = None;
    for (r, (line_no, line)) in rows.iter().enumerate() {
        let found = line.chars().count();
        if found != width {
            return Err(err(
                *line_no,
                found.min(width) + 1,
                ParseErrorKind::NotRectangular {
                    expected: width,
                    found,
                },
            ));
        }
        for (c, ch) in line.chars().enumerate() {
            let cell = Cell::new(r, c);
            match ch {
                '.' => {}
                '#' => obstacles.push(cell),
                'S' => {
                    if entrance.replace(cell).is_some() {
                        return Err(err(*line_no, c + 1, ParseErrorKind::DuplicateEntrance));
                    }
                }
                'E' => {
                    if exit.replace(cell).is_some() {
                        return Err(err(*line_no, c + 1, ParseErrorKind::DuplicateExit));
                    }
                }
                other => {
                    return Err(err(
                        *line_no,
                        c + 1,
                        ParseErrorKind::IllegalCharacter(other),
                    ))
                }
            }
        }
    }
    let last_line = rows.last().map_or(1, |(l, _)| *l);
    let entrance = entrance.ok_or(err(last_line, 1, ParseErrorKind::MissingEntrance))?;
    let exit = exit.ok_or(err(last_line, 1, ParseErrorKind::MissingExit))?;
    let grid = MazeGrid::new(width, height, obstacles, entrance, exit)?;
    for (line_no, start) in &starts {
        if !grid.is_free(*start) {
            return Err(err(
                *line_no,
                1,
                ParseErrorKind::BadHeader(format!("start {start} is not a free cell")),
            ));
        }
    }
    Ok(MazeFile {
        grid,
        starts: starts.into_iter().map(|(_, c)| c).collect(),
    })
}

/// Parses a maze file and returns its grid.
pub fn parse_maze(text: &str) -> Result<MazeGrid> {
    parse_maze_file(text).map(|f| f.grid)
}

/// Canonical text of a maze file.
pub fn serialize_maze(file: &MazeFile) -> String {
    let grid = &file.grid;
    let mut out =
        String::with_capacity((grid.width() + 1) * grid.height() + 16 * file.starts.len());
    for s in &file.starts {
        writeln!(out, "start: {},{}", s.row, s.col).expect("string write");
    }
    for r in 0..grid.height() {
        for c in 0..grid.width() {
            let cell = Cell::new(r, c);
            out.push(if cell == grid.entrance() {
                'S'
            } else if cell == grid.exit() {
                'E'
            } else if grid.is_obstacle(cell) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}
