//! Vertex colorings and their text format (`<vertex> <color>` per line).

use std::collections::HashSet;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Color, VertexId};

/// A total vertex → color map.
///
/// `palette_size` is the number of color ids the producing algorithm had
/// available; ids are drawn from `0..palette_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<Color>,
    palette_size: u32,
}

impl Coloring {
    pub fn new(assignment: Vec<Color>, palette_size: u32) -> Self {
        debug_assert!(assignment.iter().all(|&c| c < palette_size.max(1)));
        Coloring {
            assignment,
            palette_size,
        }
    }

    /// Palette sized to the largest id present.
    pub fn from_assignment(assignment: Vec<Color>) -> Self {
        let palette_size = assignment.iter().max().map_or(0, |&c| c + 1);
        Coloring {
            assignment,
            palette_size,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.assignment[v as usize]
    }

    pub fn assignment(&self) -> &[Color] {
        &self.assignment
    }

    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    /// Number of distinct colors actually assigned.
    pub fn colors_used(&self) -> usize {
        self.assignment.iter().collect::<HashSet<_>>().len()
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (v, c) in self.assignment.iter().enumerate() {
            writeln!(w, "{v} {c}")?;
        }
        w.flush()
    }

    /// Reads a coloring for vertices `0..n`. Every vertex must appear
    /// exactly once; `#` comments and blank lines are skipped.
    pub fn read_from<R: BufRead>(r: R, n: usize) -> Result<Self, ColoringFileError> {
        let mut assignment: Vec<Option<Color>> = vec![None; n];
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let lineno = i + 1;
            let mut it = t.split_whitespace();
            let parsed = (|| {
                let v: usize = it.next()?.parse().ok()?;
                let c: Color = it.next()?.parse().ok()?;
                it.next().is_none().then_some((v, c))
            })();
            let (v, c) = parsed.ok_or_else(|| ColoringFileError::Malformed {
                line: lineno,
                text: t.to_string(),
            })?;
            let slot = assignment.get_mut(v).ok_or(ColoringFileError::OutOfRange {
                line: lineno,
                vertex: v,
                n,
            })?;
            if slot.replace(c).is_some() {
                return Err(ColoringFileError::Duplicate {
                    line: lineno,
                    vertex: v,
                });
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(ColoringFileError::Missing { vertex: v }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Coloring::from_assignment(assignment))
    }
}

#[derive(Debug, Error)]
pub enum ColoringFileError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: malformed coloring line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    OutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: vertex {vertex} colored twice")]
    Duplicate { line: usize, vertex: usize },
    #[error("vertex {vertex} has no color")]
    Missing { vertex: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn text_round_trip() {
        let c = Coloring::new(vec![2, 0, 1, 0], 3);
        let mut buf = Vec::new();
        c.write_to(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "0 2\n1 0\n2 1\n3 0\n"
        );
        let back = Coloring::read_from(Cursor::new(buf), 4).unwrap();
        assert_eq!(back.assignment(), c.assignment());
        assert_eq!(back.colors_used(), 3);
    }

    #[test]
    fn missing_and_duplicate_vertices() {
        assert!(matches!(
            Coloring::read_from(Cursor::new("0 1\n2 1\n"), 3),
            Err(ColoringFileError::Missing { vertex: 1 })
        ));
        assert!(matches!(
            Coloring::read_from(Cursor::new("0 1\n0 2\n"), 2),
            Err(ColoringFileError::Duplicate { line: 2, vertex: 0 })
        ));
        assert!(matches!(
            Coloring::read_from(Cursor::new("5 1\n"), 2),
            Err(ColoringFileError::OutOfRange { vertex: 5, .. })
        ));
    }
}
