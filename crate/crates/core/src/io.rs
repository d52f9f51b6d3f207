//! Text formats shared with the CLI: single-column sequence CSV input,
//! edge-list / adjacency / degree CSV output, and atomic file writes.

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::vgraph::{DegreeVector, Sequence, VgError, VisibilityGraph};

/// Errors while reading or writing the text formats.
#[derive(Debug)]
pub enum IoError {
    /// Underlying filesystem failure.
    Io(std::io::Error),
    /// A sequence line failed to parse as a decimal float (1-based line).
    BadLine { line: usize, content: String },
    /// The parsed sequence violated a sequence invariant.
    BadSequence(VgError),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Io(e) => write!(f, "{e}"),
            IoError::BadLine { line, content } => {
                write!(f, "line {line}: expected a decimal float, got `{content}`")
            }
            IoError::BadSequence(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for IoError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            IoError::Io(e) => Some(e),
            IoError::BadSequence(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for IoError {
    fn from(e: std::io::Error) -> Self {
        IoError::Io(e)
    }
}

/// Parses a single-column CSV of heights. An optional `height` header
/// line is skipped; blank lines are ignored; parse failures report the
/// 1-based line number.
pub fn parse_sequence_csv(text: &str) -> Result<Sequence, IoError> {
    let mut heights = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 && line.eq_ignore_ascii_case("height") {
            continue;
        }
        let value: f64 = line
            .parse()
            .map_err(|_| IoError::BadLine { line: idx + 1, content: line.to_string() })?;
        heights.push(value);
    }
    Sequence::new(heights).map_err(IoError::BadSequence)
}

/// Reads a sequence CSV from disk.
pub fn read_sequence_csv(path: &Path) -> Result<Sequence, IoError> {
    let text = fs::read_to_string(path)?;
    parse_sequence_csv(&text)
}

/// Edge list as CSV: header `i,j`, one `i,j` row per edge, sorted.
pub fn edges_to_csv(g: &VisibilityGraph) -> String {
    let mut out = String::from("i,j\n");
    for &(i, j) in g.edges() {
        let _ = writeln!(out, "{i},{j}");
    }
    out
}

/// Adjacency view as N lines of N comma-separated 0/1 values.
pub fn adjacency_to_csv(g: &VisibilityGraph) -> String {
    let mut out = String::new();
    for row in g.adjacency() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

/// Degree vector as a single-column CSV with a `degree` header.
pub fn degrees_to_csv(k: &DegreeVector) -> String {
    let mut out = String::from("degree\n");
    for &d in k.degrees() {
        let _ = writeln!(out, "{d}");
    }
    out
}

/// Writes via a temporary file in the target directory and renames into
/// place, so failures never leave a partial output file behind.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), IoError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file_name = path
        .file_name()
        .ok_or_else(|| {
            IoError::Io(std::io::Error::new(
                std::io::ErrorKind::InvalidInput,
                format!("not a file path: {}", path.display()),
            ))
        })?
        .to_string_lossy();
    let tmp_path = dir.join(format!(".{file_name}.tmp.{}", std::process::id()));
    let mut file = fs::File::create(&tmp_path)?;
    if let Err(e) = file.write_all(content.as_bytes()).and_then(|_| file.sync_all()) {
        drop(file);
        let _ = fs::remove_file(&tmp_path);
        return Err(IoError::Io(e));
    }
    drop(file);
    if let Err(e) = fs::rename(&tmp_path, path) {
        let _ = fs::remove_file(&tmp_path);
        return Err(IoError::Io(e));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vgraph::{build_naive, degree_vector};

    #[test]
    fn parses_plain_column() {
        let s = parse_sequence_csv("1.5\n2\n-3.25\n").unwrap();
        assert_eq!(s.heights(), &[1.5, 2.0, -3.25]);
    }

    #[test]
    fn skips_optional_header_and_blank_lines() {
        let s = parse_sequence_csv("height\n1\n\n2\n").unwrap();
        assert_eq!(s.heights(), &[1.0, 2.0]);
    }

    #[test]
    fn reports_line_number_on_parse_failure() {
        let err = parse_sequence_csv("1\n2\noops\n4\n").unwrap_err();
        match err {
            IoError::BadLine { line, content } => {
                assert_eq!(line, 3);
                assert_eq!(content, "oops");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_and_non_finite_input() {
        assert!(matches!(parse_sequence_csv(""), Err(IoError::BadSequence(VgError::Empty))));
        assert!(matches!(
            parse_sequence_csv("height\n"),
            Err(IoError::BadSequence(VgError::Empty))
        ));
        assert!(matches!(
            parse_sequence_csv("1\ninf\n"),
            Err(IoError::BadSequence(VgError::NonFinite { index: 1, .. }))
        ));
    }

    #[test]
    fn edge_csv_layout() {
        let g = build_naive(&Sequence::new(vec![0.0, 1.0, 2.0]).unwrap());
        assert_eq!(edges_to_csv(&g), "i,j\n0,1\n1,2\n");
    }

    #[test]
    fn adjacency_csv_layout() {
        let g = build_naive(&Sequence::new(vec![0.0, 1.0, 2.0]).unwrap());
        assert_eq!(adjacency_to_csv(&g), "0,1,0\n1,0,1\n0,1,0\n");
    }

    #[test]
    fn degrees_csv_layout() {
        let g = build_naive(&Sequence::new(vec![0.0, 1.0, 2.0]).unwrap());
        assert_eq!(degrees_to_csv(&degree_vector(&g)), "degree\n1\n2\n1\n");
    }

    #[test]
    fn atomic_write_creates_file_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a,b\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n");
        let leftovers: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .filter(|n| n != "out.csv")
            .collect();
        assert!(leftovers.is_empty(), "temp files left behind: {leftovers:?}");
    }

    #[test]
    fn atomic_write_replaces_existing_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "old\n").unwrap();
        write_atomic(&path, "new\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "new\n");
    }
}
