//! Dense row-major matrix shared by the spectral types, with the CSV and
//! PGM text formats used for export.

use std::fmt::Write as _;

/// Dense `rows × cols` matrix of reals, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    /// Wraps row-major data; panics if the length does not match the
    /// shape (internal construction only — file input goes through
    /// validated paths).
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn max_value(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// CSV export: first line `rows,cols`, then one comma-separated line
    /// per row. Values use the shortest round-trip decimal form.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{},{}", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    /// ASCII PGM (P2) rendering for visual inspection: values are
    /// normalized by the matrix maximum, compressed by `gamma`, and
    /// quantized to 0–255. Row 0 of the matrix (lowest frequency) is
    /// drawn at the bottom of the image.
    pub fn to_pgm(&self, gamma: f64) -> String {
        let max = self.max_value();
        let mut out = String::new();
        let _ = writeln!(out, "P2");
        let _ = writeln!(out, "{} {}", self.cols, self.rows);
        let _ = writeln!(out, "255");
        for r in (0..self.rows).rev() {
            let line: Vec<String> = self
                .row(r)
                .iter()
                .map(|&v| {
                    let norm = if max > 0.0 { (v / max).clamp(0.0, 1.0) } else { 0.0 };
                    let level = (norm.powf(gamma) * 255.0).round() as u32;
                    level.min(255).to_string()
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}
