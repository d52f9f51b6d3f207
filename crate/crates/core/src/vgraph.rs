//! Natural visibility graphs of ordered sequences.
//!
//! Two samples `a` and `b` of a sequence are mutually visible when every
//! intermediate sample lies strictly below the straight segment joining
//! them. The graph over all samples is undirected, connected (neighbours
//! always see each other) and invariant to vertical translation and to
//! positive rescaling of the heights.
//!
//! Positions are the integer grid `0..N-1`: the sequences fed in here are
//! uniformly sampled (time series or spectrum frames), so explicit
//! position arrays would carry no information.

use std::fmt;

/// Errors from sequence validation and visibility queries.
#[derive(Debug, Clone, PartialEq)]
pub enum VgError {
    /// A sequence must contain at least one height.
    Empty,
    /// Heights must be finite; NaN comparisons would silently corrupt
    /// the visibility criterion, so bad values are rejected up front.
    NonFinite { index: usize, value: f64 },
    /// A visibility query addressed indices outside the sequence or in
    /// the wrong order.
    BadIndexPair { a: usize, b: usize, len: usize },
}

impl fmt::Display for VgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VgError::Empty => write!(f, "sequence is empty"),
            VgError::NonFinite { index, value } => {
                write!(f, "non-finite height {value} at index {index}")
            }
            VgError::BadIndexPair { a, b, len } => {
                write!(f, "index pair ({a}, {b}) invalid for sequence of length {len}")
            }
        }
    }
}

impl std::error::Error for VgError {}

/// An ordered list of finite heights on the integer grid `0..N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    heights: Vec<f64>,
}

impl Sequence {
    /// Validates and wraps a list of heights. Rejects empty input and any
    /// NaN or infinite value.
    pub fn new(heights: Vec<f64>) -> Result<Self, VgError> {
        if heights.is_empty() {
            return Err(VgError::Empty);
        }
        for (index, &value) in heights.iter().enumerate() {
            if !value.is_finite() {
                return Err(VgError::NonFinite { index, value });
            }
        }
        Ok(Sequence { heights })
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    /// Always false: construction rejects empty input.
    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }
}

/// Which graph construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Quadratic sweep; the ground-truth reference.
    Naive,
    /// Divide & conquer around range maxima; same edge set, O(n log n)
    /// on typical inputs.
    DivideConquer,
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Algorithm::Naive),
            "dc" => Ok(Algorithm::DivideConquer),
            other => Err(format!("unknown algorithm `{other}` (expected `naive` or `dc`)")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Naive => write!(f, "naive"),
            Algorithm::DivideConquer => write!(f, "dc"),
        }
    }
}

/// Undirected visibility graph over sequence indices.
///
/// Canonical storage is the sorted list of edges `(i, j)` with `i < j`;
/// the adjacency matrix is materialized only on demand, since N×N cells
/// are wasteful when thousands of frames are processed in bulk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl VisibilityGraph {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(i, j)` pairs with `i < j`, sorted by `(i, j)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// True when `i` and `j` are mutually visible; order-insensitive.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Dense symmetric 0/1 adjacency view with zero diagonal.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for &(i, j) in &self.edges {
            a[i][j] = 1;
            a[j][i] = 1;
        }
        a
    }

    pub fn degree_vector(&self) -> DegreeVector {
        degree_vector(self)
    }
}

/// Per-node incident edge counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector {
    degrees: Vec<usize>,
}

impl DegreeVector {
    /// Wraps raw per-node counts (used when reassembling degree vectors
    /// from stored matrix columns).
    pub fn new(degrees: Vec<usize>) -> Self {
        DegreeVector { degrees }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degrees as reals, the form distance metrics consume.
    pub fn to_f64(&self) -> Vec<f64> {
        self.degrees.iter().map(|&d| d as f64).collect()
    }
}

/// Normalized histogram of degree values.
///
/// `probs[d]` is the fraction of nodes with degree `d`. The vector always
/// has length N so distributions of equal-length sequences are directly
/// comparable even when their maximum degrees differ.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    probs: Vec<f64>,
}

impl DegreeDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Whether samples `a` and `b` see each other: every intermediate `c`
/// must lie strictly below the chord from `(a, h[a])` to `(b, h[b])`.
/// An intermediate exactly on the chord blocks visibility.
pub fn visible(seq: &Sequence, a: usize, b: usize) -> Result<bool, VgError> {
    let h = seq.heights();
    if a >= b || b >= h.len() {
        return Err(VgError::BadIndexPair { a, b, len: h.len() });
    }
    let slope = (h[b] - h[a]) / ((b - a) as f64);
    for c in (a + 1)..b {
        let chord = h[a] + slope * ((c - a) as f64);
        if h[c] >= chord {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quadratic construction: for each source `a`, sweep `b` rightward while
/// tracking the steepest slope seen so far; `b` is visible exactly when
/// the slope from `a` to `b` exceeds that running maximum. This is the
/// reference oracle the divide & conquer builder is checked against.
pub fn build_naive(seq: &Sequence) -> VisibilityGraph {
    let h = seq.heights();
    let n = h.len();
    let mut edges = Vec::new();
    for a in 0..n {
        let mut max_slope = f64::NEG_INFINITY;
        for b in (a + 1)..n {
            let slope = (h[b] - h[a]) / ((b - a) as f64);
            if slope > max_slope {
                edges.push((a, b));
                max_slope = slope;
            }
        }
    }
    // The sweep emits edges ordered by (a, b) already.
    VisibilityGraph { n, edges }
}

/// Divide & conquer construction around range maxima.
///
/// On a range, the leftmost maximum `m` is connected by sweeping outward
/// from it: a node is visible from `m` exactly when its slope towards `m`
/// beats every slope of the nodes between them (strictly smaller than the
/// running minimum on the left side, strictly greater than the running
/// maximum on the right side). No pair that straddles `m` can see across
/// it — the chord at position `m` sits at or below the taller endpoint,
/// hence at or below `h[m]`, and ties block — so the two sides can be
/// solved independently. An explicit work stack keeps monotone inputs
/// (recursion depth n) from overflowing the call stack.
pub fn build_dc(seq: &Sequence) -> VisibilityGraph {
    let h = seq.heights();
    let n = h.len();
    let mut edges = Vec::new();
    let mut stack = vec![(0usize, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if lo >= hi {
            continue;
        }
        let mut m = lo;
        for i in (lo + 1)..=hi {
            if h[i] > h[m] {
                m = i;
            }
        }
        let mut min_slope = f64::INFINITY;
        for i in (lo..m).rev() {
            let slope = (h[i] - h[m]) / (i as f64 - m as f64);
            if slope < min_slope {
                edges.push((i, m));
                min_slope = slope;
            }
        }
        let mut max_slope = f64::NEG_INFINITY;
        for j in (m + 1)..=hi {
            let slope = (h[j] - h[m]) / (j as f64 - m as f64);
            if slope > max_slope {
                edges.push((m, j));
                max_slope = slope;
            }
        }
        if m > lo {
            stack.push((lo, m - 1));
        }
        if m < hi {
            stack.push((m + 1, hi));
        }
    }
    edges.sort_unstable();
    VisibilityGraph { n, edges }
}

/// Runs the selected construction.
pub fn build(seq: &Sequence, algorithm: Algorithm) -> VisibilityGraph {
    match algorithm {
        Algorithm::Naive => build_naive(seq),
        Algorithm::DivideConquer => build_dc(seq),
    }
}

/// Incident edge counts per node.
pub fn degree_vector(g: &VisibilityGraph) -> DegreeVector {
    let mut degrees = vec![0usize; g.n];
    for &(i, j) in &g.edges {
        degrees[i] += 1;
        degrees[j] += 1;
    }
    DegreeVector { degrees }
}

/// Histogram of degree values normalized by the node count.
pub fn degree_distribution(k: &DegreeVector) -> DegreeDistribution {
    let n = k.degrees.len();
    let mut probs = vec![0.0; n];
    for &d in &k.degrees {
        probs[d] += 1.0;
    }
    for p in &mut probs {
        *p /= n as f64;
    }
    DegreeDistribution { probs }
}
