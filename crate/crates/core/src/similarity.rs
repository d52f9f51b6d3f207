//! Pairwise distances between representation vectors, rank extraction
//! for a known target, and mean reciprocal rank aggregation.

use std::fmt;
use std::fmt::Write as _;

use crate::spectral::Representation;

/// Errors from distance and ranking operations.
#[derive(Debug, Clone, PartialEq)]
pub enum SimilarityError {
    /// Vectors must share one dimensionality.
    LengthMismatch { left: usize, right: usize },
    /// Feature sets pair one label with one vector.
    LabelCountMismatch { labels: usize, vectors: usize },
    /// Labels within a feature set must be unique.
    DuplicateLabel(String),
    /// The requested target is not among the candidates.
    TargetNotFound(String),
    /// MRR over zero rankings is undefined.
    NoResults,
}

impl fmt::Display for SimilarityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimilarityError::LengthMismatch { left, right } => {
                write!(f, "vector lengths differ: {left} vs {right}")
            }
            SimilarityError::LabelCountMismatch { labels, vectors } => {
                write!(f, "{labels} labels for {vectors} vectors")
            }
            SimilarityError::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            SimilarityError::TargetNotFound(l) => write!(f, "target `{l}` not in candidates"),
            SimilarityError::NoResults => write!(f, "no ranking results to aggregate"),
        }
    }
}

impl std::error::Error for SimilarityError {}

/// Distance metric between representation vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Metric {
    Euclidean,
    Cosine,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Euclidean, Metric::Cosine];
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "cosine" => Ok(Metric::Cosine),
            other => Err(format!("unknown metric `{other}` (expected `euclidean` or `cosine`)")),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Euclidean => write!(f, "euclidean"),
            Metric::Cosine => write!(f, "cosine"),
        }
    }
}

/// Distance between two equal-length vectors. Cosine distance is
/// `1 - u·v/(‖u‖‖v‖)`, clamped into [0, 2]; when either vector is zero
/// the cosine distance is defined as 1 (maximal dissimilarity, since no
/// direction exists to compare).
pub fn distance(u: &[f64], v: &[f64], metric: Metric) -> Result<f64, SimilarityError> {
    if u.len() != v.len() {
        return Err(SimilarityError::LengthMismatch { left: u.len(), right: v.len() });
    }
    match metric {
        Metric::Euclidean => {
            let sum: f64 = u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
            Ok(sum.sqrt())
        }
        Metric::Cosine => {
            let mut dot = 0.0;
            let mut nu = 0.0;
            let mut nv = 0.0;
            for (a, b) in u.iter().zip(v) {
                dot += a * b;
                nu += a * a;
                nv += b * b;
            }
            if nu == 0.0 || nv == 0.0 {
                return Ok(1.0);
            }
            let sim = (dot / (nu.sqrt() * nv.sqrt())).clamp(-1.0, 1.0);
            Ok(1.0 - sim)
        }
    }
}

/// Labelled collection of equal-length feature vectors.
#[derive(Debug, Clone)]
pub struct FeatureSet {
    labels: Vec<String>,
    vectors: Vec<Vec<f64>>,
}

impl FeatureSet {
    /// Validates the label/vector pairing, uniform dimensionality and
    /// label uniqueness.
    pub fn new(labels: Vec<String>, vectors: Vec<Vec<f64>>) -> Result<Self, SimilarityError> {
        if labels.len() != vectors.len() {
            return Err(SimilarityError::LabelCountMismatch {
                labels: labels.len(),
                vectors: vectors.len(),
            });
        }
        if let Some(first) = vectors.first() {
            for v in &vectors {
                if v.len() != first.len() {
                    return Err(SimilarityError::LengthMismatch {
                        left: first.len(),
                        right: v.len(),
                    });
                }
            }
        }
        let mut seen: std::collections::HashSet<&str> = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(SimilarityError::DuplicateLabel(l.clone()));
            }
        }
        Ok(FeatureSet { labels, vectors })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }
}

/// Outcome of ranking one query against a candidate pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingResult {
    query_label: String,
    ordered_labels: Vec<String>,
    target_label: String,
    rank: usize,
}

impl RankingResult {
    pub fn query_label(&self) -> &str {
        &self.query_label
    }

    /// Candidate labels sorted by ascending distance (ties by label).
    pub fn ordered_labels(&self) -> &[String] {
        &self.ordered_labels
    }

    pub fn target_label(&self) -> &str {
        &self.target_label
    }

    /// 1-based position of the target among the candidates.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn reciprocal_rank(&self) -> f64 {
        1.0 / self.rank as f64
    }
}

/// Sorts the candidates by ascending distance to the query (distances
/// streamed per query, never materialized pairwise) and locates the
/// target. Ties are broken by ascending label so rankings are
/// deterministic. A candidate labelled exactly like the query is
/// excluded — the query never competes against itself.
pub fn rank_target(
    query_label: &str,
    query: &[f64],
    candidates: &FeatureSet,
    target_label: &str,
    metric: Metric,
) -> Result<RankingResult, SimilarityError> {
    let mut scored: Vec<(f64, &str)> = Vec::with_capacity(candidates.len());
    for (label, vector) in candidates.labels().iter().zip(candidates.vectors()) {
        if label == query_label {
            continue;
        }
        scored.push((distance(query, vector, metric)?, label.as_str()));
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let rank = scored
        .iter()
        .position(|&(_, label)| label == target_label)
        .ok_or_else(|| SimilarityError::TargetNotFound(target_label.to_string()))?
        + 1;
    Ok(RankingResult {
        query_label: query_label.to_string(),
        ordered_labels: scored.into_iter().map(|(_, l)| l.to_string()).collect(),
        target_label: target_label.to_string(),
        rank,
    })
}

/// Mean of 1/rank over the results; lies in (0, 1].
pub fn mean_reciprocal_rank(results: &[RankingResult]) -> Result<f64, SimilarityError> {
    if results.is_empty() {
        return Err(SimilarityError::NoResults);
    }
    Ok(results.iter().map(|r| r.reciprocal_rank()).sum::<f64>() / results.len() as f64)
}

/// One row of the per-query ranking report.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingRow {
    pub query: String,
    pub target: String,
    pub metric: Metric,
    pub representation: Representation,
    pub rank: usize,
}

/// One row of the aggregated MRR summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub representation: Representation,
    pub metric: Metric,
    pub snr_db: f64,
    pub mrr: f64,
}

/// Per-query report CSV: `query,target,metric,representation,rank,reciprocal_rank`.
pub fn ranking_rows_to_csv(rows: &[RankingRow]) -> String {
    let mut out = String::from("query,target,metric,representation,rank,reciprocal_rank\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.query,
            r.target,
            r.metric,
            r.representation,
            r.rank,
            1.0 / r.rank as f64
        );
    }
    out
}

/// Summary CSV: `representation,metric,snr_db,mrr`.
pub fn summary_rows_to_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("representation,metric,snr_db,mrr\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.representation, r.metric, r.snr_db, r.mrr);
    }
    out
}
