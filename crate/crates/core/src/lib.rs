//! Natural visibility graphs of ordered sequences, applied to audio spectra.
//!
//! A visibility graph links two points of a sequence when the straight
//! segment between them passes strictly above every intermediate point.
//! Built column-by-column over a magnitude spectrogram, the per-node edge
//! counts form a degree matrix that preserves the location of harmonic
//! peaks while discarding absolute level — useful for comparing harmonic
//! signals under noise.
//!
//! Modules:
//! - [`vgraph`]: graph construction (naive and divide & conquer), degree
//!   vectors and degree distributions.
//! - [`spectral`]: WAV ingest, magnitude spectra / spectrograms, and the
//!   per-frame degree matrix.
//! - [`similarity`]: distance metrics, rank extraction, mean reciprocal
//!   rank.
//! - [`synthbench`]: synthetic harmonic notes, calibrated noise injection,
//!   and the two retrieval experiments built from them.
//! - [`matrix`] / [`io`]: shared dense matrix with CSV/PGM export, and the
//!   text formats used by the CLI.

pub mod io;
pub mod matrix;
pub mod similarity;
pub mod spectral;
pub mod synthbench;
pub mod vgraph;

pub use matrix::Matrix;
pub use similarity::{FeatureSet, Metric, RankingResult};
pub use spectral::{
    AudioBuffer, DegreeDistributionMatrix, DegreeMatrix, MagnitudeSpectrogram, Representation,
};
pub use vgraph::{Algorithm, DegreeDistribution, DegreeVector, Sequence, VisibilityGraph};
