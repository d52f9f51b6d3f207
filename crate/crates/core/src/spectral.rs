//! Audio ingest, magnitude spectra, and the per-frame visibility degree
//! matrix.
//!
//! Each spectrogram column (one magnitude frame over frequency bins) is
//! treated as an ordered sequence and mapped through its visibility
//! graph; stacking the per-frame degree vectors gives the degree matrix
//! `K`, a spectrogram alternative whose entries count how many bins each
//! bin can "see". Peaks see far and score high; absolute level drops out
//! because visibility is invariant to vertical offset and positive
//! scaling of a frame.

use std::fmt;
use std::path::{Path, PathBuf};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::matrix::Matrix;
use crate::vgraph::{self, Algorithm, DegreeVector, Sequence, VgError};

/// Errors from audio ingestion and spectral processing.
#[derive(Debug)]
pub enum SpectralError {
    /// WAV open/decode failure; `detail` names the defect.
    Wav { path: PathBuf, detail: String },
    /// Only 16-bit integer PCM and 32-bit IEEE float are supported.
    UnsupportedFormat { path: PathBuf, detail: String },
    /// Decoded audio contained no samples.
    EmptyAudio,
    /// A decoded or constructed sample was NaN or infinite.
    NonFiniteSample { index: usize },
    /// Sample rate must be a positive integer.
    BadSampleRate(u32),
    /// Transform size must be a power of two (and at least 2).
    BadFftSize(usize),
    /// Retained bin count must be in `1..=fft_size/2 + 1`.
    BadKeepBins { keep_bins: usize, max: usize },
    /// Overlap fraction must satisfy `0 <= overlap < 1`.
    BadOverlap(f64),
    /// Analysis window must hold at least two samples.
    BadWindow(usize),
    /// The signal is shorter than one analysis window, so the
    /// spectrogram would be empty.
    TooShort { len: usize, window: usize },
    /// A spectrogram column violated a sequence invariant.
    Frame { frame: usize, source: VgError },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::Wav { path, detail } => {
                write!(f, "cannot read WAV {}: {detail}", path.display())
            }
            SpectralError::UnsupportedFormat { path, detail } => {
                write!(f, "unsupported WAV codec in {}: {detail}", path.display())
            }
            SpectralError::EmptyAudio => write!(f, "audio contains no samples"),
            SpectralError::NonFiniteSample { index } => {
                write!(f, "non-finite sample at index {index}")
            }
            SpectralError::BadSampleRate(sr) => write!(f, "invalid sample rate {sr}"),
            SpectralError::BadFftSize(n) => {
                write!(f, "fft size {n} is not a power of two >= 2")
            }
            SpectralError::BadKeepBins { keep_bins, max } => {
                write!(f, "keep_bins {keep_bins} outside 1..={max}")
            }
            SpectralError::BadOverlap(v) => {
                write!(f, "overlap {v} outside [0, 1)")
            }
            SpectralError::BadWindow(w) => write!(f, "window size {w} too small"),
            SpectralError::TooShort { len, window } => {
                write!(f, "signal of {len} samples is shorter than one window ({window})")
            }
            SpectralError::Frame { frame, source } => {
                write!(f, "frame {frame}: {source}")
            }
        }
    }
}

impl std::error::Error for SpectralError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            SpectralError::Frame { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// Mono audio. Decoded PCM lands in [-1, 1]; synthetic buffers carry
/// dimensionless amplitudes and may exceed nominal full scale (noisy
/// mixtures are only normalized where a contract says so).
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl AudioBuffer {
    /// Validates and wraps mono samples: non-empty, all finite, positive
    /// sample rate.
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self, SpectralError> {
        if sample_rate == 0 {
            return Err(SpectralError::BadSampleRate(sample_rate));
        }
        if samples.is_empty() {
            return Err(SpectralError::EmptyAudio);
        }
        for (index, &s) in samples.iter().enumerate() {
            if !s.is_finite() {
                return Err(SpectralError::NonFiniteSample { index });
            }
        }
        Ok(AudioBuffer { samples, sample_rate })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    /// Mean squared amplitude over the whole buffer.
    pub fn power(&self) -> f64 {
        self.samples.iter().map(|s| s * s).sum::<f64>() / self.samples.len() as f64
    }
}

/// Magnitude spectrogram: `keep_bins` frequency rows by T frame columns.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeSpectrogram {
    mags: Matrix,
    bin_hz: f64,
    hop: usize,
}

impl MagnitudeSpectrogram {
    pub fn mags(&self) -> &Matrix {
        &self.mags
    }

    /// Frequency resolution of one bin in Hz.
    pub fn bin_hz(&self) -> f64 {
        self.bin_hz
    }

    /// Samples between successive frames.
    pub fn hop(&self) -> usize {
        self.hop
    }

    pub fn bins(&self) -> usize {
        self.mags.rows()
    }

    pub fn frames(&self) -> usize {
        self.mags.cols()
    }
}

/// Degree matrix K: column t is the degree vector of the visibility
/// graph of spectrogram frame t. Entries are integer-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeMatrix {
    k: Matrix,
}

impl DegreeMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.k
    }

    /// Column t as a degree vector.
    pub fn column_degrees(&self, t: usize) -> DegreeVector {
        DegreeVector::new(self.k.column(t).iter().map(|&v| v as usize).collect())
    }
}

/// Per-frame degree distributions: column t sums to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistributionMatrix {
    p: Matrix,
}

impl DegreeDistributionMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.p
    }
}

/// The three representations the experiments compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Representation {
    /// The magnitude spectrum itself.
    Magnitude,
    /// Visibility degree vector of the magnitude frame.
    Degree,
    /// Normalized histogram of the degree vector.
    Distribution,
}

impl Representation {
    pub const ALL: [Representation; 3] =
        [Representation::Magnitude, Representation::Degree, Representation::Distribution];

    /// Maps one magnitude frame to this representation's feature vector.
    pub fn extract(&self, mags: &[f64]) -> Result<Vec<f64>, VgError> {
        match self {
            Representation::Magnitude => Ok(mags.to_vec()),
            Representation::Degree => {
                let seq = Sequence::new(mags.to_vec())?;
                Ok(vgraph::degree_vector(&vgraph::build_dc(&seq)).to_f64())
            }
            Representation::Distribution => {
                let seq = Sequence::new(mags.to_vec())?;
                let k = vgraph::degree_vector(&vgraph::build_dc(&seq));
                Ok(vgraph::degree_distribution(&k).probs().to_vec())
            }
        }
    }
}

impl std::str::FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "magnitude" => Ok(Representation::Magnitude),
            "degree" => Ok(Representation::Degree),
            "distribution" => Ok(Representation::Distribution),
            other => Err(format!(
                "unknown representation `{other}` (expected `magnitude`, `degree` or `distribution`)"
            )),
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Magnitude => write!(f, "magnitude"),
            Representation::Degree => write!(f, "degree"),
            Representation::Distribution => write!(f, "distribution"),
        }
    }
}

/// Decodes a RIFF/WAVE file (16-bit PCM or 32-bit IEEE float), averaging
/// channels down to mono. Integer PCM is scaled by 1/32768.
pub fn load_wav(path: &Path) -> Result<AudioBuffer, SpectralError> {
    let mut reader = hound::WavReader::open(path)
        .map_err(|e| SpectralError::Wav { path: path.to_path_buf(), detail: e.to_string() })?;
    let spec = reader.spec();
    let channels = spec.channels as usize;
    if channels == 0 {
        return Err(SpectralError::Wav {
            path: path.to_path_buf(),
            detail: "zero channels".to_string(),
        });
    }
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .map(|s| {
                s.map(|v| f64::from(v) / 32768.0).map_err(|e| SpectralError::Wav {
                    path: path.to_path_buf(),
                    detail: e.to_string(),
                })
            })
            .collect::<Result<_, _>>()?,
        (hound::SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .map(|s| {
                s.map(f64::from).map_err(|e| SpectralError::Wav {
                    path: path.to_path_buf(),
                    detail: e.to_string(),
                })
            })
            .collect::<Result<_, _>>()?,
        (format, bits) => {
            return Err(SpectralError::UnsupportedFormat {
                path: path.to_path_buf(),
                detail: format!("{bits}-bit {format:?} (need 16-bit Int or 32-bit Float)"),
            })
        }
    };
    let mono: Vec<f64> = interleaved
        .chunks_exact(channels)
        .map(|frame| frame.iter().sum::<f64>() / channels as f64)
        .collect();
    AudioBuffer::new(mono, spec.sample_rate)
}

/// Validates a whole-buffer FFT request: `fft_size` must be a power of
/// two (at least 2) and `keep_bins` within `1..=fft_size / 2 + 1`.
pub fn check_fft_args(fft_size: usize, keep_bins: usize) -> Result<(), SpectralError> {
    if fft_size < 2 || !fft_size.is_power_of_two() {
        return Err(SpectralError::BadFftSize(fft_size));
    }
    let max = fft_size / 2 + 1;
    if keep_bins == 0 || keep_bins > max {
        return Err(SpectralError::BadKeepBins { keep_bins, max });
    }
    Ok(())
}

/// Magnitude spectrum of the whole buffer: the signal is truncated or
/// zero-padded to `fft_size`, Hann-windowed, transformed, and the first
/// `keep_bins` magnitudes are returned. The window matters beyond
/// textbook hygiene here: a rectangular window smears every spectral
/// line into slow 1/distance tails that blanket all retained bins with
/// smooth deterministic structure, while the Hann rolloff confines each
/// line so the inter-peak region falls to the signal's own noise floor.
pub fn magnitude_spectrum(
    buf: &AudioBuffer,
    fft_size: usize,
    keep_bins: usize,
) -> Result<Sequence, SpectralError> {
    check_fft_args(fft_size, keep_bins)?;
    let window = hann_window(fft_size);
    let mut frame: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); fft_size];
    for ((slot, &s), &w) in frame.iter_mut().zip(buf.samples().iter()).zip(window.iter()) {
        slot.re = s * w;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(fft_size).process(&mut frame);
    let mags: Vec<f64> = frame[..keep_bins].iter().map(|c| c.norm()).collect();
    Sequence::new(mags).map_err(|e| SpectralError::Frame { frame: 0, source: e })
}

/// Periodic Hann window of length `n`.
fn hann_window(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos()))
        .collect()
}

/// Short-time magnitude spectrogram: Hann-windowed frames every
/// `window_size * (1 - overlap)` samples, zero-padded to the next power
/// of two for the transform, truncated to `keep_bins` rows. The trailing
/// partial frame is zero-padded rather than dropped.
pub fn stft_magnitude(
    buf: &AudioBuffer,
    window_size: usize,
    overlap: f64,
    keep_bins: usize,
) -> Result<MagnitudeSpectrogram, SpectralError> {
    if window_size < 2 {
        return Err(SpectralError::BadWindow(window_size));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(SpectralError::BadOverlap(overlap));
    }
    let max_bins = window_size / 2 + 1;
    if keep_bins == 0 || keep_bins > max_bins {
        return Err(SpectralError::BadKeepBins { keep_bins, max: max_bins });
    }
    let samples = buf.samples();
    if samples.len() < window_size {
        return Err(SpectralError::TooShort { len: samples.len(), window: window_size });
    }
    let hop = ((window_size as f64) * (1.0 - overlap)).round().max(1.0) as usize;
    let frames = (samples.len() - window_size).div_ceil(hop) + 1;
    let fft_len = window_size.next_power_of_two();
    let window = hann_window(window_size);

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(fft_len);
    let mut mags = Matrix::zeros(keep_bins, frames);
    let mut frame: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); fft_len];
    for t in 0..frames {
        let start = t * hop;
        for slot in frame.iter_mut() {
            *slot = Complex::new(0.0, 0.0);
        }
        for i in 0..window_size {
            if let Some(&s) = samples.get(start + i) {
                frame[i].re = s * window[i];
            }
        }
        fft.process(&mut frame);
        for (f, c) in frame[..keep_bins].iter().enumerate() {
            mags.set(f, t, c.norm());
        }
    }
    Ok(MagnitudeSpectrogram {
        mags,
        bin_hz: f64::from(buf.sample_rate()) / fft_len as f64,
        hop,
    })
}

/// Builds the degree matrix: each column of `mags` is run through the
/// selected graph construction and replaced by its degree vector.
/// Validation failures carry the offending frame index.
pub fn degree_matrix(mags: &Matrix, algorithm: Algorithm) -> Result<DegreeMatrix, SpectralError> {
    let mut k = Matrix::zeros(mags.rows(), mags.cols());
    for t in 0..mags.cols() {
        let seq = Sequence::new(mags.column(t))
            .map_err(|e| SpectralError::Frame { frame: t, source: e })?;
        let degrees = vgraph::degree_vector(&vgraph::build(&seq, algorithm));
        for (f, &d) in degrees.degrees().iter().enumerate() {
            k.set(f, t, d as f64);
        }
    }
    Ok(DegreeMatrix { k })
}

/// Per-column normalized degree histograms of a degree matrix.
pub fn degree_distribution_matrix(k: &DegreeMatrix) -> DegreeDistributionMatrix {
    let m = k.matrix();
    let mut p = Matrix::zeros(m.rows(), m.cols());
    for t in 0..m.cols() {
        let dist = vgraph::degree_distribution(&k.column_degrees(t));
        for (d, &prob) in dist.probs().iter().enumerate() {
            p.set(d, t, prob);
        }
    }
    DegreeDistributionMatrix { p }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Textbook O(n^2) discrete Fourier transform, the independent
    /// oracle for the FFT path.
    fn naive_dft_magnitudes(samples: &[f64], keep_bins: usize) -> Vec<f64> {
        let n = samples.len();
        let mut out = Vec::with_capacity(keep_bins);
        for k in 0..keep_bins {
            let mut re = 0.0;
            let mut im = 0.0;
            for (t, &x) in samples.iter().enumerate() {
                let phase = -2.0 * std::f64::consts::PI * (k * t) as f64 / n as f64;
                re += x * phase.cos();
                im += x * phase.sin();
            }
            out.push((re * re + im * im).sqrt());
        }
        out
    }

    fn buffer(samples: Vec<f64>, sample_rate: u32) -> AudioBuffer {
        AudioBuffer::new(samples, sample_rate).unwrap()
    }

    #[test]
    fn audio_buffer_validation() {
        assert!(matches!(AudioBuffer::new(vec![], 44100), Err(SpectralError::EmptyAudio)));
        assert!(matches!(AudioBuffer::new(vec![0.0], 0), Err(SpectralError::BadSampleRate(0))));
        assert!(matches!(
            AudioBuffer::new(vec![0.0, f64::NAN], 44100),
            Err(SpectralError::NonFiniteSample { index: 1 })
        ));
    }

    #[test]
    fn bin_aligned_sinusoid_peaks_at_its_bin() {
        let n = 16384;
        let samples: Vec<f64> = (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * 100.0 * i as f64 / n as f64).sin())
            .collect();
        let spec = magnitude_spectrum(&buffer(samples, 44100), n, 2000).unwrap();
        let mags = spec.heights();
        // Hann windowing halves the coherent gain and spills a quarter
        // of it into each neighbouring bin.
        let peak = n as f64 / 4.0;
        assert!((mags[100] - peak).abs() <= 1e-6 * peak, "peak magnitude {}", mags[100]);
        assert!((mags[99] - peak / 2.0).abs() <= 1e-6 * peak, "shoulder {}", mags[99]);
        assert!((mags[101] - peak / 2.0).abs() <= 1e-6 * peak, "shoulder {}", mags[101]);
        let argmax =
            (0..2000).max_by(|&a, &b| mags[a].total_cmp(&mags[b])).unwrap();
        assert_eq!(argmax, 100);
    }

    #[test]
    fn all_zero_buffer_gives_all_zero_spectrum() {
        let spec = magnitude_spectrum(&buffer(vec![0.0; 512], 8000), 512, 200).unwrap();
        assert!(spec.heights().iter().all(|&m| m == 0.0));
    }

    #[test]
    fn fft_matches_naive_dft_on_white_noise() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let samples: Vec<f64> = (0..512).map(|_| rng.random_range(-1.0..1.0)).collect();
        let spec = magnitude_spectrum(&buffer(samples.clone(), 8000), 512, 257).unwrap();
        let windowed: Vec<f64> =
            samples.iter().zip(hann_window(512)).map(|(s, w)| s * w).collect();
        let oracle = naive_dft_magnitudes(&windowed, 257);
        let scale = oracle.iter().copied().fold(0.0, f64::max);
        for (k, (a, b)) in spec.heights().iter().zip(oracle.iter()).enumerate() {
            assert!((a - b).abs() <= 1e-6 * scale, "bin {k}: fft {a} vs dft {b}");
        }
    }

    #[test]
    fn short_signal_is_zero_padded_and_long_signal_truncated() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let short: Vec<f64> = (0..100).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut padded = short.clone();
        padded.resize(256, 0.0);
        let a = magnitude_spectrum(&buffer(short, 8000), 256, 129).unwrap();
        let b = magnitude_spectrum(&buffer(padded.clone(), 8000), 256, 129).unwrap();
        assert_eq!(a.heights(), b.heights());

        let mut long = padded.clone();
        long.extend((0..100).map(|_| rng.random_range(-1.0..1.0)));
        let c = magnitude_spectrum(&buffer(long, 8000), 256, 129).unwrap();
        assert_eq!(c.heights(), b.heights());
    }

    #[test]
    fn magnitude_spectrum_rejects_bad_arguments() {
        let b = buffer(vec![0.1; 64], 8000);
        assert!(matches!(
            magnitude_spectrum(&b, 100, 10),
            Err(SpectralError::BadFftSize(100))
        ));
        assert!(matches!(
            magnitude_spectrum(&b, 64, 34),
            Err(SpectralError::BadKeepBins { keep_bins: 34, max: 33 })
        ));
        assert!(matches!(
            magnitude_spectrum(&b, 64, 0),
            Err(SpectralError::BadKeepBins { keep_bins: 0, .. })
        ));
    }

    #[test]
    fn stft_frame_count_matches_hop_arithmetic() {
        let b = buffer(vec![0.25; 192], 8000);
        let spec = stft_magnitude(&b, 64, 0.5, 33).unwrap();
        assert_eq!(spec.frames(), 5);
        assert_eq!(spec.bins(), 33);
        assert_eq!(spec.hop(), 32);
    }

    #[test]
    fn stft_of_silence_is_all_zero() {
        let b = buffer(vec![0.0; 300], 8000);
        let spec = stft_magnitude(&b, 64, 0.5, 33).unwrap();
        for t in 0..spec.frames() {
            assert!(spec.mags().column(t).iter().all(|&m| m == 0.0));
        }
    }

    #[test]
    fn stft_columns_match_per_frame_dft_oracle() {
        // Bin-aligned sinusoid (8 cycles per 64-sample window): every
        // column's argmax sits at bin 8, and each full frame matches a
        // hand-built Hann-windowed DFT.
        let n = 256;
        let samples: Vec<f64> = (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * 8.0 * i as f64 / 64.0).sin())
            .collect();
        let b = buffer(samples.clone(), 8000);
        let spec = stft_magnitude(&b, 64, 0.5, 33).unwrap();
        let window = hann_window(64);
        for t in 0..spec.frames() {
            let col = spec.mags().column(t);
            let argmax = (0..33).max_by(|&x, &y| col[x].total_cmp(&col[y])).unwrap();
            assert_eq!(argmax, 8, "frame {t}");
            let mut frame: Vec<f64> = (0..64)
                .map(|i| samples.get(t * 32 + i).copied().unwrap_or(0.0) * window[i])
                .collect();
            frame.resize(64, 0.0);
            let oracle = naive_dft_magnitudes(&frame, 33);
            let scale = oracle.iter().copied().fold(1.0, f64::max);
            for f in 0..33 {
                assert!((col[f] - oracle[f]).abs() <= 1e-6 * scale, "frame {t} bin {f}");
            }
        }
    }

    #[test]
    fn stft_rejects_short_signal_and_bad_flags() {
        let b = buffer(vec![0.5; 63], 8000);
        assert!(matches!(
            stft_magnitude(&b, 64, 0.5, 33),
            Err(SpectralError::TooShort { len: 63, window: 64 })
        ));
        let ok = buffer(vec![0.5; 128], 8000);
        assert!(matches!(
            stft_magnitude(&ok, 64, 1.0, 33),
            Err(SpectralError::BadOverlap(_))
        ));
        assert!(matches!(
            stft_magnitude(&ok, 64, -0.1, 33),
            Err(SpectralError::BadOverlap(_))
        ));
        assert!(matches!(
            stft_magnitude(&ok, 64, 0.5, 34),
            Err(SpectralError::BadKeepBins { keep_bins: 34, max: 33 })
        ));
    }

    #[test]
    fn degree_matrix_of_collinear_column_is_path_pattern() {
        let col: Vec<f64> = (0..6).map(|i| i as f64).collect();
        let m = Matrix::from_vec(6, 1, col);
        let k = degree_matrix(&m, Algorithm::DivideConquer).unwrap();
        assert_eq!(k.column_degrees(0).degrees(), &[1, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn degree_matrix_algorithms_agree_per_frame() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut m = Matrix::zeros(80, 6);
        for t in 0..6 {
            for f in 0..80 {
                m.set(f, t, rng.random::<f64>());
            }
        }
        let dc = degree_matrix(&m, Algorithm::DivideConquer).unwrap();
        let naive = degree_matrix(&m, Algorithm::Naive).unwrap();
        assert_eq!(dc.matrix(), naive.matrix());
    }

    #[test]
    fn degree_matrix_column_is_offset_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let col: Vec<f64> = (0..100).map(|_| rng.random::<f64>()).collect();
        let shifted: Vec<f64> = col.iter().map(|v| v + 42.0).collect();
        let mut m = Matrix::zeros(100, 2);
        for f in 0..100 {
            m.set(f, 0, col[f]);
            m.set(f, 1, shifted[f]);
        }
        let k = degree_matrix(&m, Algorithm::DivideConquer).unwrap();
        assert_eq!(k.matrix().column(0), k.matrix().column(1));
    }

    #[test]
    fn degree_matrix_reports_offending_frame() {
        let mut m = Matrix::zeros(4, 3);
        m.set(2, 1, f64::NAN);
        match degree_matrix(&m, Algorithm::Naive) {
            Err(SpectralError::Frame { frame: 1, source: VgError::NonFinite { index: 2, .. } }) => {}
            other => panic!("unexpected result {other:?}"),
        }
    }

    #[test]
    fn distribution_matrix_columns_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let mut m = Matrix::zeros(50, 4);
        for t in 0..4 {
            for f in 0..50 {
                m.set(f, t, rng.random::<f64>());
            }
        }
        let k = degree_matrix(&m, Algorithm::DivideConquer).unwrap();
        let p = degree_distribution_matrix(&k);
        for t in 0..4 {
            let sum: f64 = p.matrix().column(t).iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn distribution_matrix_example_column() {
        let m = Matrix::from_vec(5, 1, vec![0.0, 1.0, 2.0, 3.0, 4.0]);
        let k = degree_matrix(&m, Algorithm::Naive).unwrap();
        let p = degree_distribution_matrix(&k);
        // Path degrees [1,2,2,2,1] -> p[1] = 0.4, p[2] = 0.6.
        assert_eq!(p.matrix().column(0), vec![0.0, 0.4, 0.6, 0.0, 0.0]);
    }

    #[test]
    fn harmonic_peaks_dominate_the_degree_column() {
        // Five isolated peaks over a jittery floor: the five largest
        // degree entries must land exactly on the peak bins.
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let peaks = [50usize, 100, 150, 200, 250];
        let mut col: Vec<f64> = (0..300).map(|_| 0.01 + 0.005 * rng.random::<f64>()).collect();
        for (i, &p) in peaks.iter().enumerate() {
            col[p] = 1.0 - 0.12 * i as f64;
        }
        let m = Matrix::from_vec(300, 1, col);
        let k = degree_matrix(&m, Algorithm::DivideConquer).unwrap();
        let degrees = k.matrix().column(0);
        let mut order: Vec<usize> = (0..300).collect();
        order.sort_by(|&a, &b| degrees[b].total_cmp(&degrees[a]));
        let mut top5: Vec<usize> = order[..5].to_vec();
        top5.sort_unstable();
        assert_eq!(top5, peaks);
    }

    #[test]
    fn pitch_shift_changes_distribution_only_slightly() {
        // A harmonic frame and a small circular shift of it (peaks away
        // from the edges) give similar degree distributions.
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let mut col: Vec<f64> = (0..300).map(|_| 0.01 + 0.005 * rng.random::<f64>()).collect();
        for &p in &[60usize, 120, 180, 240] {
            col[p] = 1.0;
        }
        let shift = 7usize;
        let shifted: Vec<f64> = (0..300).map(|i| col[(i + 300 - shift) % 300]).collect();
        let p_base = Representation::Distribution.extract(&col).unwrap();
        let p_shift = Representation::Distribution.extract(&shifted).unwrap();
        let l1: f64 = p_base.iter().zip(&p_shift).map(|(a, b)| (a - b).abs()).sum();
        assert!(l1 < 0.5, "distributions diverged, L1 = {l1}");
    }

    #[test]
    fn wav_roundtrip_16_bit_silence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("silence.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 44100,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut writer = hound::WavWriter::create(&path, spec).unwrap();
        for _ in 0..44100 {
            writer.write_sample(0i16).unwrap();
        }
        writer.finalize().unwrap();
        let buf = load_wav(&path).unwrap();
        assert_eq!(buf.len(), 44100);
        assert_eq!(buf.sample_rate(), 44100);
        assert!(buf.samples().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn wav_stereo_opposite_channels_cancel() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("opposite.wav");
        let spec = hound::WavSpec {
            channels: 2,
            sample_rate: 8000,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut writer = hound::WavWriter::create(&path, spec).unwrap();
        for i in 0..100i16 {
            writer.write_sample(i).unwrap();
            writer.write_sample(-i).unwrap();
        }
        writer.finalize().unwrap();
        let buf = load_wav(&path).unwrap();
        assert_eq!(buf.len(), 100);
        assert!(buf.samples().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn wav_full_scale_16_bit_scaling() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fullscale.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 8000,
            bits_per_sample: 16,
            sample_format: hound::SampleFormat::Int,
        };
        let mut writer = hound::WavWriter::create(&path, spec).unwrap();
        writer.write_sample(32767i16).unwrap();
        writer.write_sample(-32768i16).unwrap();
        writer.finalize().unwrap();
        let buf = load_wav(&path).unwrap();
        assert!((buf.samples()[0] - 32767.0 / 32768.0).abs() < 1e-9);
        assert!((buf.samples()[1] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn wav_float_samples_pass_through() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("float.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 8000,
            bits_per_sample: 32,
            sample_format: hound::SampleFormat::Float,
        };
        let mut writer = hound::WavWriter::create(&path, spec).unwrap();
        for &v in &[0.5f32, -0.25, 0.125] {
            writer.write_sample(v).unwrap();
        }
        writer.finalize().unwrap();
        let buf = load_wav(&path).unwrap();
        assert_eq!(buf.samples(), &[0.5, -0.25, 0.125]);
    }

    #[test]
    fn wav_unsupported_depth_is_named() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("deep.wav");
        let spec = hound::WavSpec {
            channels: 1,
            sample_rate: 8000,
            bits_per_sample: 8,
            sample_format: hound::SampleFormat::Int,
        };
        let mut writer = hound::WavWriter::create(&path, spec).unwrap();
        writer.write_sample(1i8).unwrap();
        writer.finalize().unwrap();
        match load_wav(&path) {
            Err(SpectralError::UnsupportedFormat { detail, .. }) => {
                assert!(detail.contains("8-bit"), "detail: {detail}");
            }
            other => panic!("unexpected result {other:?}"),
        }
    }

    #[test]
    fn wav_missing_file_and_garbage_are_ingestion_errors() {
        assert!(matches!(
            load_wav(Path::new("/nonexistent/nope.wav")),
            Err(SpectralError::Wav { .. })
        ));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("garbage.wav");
        std::fs::write(&path, b"definitely not a RIFF container").unwrap();
        assert!(matches!(load_wav(&path), Err(SpectralError::Wav { .. })));
    }
}
