//! Synthetic harmonic notes, calibrated noise injection, and the two
//! desk-scale retrieval experiments built on them.
//!
//! The note generator is deliberately plain additive synthesis: partials
//! at integer multiples of the fundamental with per-instrument relative
//! amplitudes and an optional exponential decay. Noise is injected at an
//! exact signal-to-noise ratio by scaling against the realized noise
//! power, so calibration holds to well under 0.01 dB.

mod config;
mod experiment;

pub use config::{Accompaniment, ConfigError, Exp1Config, Exp2Config};
pub use experiment::{
    note_dither_seed, note_noise_seed, run_experiment1, run_experiment2_synthetic,
    ExperimentError, ExperimentOutput,
};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::spectral::{AudioBuffer, SpectralError};

/// Errors from synthesis and noise injection.
#[derive(Debug)]
pub enum SynthError {
    /// Instrument recipe violates its invariants.
    BadInstrument { name: String, detail: String },
    /// Note duration must be positive and finite.
    BadDuration(f64),
    /// The fundamental must lie below the Nyquist frequency.
    FundamentalAboveNyquist { f0: f64, nyquist: f64 },
    /// Glide fraction outside the usable range.
    BadGlide(f64),
    /// Vibrato parameters outside the usable range.
    BadVibrato { depth: f64, rate: f64 },
    /// Recording floor must be a finite negative dBFS level.
    BadRecordingFloor(f64),
    /// Noise calibration needs a signal with nonzero power.
    ZeroPower,
    /// Buffer-level failure surfaced by the audio layer.
    Audio(SpectralError),
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthError::BadInstrument { name, detail } => {
                write!(f, "instrument `{name}`: {detail}")
            }
            SynthError::BadDuration(d) => write!(f, "invalid note duration {d} s"),
            SynthError::FundamentalAboveNyquist { f0, nyquist } => {
                write!(f, "fundamental {f0} Hz at or above Nyquist {nyquist} Hz")
            }
            SynthError::BadGlide(g) => write!(f, "glide fraction {g} outside (-0.5, 0.5)"),
            SynthError::BadVibrato { depth, rate } => {
                write!(f, "vibrato depth {depth} / rate {rate} Hz outside the usable range")
            }
            SynthError::BadRecordingFloor(db) => {
                write!(f, "recording floor {db} dBFS is not finite and negative")
            }
            SynthError::ZeroPower => write!(f, "signal has zero power"),
            SynthError::Audio(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SynthError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            SynthError::Audio(e) => Some(e),
            _ => None,
        }
    }
}

impl From<SpectralError> for SynthError {
    fn from(e: SpectralError) -> Self {
        SynthError::Audio(e)
    }
}

/// Additive-synthesis recipe: relative amplitude of partial `n` (at
/// frequency `n * f0`, index `n - 1`) plus an exponential amplitude
/// decay rate in 1/s.
#[derive(Debug, Clone, PartialEq)]
pub struct InstrumentSpec {
    name: String,
    harmonic_amplitudes: Vec<f64>,
    decay: f64,
}

impl InstrumentSpec {
    /// Validates the recipe: at least one partial, non-negative finite
    /// amplitudes with a sounding fundamental, non-negative decay, and a
    /// name usable inside item labels.
    pub fn new(
        name: impl Into<String>,
        harmonic_amplitudes: Vec<f64>,
        decay: f64,
    ) -> Result<Self, SynthError> {
        let name = name.into();
        let err = |detail: &str| SynthError::BadInstrument {
            name: name.clone(),
            detail: detail.to_string(),
        };
        if name.is_empty() || name.contains(['/', ',', '@', ' ']) {
            return Err(err("name must be non-empty without `/`, `,`, `@` or spaces"));
        }
        if harmonic_amplitudes.is_empty() {
            return Err(err("needs at least one partial"));
        }
        if harmonic_amplitudes.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(err("amplitudes must be finite and non-negative"));
        }
        if harmonic_amplitudes[0] <= 0.0 {
            return Err(err("first partial must be positive"));
        }
        if !decay.is_finite() || decay < 0.0 {
            return Err(err("decay must be finite and non-negative"));
        }
        Ok(InstrumentSpec { name, harmonic_amplitudes, decay })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn harmonic_amplitudes(&self) -> &[f64] {
        &self.harmonic_amplitudes
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }
}

/// The four built-in instruments, spanning distinct spectral envelopes:
/// flat comb, 1/n rolloff, odd partials only, and a decaying
/// strong-fundamental voice whose four partials deliberately shadow the
/// rolloff recipe (close in raw spectrum, far apart in degree space).
pub fn builtin_instruments() -> Vec<InstrumentSpec> {
    let flat8 = InstrumentSpec::new("flat8", vec![1.0; 8], 0.0).unwrap();
    let rolloff10 =
        InstrumentSpec::new("rolloff10", (1..=10).map(|n| 1.0 / n as f64).collect(), 0.0).unwrap();
    let odd7 = InstrumentSpec::new(
        "odd7",
        (1..=13).map(|n| if n % 2 == 1 { 1.0 / n as f64 } else { 0.0 }).collect(),
        0.0,
    )
    .unwrap();
    let decay4 =
        InstrumentSpec::new("decay4", (1..=4).map(|n| 1.0 / n as f64).collect(), 2.0).unwrap();
    vec![flat8, rolloff10, odd7, decay4]
}

/// One note to synthesize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoteEvent {
    pub midi_number: i32,
    pub duration: f64,
    pub sample_rate: u32,
}

/// Equal-tempered fundamental for a MIDI note number (A4 = 69 = 440 Hz).
pub fn midi_to_hz(midi: i32) -> f64 {
    440.0 * 2f64.powf((midi - 69) as f64 / 12.0)
}

/// Note name for a MIDI number, e.g. 45 -> "A2", 61 -> "C#4".
pub fn midi_note_name(midi: i32) -> String {
    const NAMES: [&str; 12] =
        ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];
    let semitone = midi.rem_euclid(12) as usize;
    let octave = midi.div_euclid(12) - 1;
    format!("{}{}", NAMES[semitone], octave)
}

/// Parses either a note name ("A2", "C#3", "Eb4") or a raw MIDI number.
pub fn parse_note(text: &str) -> Result<i32, String> {
    let s = text.trim();
    if let Ok(midi) = s.parse::<i32>() {
        return Ok(midi);
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err("empty note".to_string());
    }
    let base = match bytes[0].to_ascii_uppercase() {
        b'C' => 0,
        b'D' => 2,
        b'E' => 4,
        b'F' => 5,
        b'G' => 7,
        b'A' => 9,
        b'B' => 11,
        _ => return Err(format!("unknown note `{s}`")),
    };
    let mut rest = &s[1..];
    let mut accidental = 0;
    if let Some(stripped) = rest.strip_prefix('#') {
        accidental = 1;
        rest = stripped;
    } else if let Some(stripped) = rest.strip_prefix('b') {
        accidental = -1;
        rest = stripped;
    }
    let octave: i32 =
        rest.parse().map_err(|_| format!("unknown note `{s}` (bad octave `{rest}`)"))?;
    Ok(12 * (octave + 1) + base + accidental)
}

fn checked_sample_count(note: &NoteEvent) -> Result<usize, SynthError> {
    if !note.duration.is_finite() || note.duration <= 0.0 {
        return Err(SynthError::BadDuration(note.duration));
    }
    let f0 = midi_to_hz(note.midi_number);
    let nyquist = f64::from(note.sample_rate) / 2.0;
    if f0 >= nyquist {
        return Err(SynthError::FundamentalAboveNyquist { f0, nyquist });
    }
    Ok(((note.duration * f64::from(note.sample_rate)).round() as usize).max(1))
}

fn peak_normalize(samples: &mut [f64], target: f64) {
    let peak = samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    if peak > 0.0 {
        let scale = target / peak;
        for s in samples.iter_mut() {
            *s *= scale;
        }
    }
}

/// Renders a steady note: the sum over partials of
/// `amp_n * exp(-decay * t) * sin(2*pi * n * f0 * t)`, with partials at
/// or above Nyquist dropped, peak-normalized to 0.9.
pub fn synthesize_note(spec: &InstrumentSpec, note: &NoteEvent) -> Result<AudioBuffer, SynthError> {
    let n_samples = checked_sample_count(note)?;
    let f0 = midi_to_hz(note.midi_number);
    let nyquist = f64::from(note.sample_rate) / 2.0;
    let partials: Vec<(f64, f64)> = spec
        .harmonic_amplitudes
        .iter()
        .enumerate()
        .map(|(i, &amp)| ((i + 1) as f64 * f0, amp))
        .filter(|&(freq, amp)| amp > 0.0 && freq < nyquist)
        .collect();
    let dt = 1.0 / f64::from(note.sample_rate);
    let mut samples = vec![0.0f64; n_samples];
    for (i, s) in samples.iter_mut().enumerate() {
        let t = i as f64 * dt;
        let env = (-spec.decay * t).exp();
        let mut acc = 0.0;
        for &(freq, amp) in &partials {
            acc += amp * (2.0 * std::f64::consts::PI * freq * t).sin();
        }
        *s = env * acc;
    }
    peak_normalize(&mut samples, 0.9);
    Ok(AudioBuffer::new(samples, note.sample_rate)?)
}

/// Pitch and timbre motion for a synthesized melody line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlideSpec {
    /// Total relative frequency sweep across the note, centered on the
    /// nominal pitch; must lie in (-0.5, 0.5).
    pub glide: f64,
    /// Peak relative frequency deviation of the vibrato; in [0, 0.4).
    pub vibrato_depth: f64,
    /// Vibrato rate in Hz; must be positive when depth is nonzero.
    pub vibrato_rate: f64,
    /// Extra amplitude decay of partial n at `partial_decay * (n - 1)`
    /// per second, so the spectral envelope keeps evolving; >= 0.
    pub partial_decay: f64,
}

impl GlideSpec {
    fn check(&self) -> Result<(), SynthError> {
        if !self.glide.is_finite() || self.glide.abs() >= 0.5 {
            return Err(SynthError::BadGlide(self.glide));
        }
        let bad_depth = !self.vibrato_depth.is_finite() || !(0.0..0.4).contains(&self.vibrato_depth);
        let bad_rate = !self.vibrato_rate.is_finite()
            || self.vibrato_rate < 0.0
            || (self.vibrato_depth > 0.0 && self.vibrato_rate == 0.0);
        if bad_depth || bad_rate {
            return Err(SynthError::BadVibrato {
                depth: self.vibrato_depth,
                rate: self.vibrato_rate,
            });
        }
        if !self.partial_decay.is_finite() || self.partial_decay < 0.0 {
            return Err(SynthError::BadDuration(self.partial_decay));
        }
        Ok(())
    }
}

/// Renders a moving note for the frame-ranking experiment: the
/// fundamental sweeps linearly by `glide` across the note, wobbles with
/// the configured vibrato, and partial amplitudes fade at per-partial
/// rates. The monotone sweep plus the evolving envelope make every
/// analysis frame of the note distinct, which the frame-retrieval task
/// needs, while the vibrato moves the partials by whole frequency bins
/// between neighbouring frames. Peak-normalized to 0.9.
pub fn synthesize_glide_note(
    amplitudes: &[f64],
    note: &NoteEvent,
    motion: &GlideSpec,
) -> Result<AudioBuffer, SynthError> {
    motion.check()?;
    let n_samples = checked_sample_count(note)?;
    let f0 = midi_to_hz(note.midi_number);
    let nyquist = f64::from(note.sample_rate) / 2.0;
    let top = f0 * (1.0 + motion.glide.abs() / 2.0 + motion.vibrato_depth);
    let partials: Vec<(usize, f64)> = amplitudes
        .iter()
        .enumerate()
        .map(|(i, &amp)| (i + 1, amp))
        .filter(|&(n, amp)| amp > 0.0 && n as f64 * top < nyquist)
        .collect();
    let dt = 1.0 / f64::from(note.sample_rate);
    let duration = n_samples as f64 * dt;
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut samples = vec![0.0f64; n_samples];
    for (i, s) in samples.iter_mut().enumerate() {
        let t = i as f64 * dt;
        // Integral over [0, t] of the instantaneous frequency
        // f0 * (1 + glide * (t/D - 1/2) + depth * sin(2*pi*rate*t)).
        let mut cycles = t + motion.glide * (t * t / (2.0 * duration) - t / 2.0);
        if motion.vibrato_depth > 0.0 {
            cycles += motion.vibrato_depth * (1.0 - (two_pi * motion.vibrato_rate * t).cos())
                / (two_pi * motion.vibrato_rate);
        }
        let phase_base = f0 * cycles;
        let mut acc = 0.0;
        for &(n, amp) in &partials {
            let fade = (-motion.partial_decay * (n - 1) as f64 * t).exp();
            acc += amp * fade * (two_pi * n as f64 * phase_base).sin();
        }
        *s = acc;
    }
    peak_normalize(&mut samples, 0.9);
    Ok(AudioBuffer::new(samples, note.sample_rate)?)
}

/// Rounds samples onto the 16-bit PCM grid, the WAV rendering step
/// every recorded dataset passes through. Audio straight from the
/// oscillator has an empty noise floor near the f64 epsilon, giving its
/// spectra degenerate fine structure that no physical recording ever
/// shows; the quantization floor of the storage medium is part of what
/// the experiments model. Values beyond full scale saturate.
pub fn render_pcm16(buf: &AudioBuffer) -> Result<AudioBuffer, SynthError> {
    let samples: Vec<f64> = buf
        .samples()
        .iter()
        .map(|s| (s * 32768.0).round().clamp(-32768.0, 32767.0) / 32768.0)
        .collect();
    Ok(AudioBuffer::new(samples, buf.sample_rate())?)
}

/// Rounds samples onto the 16-bit PCM grid with TPDF dither, the
/// standard practice when mastering float audio to 16 bits. Dither
/// decorrelates the quantization error from the signal, so the rendered
/// note carries a white noise floor (about -90 dB) instead of harmonic
/// quantization distortion — exactly what a real quiet recording looks
/// like. The dither stream is seeded, so rendering is reproducible.
pub fn render_pcm16_dithered(buf: &AudioBuffer, seed: u64) -> Result<AudioBuffer, SynthError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<f64> = buf
        .samples()
        .iter()
        .map(|s| {
            let dither = rng.random::<f64>() - rng.random::<f64>();
            (s * 32768.0 + dither).round().clamp(-32768.0, 32767.0) / 32768.0
        })
        .collect();
    Ok(AudioBuffer::new(samples, buf.sample_rate())?)
}

/// Renders a synthesized buffer the way a recording chain would capture
/// it: a white recording floor (mic, room, and preamp hiss) at
/// `floor_db` dBFS is added, then the result is dithered onto the
/// 16-bit grid. Synthetic audio without any floor is spectrally
/// degenerate — every real capture carries hiss well above the
/// quantization step — so the experiments render all clean material
/// through this model. Requires a finite, negative `floor_db`.
pub fn render_recording(
    buf: &AudioBuffer,
    floor_db: f64,
    seed: u64,
) -> Result<AudioBuffer, SynthError> {
    if !floor_db.is_finite() || floor_db >= 0.0 {
        return Err(SynthError::BadRecordingFloor(floor_db));
    }
    let sigma = 10f64.powf(floor_db / 20.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<f64> = buf
        .samples()
        .iter()
        .map(|s| {
            let hiss: f64 = StandardNormal.sample(&mut rng);
            let dither = rng.random::<f64>() - rng.random::<f64>();
            ((s + sigma * hiss) * 32768.0 + dither).round().clamp(-32768.0, 32767.0) / 32768.0
        })
        .collect();
    Ok(AudioBuffer::new(samples, buf.sample_rate())?)
}

/// Adds seeded white Gaussian noise scaled so the realized SNR equals
/// `snr_db` exactly: the gain is computed against the measured power of
/// the drawn noise, not its nominal unit variance.
pub fn add_noise_at_snr(
    buf: &AudioBuffer,
    snr_db: f64,
    rng_seed: u64,
) -> Result<AudioBuffer, SynthError> {
    let signal_power = buf.power();
    if signal_power == 0.0 {
        return Err(SynthError::ZeroPower);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let noise: Vec<f64> =
        (0..buf.len()).map(|_| StandardNormal.sample(&mut rng)).collect();
    let noise_power = noise.iter().map(|w| w * w).sum::<f64>() / noise.len() as f64;
    if noise_power == 0.0 {
        return Err(SynthError::ZeroPower);
    }
    let gain = (signal_power / (noise_power * 10f64.powf(snr_db / 10.0))).sqrt();
    let samples: Vec<f64> =
        buf.samples().iter().zip(&noise).map(|(s, w)| s + gain * w).collect();
    Ok(AudioBuffer::new(samples, buf.sample_rate())?)
}

/// Realized SNR in dB between a clean signal and its noisy version.
pub fn measured_snr_db(clean: &AudioBuffer, noisy: &AudioBuffer) -> f64 {
    let noise_power = clean
        .samples()
        .iter()
        .zip(noisy.samples())
        .map(|(c, n)| (n - c) * (n - c))
        .sum::<f64>()
        / clean.len() as f64;
    10.0 * (clean.power() / noise_power).log10()
}

/// One splitmix64 scrambling step.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed from a root seed and a coordinate
/// path (such as instrument/note/SNR indices), so every experiment item
/// gets its own reproducible noise stream.
pub fn derive_seed(root: u64, path: &[u64]) -> u64 {
    let mut h = splitmix64(root);
    for &p in path {
        h = splitmix64(h ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    }
    h
}
