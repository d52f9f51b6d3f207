//! Flat key-value experiment configuration.
//!
//! Format: one `key = value` pair per line, `#` starts a comment, blank
//! lines are ignored, lists are comma-separated. Unknown keys are
//! errors, so typos cannot silently fall back to defaults.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::similarity::Metric;
use crate::spectral::{check_fft_args, Representation};
use crate::synthbench::{builtin_instruments, parse_note, InstrumentSpec};

/// Errors from parsing or validating an experiment configuration. The
/// message always names the offending key or line.
#[derive(Debug)]
pub enum ConfigError {
    /// Line has no `=` separator.
    BadLine { line: usize, content: String },
    /// Key is not part of this experiment's schema.
    UnknownKey(String),
    /// Key appears more than once.
    DuplicateKey(String),
    /// Value cannot be parsed or violates the key's constraints.
    BadValue { key: String, detail: String },
    /// `instruments` references a name with no built-in or custom recipe.
    UnknownInstrument(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::BadLine { line, content } => {
                write!(f, "config line {line}: expected `key = value`, got `{content}`")
            }
            ConfigError::UnknownKey(key) => write!(f, "unknown config key `{key}`"),
            ConfigError::DuplicateKey(key) => write!(f, "duplicate config key `{key}`"),
            ConfigError::BadValue { key, detail } => {
                write!(f, "config key `{key}`: {detail}")
            }
            ConfigError::UnknownInstrument(name) => {
                write!(f, "config key `instruments`: unknown instrument `{name}`")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

/// What plays alongside the lead in the synthetic frame experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accompaniment {
    /// Bursty broadband noise mixed at the configured SNR.
    Noise,
    /// Nothing: the mixture equals the lead (control condition).
    Silence,
}

impl std::str::FromStr for Accompaniment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "noise" => Ok(Accompaniment::Noise),
            "silence" => Ok(Accompaniment::Silence),
            other => Err(format!("unknown accompaniment `{other}` (expected noise|silence)")),
        }
    }
}

impl fmt::Display for Accompaniment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Accompaniment::Noise => "noise",
            Accompaniment::Silence => "silence",
        })
    }
}

/// Configuration for the note-retrieval experiment: clean notes are
/// queries, the pool holds every clean note plus every note degraded at
/// one SNR, and the target is the query's own degraded version.
#[derive(Debug, Clone)]
pub struct Exp1Config {
    pub instruments: Vec<InstrumentSpec>,
    pub notes: Vec<i32>,
    pub note_duration: f64,
    pub sample_rate: u32,
    pub snr_db: Vec<f64>,
    pub fft_size: usize,
    pub keep_bins: usize,
    pub recording_floor_db: f64,
    pub metrics: Vec<Metric>,
    pub representations: Vec<Representation>,
    pub rng_seed: u64,
}

impl Default for Exp1Config {
    fn default() -> Self {
        Exp1Config {
            instruments: builtin_instruments(),
            notes: vec![45, 48, 52, 55, 57, 60, 64, 67],
            note_duration: 1.0,
            sample_rate: 44100,
            snr_db: vec![-20.0, -10.0, 0.0, 10.0, 20.0],
            fft_size: 16384,
            keep_bins: 2000,
            recording_floor_db: -50.0,
            metrics: vec![Metric::Euclidean, Metric::Cosine],
            representations: vec![
                Representation::Magnitude,
                Representation::Degree,
                Representation::Distribution,
            ],
            rng_seed: 1,
        }
    }
}

/// Configuration for the synthetic frame-ranking experiment: frames of
/// a clean gliding lead are queries against frames of the lead mixed
/// with accompaniment.
#[derive(Debug, Clone)]
pub struct Exp2Config {
    pub lead_notes: Vec<i32>,
    pub note_duration: f64,
    pub lead_partials: usize,
    pub glide: f64,
    pub vibrato_depth: f64,
    pub vibrato_rate: f64,
    pub partial_decay: f64,
    pub accompaniment: Accompaniment,
    pub snr_db: f64,
    pub burst_rate: f64,
    pub burst_decay: f64,
    pub noise_floor: f64,
    pub sample_rate: u32,
    pub window_size: usize,
    pub overlap: f64,
    pub keep_bins: usize,
    pub activity_threshold: f64,
    pub recording_floor_db: f64,
    pub metrics: Vec<Metric>,
    pub representations: Vec<Representation>,
    pub rng_seed: u64,
}

impl Default for Exp2Config {
    fn default() -> Self {
        Exp2Config {
            lead_notes: vec![57, 60, 64, 67],
            note_duration: 1.0,
            lead_partials: 5,
            glide: 0.06,
            vibrato_depth: 0.035,
            vibrato_rate: 5.0,
            partial_decay: 0.5,
            accompaniment: Accompaniment::Noise,
            snr_db: 0.0,
            burst_rate: 8.0,
            burst_decay: 6.0,
            noise_floor: 0.5,
            sample_rate: 44100,
            window_size: 2046,
            overlap: 0.5,
            keep_bins: 500,
            activity_threshold: 0.01,
            recording_floor_db: -50.0,
            metrics: vec![Metric::Euclidean, Metric::Cosine],
            representations: vec![
                Representation::Magnitude,
                Representation::Degree,
                Representation::Distribution,
            ],
            rng_seed: 1,
        }
    }
}

fn bad(key: &str, detail: impl Into<String>) -> ConfigError {
    ConfigError::BadValue { key: key.to_string(), detail: detail.into() }
}

/// Splits a config text into unique `(key, value)` pairs.
fn split_pairs(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(ConfigError::BadLine { line: i + 1, content: line.to_string() });
        };
        let key = line[..eq].trim().to_string();
        let value = line[eq + 1..].trim().to_string();
        if key.is_empty() {
            return Err(ConfigError::BadLine { line: i + 1, content: line.to_string() });
        }
        if !seen.insert(key.clone()) {
            return Err(ConfigError::DuplicateKey(key));
        }
        pairs.push((key, value));
    }
    Ok(pairs)
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 =
        value.parse().map_err(|_| bad(key, format!("`{value}` is not a number")))?;
    if !v.is_finite() {
        return Err(bad(key, format!("`{value}` is not finite")));
    }
    Ok(v)
}

fn parse_usize(key: &str, value: &str) -> Result<usize, ConfigError> {
    value.parse().map_err(|_| bad(key, format!("`{value}` is not a non-negative integer")))
}

fn parse_u64(key: &str, value: &str) -> Result<u64, ConfigError> {
    value.parse().map_err(|_| bad(key, format!("`{value}` is not a non-negative integer")))
}

fn parse_u32(key: &str, value: &str) -> Result<u32, ConfigError> {
    value.parse().map_err(|_| bad(key, format!("`{value}` is not a non-negative integer")))
}

fn split_list(value: &str) -> Vec<&str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_notes(key: &str, value: &str) -> Result<Vec<i32>, ConfigError> {
    split_list(value)
        .into_iter()
        .map(|item| parse_note(item).map_err(|e| bad(key, e)))
        .collect()
}

fn parse_f64_list(key: &str, value: &str) -> Result<Vec<f64>, ConfigError> {
    split_list(value).into_iter().map(|item| parse_f64(key, item)).collect()
}

fn parse_metrics(key: &str, value: &str) -> Result<Vec<Metric>, ConfigError> {
    split_list(value).into_iter().map(|item| item.parse().map_err(|e| bad(key, e))).collect()
}

fn parse_representations(key: &str, value: &str) -> Result<Vec<Representation>, ConfigError> {
    split_list(value).into_iter().map(|item| item.parse().map_err(|e| bad(key, e))).collect()
}

/// Accumulates `instrument.<name>.amplitudes` / `instrument.<name>.decay`
/// keys into custom recipes.
#[derive(Default)]
struct CustomInstruments {
    amplitudes: HashMap<String, Vec<f64>>,
    decay: HashMap<String, f64>,
    order: Vec<String>,
}

impl CustomInstruments {
    /// Consumes the key if it is an instrument definition.
    fn try_consume(&mut self, key: &str, value: &str) -> Result<bool, ConfigError> {
        let Some(rest) = key.strip_prefix("instrument.") else {
            return Ok(false);
        };
        let Some((name, field)) = rest.rsplit_once('.') else {
            return Err(ConfigError::UnknownKey(key.to_string()));
        };
        if !self.amplitudes.contains_key(name) && !self.decay.contains_key(name) {
            self.order.push(name.to_string());
        }
        match field {
            "amplitudes" => {
                self.amplitudes.insert(name.to_string(), parse_f64_list(key, value)?);
                Ok(true)
            }
            "decay" => {
                self.decay.insert(name.to_string(), parse_f64(key, value)?);
                Ok(true)
            }
            _ => Err(ConfigError::UnknownKey(key.to_string())),
        }
    }

    /// Builds the recipe for `name` if one was defined.
    fn build(&self, name: &str) -> Result<Option<InstrumentSpec>, ConfigError> {
        let amps = match self.amplitudes.get(name) {
            Some(a) => a.clone(),
            None => {
                if self.decay.contains_key(name) {
                    return Err(bad(
                        &format!("instrument.{name}.amplitudes"),
                        "missing (every custom instrument needs amplitudes)",
                    ));
                }
                return Ok(None);
            }
        };
        let decay = self.decay.get(name).copied().unwrap_or(0.0);
        let spec = InstrumentSpec::new(name, amps, decay)
            .map_err(|e| bad(&format!("instrument.{name}.amplitudes"), e.to_string()))?;
        Ok(Some(spec))
    }
}

fn resolve_instruments(
    names: &[&str],
    customs: &CustomInstruments,
) -> Result<Vec<InstrumentSpec>, ConfigError> {
    let builtins = builtin_instruments();
    names
        .iter()
        .map(|&name| {
            if let Some(spec) = customs.build(name)? {
                return Ok(spec);
            }
            builtins
                .iter()
                .find(|b| b.name() == name)
                .cloned()
                .ok_or_else(|| ConfigError::UnknownInstrument(name.to_string()))
        })
        .collect()
}

fn check_unique<T: PartialEq + fmt::Debug>(key: &str, items: &[T]) -> Result<(), ConfigError> {
    for (i, a) in items.iter().enumerate() {
        if items[..i].contains(a) {
            return Err(bad(key, format!("duplicate entry {a:?}")));
        }
    }
    Ok(())
}

fn check_non_empty<T>(key: &str, items: &[T]) -> Result<(), ConfigError> {
    if items.is_empty() {
        return Err(bad(key, "list must not be empty"));
    }
    Ok(())
}

impl Exp1Config {
    /// Parses a key-value config; unset keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Exp1Config::default();
        let mut customs = CustomInstruments::default();
        let mut instrument_names: Option<Vec<String>> = None;
        for (key, value) in split_pairs(text)? {
            if customs.try_consume(&key, &value)? {
                continue;
            }
            match key.as_str() {
                "instruments" => {
                    instrument_names =
                        Some(split_list(&value).into_iter().map(str::to_string).collect());
                }
                "notes" => cfg.notes = parse_notes(&key, &value)?,
                "note_duration" => cfg.note_duration = parse_f64(&key, &value)?,
                "sample_rate" => cfg.sample_rate = parse_u32(&key, &value)?,
                "snr_db" => cfg.snr_db = parse_f64_list(&key, &value)?,
                "fft_size" => cfg.fft_size = parse_usize(&key, &value)?,
                "keep_bins" => cfg.keep_bins = parse_usize(&key, &value)?,
                "recording_floor_db" => {
                    cfg.recording_floor_db = parse_f64(&key, &value)?
                }
                "metrics" => cfg.metrics = parse_metrics(&key, &value)?,
                "representations" => {
                    cfg.representations = parse_representations(&key, &value)?
                }
                "seed" => cfg.rng_seed = parse_u64(&key, &value)?,
                _ => return Err(ConfigError::UnknownKey(key)),
            }
        }
        match instrument_names {
            Some(names) => {
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                cfg.instruments = resolve_instruments(&refs, &customs)?;
            }
            // Custom recipes defined but no explicit list: validate them
            // anyway so a bad recipe cannot hide, then keep the defaults.
            None => {
                for name in &customs.order {
                    customs.build(name)?;
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks cross-field invariants; every parse ends with this.
    pub fn validate(&self) -> Result<(), ConfigError> {
        check_non_empty("instruments", &self.instruments)?;
        let names: Vec<&str> = self.instruments.iter().map(InstrumentSpec::name).collect();
        check_unique("instruments", &names)?;
        check_non_empty("notes", &self.notes)?;
        check_unique("notes", &self.notes)?;
        check_non_empty("snr_db", &self.snr_db)?;
        check_unique("snr_db", &self.snr_db)?;
        check_non_empty("metrics", &self.metrics)?;
        check_unique("metrics", &self.metrics)?;
        check_non_empty("representations", &self.representations)?;
        check_unique("representations", &self.representations)?;
        if !self.note_duration.is_finite() || self.note_duration <= 0.0 {
            return Err(bad("note_duration", "must be a positive duration in seconds"));
        }
        if self.sample_rate == 0 {
            return Err(bad("sample_rate", "must be positive"));
        }
        check_fft_args(self.fft_size, self.keep_bins)
            .map_err(|e| bad("fft_size/keep_bins", e.to_string()))?;
        if !self.recording_floor_db.is_finite() || self.recording_floor_db >= 0.0 {
            return Err(bad("recording_floor_db", "must be a finite negative dBFS level"));
        }
        Ok(())
    }
}

impl Exp2Config {
    /// Parses a key-value config; unset keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Exp2Config::default();
        for (key, value) in split_pairs(text)? {
            match key.as_str() {
                "lead_notes" => cfg.lead_notes = parse_notes(&key, &value)?,
                "note_duration" => cfg.note_duration = parse_f64(&key, &value)?,
                "lead_partials" => cfg.lead_partials = parse_usize(&key, &value)?,
                "glide" => cfg.glide = parse_f64(&key, &value)?,
                "vibrato_depth" => cfg.vibrato_depth = parse_f64(&key, &value)?,
                "vibrato_rate" => cfg.vibrato_rate = parse_f64(&key, &value)?,
                "partial_decay" => cfg.partial_decay = parse_f64(&key, &value)?,
                "accompaniment" => {
                    cfg.accompaniment = value.parse().map_err(|e: String| bad(&key, e))?
                }
                "snr_db" => cfg.snr_db = parse_f64(&key, &value)?,
                "burst_rate" => cfg.burst_rate = parse_f64(&key, &value)?,
                "burst_decay" => cfg.burst_decay = parse_f64(&key, &value)?,
                "noise_floor" => cfg.noise_floor = parse_f64(&key, &value)?,
                "sample_rate" => cfg.sample_rate = parse_u32(&key, &value)?,
                "window" => cfg.window_size = parse_usize(&key, &value)?,
                "overlap" => cfg.overlap = parse_f64(&key, &value)?,
                "bins" => cfg.keep_bins = parse_usize(&key, &value)?,
                "activity_threshold" => cfg.activity_threshold = parse_f64(&key, &value)?,
                "recording_floor_db" => {
                    cfg.recording_floor_db = parse_f64(&key, &value)?
                }
                "metrics" => cfg.metrics = parse_metrics(&key, &value)?,
                "representations" => {
                    cfg.representations = parse_representations(&key, &value)?
                }
                "seed" => cfg.rng_seed = parse_u64(&key, &value)?,
                _ => return Err(ConfigError::UnknownKey(key)),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks cross-field invariants; every parse ends with this.
    pub fn validate(&self) -> Result<(), ConfigError> {
        check_non_empty("lead_notes", &self.lead_notes)?;
        check_non_empty("metrics", &self.metrics)?;
        check_unique("metrics", &self.metrics)?;
        check_non_empty("representations", &self.representations)?;
        check_unique("representations", &self.representations)?;
        if !self.note_duration.is_finite() || self.note_duration <= 0.0 {
            return Err(bad("note_duration", "must be a positive duration in seconds"));
        }
        if self.lead_partials == 0 {
            return Err(bad("lead_partials", "must be at least 1"));
        }
        if !self.glide.is_finite() || self.glide.abs() >= 0.5 {
            return Err(bad("glide", "must lie in (-0.5, 0.5)"));
        }
        if !self.vibrato_depth.is_finite() || !(0.0..0.4).contains(&self.vibrato_depth) {
            return Err(bad("vibrato_depth", "must lie in [0, 0.4)"));
        }
        if !self.vibrato_rate.is_finite()
            || self.vibrato_rate < 0.0
            || (self.vibrato_depth > 0.0 && self.vibrato_rate == 0.0)
        {
            return Err(bad("vibrato_rate", "must be positive when vibrato_depth is set"));
        }
        if !self.partial_decay.is_finite() || self.partial_decay < 0.0 {
            return Err(bad("partial_decay", "must be non-negative"));
        }
        if !self.burst_rate.is_finite() || self.burst_rate <= 0.0 {
            return Err(bad("burst_rate", "must be positive bursts per second"));
        }
        if !self.burst_decay.is_finite() || self.burst_decay <= 0.0 {
            return Err(bad("burst_decay", "must be positive"));
        }
        if !self.noise_floor.is_finite() || !(0.0..=1.0).contains(&self.noise_floor) {
            return Err(bad("noise_floor", "must lie in [0, 1]"));
        }
        if self.sample_rate == 0 {
            return Err(bad("sample_rate", "must be positive"));
        }
        if self.window_size < 2 {
            return Err(bad("window", "must be at least 2 samples"));
        }
        if !self.overlap.is_finite() || !(0.0..1.0).contains(&self.overlap) {
            return Err(bad("overlap", "must lie in [0, 1)"));
        }
        let max_bins = self.window_size.next_power_of_two() / 2 + 1;
        if self.keep_bins == 0 || self.keep_bins > max_bins {
            return Err(bad("bins", format!("must lie in 1..={max_bins} for this window")));
        }
        if !self.activity_threshold.is_finite() || !(0.0..1.0).contains(&self.activity_threshold)
        {
            return Err(bad("activity_threshold", "must lie in [0, 1)"));
        }
        if !self.recording_floor_db.is_finite() || self.recording_floor_db >= 0.0 {
            return Err(bad("recording_floor_db", "must be a finite negative dBFS level"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        Exp1Config::default().validate().unwrap();
        Exp2Config::default().validate().unwrap();
    }

    #[test]
    fn empty_text_gives_defaults() {
        let cfg = Exp1Config::parse("").unwrap();
        assert_eq!(cfg.notes, Exp1Config::default().notes);
        assert_eq!(cfg.fft_size, 16384);
        assert_eq!(cfg.keep_bins, 2000);
        let cfg2 = Exp2Config::parse("").unwrap();
        assert_eq!(cfg2.window_size, 2046);
        assert_eq!(cfg2.overlap, 0.5);
        assert_eq!(cfg2.keep_bins, 500);
    }

    #[test]
    fn full_exp1_roundtrip() {
        let text = "\
# toy setup
instruments = flat8, pluck
instrument.pluck.amplitudes = 1, 0.6, 0.4
instrument.pluck.decay = 3
notes = A2, 60
note_duration = 0.25
sample_rate = 22050
snr_db = 0, 10
fft_size = 4096
keep_bins = 500
metrics = cosine
representations = degree, magnitude
seed = 7
";
        let cfg = Exp1Config::parse(text).unwrap();
        assert_eq!(cfg.instruments.len(), 2);
        assert_eq!(cfg.instruments[1].name(), "pluck");
        assert_eq!(cfg.instruments[1].harmonic_amplitudes(), &[1.0, 0.6, 0.4]);
        assert_eq!(cfg.instruments[1].decay(), 3.0);
        assert_eq!(cfg.notes, vec![45, 60]);
        assert_eq!(cfg.snr_db, vec![0.0, 10.0]);
        assert_eq!(cfg.metrics, vec![Metric::Cosine]);
        assert_eq!(
            cfg.representations,
            vec![Representation::Degree, Representation::Magnitude]
        );
        assert_eq!(cfg.rng_seed, 7);
    }

    #[test]
    fn unknown_key_is_named() {
        let err = Exp1Config::parse("frobnicate = 3\n").unwrap_err();
        assert!(err.to_string().contains("frobnicate"), "{err}");
        let err = Exp2Config::parse("fft_size = 1024\n").unwrap_err();
        assert!(err.to_string().contains("fft_size"), "{err}");
    }

    #[test]
    fn bad_value_is_named() {
        let err = Exp1Config::parse("fft_size = banana\n").unwrap_err();
        assert!(err.to_string().contains("fft_size"), "{err}");
        let err = Exp2Config::parse("overlap = 1.5\n").unwrap_err();
        assert!(err.to_string().contains("overlap"), "{err}");
    }

    #[test]
    fn duplicate_key_is_rejected() {
        let err = Exp1Config::parse("seed = 1\nseed = 2\n").unwrap_err();
        assert!(matches!(err, ConfigError::DuplicateKey(ref k) if k == "seed"), "{err}");
    }

    #[test]
    fn line_without_equals_is_rejected() {
        let err = Exp1Config::parse("seed = 1\nnonsense\n").unwrap_err();
        assert!(matches!(err, ConfigError::BadLine { line: 2, .. }), "{err}");
    }

    #[test]
    fn unknown_instrument_is_rejected() {
        let err = Exp1Config::parse("instruments = flat8, theremin\n").unwrap_err();
        assert!(matches!(err, ConfigError::UnknownInstrument(ref n) if n == "theremin"));
    }

    #[test]
    fn custom_instrument_requires_amplitudes() {
        let text = "instruments = pluck\ninstrument.pluck.decay = 2\n";
        let err = Exp1Config::parse(text).unwrap_err();
        assert!(err.to_string().contains("instrument.pluck.amplitudes"), "{err}");
    }

    #[test]
    fn invalid_custom_recipe_is_rejected() {
        let text = "instruments = pluck\ninstrument.pluck.amplitudes = 0, 1\n";
        assert!(Exp1Config::parse(text).is_err());
    }

    #[test]
    fn duplicates_in_lists_are_rejected() {
        assert!(Exp1Config::parse("notes = A2, A2\n").is_err());
        assert!(Exp1Config::parse("instruments = flat8, flat8\n").is_err());
        assert!(Exp1Config::parse("metrics = cosine, cosine\n").is_err());
    }

    #[test]
    fn fft_constraints_checked() {
        assert!(Exp1Config::parse("fft_size = 1000\n").is_err());
        assert!(Exp1Config::parse("fft_size = 1024\nkeep_bins = 4000\n").is_err());
        assert!(Exp1Config::parse("fft_size = 1024\nkeep_bins = 513\n").is_ok());
    }

    #[test]
    fn exp2_roundtrip_and_bounds() {
        let text = "\
lead_notes = A3, C4
note_duration = 0.5
lead_partials = 4
glide = 0.1
accompaniment = silence
window = 512
overlap = 0.75
bins = 200
activity_threshold = 0.05
seed = 3
";
        let cfg = Exp2Config::parse(text).unwrap();
        assert_eq!(cfg.lead_notes, vec![57, 60]);
        assert_eq!(cfg.accompaniment, Accompaniment::Silence);
        assert_eq!(cfg.window_size, 512);
        assert_eq!(cfg.keep_bins, 200);
        assert!(Exp2Config::parse("accompaniment = drums\n").is_err());
        assert!(Exp2Config::parse("glide = 0.9\n").is_err());
        assert!(Exp2Config::parse("window = 512\nbins = 300\n").is_err());
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let cfg = Exp1Config::parse("\n  # hello\nseed = 9 # trailing\n\n").unwrap();
        assert_eq!(cfg.rng_seed, 9);
    }
}
