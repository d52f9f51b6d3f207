//! `specvis` — visibility graphs of sequences and spectra.
//!
//! Three subcommands: `graph` builds the natural visibility graph of a
//! height sequence from CSV, `svg` turns a WAV file into a spectral
//! visibility-graph matrix (magnitude / degree / degree distribution),
//! and `experiment` runs one of the two synthetic retrieval benchmarks
//! from a key-value config file.
//!
//! Exit codes: 0 on success, 1 on usage or configuration errors, 2 on
//! data or validation errors. Output files are written atomically, so a
//! failed run never leaves partial files behind.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use specvis::io::{degrees_to_csv, edges_to_csv, read_sequence_csv, write_atomic, IoError};
use specvis::similarity::{ranking_rows_to_csv, summary_rows_to_csv};
use specvis::spectral::{
    degree_distribution_matrix, degree_matrix, load_wav, stft_magnitude, Representation,
    SpectralError,
};
use specvis::synthbench::{
    run_experiment1, run_experiment2_synthetic, Exp1Config, Exp2Config, ExperimentError,
    ExperimentOutput,
};
use specvis::vgraph::{build, degree_vector, Algorithm};
use specvis::Matrix;

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

/// A failure destined for stderr plus a specific exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DATA, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::data(e.to_string())
    }
}

/// Flag-bound violations are usage errors; broken input files are data
/// errors.
impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::BadFftSize(_)
            | SpectralError::BadKeepBins { .. }
            | SpectralError::BadOverlap(_)
            | SpectralError::BadWindow(_) => Failure::usage(e.to_string()),
            _ => Failure::data(e.to_string()),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Config(c) => Failure::usage(c.to_string()),
            other => Failure::data(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "specvis",
    version,
    about = "Natural visibility graphs of sequences and spectra",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the natural visibility graph of a height sequence.
    Graph(GraphArgs),
    /// Compute a spectral visibility-graph matrix from a WAV file.
    Svg(SvgArgs),
    /// Run a synthetic retrieval experiment.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Single-column CSV of heights (optional `height` header line).
    input: PathBuf,

    /// Construction algorithm: `dc` or `naive` (they agree; `naive` is
    /// the quadratic reference).
    #[arg(long, default_value = "dc")]
    algorithm: Algorithm,

    /// Where to write the edge-list CSV.
    #[arg(long)]
    out: PathBuf,

    /// Also write the degree vector as a single-column CSV.
    #[arg(long)]
    degrees: Option<PathBuf>,
}

#[derive(Args)]
struct SvgArgs {
    /// Input WAV file (16-bit PCM or 32-bit float, any channel count).
    input: PathBuf,

    /// Analysis window length in samples.
    #[arg(long, default_value_t = 2046)]
    window: usize,

    /// Fractional window overlap in [0, 1).
    #[arg(long, default_value_t = 0.5)]
    overlap: f64,

    /// Number of low-frequency bins to keep per frame.
    #[arg(long, default_value_t = 500)]
    bins: usize,

    /// Matrix to compute: `magnitude`, `degree` or `distribution`.
    #[arg(long)]
    representation: Representation,

    /// Where to write the matrix CSV (`rows,cols` header, row-major).
    #[arg(long)]
    out: PathBuf,

    /// Optionally render the matrix as an ASCII PGM image (low
    /// frequencies at the bottom).
    #[arg(long)]
    pgm: Option<PathBuf>,

    /// Gamma compression applied to the PGM rendering.
    #[arg(long, default_value_t = 0.6)]
    gamma: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentKind {
    /// Note retrieval: rank each clean note's noisy version.
    Synth1,
    /// Frame ranking: rank each lead frame's mixture frame.
    Synth2,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Which experiment to run.
    #[arg(value_enum)]
    kind: ExperimentKind,

    /// Key-value config file; built-in defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Directory for summary.csv and rankings.csv (created if missing).
    #[arg(long)]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Asking for help or the version is a success; everything
            // else (including a bare invocation) is a usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            // Help and version go to stdout, real errors to stderr.
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Graph(args) => cmd_graph(&args),
        Command::Svg(args) => cmd_svg(&args),
        Command::Experiment(args) => cmd_experiment(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

fn cmd_graph(args: &GraphArgs) -> Result<(), Failure> {
    let seq = read_sequence_csv(&args.input)
        .map_err(|e| Failure::data(format!("{}: {e}", args.input.display())))?;
    let graph = build(&seq, args.algorithm);
    write_atomic(&args.out, &edges_to_csv(&graph))?;
    if let Some(path) = &args.degrees {
        write_atomic(path, &degrees_to_csv(&degree_vector(&graph)))?;
    }
    Ok(())
}

fn cmd_svg(args: &SvgArgs) -> Result<(), Failure> {
    if !args.gamma.is_finite() || args.gamma <= 0.0 {
        return Err(Failure::usage(format!("gamma {} must be positive", args.gamma)));
    }
    let audio = load_wav(&args.input)?;
    let spectrogram = stft_magnitude(&audio, args.window, args.overlap, args.bins)?;
    let matrix: Matrix = match args.representation {
        Representation::Magnitude => spectrogram.mags().clone(),
        Representation::Degree => {
            degree_matrix(spectrogram.mags(), Algorithm::DivideConquer)?.matrix().clone()
        }
        Representation::Distribution => {
            let k = degree_matrix(spectrogram.mags(), Algorithm::DivideConquer)?;
            degree_distribution_matrix(&k).matrix().clone()
        }
    };
    write_atomic(&args.out, &matrix.to_csv())?;
    if let Some(path) = &args.pgm {
        write_atomic(path, &matrix.to_pgm(args.gamma))?;
    }
    Ok(())
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<(), Failure> {
    let config_text = match &args.config {
        Some(path) => Some(
            fs::read_to_string(path)
                .map_err(|e| Failure::data(format!("{}: {e}", path.display())))?,
        ),
        None => None,
    };
    let output = match args.kind {
        ExperimentKind::Synth1 => {
            let cfg = match &config_text {
                Some(text) => Exp1Config::parse(text).map_err(|e| Failure::usage(e.to_string()))?,
                None => Exp1Config::default(),
            };
            run_experiment1(&cfg)?
        }
        ExperimentKind::Synth2 => {
            let cfg = match &config_text {
                Some(text) => Exp2Config::parse(text).map_err(|e| Failure::usage(e.to_string()))?,
                None => Exp2Config::default(),
            };
            run_experiment2_synthetic(&cfg)?
        }
    };
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::data(format!("{}: {e}", args.out_dir.display())))?;
    write_atomic(&args.out_dir.join("summary.csv"), &summary_rows_to_csv(&output.summary))?;
    write_atomic(&args.out_dir.join("rankings.csv"), &ranking_rows_to_csv(&output.rankings))?;
    print_summary(&output);
    Ok(())
}

/// Prints the per-condition MRR table that the summary CSV also holds.
fn print_summary(output: &ExperimentOutput) {
    println!("{:<16}{:<11}{:>8}{:>9}", "representation", "metric", "snr_db", "mrr");
    for row in &output.summary {
        println!(
            "{:<16}{:<11}{:>8}{:>9.4}",
            row.representation.to_string(),
            row.metric.to_string(),
            row.snr_db,
            row.mrr
        );
    }
}

