//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or chain-spec error, 2 I/O error
//! (including unreadable WAV files), 3 filter error (for example a cutoff at
//! or above fs/2, or a sampling-rate conflict). Diagnostics go to standard
//! error; data goes to the output file or standard output.

mod spec;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, FilterKind, Format, GridConfig};
use crate::chain::{Chain, Stage};
use crate::design::Filter;
use crate::engine::Backend;
use crate::error::Error;
use crate::wave::{load_wav, save_wav, Encoding};

pub use spec::{parse_chain_spec, Span, SpecError, FILTER_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_FILTER: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid chain: {rendered}")]
    Spec { source: SpecError, rendered: String },
    #[error("{0}")]
    Io(Error),
    #[error("{0}")]
    Filter(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Spec { .. } => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Filter(_) => EXIT_FILTER,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e.root() {
            Error::FileNotFound(_) | Error::Io(_) | Error::MalformedRiff(_) | Error::UnsupportedEncoding { .. } => {
                CliError::Io(e)
            }
            _ => CliError::Filter(e),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(Error::Io(std::io::Error::new(
        e.kind(),
        format!("{}: {e}", path.display()),
    )))
}

#[derive(Debug, Parser)]
#[command(
    name = "wavefx",
    version,
    about = "Multichannel audio filtering with pipe-style chains"
)]
pub struct Cli {
    /// Worker threads for channel-parallel processing (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filter a WAV file through a chain.
    Apply(ApplyArgs),
    /// Write the frequency response of a chain as CSV.
    Response(ResponseArgs),
    /// Print the designed coefficients of a chain.
    Coeffs(CoeffsArgs),
    /// Run the timing benchmarks.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Serial,
    Parallel,
    Auto,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Serial => Backend::Serial,
            BackendArg::Parallel => Backend::Parallel,
            BackendArg::Auto => Backend::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodingArg {
    Pcm16,
    Pcm24,
    Float32,
}

impl From<EncodingArg> for Encoding {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Pcm16 => Encoding::Pcm16,
            EncodingArg::Pcm24 => Encoding::Pcm24,
            EncodingArg::Float32 => Encoding::Float32,
        }
    }
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: PathBuf,
    /// Chain specification, e.g. "butter(lp, order=4, fc=1000) | peak(fc=300, gain_db=-3)".
    #[arg(long, short)]
    pub chain: String,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value_t = EncodingArg::Float32)]
    pub encoding: EncodingArg,
    /// Print per-stage timings to standard error.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct ResponseArgs {
    #[arg(long, short)]
    pub chain: String,
    /// Sampling rate in Hz.
    #[arg(long)]
    pub fs: u32,
    /// Number of log-spaced frequencies between 1 Hz and fs/2.
    #[arg(long, default_value_t = 512)]
    pub points: usize,
    /// Output CSV path (default: standard output).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long, short)]
    pub chain: String,
    #[arg(long)]
    pub fs: u32,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Filters,
    Interfaces,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Iir,
    Fir,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Filters)]
    pub mode: ModeArg,
    /// Signal durations in seconds (default 5,60,180,300,600; 120 in interfaces mode).
    #[arg(long, value_delimiter = ',')]
    pub durations: Option<Vec<f64>>,
    /// Channel counts (default 1,2,4,8,12; 8 in interfaces mode).
    #[arg(long, value_delimiter = ',')]
    pub channels: Option<Vec<usize>>,
    #[arg(long, default_value_t = bench::DEFAULT_REPEATS)]
    pub repeats: usize,
    #[arg(long, value_enum, default_value_t = KindArg::Iir)]
    pub kind: KindArg,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [BackendArg::Serial, BackendArg::Parallel])]
    pub backends: Vec<BackendArg>,
    #[arg(long, default_value_t = bench::DEFAULT_FS)]
    pub fs: u32,
    #[arg(long, default_value_t = bench::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output path (default: standard output).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

/// Parses `text`, rendering any error with a caret under the offending column.
pub fn parse_chain(text: &str) -> Result<Chain, CliError> {
    parse_chain_spec(text).map_err(|source| CliError::Spec {
        rendered: source.render(text),
        source,
    })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_error(path, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
}

/// Loads, filters and saves. Returns the diagnostics meant for standard error.
pub fn cmd_apply(args: &ApplyArgs) -> Result<Vec<String>, CliError> {
    let chain = parse_chain(&args.chain)?;
    let wave = load_wav(&args.input)?;
    let bound = chain.bind(wave.fs())?;
    let (out, times) = bound.run_timed(&wave, args.backend.into())?;
    let report = save_wav(&out, &args.output, args.encoding.into())?;
    let mut notes = Vec::new();
    if args.verbose {
        let backend = Backend::from(args.backend).resolve(wave.channels(), wave.frames());
        notes.push(format!(
            "{} channels x {} frames at {} Hz, backend {}",
            wave.channels(),
            wave.frames(),
            wave.fs(),
            backend.name()
        ));
        for (i, (stage, t)) in bound.stages().iter().zip(&times).enumerate() {
            notes.push(format!("stage {} ({}): {:.6} s", i + 1, stage.name(), t.as_secs_f64()));
        }
        let total: f64 = times.iter().map(|t| t.as_secs_f64()).sum();
        notes.push(format!("total: {total:.6} s"));
    }
    if report.clipped > 0 {
        notes.push(format!("warning: {} samples clipped to [-1, 1]", report.clipped));
    }
    Ok(notes)
}

/// `points` log-spaced frequencies from 1 Hz to exactly fs/2.
pub fn log_frequencies(fs: u32, points: usize) -> Vec<f64> {
    let nyquist = f64::from(fs) / 2.0;
    if points == 1 {
        return vec![nyquist];
    }
    let top = nyquist.log10();
    let mut freqs: Vec<f64> = (0..points)
        .map(|i| 10f64.powf(top * i as f64 / (points - 1) as f64))
        .collect();
    freqs[0] = 1.0;
    freqs[points - 1] = nyquist;
    freqs
}

/// CSV `freq_hz,magnitude_db,phase_rad`.
pub fn cmd_response(args: &ResponseArgs) -> Result<String, CliError> {
    if args.points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    if args.fs < 4 {
        return Err(CliError::Usage("--fs must be at least 4 Hz".into()));
    }
    let chain = parse_chain(&args.chain)?.bind(args.fs)?;
    let freqs = log_frequencies(args.fs, args.points);
    let h = chain.frequency_response(&freqs)?;
    let mut csv = String::from("freq_hz,magnitude_db,phase_rad\n");
    for (f, h) in freqs.iter().zip(h) {
        let _ = writeln!(csv, "{f},{},{}", 20.0 * h.norm().log10(), h.arg());
    }
    Ok(csv)
}

/// One block per stage: IIR sections as `b0 b1 b2 a0 a1 a2` rows, FIR taps
/// one per line.
pub fn cmd_coeffs(args: &CoeffsArgs) -> Result<String, CliError> {
    let chain = parse_chain(&args.chain)?.bind(args.fs)?;
    let mut out = String::new();
    for (i, stage) in chain.stages().iter().enumerate() {
        let _ = writeln!(out, "# stage {}: {} at {} Hz", i + 1, stage.name(), args.fs);
        match stage {
            Stage::Filter(Filter::Iir(f)) => {
                let _ = writeln!(out, "gain {:?}", f.gain());
                for s in f.sections() {
                    let _ = writeln!(out, "sos {:?} {:?} {:?} 1.0 {:?} {:?}", s.b0, s.b1, s.b2, s.a1, s.a2);
                }
            }
            Stage::Filter(Filter::Fir(f)) => {
                for t in f.taps() {
                    let _ = writeln!(out, "tap {t:?}");
                }
            }
            Stage::Custom(_) => unreachable!("parsed chains hold catalog filters only"),
        }
    }
    Ok(out)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<String, CliError> {
    let backends: Vec<Backend> = args.backends.iter().map(|&b| b.into()).collect();
    let format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Markdown => Format::Markdown,
    };
    let table = match args.mode {
        ModeArg::Interfaces => {
            let duration = single(&args.durations, "durations")?.unwrap_or(bench::INTERFACE_DURATION_S);
            let channels = single(&args.channels, "channels")?.unwrap_or(bench::INTERFACE_CHANNELS);
            bench::run_interface_bench_with(duration, channels, args.repeats, args.fs, args.seed)?
        }
        ModeArg::Filters => {
            let kinds: &[FilterKind] = match args.kind {
                KindArg::Iir => &[FilterKind::Iir],
                KindArg::Fir => &[FilterKind::Fir],
                KindArg::Both => &[FilterKind::Fir, FilterKind::Iir],
            };
            let mut table = bench::BenchTable::new(bench::Mode::Filters);
            for &filter_kind in kinds {
                let config = GridConfig {
                    durations: args
                        .durations
                        .clone()
                        .unwrap_or_else(|| bench::DEFAULT_DURATIONS.to_vec()),
                    channels: args
                        .channels
                        .clone()
                        .unwrap_or_else(|| bench::DEFAULT_CHANNELS.to_vec()),
                    repeats: args.repeats,
                    filter_kind,
                    backends: backends.clone(),
                    fs: args.fs,
                    seed: args.seed,
                    ..GridConfig::default()
                };
                table.points.extend(bench::run_filter_grid(&config)?.points);
            }
            table
        }
    };
    Ok(bench::emit_table(&table, format))
}

fn single<T: Copy>(values: &Option<Vec<T>>, flag: &str) -> Result<Option<T>, CliError> {
    match values.as_deref() {
        None => Ok(None),
        Some([x]) => Ok(Some(*x)),
        Some(_) => Err(CliError::Usage(format!(
            "interfaces mode takes a single value for --{flag}"
        ))),
    }
}

fn configure_threads(threads: Option<usize>) -> Result<(), CliError> {
    match threads {
        None => Ok(()),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}"))),
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    configure_threads(cli.threads)?;
    match &cli.command {
        Command::Apply(args) => {
            for line in cmd_apply(args)? {
                eprintln!("{line}");
            }
            Ok(())
        }
        Command::Response(args) => write_output(args.out.as_deref(), &cmd_response(args)?),
        Command::Coeffs(args) => write_output(args.out.as_deref(), &cmd_coeffs(args)?),
        Command::Bench(args) => {
            let text = cmd_bench(args)?;
            write_output(args.out.as_deref(), &text)
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
