//! Timing harness for filter application.
//!
//! Workloads are seeded white noise. Filters are designed once per cell,
//! outside the timed region; each cell gets one untimed warm-up run followed
//! by `repeats` timed runs of the apply call alone. Cells run one after
//! another so they never compete for cores.

use std::fmt::Write as _;
use std::time::Instant;

use crate::chain::{compose, pipe_with, Chain};
use crate::design::{Band, Filter, FilterSpec, Window};
use crate::engine::{self, Backend};
use crate::error::{Error, Result};
use crate::wave::{white_noise, Wave};

pub const DEFAULT_DURATIONS: [f64; 5] = [5.0, 60.0, 180.0, 300.0, 600.0];
pub const DEFAULT_CHANNELS: [usize; 5] = [1, 2, 4, 8, 12];
pub const DEFAULT_REPEATS: usize = 50;
pub const DEFAULT_FS: u32 = 44100;
pub const DEFAULT_SEED: u64 = 2025;

/// Interface comparison workload: 2 minutes of 8-channel audio.
pub const INTERFACE_DURATION_S: f64 = 120.0;
pub const INTERFACE_CHANNELS: usize = 8;

/// Call styles compared by [`run_interface_bench`], in table order.
pub const INTERFACE_STYLES: [&str; 3] = ["pipe", "chain-object", "per-stage-calls"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FilterKind {
    Fir,
    Iir,
}

impl FilterKind {
    pub fn name(self) -> &'static str {
        match self {
            FilterKind::Fir => "fir",
            FilterKind::Iir => "iir",
        }
    }
}

impl std::str::FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fir" => Ok(FilterKind::Fir),
            "iir" => Ok(FilterKind::Iir),
            other => Err(Error::InvalidArgument(format!(
                "unknown filter kind {other:?} (expected fir or iir)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Filters,
    Interfaces,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

/// Summary of the timed repetitions of one cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timing {
    pub mean_s: f64,
    pub std_s: f64,
    pub min_s: f64,
}

impl Timing {
    fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        let min_s = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let mean_s = (samples.iter().sum::<f64>() / n).max(min_s);
        let std_s = if samples.len() > 1 {
            (samples.iter().map(|x| (x - mean_s).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Timing { mean_s, std_s, min_s }
    }
}

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchPoint {
    pub duration_s: f64,
    pub channels: usize,
    /// Backend name, or the call style in interface mode.
    pub backend: String,
    pub filter_kind: FilterKind,
    pub repeats: usize,
    /// `Err` holds the reason a cell was skipped (e.g. not enough memory).
    pub timing: std::result::Result<Timing, String>,
    /// SHA-256 of the last output, when requested.
    pub output_digest: Option<String>,
}

impl BenchPoint {
    pub fn mean_s(&self) -> Option<f64> {
        self.timing.as_ref().ok().map(|t| t.mean_s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Environment {
    pub cpu_model: String,
    pub threads: usize,
    pub build_profile: &'static str,
    pub target: String,
}

impl Environment {
    pub fn capture() -> Self {
        let cpu_model = std::fs::read_to_string("/proc/cpuinfo")
            .ok()
            .and_then(|info| {
                info.lines()
                    .find(|l| l.starts_with("model name"))
                    .and_then(|l| l.split(':').nth(1))
                    .map(|m| m.trim().to_string())
            })
            .unwrap_or_else(|| "unknown".into());
        Environment {
            cpu_model,
            threads: rayon::current_num_threads(),
            build_profile: if cfg!(debug_assertions) { "debug" } else { "release" },
            target: format!("{}-{}", std::env::consts::ARCH, std::env::consts::OS),
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "cpu: {}; threads: {}; profile: {}; target: {}",
            self.cpu_model, self.threads, self.build_profile, self.target
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchTable {
    pub mode: Mode,
    pub points: Vec<BenchPoint>,
    pub environment: Environment,
}

impl BenchTable {
    pub fn new(mode: Mode) -> Self {
        BenchTable {
            mode,
            points: Vec::new(),
            environment: Environment::capture(),
        }
    }

    pub fn find(&self, duration_s: f64, channels: usize, backend: &str, kind: FilterKind) -> Option<&BenchPoint> {
        self.points.iter().find(|p| {
            p.duration_s == duration_s && p.channels == channels && p.backend == backend && p.filter_kind == kind
        })
    }
}

/// Parameters of [`run_filter_grid`].
#[derive(Clone, Debug)]
pub struct GridConfig {
    pub durations: Vec<f64>,
    pub channels: Vec<usize>,
    pub repeats: usize,
    pub filter_kind: FilterKind,
    pub backends: Vec<Backend>,
    pub fs: u32,
    pub seed: u64,
    /// Record a digest of each cell's output.
    pub digest_outputs: bool,
    /// Cells whose buffers would exceed this many bytes are skipped. `None`
    /// uses the memory the OS reports as available, when it reports any.
    pub memory_budget: Option<usize>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            durations: DEFAULT_DURATIONS.to_vec(),
            channels: DEFAULT_CHANNELS.to_vec(),
            repeats: DEFAULT_REPEATS,
            filter_kind: FilterKind::Iir,
            backends: vec![Backend::Serial, Backend::Parallel],
            fs: DEFAULT_FS,
            seed: DEFAULT_SEED,
            digest_outputs: false,
            memory_budget: None,
        }
    }
}

/// Order-8 Butterworth lowpass at 2 kHz.
pub fn benchmark_iir_spec() -> FilterSpec {
    FilterSpec::butterworth(Band::Lowpass(2000.0), 8)
}

/// 257-tap Hamming-windowed lowpass at 2 kHz.
pub fn benchmark_fir_spec() -> FilterSpec {
    FilterSpec::fir(Band::Lowpass(2000.0), 257, Window::Hamming)
}

/// Two Butterworth then two Chebyshev type I lowpass stages, unbound.
pub fn interface_chain() -> Chain {
    let specs = [
        FilterSpec::butterworth(Band::Lowpass(1000.0), 4),
        FilterSpec::butterworth(Band::Lowpass(1200.0), 4),
        FilterSpec::chebyshev1(Band::Lowpass(2000.0), 4, 1.0),
        FilterSpec::chebyshev1(Band::Lowpass(2400.0), 4, 1.0),
    ];
    specs.iter().fold(Chain::identity(), |chain, spec| {
        compose(chain, spec.unbound().expect("benchmark specs are valid")).expect("unbound stages always compose")
    })
}

fn available_memory() -> Option<usize> {
    let info = std::fs::read_to_string("/proc/meminfo").ok()?;
    let line = info.lines().find(|l| l.starts_with("MemAvailable:"))?;
    let kib: usize = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kib * 1024)
}

/// Runs `f` once untimed and `repeats` times timed. Returns the timing
/// summary and the last output.
fn time_calls(repeats: usize, mut f: impl FnMut() -> Result<Wave>) -> Result<(Timing, Wave)> {
    let mut last = f()?;
    let mut samples = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        let out = f()?;
        samples.push(start.elapsed().as_secs_f64());
        last = out;
    }
    Ok((Timing::from_samples(&samples), last))
}

fn check_config(durations: &[f64], channels: &[usize], repeats: usize, fs: u32) -> Result<()> {
    if repeats == 0 {
        return Err(Error::InvalidArgument("repeats must be at least 1".into()));
    }
    if fs == 0 {
        return Err(Error::InvalidArgument("sampling rate must be positive".into()));
    }
    if let Some(d) = durations.iter().find(|d| !(**d > 0.0 && d.is_finite())) {
        return Err(Error::InvalidArgument(format!("duration {d} must be positive")));
    }
    if channels.contains(&0) {
        return Err(Error::InvalidArgument("channel counts must be positive".into()));
    }
    Ok(())
}

/// Times the benchmark filter over every (duration, channels, backend) cell.
pub fn run_filter_grid(config: &GridConfig) -> Result<BenchTable> {
    check_config(&config.durations, &config.channels, config.repeats, config.fs)?;
    if config.backends.is_empty() {
        return Err(Error::InvalidArgument("at least one backend is required".into()));
    }
    let spec = match config.filter_kind {
        FilterKind::Iir => benchmark_iir_spec(),
        FilterKind::Fir => benchmark_fir_spec(),
    };
    let filter: Filter = spec.design(config.fs)?;
    let budget = config.memory_budget.or_else(available_memory);

    let mut table = BenchTable::new(Mode::Filters);
    for &duration_s in &config.durations {
        for &channels in &config.channels {
            let point = |backend: Backend, timing, output_digest| BenchPoint {
                duration_s,
                channels,
                backend: backend.name().to_string(),
                filter_kind: config.filter_kind,
                repeats: config.repeats,
                timing,
                output_digest,
            };
            // workload plus one output buffer
            let frames = (duration_s * f64::from(config.fs)).round() as usize;
            let needed = frames.saturating_mul(channels).saturating_mul(16);
            if let Some(budget) = budget.filter(|&b| needed > b) {
                let reason = format!("skipped: needs {needed} bytes, {budget} available");
                for &backend in &config.backends {
                    table.points.push(point(backend, Err(reason.clone()), None));
                }
                continue;
            }
            let wave = match white_noise(duration_s, channels, config.fs, config.seed) {
                Ok(w) => w,
                Err(e @ Error::OutOfMemory { .. }) => {
                    for &backend in &config.backends {
                        table.points.push(point(backend, Err(format!("skipped: {e}")), None));
                    }
                    continue;
                }
                Err(e) => return Err(e),
            };
            for &backend in &config.backends {
                match time_calls(config.repeats, || engine::apply(&filter, &wave, backend)) {
                    Ok((timing, out)) => {
                        let digest = config.digest_outputs.then(|| out.digest());
                        table.points.push(point(backend, Ok(timing), digest));
                    }
                    Err(e @ Error::OutOfMemory { .. }) => {
                        table.points.push(point(backend, Err(format!("skipped: {e}")), None));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(table)
}

/// Compares three ways of applying the same four-stage chain to
/// [`INTERFACE_DURATION_S`] seconds of [`INTERFACE_CHANNELS`]-channel noise.
pub fn run_interface_bench(repeats: usize, fs: u32, seed: u64) -> Result<BenchTable> {
    run_interface_bench_with(INTERFACE_DURATION_S, INTERFACE_CHANNELS, repeats, fs, seed)
}

/// [`run_interface_bench`] with a custom workload size.
///
/// The styles are: piping the unbound chain (binding included), running a
/// pre-bound chain object, and calling `apply_iir` once per stage. After a
/// warm-up run of each style the three outputs must be identical. Timed
/// repetitions then cycle through the styles in turn so slow drifts in
/// machine state hit all three alike.
pub fn run_interface_bench_with(
    duration_s: f64,
    channels: usize,
    repeats: usize,
    fs: u32,
    seed: u64,
) -> Result<BenchTable> {
    check_config(&[duration_s], &[channels], repeats, fs)?;
    let wave = white_noise(duration_s, channels, fs, seed)?;
    let unbound = interface_chain();
    let bound = unbound.bind(fs)?;
    let stages: Vec<_> = bound
        .stages()
        .iter()
        .map(|s| match s {
            crate::chain::Stage::Filter(Filter::Iir(f)) => f.clone(),
            _ => unreachable!("interface chain holds IIR filters only"),
        })
        .collect();
    let backend = Backend::Auto;

    let run_style = |style: usize| -> Result<Wave> {
        match style {
            0 => pipe_with(&wave, &unbound, backend),
            1 => bound.run(&wave, backend),
            _ => {
                let mut current = engine::apply_iir(&stages[0], &wave, backend)?;
                for f in &stages[1..] {
                    current = engine::apply_iir(f, &current, backend)?;
                }
                Ok(current)
            }
        }
    };

    let digests = (0..3)
        .map(|s| run_style(s).map(|w| w.digest()))
        .collect::<Result<Vec<_>>>()?;
    if digests.iter().any(|d| d != &digests[0]) {
        return Err(Error::InvalidArgument(format!("interface outputs differ: {digests:?}")));
    }

    let mut samples: [Vec<f64>; 3] = std::array::from_fn(|_| Vec::with_capacity(repeats));
    for _ in 0..repeats {
        for (style, times) in samples.iter_mut().enumerate() {
            let start = Instant::now();
            let out = run_style(style)?;
            times.push(start.elapsed().as_secs_f64());
            drop(out);
        }
    }

    let mut table = BenchTable::new(Mode::Interfaces);
    for (style, times) in samples.iter().enumerate() {
        table.points.push(BenchPoint {
            duration_s,
            channels,
            backend: INTERFACE_STYLES[style].to_string(),
            filter_kind: FilterKind::Iir,
            repeats,
            timing: Ok(Timing::from_samples(times)),
            output_digest: Some(digests[style].clone()),
        });
    }
    Ok(table)
}

pub const CSV_HEADER: &str = "duration_s,channels,backend,filter_kind,repeats,mean_s,std_s,min_s";

pub fn emit_table(table: &BenchTable, format: Format) -> String {
    match format {
        Format::Csv => emit_csv(table),
        Format::Markdown => emit_markdown(table),
    }
}

fn emit_csv(table: &BenchTable) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in &table.points {
        let _ = write!(
            out,
            "{},{},{},{},{},",
            p.duration_s,
            p.channels,
            p.backend,
            p.filter_kind.name(),
            p.repeats
        );
        match &p.timing {
            Ok(t) => {
                let _ = writeln!(out, "{:.6},{:.6},{:.6}", t.mean_s, t.std_s, t.min_s);
            }
            // skipped cells keep their row with empty measurements
            Err(_) => out.push_str(",,\n"),
        }
    }
    out
}

fn ordered_unique<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for it in items {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    out
}

fn emit_markdown(table: &BenchTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Environment: {}\n", table.environment.summary());
    if table.mode == Mode::Interfaces {
        out.push_str("| Implementation | Time (s) |\n|---|---:|\n");
        for p in &table.points {
            let _ = writeln!(out, "| {} | {} |", p.backend, cell(p));
        }
        return out;
    }
    for kind in ordered_unique(table.points.iter().map(|p| p.filter_kind)) {
        let points: Vec<&BenchPoint> = table.points.iter().filter(|p| p.filter_kind == kind).collect();
        let backends = ordered_unique(points.iter().map(|p| p.backend.clone()));
        let rows = ordered_unique(points.iter().map(|p| (p.duration_s, p.channels)));
        let _ = writeln!(
            out,
            "### Execution times for {} filters (s)\n",
            kind.name().to_uppercase()
        );
        out.push_str("| Time (s) | Channels |");
        for b in &backends {
            let _ = write!(out, " {b} |");
        }
        out.push_str("\n|---:|---:|");
        out.push_str(&"---:|".repeat(backends.len()));
        out.push('\n');
        for (duration, channels) in rows {
            let _ = write!(out, "| {duration} | {channels} |");
            for b in &backends {
                let text = points
                    .iter()
                    .find(|p| p.duration_s == duration && p.channels == channels && &p.backend == b)
                    .map_or_else(|| "-".to_string(), |p| cell(p));
                let _ = write!(out, " {text} |");
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

fn cell(p: &BenchPoint) -> String {
    match &p.timing {
        Ok(t) => format!("{:.6}", t.mean_s),
        Err(_) => "skipped".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(duration_s: f64, channels: usize, backend: &str, kind: FilterKind) -> BenchPoint {
        BenchPoint {
            duration_s,
            channels,
            backend: backend.into(),
            filter_kind: kind,
            repeats: 50,
            timing: Ok(Timing {
                mean_s: 0.5,
                std_s: 0.01,
                min_s: 0.49,
            }),
            output_digest: None,
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = BenchTable::new(Mode::Filters);
        assert_eq!(emit_table(&t, Format::Csv), format!("{CSV_HEADER}\n"));
        t.points.push(point(5.0, 1, "serial", FilterKind::Iir));
        let csv = emit_table(&t, Format::Csv);
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(
            csv.lines().nth(1).unwrap(),
            "5,1,serial,iir,50,0.500000,0.010000,0.490000"
        );
    }

    #[test]
    fn markdown_rows_per_kind() {
        let mut t = BenchTable::new(Mode::Filters);
        for kind in [FilterKind::Fir, FilterKind::Iir] {
            for d in DEFAULT_DURATIONS {
                for c in DEFAULT_CHANNELS {
                    for b in ["serial", "parallel"] {
                        t.points.push(point(d, c, b, kind));
                    }
                }
            }
        }
        let md = emit_table(&t, Format::Markdown);
        let data_rows = md
            .lines()
            .filter(|l| l.starts_with("| ") && !l.starts_with("| Time"))
            .count();
        assert_eq!(data_rows, 50);
        assert!(md.contains("| Time (s) | Channels | serial | parallel |"));
        assert!(md.contains("Environment: "));
    }

    #[test]
    fn skipped_cells_stay_in_the_table() {
        let mut t = BenchTable::new(Mode::Filters);
        let mut p = point(600.0, 12, "serial", FilterKind::Iir);
        p.timing = Err("skipped: out of memory".into());
        t.points.push(p);
        assert!(emit_table(&t, Format::Csv).ends_with("600,12,serial,iir,50,,,\n"));
        assert!(emit_table(&t, Format::Markdown).contains("skipped"));
    }

    #[test]
    fn single_repeat_mean_equals_min() {
        let cfg = GridConfig {
            durations: vec![0.05],
            channels: vec![2],
            repeats: 1,
            backends: vec![Backend::Serial],
            ..GridConfig::default()
        };
        let t = run_filter_grid(&cfg).unwrap();
        assert_eq!(t.points.len(), 1);
        let timing = t.points[0].timing.clone().unwrap();
        assert_eq!(timing.mean_s, timing.min_s);
        assert_eq!(timing.std_s, 0.0);
    }

    #[test]
    fn memory_budget_skips_cells() {
        let cfg = GridConfig {
            durations: vec![0.05, 1.0],
            channels: vec![1],
            repeats: 1,
            backends: vec![Backend::Serial, Backend::Parallel],
            memory_budget: Some(100_000),
            ..GridConfig::default()
        };
        let t = run_filter_grid(&cfg).unwrap();
        assert_eq!(t.points.len(), 4);
        assert!(t.points[..2].iter().all(|p| p.timing.is_ok()));
        assert!(t.points[2..].iter().all(|p| p.timing.is_err()));
    }

    #[test]
    fn timing_statistics() {
        let t = Timing::from_samples(&[1.0, 2.0, 3.0]);
        assert_eq!(t.mean_s, 2.0);
        assert_eq!(t.min_s, 1.0);
        assert!((t.std_s - 1.0).abs() < 1e-15);
        let t = Timing::from_samples(&[0.1; 7]);
        assert!(t.mean_s >= t.min_s);
    }

    #[test]
    fn rejects_bad_grids() {
        let bad = |f: fn(&mut GridConfig)| {
            let mut cfg = GridConfig::default();
            f(&mut cfg);
            run_filter_grid(&cfg).is_err()
        };
        assert!(bad(|c| c.repeats = 0));
        assert!(bad(|c| c.channels = vec![0]));
        assert!(bad(|c| c.durations = vec![-1.0]));
        assert!(bad(|c| c.backends.clear()));
    }

    #[test]
    fn interface_chain_shape() {
        let c = interface_chain();
        assert_eq!(c.len(), 4);
        assert_eq!(c.fs(), None);
    }
}
