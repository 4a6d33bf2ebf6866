//! Filter chains and pipe-style application.
//!
//! A [`Chain`] is a flat, ordered list of stages. Composing two chains
//! concatenates their stage lists, so composition is associative by
//! construction. Stages may be unbound; piping a wave through a chain first
//! binds every stage to the wave's sampling rate and then applies the stages
//! left to right:
//!
//! ```
//! use wavefx::{white_noise, Band, FilterSpec};
//!
//! let wave = white_noise(0.1, 2, 44100, 1).unwrap();
//! let hi = FilterSpec::high_shelf(1000.0, 3.0, wavefx::DEFAULT_Q).unbound().unwrap();
//! let lo = FilterSpec::low_shelf(2000.0, 3.0, wavefx::DEFAULT_Q).unbound().unwrap();
//! let out = (&wave | hi | lo).unwrap();
//! assert_eq!(out.frames(), wave.frames());
//! ```
//!
//! Stages pre-bound to a different rate are rejected, never redesigned.

use std::fmt;
use std::ops::BitOr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::design::{Filter, FirFilter, IirFilter};
use crate::engine::{self, Backend};
use crate::error::{Error, Result};
use crate::wave::Wave;

/// A user-defined processing step that can sit in a chain next to catalog
/// filters.
pub trait Process: fmt::Debug + Send + Sync {
    fn name(&self) -> String {
        "custom".into()
    }

    /// Rate this stage is committed to, if any.
    fn fs(&self) -> Option<u32>;

    /// This stage prepared for `fs`.
    fn bind(&self, fs: u32) -> Result<Arc<dyn Process>>;

    fn process(&self, wave: &Wave, backend: Backend) -> Result<Wave>;
}

#[derive(Clone, Debug)]
pub enum Stage {
    Filter(Filter),
    Custom(Arc<dyn Process>),
}

impl PartialEq for Stage {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Stage::Filter(a), Stage::Filter(b)) => a == b,
            (Stage::Custom(a), Stage::Custom(b)) => std::ptr::addr_eq(Arc::as_ptr(a), Arc::as_ptr(b)),
            _ => false,
        }
    }
}

impl Stage {
    pub fn custom(process: impl Process + 'static) -> Self {
        Stage::Custom(Arc::new(process))
    }

    pub fn fs(&self) -> Option<u32> {
        match self {
            Stage::Filter(f) => f.fs(),
            Stage::Custom(p) => p.fs(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Stage::Filter(f) => f.name(),
            Stage::Custom(p) => p.name(),
        }
    }

    pub fn bind(&self, fs: u32) -> Result<Stage> {
        match self {
            Stage::Filter(f) => f.bind(fs).map(Stage::Filter),
            Stage::Custom(p) => match p.fs() {
                Some(bound) if bound != fs => Err(Error::SampleRateMismatch {
                    expected: fs,
                    found: bound,
                }),
                _ => p.bind(fs).map(Stage::Custom),
            },
        }
    }

    pub fn apply(&self, wave: &Wave, backend: Backend) -> Result<Wave> {
        match self {
            Stage::Filter(f) => engine::apply(f, wave, backend),
            Stage::Custom(p) => p.process(wave, backend),
        }
    }
}

/// Ordered, flat sequence of stages. The empty chain is the identity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Chain {
    stages: Vec<Stage>,
    fs: Option<u32>,
}

impl Chain {
    pub fn identity() -> Self {
        Chain::default()
    }

    /// Builds a chain, checking that all pre-bound stages agree on a rate.
    pub fn new(stages: impl IntoIterator<Item = Stage>) -> Result<Self> {
        stages.into_iter().try_fold(Chain::identity(), compose)
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// The rate this chain is committed to, if any stage is bound.
    pub fn fs(&self) -> Option<u32> {
        self.fs
    }

    /// True once every stage has coefficients for the chain's rate.
    pub fn is_bound(&self) -> bool {
        self.fs.is_some()
            && self
                .stages
                .iter()
                .all(|s| s.fs().is_some() || matches!(s, Stage::Custom(_)))
    }

    /// Every stage bound to `fs`.
    pub fn bind(&self, fs: u32) -> Result<Chain> {
        if fs == 0 {
            return Err(Error::InvalidArgument("sampling rate must be positive".into()));
        }
        let stages = self
            .stages
            .iter()
            .enumerate()
            .map(|(i, s)| s.bind(fs).map_err(|e| e.in_stage(i, s.name())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Chain { stages, fs: Some(fs) })
    }

    /// Applies the stages left to right without binding.
    pub fn run(&self, wave: &Wave, backend: Backend) -> Result<Wave> {
        self.run_observed(wave, backend, |_, _| {})
    }

    /// Like [`Chain::run`], also returning the wall time of each stage.
    pub fn run_timed(&self, wave: &Wave, backend: Backend) -> Result<(Wave, Vec<Duration>)> {
        let mut times = Vec::with_capacity(self.len());
        let out = self.run_observed(wave, backend, |_, t| times.push(t))?;
        Ok((out, times))
    }

    fn run_observed(&self, wave: &Wave, backend: Backend, mut observe: impl FnMut(usize, Duration)) -> Result<Wave> {
        if wave.is_empty() {
            return Err(Error::EmptyWave);
        }
        // the first stage reads the caller's wave directly, so no copy is made
        let mut current: Option<Wave> = None;
        for (i, stage) in self.stages.iter().enumerate() {
            let start = Instant::now();
            let next = stage
                .apply(current.as_ref().unwrap_or(wave), backend)
                .map_err(|e| e.in_stage(i, stage.name()))?;
            observe(i, start.elapsed());
            current = Some(next);
        }
        Ok(current.unwrap_or_else(|| wave.clone()))
    }

    /// Product of the stage responses. Needs a bound chain of catalog filters.
    pub fn frequency_response(&self, freqs: &[f64]) -> Result<Vec<Complex64>> {
        let mut total = vec![Complex64::new(1.0, 0.0); freqs.len()];
        if let Some(fs) = self.fs {
            let nyquist = f64::from(fs) / 2.0;
            if let Some(&freq) = freqs.iter().find(|f| !(0.0..=nyquist).contains(*f)) {
                return Err(Error::FrequencyOutOfRange { freq, nyquist });
            }
        }
        for (i, stage) in self.stages.iter().enumerate() {
            let Stage::Filter(f) = stage else {
                return Err(Error::InvalidArgument(format!(
                    "stage {} ({}) has no frequency response",
                    i + 1,
                    stage.name()
                )));
            };
            let h = f.frequency_response(freqs).map_err(|e| e.in_stage(i, stage.name()))?;
            for (t, h) in total.iter_mut().zip(h) {
                *t *= h;
            }
        }
        Ok(total)
    }
}

/// Concatenates two chains (or filters). Fails if both sides are committed
/// to different sampling rates.
pub fn compose(left: impl Into<Chain>, right: impl Into<Chain>) -> Result<Chain> {
    let (mut left, right) = (left.into(), right.into());
    let fs = match (left.fs, right.fs) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::SampleRateMismatch { expected: a, found: b });
        }
        (a, b) => a.or(b),
    };
    left.stages.extend(right.stages);
    left.fs = fs;
    Ok(left)
}

/// Binds `chain` to the wave's rate and applies it with the automatic backend.
pub fn pipe(wave: &Wave, chain: &Chain) -> Result<Wave> {
    pipe_with(wave, chain, Backend::Auto)
}

pub fn pipe_with(wave: &Wave, chain: &Chain, backend: Backend) -> Result<Wave> {
    if wave.is_empty() {
        return Err(Error::EmptyWave);
    }
    chain.bind(wave.fs())?.run(wave, backend)
}

impl Wave {
    /// `pipe(self, stage)`.
    pub fn pipe(&self, stage: impl Into<Chain>) -> Result<Wave> {
        pipe(self, &stage.into())
    }
}

impl From<Stage> for Chain {
    fn from(stage: Stage) -> Self {
        let fs = stage.fs();
        Chain {
            stages: vec![stage],
            fs,
        }
    }
}

impl From<Filter> for Chain {
    fn from(f: Filter) -> Self {
        Stage::Filter(f).into()
    }
}

impl From<IirFilter> for Chain {
    fn from(f: IirFilter) -> Self {
        Filter::Iir(f).into()
    }
}

impl From<FirFilter> for Chain {
    fn from(f: FirFilter) -> Self {
        Filter::Fir(f).into()
    }
}

impl From<&Chain> for Chain {
    fn from(c: &Chain) -> Self {
        c.clone()
    }
}

impl<T: Into<Chain>> BitOr<T> for &Wave {
    type Output = Result<Wave>;

    fn bitor(self, rhs: T) -> Result<Wave> {
        self.pipe(rhs)
    }
}

impl<T: Into<Chain>> BitOr<T> for Wave {
    type Output = Result<Wave>;

    fn bitor(self, rhs: T) -> Result<Wave> {
        self.pipe(rhs)
    }
}

macro_rules! compose_ops {
    ($($lhs:ty),*) => {$(
        impl<T: Into<Chain>> BitOr<T> for $lhs {
            type Output = Result<Chain>;

            fn bitor(self, rhs: T) -> Result<Chain> {
                compose(self, rhs)
            }
        }
    )*};
}

compose_ops!(Chain, Stage, Filter, IirFilter, FirFilter);

macro_rules! result_ops {
    ($($rhs:ty),*) => {$(
        impl BitOr<$rhs> for Result<Wave> {
            type Output = Result<Wave>;

            fn bitor(self, rhs: $rhs) -> Result<Wave> {
                self?.pipe(rhs)
            }
        }

        impl BitOr<$rhs> for Result<Chain> {
            type Output = Result<Chain>;

            fn bitor(self, rhs: $rhs) -> Result<Chain> {
                compose(self?, rhs)
            }
        }
    )*};
}

result_ops!(Chain, &Chain, Stage, Filter, IirFilter, FirFilter);
