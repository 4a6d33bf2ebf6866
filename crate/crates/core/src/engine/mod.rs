//! Applies filters to multichannel waves.
//!
//! Channels are the unit of parallelism: each channel is filtered by an
//! independent worker with its own zeroed state and written to its own
//! disjoint slice of the output, so the serial and parallel backends run the
//! same per-channel code and produce bit-identical results. The parallel
//! backend uses the current rayon pool; wrap calls in
//! [`rayon::ThreadPool::install`] to pin the worker count.

mod fir;
mod iir;
mod oracle;

use rayon::prelude::*;

use crate::design::{Filter, FirFilter, IirFilter};
use crate::error::{Error, Result};
use crate::wave::Wave;

pub use oracle::{iir_cascade_oracle, iir_oracle};

/// Below this many frames per channel, `Auto` stays serial.
pub const PARALLEL_MIN_FRAMES: usize = 4096;
/// `Auto` picks FFT convolution above this many taps...
pub const FFT_MIN_TAPS: usize = 128;
/// ...and above this many frames.
pub const FFT_MIN_FRAMES: usize = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Backend {
    Serial,
    Parallel,
    /// Parallel for two or more channels of at least [`PARALLEL_MIN_FRAMES`]
    /// frames, serial otherwise.
    #[default]
    Auto,
}

impl Backend {
    pub fn resolve(self, channels: usize, frames: usize) -> Backend {
        match self {
            Backend::Auto if channels >= 2 && frames >= PARALLEL_MIN_FRAMES => Backend::Parallel,
            Backend::Auto => Backend::Serial,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Serial => "serial",
            Backend::Parallel => "parallel",
            Backend::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "serial" => Ok(Backend::Serial),
            "parallel" => Ok(Backend::Parallel),
            "auto" => Ok(Backend::Auto),
            other => Err(Error::InvalidArgument(format!(
                "unknown backend {other:?} (expected serial, parallel or auto)"
            ))),
        }
    }
}

/// How FIR convolution is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ConvStrategy {
    Direct,
    /// Overlap-add with an FFT size of the next power of two ≥ 8 × taps.
    Fft,
    /// FFT when taps > [`FFT_MIN_TAPS`] and frames > [`FFT_MIN_FRAMES`].
    #[default]
    Auto,
}

impl ConvStrategy {
    pub fn resolve(self, taps: usize, frames: usize) -> ConvStrategy {
        match self {
            ConvStrategy::Auto if taps > FFT_MIN_TAPS && frames > FFT_MIN_FRAMES => ConvStrategy::Fft,
            ConvStrategy::Auto => ConvStrategy::Direct,
            other => other,
        }
    }
}

fn check_rate(filter_fs: Option<u32>, wave: &Wave) -> Result<()> {
    match filter_fs {
        None => Err(Error::UnboundFilter),
        Some(fs) if fs != wave.fs() => Err(Error::SampleRateMismatch {
            expected: wave.fs(),
            found: fs,
        }),
        Some(_) => {
            if wave.is_empty() {
                Err(Error::EmptyWave)
            } else {
                Ok(())
            }
        }
    }
}

pub(crate) fn try_zeroed(len: usize) -> Result<Vec<f64>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::OutOfMemory {
        bytes: len.saturating_mul(std::mem::size_of::<f64>()),
    })?;
    v.resize(len, 0.0);
    Ok(v)
}

/// Runs `kernel(input, output)` once per channel.
fn per_channel<K>(wave: &Wave, backend: Backend, kernel: K) -> Result<Wave>
where
    K: Fn(&[f64], &mut [f64]) + Sync,
{
    let frames = wave.frames();
    let mut out = try_zeroed(wave.channels() * frames)?;
    match backend.resolve(wave.channels(), frames) {
        Backend::Parallel => out
            .par_chunks_mut(frames)
            .zip(wave.as_planar().par_chunks(frames))
            .for_each(|(y, x)| kernel(x, y)),
        _ => out
            .chunks_mut(frames)
            .zip(wave.iter_channels())
            .for_each(|(y, x)| kernel(x, y)),
    }
    Wave::from_planar(out, wave.channels(), wave.fs())
}

/// Runs the biquad cascade over every channel, direct form II transposed,
/// from zero initial state.
pub fn apply_iir(filter: &IirFilter, wave: &Wave, backend: Backend) -> Result<Wave> {
    check_rate(filter.fs(), wave)?;
    per_channel(wave, backend, |x, y| {
        iir::FilterState::new(filter.sections().len()).run(filter.sections(), filter.gain(), x, y)
    })
}

/// Causal same-length convolution with automatic strategy selection.
pub fn apply_fir(filter: &FirFilter, wave: &Wave, backend: Backend) -> Result<Wave> {
    apply_fir_with(filter, wave, backend, ConvStrategy::Auto)
}

/// `y[n] = Σ taps[k]·x[n−k]` with `x[m] = 0` for `m < 0`, trimmed to the
/// input length.
pub fn apply_fir_with(filter: &FirFilter, wave: &Wave, backend: Backend, strategy: ConvStrategy) -> Result<Wave> {
    check_rate(filter.fs(), wave)?;
    let taps = filter.taps();
    match strategy.resolve(taps.len(), wave.frames()) {
        ConvStrategy::Fft => {
            let ola = fir::OverlapAdd::new(taps);
            per_channel(wave, backend, |x, y| ola.process(x, y))
        }
        _ => per_channel(wave, backend, |x, y| fir::direct(taps, x, y)),
    }
}

/// Applies either kind of bound filter.
pub fn apply(filter: &Filter, wave: &Wave, backend: Backend) -> Result<Wave> {
    match filter {
        Filter::Iir(f) => apply_iir(f, wave, backend),
        Filter::Fir(f) => apply_fir(f, wave, backend),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{design_butterworth, Band, BiquadSection, FilterSpec};

    fn one_pole() -> IirFilter {
        let s = BiquadSection {
            b0: 1.0,
            b1: 0.0,
            b2: 0.0,
            a1: -0.5,
            a2: 0.0,
        };
        IirFilter::from_sections(vec![s], 1.0, 8000).unwrap()
    }

    #[test]
    fn identity_is_exact() {
        let f = IirFilter::from_sections(vec![BiquadSection::IDENTITY], 1.0, 8000).unwrap();
        let w = Wave::mono(vec![0.1, -0.7, 1e-300, 3.5], 8000).unwrap();
        assert_eq!(apply_iir(&f, &w, Backend::Serial).unwrap(), w);
    }

    #[test]
    fn geometric_impulse_response() {
        let mut x = vec![0.0; 8];
        x[0] = 1.0;
        let w = Wave::mono(x, 8000).unwrap();
        let y = apply_iir(&one_pole(), &w, Backend::Serial).unwrap();
        let expect: Vec<f64> = (0..8).map(|n| 0.5f64.powi(n)).collect();
        assert_eq!(y.as_planar(), expect.as_slice());
    }

    #[test]
    fn overall_gain_is_applied() {
        let f = IirFilter::from_sections(vec![BiquadSection::IDENTITY], -2.0, 8000).unwrap();
        let w = Wave::mono(vec![1.0, 0.25], 8000).unwrap();
        assert_eq!(apply_iir(&f, &w, Backend::Serial).unwrap().as_planar(), &[-2.0, -0.5]);
    }

    #[test]
    fn rate_and_binding_errors() {
        let w = Wave::mono(vec![0.0; 4], 44100).unwrap();
        assert!(matches!(
            apply_iir(&one_pole(), &w, Backend::Serial),
            Err(Error::SampleRateMismatch {
                expected: 44100,
                found: 8000
            })
        ));
        let Filter::Iir(unbound) = FilterSpec::butterworth(Band::Lowpass(100.0), 2).unbound().unwrap() else {
            unreachable!()
        };
        assert!(matches!(
            apply_iir(&unbound, &w, Backend::Serial),
            Err(Error::UnboundFilter)
        ));
        let empty = Wave::mono(vec![], 8000).unwrap();
        assert!(matches!(
            apply_iir(&one_pole(), &empty, Backend::Serial),
            Err(Error::EmptyWave)
        ));
    }

    #[test]
    fn fir_small_cases() {
        let w = Wave::mono(vec![1.0, 2.0, 3.0], 8000).unwrap();
        let ident = FirFilter::from_taps(vec![1.0], 8000).unwrap();
        assert_eq!(apply_fir(&ident, &w, Backend::Serial).unwrap(), w);
        let delay = FirFilter::from_taps(vec![0.0, 1.0], 8000).unwrap();
        assert_eq!(
            apply_fir(&delay, &w, Backend::Serial).unwrap().as_planar(),
            &[0.0, 1.0, 2.0]
        );
        let avg = FirFilter::from_taps(vec![0.5, 0.5], 8000).unwrap();
        let imp = Wave::mono(vec![1.0, 0.0, 0.0, 0.0], 8000).unwrap();
        assert_eq!(
            apply_fir(&avg, &imp, Backend::Serial).unwrap().as_planar(),
            &[0.5, 0.5, 0.0, 0.0]
        );
        for strategy in [ConvStrategy::Direct, ConvStrategy::Fft] {
            let y = apply_fir_with(&delay, &w, Backend::Parallel, strategy).unwrap();
            for (a, b) in y.as_planar().iter().zip([0.0, 1.0, 2.0]) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn channels_are_independent() {
        let f = design_butterworth(Band::Lowpass(1000.0), 4, 44100).unwrap();
        let w = crate::wave::white_noise(0.2, 4, 44100, 3).unwrap();
        let y = apply_iir(&f, &w, Backend::Parallel).unwrap();
        for c in 0..4 {
            let single = apply_iir(&f, &w.extract_channel(c), Backend::Serial).unwrap();
            assert_eq!(y.channel(c), single.as_planar());
        }
    }

    #[test]
    fn auto_rules() {
        assert_eq!(Backend::Auto.resolve(1, 1 << 20), Backend::Serial);
        assert_eq!(Backend::Auto.resolve(2, 4095), Backend::Serial);
        assert_eq!(Backend::Auto.resolve(2, 4096), Backend::Parallel);
        assert_eq!(Backend::Serial.resolve(12, 1 << 20), Backend::Serial);
        assert_eq!(ConvStrategy::Auto.resolve(128, 1 << 20), ConvStrategy::Direct);
        assert_eq!(ConvStrategy::Auto.resolve(129, 4096), ConvStrategy::Direct);
        assert_eq!(ConvStrategy::Auto.resolve(129, 4097), ConvStrategy::Fft);
        assert_eq!(ConvStrategy::Direct.resolve(1000, 1 << 20), ConvStrategy::Direct);
    }
}
