use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),

    #[error("unsupported WAV encoding: format tag {tag:#06x} with {bits} bits per sample (supported: pcm16, pcm24, float32)")]
    UnsupportedEncoding { tag: u16, bits: u16 },

    #[error("malformed RIFF/WAVE data: {0}")]
    MalformedRiff(String),

    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{}", cutoff_message(*fc, *fs))]
    InvalidCutoff { fc: f64, fs: Option<u32> },

    #[error("invalid filter order {0}: must be at least 1")]
    InvalidOrder(usize),

    #[error("invalid passband ripple {0} dB: must be positive")]
    InvalidRipple(f64),

    #[error("invalid quality factor {0}: must be positive")]
    InvalidQ(f64),

    #[error("invalid tap count {taps}: {reason}")]
    InvalidTapCount { taps: usize, reason: &'static str },

    #[error("filter is not bound to a sampling rate")]
    UnboundFilter,

    #[error("frequency {freq} Hz is outside [0, fs/2 = {nyquist} Hz]")]
    FrequencyOutOfRange { freq: f64, nyquist: f64 },

    #[error("sampling rate mismatch: expected {expected} Hz, found {found} Hz")]
    SampleRateMismatch { expected: u32, found: u32 },

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("wave has no samples")]
    EmptyWave,

    #[error("out of memory: could not allocate {bytes} bytes")]
    OutOfMemory { bytes: usize },

    #[error("stage {} ({name}): {source}", .index + 1)]
    Stage {
        index: usize,
        name: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Strips any stage wrappers and returns the underlying error.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn in_stage(self, index: usize, name: impl Into<String>) -> Error {
        Error::Stage {
            index,
            name: name.into(),
            source: Box::new(self),
        }
    }
}

fn cutoff_message(fc: f64, fs: Option<u32>) -> String {
    match fs {
        Some(fs) => format!("cutoff {fc} Hz is outside (0, fs/2 = {} Hz)", f64::from(fs) / 2.0),
        None => format!("cutoff {fc} Hz must be positive"),
    }
}
