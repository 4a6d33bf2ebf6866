//! Multichannel audio filtering built around three ideas: a [`Wave`] always
//! carries its sampling rate, filters are values that can be designed with
//! or without a rate, and chains of filters are applied with a pipe that
//! binds the rate lazily from the wave.
//!
//! ```
//! use wavefx::{white_noise, Band, FilterSpec};
//!
//! let noise = white_noise(1.0, 8, 44100, 7).unwrap();
//! let chain = (FilterSpec::butterworth(Band::Lowpass(1000.0), 4).unbound().unwrap()
//!     | FilterSpec::chebyshev1(Band::Lowpass(2000.0), 4, 1.0).unbound().unwrap())
//!     .unwrap();
//! let filtered = noise.pipe(&chain).unwrap();
//! assert_eq!(filtered.channels(), 8);
//! ```

pub mod bench;
pub mod chain;
pub mod cli;
pub mod design;
pub mod engine;
pub mod error;
pub mod wave;

pub use chain::{compose, pipe, pipe_with, Chain, Process, Stage};
pub use design::{
    design_butterworth, design_chebyshev1, design_fir, design_peaking, design_shelf, frequency_response, Band,
    BiquadSection, Filter, FilterSpec, FirFilter, IirFilter, ShelfKind, Window, DEFAULT_Q,
};
pub use engine::{apply, apply_fir, apply_fir_with, apply_iir, iir_cascade_oracle, iir_oracle, Backend, ConvStrategy};
pub use error::{Error, Result};
pub use wave::{load_wav, save_wav, white_noise, Encoding, SaveReport, WavFormat, Wave};
