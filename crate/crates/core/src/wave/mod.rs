//! Multichannel signals bundled with their sampling rate.
//!
//! A [`Wave`] owns a planar (channel-major) buffer of `f64` samples: every
//! channel is one contiguous slice, so per-channel work can be handed to
//! independent workers without copying. WAV files are de-interleaved on load
//! and re-interleaved on save; nothing else ever sees interleaved data.

mod noise;
mod wav;

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use noise::white_noise;
pub use wav::{load_wav, save_wav, Encoding, SaveReport, WavFormat};

/// Immutable multichannel sample buffer with its sampling rate in Hz.
#[derive(Clone, Debug, PartialEq)]
pub struct Wave {
    data: Vec<f64>,
    channels: usize,
    frames: usize,
    fs: u32,
}

impl Wave {
    /// Builds a wave from one vector per channel.
    pub fn new(channels: Vec<Vec<f64>>, fs: u32) -> Result<Self> {
        let count = channels.len();
        if count == 0 {
            return Err(Error::InvalidArgument("a wave needs at least one channel".into()));
        }
        let frames = channels[0].len();
        if let Some(bad) = channels.iter().position(|c| c.len() != frames) {
            return Err(Error::InvalidArgument(format!(
                "channel {bad} has {} frames, channel 0 has {frames}",
                channels[bad].len()
            )));
        }
        let mut data = Vec::with_capacity(count * frames);
        for c in channels {
            data.extend_from_slice(&c);
        }
        Self::from_planar(data, count, fs)
    }

    pub fn mono(samples: Vec<f64>, fs: u32) -> Result<Self> {
        Self::from_planar(samples, 1, fs)
    }

    /// Builds a wave from a planar buffer holding `channels` equal-length runs.
    pub fn from_planar(data: Vec<f64>, channels: usize, fs: u32) -> Result<Self> {
        if channels == 0 {
            return Err(Error::InvalidArgument("a wave needs at least one channel".into()));
        }
        if fs == 0 {
            return Err(Error::InvalidArgument("sampling rate must be positive".into()));
        }
        if !data.len().is_multiple_of(channels) {
            return Err(Error::InvalidArgument(format!(
                "{} samples cannot be split evenly into {channels} channels",
                data.len()
            )));
        }
        let frames = data.len() / channels;
        Ok(Self {
            data,
            channels,
            frames,
            fs,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        load_wav(path)
    }

    pub fn save(&self, path: impl AsRef<Path>, encoding: Encoding) -> Result<SaveReport> {
        save_wav(self, path, encoding)
    }

    pub fn fs(&self) -> u32 {
        self.fs
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn is_empty(&self) -> bool {
        self.frames == 0
    }

    pub fn duration_s(&self) -> f64 {
        self.frames as f64 / f64::from(self.fs)
    }

    /// Samples of channel `index`.
    ///
    /// Panics if `index >= self.channels()`.
    pub fn channel(&self, index: usize) -> &[f64] {
        assert!(index < self.channels, "channel {index} out of range");
        &self.data[index * self.frames..(index + 1) * self.frames]
    }

    pub fn iter_channels(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        (0..self.channels).map(move |c| self.channel(c))
    }

    /// The whole planar buffer, channel after channel.
    pub fn as_planar(&self) -> &[f64] {
        &self.data
    }

    pub fn into_planar(self) -> Vec<f64> {
        self.data
    }

    pub fn to_channel_vecs(&self) -> Vec<Vec<f64>> {
        self.iter_channels().map(<[f64]>::to_vec).collect()
    }

    /// New single-channel wave holding a copy of channel `index`.
    pub fn extract_channel(&self, index: usize) -> Wave {
        Wave {
            data: self.channel(index).to_vec(),
            channels: 1,
            frames: self.frames,
            fs: self.fs,
        }
    }

    /// New wave with every sample transformed by `f`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Wave {
        Wave {
            data: self.data.iter().map(|&x| f(x)).collect(),
            ..*self
        }
    }

    /// SHA-256 over the sampling rate, shape and little-endian sample bytes.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.fs.to_le_bytes());
        hasher.update((self.channels as u64).to_le_bytes());
        hasher.update((self.frames as u64).to_le_bytes());
        for x in &self.data {
            hasher.update(x.to_le_bytes());
        }
        hex::encode(hasher.finalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_layout() {
        let w = Wave::new(vec![vec![1.0, 2.0], vec![3.0, 4.0]], 8000).unwrap();
        assert_eq!(w.as_planar(), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(w.channel(1), &[3.0, 4.0]);
        assert_eq!(w.frames(), 2);
        assert_eq!(w.extract_channel(1).as_planar(), &[3.0, 4.0]);
    }

    #[test]
    fn rejects_ragged_channels_and_bad_rates() {
        assert!(Wave::new(vec![vec![1.0], vec![1.0, 2.0]], 8000).is_err());
        assert!(Wave::new(vec![], 8000).is_err());
        assert!(Wave::mono(vec![0.0], 0).is_err());
        assert!(Wave::from_planar(vec![0.0; 3], 2, 8000).is_err());
    }

    #[test]
    fn digest_depends_on_rate_and_shape() {
        let a = Wave::mono(vec![0.0, 1.0], 8000).unwrap();
        let b = Wave::mono(vec![0.0, 1.0], 16000).unwrap();
        let c = Wave::new(vec![vec![0.0], vec![1.0]], 8000).unwrap();
        assert_ne!(a.digest(), b.digest());
        assert_ne!(a.digest(), c.digest());
        assert_eq!(a.digest(), a.clone().digest());
    }
}
