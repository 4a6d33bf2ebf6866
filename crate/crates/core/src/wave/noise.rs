//! Reproducible Gaussian white noise.
//!
//! Channel `c` draws from a ChaCha8 stream seeded with `seed` and stream
//! number `c`. Each pair of 64-bit outputs `(a, b)` becomes two uniforms,
//! `u1 = ((a >> 11) + 1) / 2^53` in (0, 1] and `u2 = (b >> 11) / 2^53` in
//! [0, 1), and the Box–Muller transform turns them into the normals
//! `r·cos(2π·u2)` and `r·sin(2π·u2)` with `r = sqrt(-2·ln u1)`, emitted in
//! that order. The transcendental functions come from `libm`, so the output
//! is bit-identical on every platform.

use std::f64::consts::TAU;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use super::Wave;
use crate::error::{Error, Result};

const INV_2_53: f64 = 1.0 / 9_007_199_254_740_992.0;

/// `round(duration_s · fs)` frames of i.i.d. standard normal samples per channel.
pub fn white_noise(duration_s: f64, channels: usize, fs: u32, seed: u64) -> Result<Wave> {
    if !(duration_s > 0.0 && duration_s.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "duration must be positive, got {duration_s}"
        )));
    }
    if channels == 0 {
        return Err(Error::InvalidArgument("channel count must be positive".into()));
    }
    if fs == 0 {
        return Err(Error::InvalidArgument("sampling rate must be positive".into()));
    }
    let frames = (duration_s * f64::from(fs)).round() as usize;
    let total = frames
        .checked_mul(channels)
        .ok_or(Error::OutOfMemory { bytes: usize::MAX })?;
    let mut data = Vec::new();
    data.try_reserve_exact(total).map_err(|_| Error::OutOfMemory {
        bytes: total.saturating_mul(8),
    })?;
    data.resize(total, 0.0);
    if frames > 0 {
        data.par_chunks_mut(frames)
            .enumerate()
            .for_each(|(ch, out)| fill_channel(out, seed, ch as u64));
    }
    Wave::from_planar(data, channels, fs)
}

fn fill_channel(out: &mut [f64], seed: u64, stream: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut pairs = out.chunks_mut(2);
    for pair in &mut pairs {
        let u1 = ((rng.next_u64() >> 11) + 1) as f64 * INV_2_53;
        let u2 = (rng.next_u64() >> 11) as f64 * INV_2_53;
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let theta = TAU * u2;
        pair[0] = r * libm::cos(theta);
        if let Some(second) = pair.get_mut(1) {
            *second = r * libm::sin(theta);
        }
    }
}
