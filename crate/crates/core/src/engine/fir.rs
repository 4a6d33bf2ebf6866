use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Direct-form convolution; each output sums `taps[k]·x[n−k]` for ascending `k`.
pub(crate) fn direct(taps: &[f64], x: &[f64], y: &mut [f64]) {
    let t = taps.len();
    for (n, out) in y.iter_mut().enumerate() {
        let k_max = t.min(n + 1);
        *out = taps[..k_max]
            .iter()
            .zip(x[n + 1 - k_max..=n].iter().rev())
            .map(|(h, v)| h * v)
            .sum();
    }
}

/// Overlap-add convolution with a precomputed tap spectrum.
pub(crate) struct OverlapAdd {
    fft_len: usize,
    block_len: usize,
    spectrum: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl OverlapAdd {
    pub(crate) fn new(taps: &[f64]) -> Self {
        let fft_len = (8 * taps.len()).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(fft_len);
        let inverse = planner.plan_fft_inverse(fft_len);
        let mut spectrum = vec![Complex64::new(0.0, 0.0); fft_len];
        for (s, &t) in spectrum.iter_mut().zip(taps) {
            s.re = t;
        }
        forward.process(&mut spectrum);
        // fold the inverse transform's 1/N into the spectrum
        let norm = 1.0 / fft_len as f64;
        for s in &mut spectrum {
            *s *= norm;
        }
        OverlapAdd {
            fft_len,
            block_len: fft_len - taps.len() + 1,
            spectrum,
            forward,
            inverse,
        }
    }

    pub(crate) fn process(&self, x: &[f64], y: &mut [f64]) {
        let len = x.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut buf = vec![zero; self.fft_len];
        let scratch_len = self
            .forward
            .get_inplace_scratch_len()
            .max(self.inverse.get_inplace_scratch_len());
        let mut scratch = vec![zero; scratch_len];
        y.fill(0.0);
        for start in (0..len).step_by(self.block_len) {
            let end = (start + self.block_len).min(len);
            for (b, &v) in buf.iter_mut().zip(&x[start..end]) {
                *b = Complex64::new(v, 0.0);
            }
            buf[end - start..].fill(zero);
            self.forward.process_with_scratch(&mut buf, &mut scratch);
            for (b, h) in buf.iter_mut().zip(&self.spectrum) {
                *b *= h;
            }
            self.inverse.process_with_scratch(&mut buf, &mut scratch);
            let stop = (start + self.fft_len).min(len);
            for (out, b) in y[start..stop].iter_mut().zip(&buf) {
                *out += b.re;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_add_matches_direct_across_block_boundaries() {
        let taps: Vec<f64> = (0..37).map(|k| ((k * 7919) % 101) as f64 / 101.0 - 0.5).collect();
        let x: Vec<f64> = (0..5000).map(|n| ((n * 104729) % 997) as f64 / 997.0 - 0.5).collect();
        let mut a = vec![0.0; x.len()];
        let mut b = vec![0.0; x.len()];
        direct(&taps, &x, &mut a);
        OverlapAdd::new(&taps).process(&x, &mut b);
        let err = a.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn input_shorter_than_taps() {
        let taps = [1.0, 2.0, 3.0, 4.0, 5.0];
        let x = [1.0, 1.0];
        let mut a = [0.0; 2];
        let mut b = [0.0; 2];
        direct(&taps, &x, &mut a);
        OverlapAdd::new(&taps).process(&x, &mut b);
        assert_eq!(a, [1.0, 3.0]);
        assert!((b[0] - 1.0).abs() < 1e-12 && (b[1] - 3.0).abs() < 1e-12);
    }
}
