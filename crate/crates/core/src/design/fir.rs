//! Windowed-sinc FIR design.

use std::f64::consts::PI;

use super::{Band, FilterSpec, FirFilter, Window};
use crate::error::{Error, Result};

pub(crate) fn check_taps(band: Band, num_taps: usize) -> Result<()> {
    if num_taps < 3 {
        return Err(Error::InvalidTapCount {
            taps: num_taps,
            reason: "at least 3 taps are required",
        });
    }
    if num_taps.is_multiple_of(2) && !matches!(band, Band::Lowpass(_)) {
        return Err(Error::InvalidTapCount {
            taps: num_taps,
            reason: "highpass and bandpass designs need an odd tap count",
        });
    }
    Ok(())
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        libm::sin(PI * x) / (PI * x)
    }
}

/// Window value at offset `m` from the center of an `n`-point window.
///
/// Written in centered form (`hamming(n) = 0.54 − 0.46·cos(2πn/(N−1))` is
/// `0.54 + 0.46·cos(2πm/(N−1))` with `m = n − (N−1)/2`) so that mirrored
/// taps get bit-identical values.
fn window_at(window: Window, m: f64, n: usize) -> f64 {
    let x = 2.0 * PI * m / (n - 1) as f64;
    match window {
        Window::Rect => 1.0,
        Window::Hamming => 0.54 + 0.46 * libm::cos(x),
        Window::Blackman => 0.42 + 0.5 * libm::cos(x) + 0.08 * libm::cos(2.0 * x),
    }
}

/// Ideal lowpass impulse response with cutoff `fc` (as a fraction of Nyquist).
fn ideal_lowpass(fc: f64, m: f64) -> f64 {
    fc * sinc(fc * m)
}

/// Linear-phase windowed-sinc design.
///
/// Taps are centered on `(num_taps − 1)/2` (a half-sample shift for even
/// lowpass counts). The result is scaled to unit zero-phase gain at DC for
/// lowpass, at Nyquist for highpass and at the band center for bandpass.
pub fn design_fir(band: Band, num_taps: usize, window: Window, fs: u32) -> Result<FirFilter> {
    check_taps(band, num_taps)?;
    band.validate(fs)?;
    let nyquist = f64::from(fs) / 2.0;
    let center = (num_taps - 1) as f64 / 2.0;
    let offsets: Vec<f64> = (0..num_taps).map(|n| (n as f64 - center).abs()).collect();

    let ideal = |m: f64| match band {
        Band::Lowpass(fc) => ideal_lowpass(fc / nyquist, m),
        Band::Highpass(fc) => {
            let delta = if m == 0.0 { 1.0 } else { 0.0 };
            delta - ideal_lowpass(fc / nyquist, m)
        }
        Band::Bandpass(lo, hi) => ideal_lowpass(hi / nyquist, m) - ideal_lowpass(lo / nyquist, m),
    };
    let mut taps: Vec<f64> = offsets
        .iter()
        .map(|&m| ideal(m) * window_at(window, m, num_taps))
        .collect();

    let reference = match band {
        Band::Lowpass(_) => 0.0,
        Band::Highpass(_) => 1.0,
        Band::Bandpass(lo, hi) => (lo + hi) / 2.0 / nyquist,
    };
    let scale: f64 = taps
        .iter()
        .zip(&offsets)
        .map(|(h, &m)| h * libm::cos(PI * m * reference))
        .sum();
    for t in &mut taps {
        *t /= scale;
    }

    Ok(FirFilter {
        taps,
        spec: Some(FilterSpec::fir(band, num_taps, window)),
        fs: Some(fs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{frequency_response, Filter};

    fn mag(f: &FirFilter, freq: f64) -> f64 {
        frequency_response(&Filter::Fir(f.clone()), &[freq]).unwrap()[0].norm()
    }

    #[test]
    fn tap_count_rules() {
        for n in [0, 1, 2] {
            assert!(matches!(
                design_fir(Band::Lowpass(1000.0), n, Window::Hamming, 44100),
                Err(Error::InvalidTapCount { .. })
            ));
        }
        assert!(design_fir(Band::Lowpass(1000.0), 4, Window::Hamming, 44100).is_ok());
        assert!(matches!(
            design_fir(Band::Highpass(1000.0), 64, Window::Hamming, 44100),
            Err(Error::InvalidTapCount { taps: 64, .. })
        ));
        assert!(matches!(
            design_fir(Band::Bandpass(500.0, 1000.0), 64, Window::Hamming, 44100),
            Err(Error::InvalidTapCount { .. })
        ));
        assert!(matches!(
            design_fir(Band::Lowpass(22050.0), 31, Window::Hamming, 44100),
            Err(Error::InvalidCutoff { .. })
        ));
    }

    #[test]
    fn three_taps_near_nyquist_pass_through() {
        // sinc(-1), sinc(0), sinc(1) with a unit-width main lobe
        let f = design_fir(Band::Lowpass(22049.9), 3, Window::Rect, 44100).unwrap();
        for (t, e) in f.taps().iter().zip([0.0, 1.0, 0.0]) {
            assert!((t - e).abs() < 1e-2, "{:?}", f.taps());
        }
    }

    #[test]
    fn lowpass_unit_dc() {
        for (n, w) in [
            (101, Window::Hamming),
            (64, Window::Blackman),
            (7, Window::Rect),
            (1025, Window::Hamming),
        ] {
            let f = design_fir(Band::Lowpass(3000.0), n, w, 48000).unwrap();
            let sum: f64 = f.taps().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "{n}: {sum}");
        }
    }

    #[test]
    fn matches_reference_firwin() {
        // scipy.signal.firwin(101, 1000, fs=44100, window='hamming')
        let f = design_fir(Band::Lowpass(1000.0), 101, Window::Hamming, 44100).unwrap();
        let t = f.taps();
        assert!((t[50] - 0.04521877502721443).abs() < 1e-14);
        assert!((t[0] - 0.00037833981270691343).abs() < 1e-14);
        assert!((t[25] + 0.0027972525281607613).abs() < 1e-14);
    }

    #[test]
    fn hamming_stopband_floor() {
        let f = design_fir(Band::Lowpass(1000.0), 101, Window::Hamming, 44100).unwrap();
        assert!(mag(&f, 4000.0) < libm::pow(10.0, -50.0 / 20.0));
    }

    #[test]
    fn symmetric_taps() {
        for band in [
            Band::Lowpass(1000.0),
            Band::Highpass(5000.0),
            Band::Bandpass(300.0, 3000.0),
        ] {
            for w in [Window::Hamming, Window::Blackman, Window::Rect] {
                let f = design_fir(band, 129, w, 44100).unwrap();
                let t = f.taps();
                for k in 0..t.len() {
                    assert_eq!(t[k], t[t.len() - 1 - k]);
                }
            }
        }
    }

    #[test]
    fn highpass_and_bandpass_reference_gains() {
        let f = design_fir(Band::Highpass(5000.0), 101, Window::Hamming, 44100).unwrap();
        assert!((mag(&f, 22050.0) - 1.0).abs() < 1e-12);
        assert!(mag(&f, 0.0) < 1e-2);
        let f = design_fir(Band::Bandpass(2000.0, 6000.0), 201, Window::Blackman, 44100).unwrap();
        assert!((mag(&f, 4000.0) - 1.0).abs() < 1e-12);
        assert!(mag(&f, 0.0) < 1e-3);
        assert!(mag(&f, 22050.0) < 1e-3);
    }

    #[test]
    fn window_endpoints() {
        assert!((window_at(Window::Hamming, 50.0, 101) - 0.08).abs() < 1e-15);
        assert!(window_at(Window::Blackman, 50.0, 101).abs() < 1e-15);
        assert_eq!(window_at(Window::Hamming, 0.0, 101), 1.0);
    }
}
