//! Butterworth and Chebyshev type I designs via the prewarped bilinear transform.
//!
//! The analog prototype (cutoff 1 rad/s) is frequency-transformed to the
//! prewarped band edges, each pole group is mapped through
//! `s = 2·fs·(1 − z⁻¹)/(1 + z⁻¹)` and becomes one biquad. Zeros sit at
//! z = −1 for lowpass, z = +1 for highpass, and one of each per section for
//! bandpass. Sections are ordered by ascending pole radius, ties broken by
//! ascending pole angle. Each section is scaled to unit magnitude at the
//! reference frequency (DC, Nyquist or the band center); the prototype's own
//! reference gain (below 1 only for even-order Chebyshev) goes on the first.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Band, BiquadSection, FilterSpec, IirFilter};
use crate::error::{Error, Result};

/// Pole of the analog prototype; pairs are stored by their upper-half member.
#[derive(Clone, Copy, Debug)]
enum AnalogPole {
    Pair(Complex64),
    Real(f64),
}

/// Poles that end up in one digital section.
#[derive(Clone, Copy, Debug)]
enum PoleGroup {
    Pair(Complex64),
    Real(f64),
    RealPair(f64, f64),
}

impl PoleGroup {
    fn sort_key(&self) -> (f64, f64) {
        let real_key = |r: f64| (r.abs(), if r >= 0.0 { 0.0 } else { PI });
        match *self {
            PoleGroup::Pair(p) => (libm::hypot(p.re, p.im), libm::atan2(p.im, p.re).abs()),
            PoleGroup::Real(r) => real_key(r),
            PoleGroup::RealPair(r1, r2) => {
                if r1.abs() >= r2.abs() {
                    real_key(r1)
                } else {
                    real_key(r2)
                }
            }
        }
    }

    fn denominator(&self) -> (f64, f64) {
        match *self {
            PoleGroup::Pair(p) => (-2.0 * p.re, p.norm_sqr()),
            PoleGroup::Real(r) => (-r, 0.0),
            PoleGroup::RealPair(r1, r2) => (-(r1 + r2), r1 * r2),
        }
    }
}

pub fn design_butterworth(band: Band, order: usize, fs: u32) -> Result<IirFilter> {
    if order == 0 {
        return Err(Error::InvalidOrder(order));
    }
    band.validate(fs)?;
    let poles = butterworth_prototype(order);
    let sections = digital_sections(&poles, band, fs, 1.0);
    Ok(IirFilter::designed(sections, FilterSpec::butterworth(band, order), fs))
}

pub fn design_chebyshev1(band: Band, order: usize, ripple_db: f64, fs: u32) -> Result<IirFilter> {
    if order == 0 {
        return Err(Error::InvalidOrder(order));
    }
    if !(ripple_db > 0.0 && ripple_db.is_finite()) {
        return Err(Error::InvalidRipple(ripple_db));
    }
    band.validate(fs)?;
    let eps = libm::sqrt(libm::pow(10.0, ripple_db / 10.0) - 1.0);
    let poles = chebyshev1_prototype(order, eps);
    // odd orders start the ripple at the top, even orders at the bottom
    let reference_gain = if order.is_multiple_of(2) {
        1.0 / libm::sqrt(1.0 + eps * eps)
    } else {
        1.0
    };
    let sections = digital_sections(&poles, band, fs, reference_gain);
    Ok(IirFilter::designed(
        sections,
        FilterSpec::chebyshev1(band, order, ripple_db),
        fs,
    ))
}

fn butterworth_prototype(order: usize) -> Vec<AnalogPole> {
    let n = order as f64;
    let mut poles: Vec<AnalogPole> = (1..=order / 2)
        .map(|k| {
            let theta = PI * (2.0 * k as f64 + n - 1.0) / (2.0 * n);
            AnalogPole::Pair(Complex64::new(libm::cos(theta), libm::sin(theta)))
        })
        .collect();
    if order % 2 == 1 {
        poles.push(AnalogPole::Real(-1.0));
    }
    poles
}

fn chebyshev1_prototype(order: usize, eps: f64) -> Vec<AnalogPole> {
    let n = order as f64;
    let mu = libm::asinh(1.0 / eps) / n;
    let (sh, ch) = (libm::sinh(mu), libm::cosh(mu));
    let mut poles: Vec<AnalogPole> = (1..=order / 2)
        .map(|k| {
            let theta = PI * (2.0 * k as f64 - 1.0) / (2.0 * n);
            AnalogPole::Pair(Complex64::new(-sh * libm::sin(theta), ch * libm::cos(theta)))
        })
        .collect();
    if order % 2 == 1 {
        poles.push(AnalogPole::Real(-sh));
    }
    poles
}

fn prewarp(fc: f64, fs: u32) -> f64 {
    let fs = f64::from(fs);
    2.0 * fs * libm::tan(PI * fc / fs)
}

fn upper(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        z.conj()
    } else {
        z
    }
}

fn csqrt(z: Complex64) -> Complex64 {
    let m = libm::hypot(z.re, z.im);
    let re = libm::sqrt((m + z.re) / 2.0);
    let im = libm::sqrt((m - z.re) / 2.0);
    Complex64::new(re, if z.im < 0.0 { -im } else { im })
}

/// Analog frequency transform of the prototype poles.
fn analog_groups(poles: &[AnalogPole], band: Band, fs: u32) -> Vec<PoleGroup> {
    match band {
        Band::Lowpass(fc) => {
            let wa = prewarp(fc, fs);
            poles
                .iter()
                .map(|p| match *p {
                    AnalogPole::Pair(p) => PoleGroup::Pair(p * wa),
                    AnalogPole::Real(r) => PoleGroup::Real(r * wa),
                })
                .collect()
        }
        Band::Highpass(fc) => {
            let wa = prewarp(fc, fs);
            poles
                .iter()
                .map(|p| match *p {
                    AnalogPole::Pair(p) => PoleGroup::Pair(upper(Complex64::new(wa, 0.0) / p)),
                    AnalogPole::Real(r) => PoleGroup::Real(wa / r),
                })
                .collect()
        }
        Band::Bandpass(lo, hi) => {
            let (w1, w2) = (prewarp(lo, fs), prewarp(hi, fs));
            let w0sq = w1 * w2;
            let half_bw = (w2 - w1) / 2.0;
            let mut groups = Vec::with_capacity(poles.len() * 2);
            for p in poles {
                match *p {
                    AnalogPole::Pair(p) => {
                        let c = p * half_bw;
                        let d = csqrt(c * c - w0sq);
                        groups.push(PoleGroup::Pair(upper(c + d)));
                        groups.push(PoleGroup::Pair(upper(c - d)));
                    }
                    AnalogPole::Real(r) => {
                        let c = r * half_bw;
                        let disc = c * c - w0sq;
                        if disc >= 0.0 {
                            let d = libm::sqrt(disc);
                            groups.push(PoleGroup::RealPair(c + d, c - d));
                        } else {
                            groups.push(PoleGroup::Pair(Complex64::new(c, libm::sqrt(-disc))));
                        }
                    }
                }
            }
            groups
        }
    }
}

fn bilinear(group: PoleGroup, fs: u32) -> PoleGroup {
    let k = 2.0 * f64::from(fs);
    let map_real = |s: f64| (k + s) / (k - s);
    match group {
        PoleGroup::Pair(s) => PoleGroup::Pair((s + k) / (k - s)),
        PoleGroup::Real(s) => PoleGroup::Real(map_real(s)),
        PoleGroup::RealPair(s1, s2) => PoleGroup::RealPair(map_real(s1), map_real(s2)),
    }
}

/// `z⁻¹` at which each section is normalized to unit magnitude.
fn reference_zinv(band: Band, fs: u32) -> Complex64 {
    match band {
        Band::Lowpass(_) => Complex64::new(1.0, 0.0),
        Band::Highpass(_) => Complex64::new(-1.0, 0.0),
        Band::Bandpass(lo, hi) => {
            let w0 = libm::sqrt(prewarp(lo, fs) * prewarp(hi, fs));
            let omega = 2.0 * libm::atan(w0 / (2.0 * f64::from(fs)));
            Complex64::new(libm::cos(omega), -libm::sin(omega))
        }
    }
}

fn numerator(band: Band, group: &PoleGroup) -> [f64; 3] {
    let single = matches!(group, PoleGroup::Real(_));
    match (band, single) {
        (Band::Lowpass(_), false) => [1.0, 2.0, 1.0],
        (Band::Lowpass(_), true) => [1.0, 1.0, 0.0],
        (Band::Highpass(_), false) => [1.0, -2.0, 1.0],
        (Band::Highpass(_), true) => [1.0, -1.0, 0.0],
        // bandpass groups always hold two poles
        (Band::Bandpass(..), _) => [1.0, 0.0, -1.0],
    }
}

fn digital_sections(poles: &[AnalogPole], band: Band, fs: u32, reference_gain: f64) -> Vec<BiquadSection> {
    let mut groups: Vec<PoleGroup> = analog_groups(poles, band, fs)
        .into_iter()
        .map(|g| bilinear(g, fs))
        .collect();
    groups.sort_by(|x, y| {
        let (a, b) = (x.sort_key(), y.sort_key());
        a.0.partial_cmp(&b.0)
            .unwrap_or(Ordering::Equal)
            .then(a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal))
    });

    let zref = reference_zinv(band, fs);
    let mut sections: Vec<BiquadSection> = groups
        .iter()
        .map(|g| {
            let [b0, b1, b2] = numerator(band, g);
            let (a1, a2) = g.denominator();
            let raw = BiquadSection { b0, b1, b2, a1, a2 };
            let h = raw.eval(zref);
            let k = 1.0 / libm::hypot(h.re, h.im);
            raw.scaled(k)
        })
        .collect();
    if reference_gain != 1.0 {
        sections[0] = sections[0].scaled(reference_gain);
    }
    sections
}
