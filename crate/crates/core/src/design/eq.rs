//! Shelving and peaking biquads from the audio-EQ cookbook formulas.

use std::f64::consts::PI;

use super::{check_cutoff, check_q, BiquadSection, FilterSpec, IirFilter, ShelfKind};
use crate::error::Result;

struct Params {
    a: f64,
    cos_w0: f64,
    alpha: f64,
}

fn params(fc: f64, gain_db: f64, q: f64, fs: u32) -> Params {
    let w0 = 2.0 * PI * fc / f64::from(fs);
    Params {
        a: libm::pow(10.0, gain_db / 40.0),
        cos_w0: libm::cos(w0),
        alpha: libm::sin(w0) / (2.0 * q),
    }
}

/// Replaces a section whose numerator equals its denominator by the identity.
fn cancel(s: BiquadSection) -> BiquadSection {
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12;
    if close(s.b0, 1.0) && close(s.b1, s.a1) && close(s.b2, s.a2) {
        BiquadSection::IDENTITY
    } else {
        s
    }
}

/// Single-biquad low or high shelf. The low shelf has gain `10^(gain_db/20)`
/// at DC and unity at Nyquist; the high shelf is mirrored.
pub fn design_shelf(kind: ShelfKind, fc: f64, gain_db: f64, q: f64, fs: u32) -> Result<IirFilter> {
    check_cutoff(fc, fs)?;
    check_q(q)?;
    let spec = FilterSpec::Shelf { kind, fc, gain_db, q };
    spec.validate()?;
    let Params { a, cos_w0: c, alpha } = params(fc, gain_db, q, fs);
    let k = 2.0 * libm::sqrt(a) * alpha;
    let (b, den) = match kind {
        ShelfKind::Low => (
            [
                a * ((a + 1.0) - (a - 1.0) * c + k),
                2.0 * a * ((a - 1.0) - (a + 1.0) * c),
                a * ((a + 1.0) - (a - 1.0) * c - k),
            ],
            [
                (a + 1.0) + (a - 1.0) * c + k,
                -2.0 * ((a - 1.0) + (a + 1.0) * c),
                (a + 1.0) + (a - 1.0) * c - k,
            ],
        ),
        ShelfKind::High => (
            [
                a * ((a + 1.0) + (a - 1.0) * c + k),
                -2.0 * a * ((a - 1.0) + (a + 1.0) * c),
                a * ((a + 1.0) + (a - 1.0) * c - k),
            ],
            [
                (a + 1.0) - (a - 1.0) * c + k,
                2.0 * ((a - 1.0) - (a + 1.0) * c),
                (a + 1.0) - (a - 1.0) * c - k,
            ],
        ),
    };
    let section = cancel(BiquadSection::from_coefficients(b, den)?);
    Ok(IirFilter::designed(vec![section], spec, fs))
}

/// Single-biquad peaking EQ: `10^(gain_db/20)` at `fc`, unity at DC and Nyquist.
pub fn design_peaking(fc: f64, gain_db: f64, q: f64, fs: u32) -> Result<IirFilter> {
    check_cutoff(fc, fs)?;
    check_q(q)?;
    let spec = FilterSpec::Peaking { fc, gain_db, q };
    spec.validate()?;
    let Params { a, cos_w0: c, alpha } = params(fc, gain_db, q, fs);
    let b = [1.0 + alpha * a, -2.0 * c, 1.0 - alpha * a];
    let den = [1.0 + alpha / a, -2.0 * c, 1.0 - alpha / a];
    let section = cancel(BiquadSection::from_coefficients(b, den)?);
    Ok(IirFilter::designed(vec![section], spec, fs))
}
