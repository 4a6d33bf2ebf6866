use std::f64::consts::PI;

use num_complex::Complex64;

use super::Filter;
use crate::error::{Error, Result};

/// Complex gain `H(e^{j·2π·f/fs})` at each frequency in `freqs` (Hz).
///
/// IIR filters multiply their section responses; FIR filters evaluate the
/// tap polynomial in `z⁻¹` by Horner's rule.
pub fn frequency_response(filter: &Filter, freqs: &[f64]) -> Result<Vec<Complex64>> {
    let fs = filter.fs().ok_or(Error::UnboundFilter)?;
    let nyquist = f64::from(fs) / 2.0;
    freqs
        .iter()
        .map(|&f| {
            if !(0.0..=nyquist).contains(&f) {
                return Err(Error::FrequencyOutOfRange { freq: f, nyquist });
            }
            let omega = 2.0 * PI * f / f64::from(fs);
            let zinv = Complex64::new(libm::cos(omega), -libm::sin(omega));
            Ok(match filter {
                Filter::Iir(iir) => iir
                    .sections()
                    .iter()
                    .fold(Complex64::new(iir.gain(), 0.0), |h, s| h * s.eval(zinv)),
                Filter::Fir(fir) => fir
                    .taps()
                    .iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, &t| acc * zinv + t),
            })
        })
        .collect()
}
