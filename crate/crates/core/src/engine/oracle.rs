//! Reference filtering by the literal difference equation.
//!
//! Deliberately naive: no sections, no state registers, no parallelism.
//! Used as ground truth for the engine.

use crate::design::IirFilter;
use crate::error::{Error, Result};

/// `y[n] = Σ_k b[k]·x[n−k] − Σ_{k≥1} a[k]·y[n−k]`, zero initial conditions.
pub fn iir_oracle(b: &[f64], a: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    if b.is_empty() || a.is_empty() {
        return Err(Error::InvalidCoefficients("b and a must be nonempty".into()));
    }
    if a[0] != 1.0 {
        return Err(Error::InvalidCoefficients(format!("a[0] must be 1, got {}", a[0])));
    }
    let mut y = vec![0.0; x.len()];
    for n in 0..x.len() {
        let mut acc = 0.0;
        for (k, bk) in b.iter().enumerate() {
            if k <= n {
                acc += bk * x[n - k];
            }
        }
        for (k, ak) in a.iter().enumerate().skip(1) {
            if k <= n {
                acc -= ak * y[n - k];
            }
        }
        y[n] = acc;
    }
    Ok(y)
}

/// Runs [`iir_oracle`] once per section, in cascade order, then applies the
/// overall gain.
pub fn iir_cascade_oracle(filter: &IirFilter, x: &[f64]) -> Result<Vec<f64>> {
    let mut y = x.to_vec();
    for s in filter.sections() {
        y = iir_oracle(&s.numerator(), &s.denominator(), &y)?;
    }
    Ok(y.into_iter().map(|v| v * filter.gain()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_through() {
        let x = [0.5, -1.0, 2.0];
        assert_eq!(iir_oracle(&[1.0], &[1.0], &x).unwrap(), x);
    }

    #[test]
    fn accumulator() {
        let y = iir_oracle(&[1.0], &[1.0, -1.0], &[1.0; 5]).unwrap();
        assert_eq!(y, [1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn rejects_unnormalized_denominator() {
        assert!(matches!(
            iir_oracle(&[1.0], &[2.0, 0.5], &[1.0]),
            Err(Error::InvalidCoefficients(_))
        ));
        assert!(iir_oracle(&[], &[1.0], &[1.0]).is_err());
    }
}
