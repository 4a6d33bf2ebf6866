//! Filter catalog: coefficient design for Butterworth, Chebyshev type I,
//! shelving and peaking IIR filters, and windowed-sinc FIR filters.
//!
//! Every filter carries the [`FilterSpec`] it was designed from and an
//! optional sampling rate. A filter without a rate is *unbound*: it holds no
//! coefficients yet and gets them when [`Filter::bind`] is called, usually
//! implicitly when it meets a [`Wave`](crate::Wave) through a pipe. Binding
//! simply runs the same design routine, so lazily and eagerly designed
//! filters are bit-identical.
//!
//! All transcendental functions go through `libm`, which keeps coefficients
//! identical across platforms.

mod eq;
mod fir;
mod iir;
mod response;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eq::{design_peaking, design_shelf};
pub use fir::design_fir;
pub use iir::{design_butterworth, design_chebyshev1};
pub use response::frequency_response;

/// Default quality factor for shelving and peaking designs.
pub const DEFAULT_Q: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Pass band of a lowpass, highpass or bandpass design, with cutoffs in Hz.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Band {
    Lowpass(f64),
    Highpass(f64),
    Bandpass(f64, f64),
}

impl Band {
    pub fn name(&self) -> &'static str {
        match self {
            Band::Lowpass(_) => "lowpass",
            Band::Highpass(_) => "highpass",
            Band::Bandpass(..) => "bandpass",
        }
    }

    fn edges(&self) -> (f64, Option<f64>) {
        match *self {
            Band::Lowpass(fc) | Band::Highpass(fc) => (fc, None),
            Band::Bandpass(lo, hi) => (lo, Some(hi)),
        }
    }

    /// Checks what can be checked without a sampling rate.
    fn validate_unbound(&self) -> Result<()> {
        let (lo, hi) = self.edges();
        for fc in std::iter::once(lo).chain(hi) {
            if !(fc > 0.0 && fc.is_finite()) {
                return Err(Error::InvalidCutoff { fc, fs: None });
            }
        }
        if let Some(hi) = hi {
            if lo >= hi {
                return Err(Error::InvalidArgument(format!(
                    "bandpass edges must satisfy f1 < f2, got {lo} Hz and {hi} Hz"
                )));
            }
        }
        Ok(())
    }

    fn validate(&self, fs: u32) -> Result<()> {
        let (lo, hi) = self.edges();
        for fc in std::iter::once(lo).chain(hi) {
            check_cutoff(fc, fs)?;
        }
        self.validate_unbound()
    }
}

pub(crate) fn check_cutoff(fc: f64, fs: u32) -> Result<()> {
    if fc > 0.0 && fc < f64::from(fs) / 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidCutoff { fc, fs: Some(fs) })
    }
}

pub(crate) fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidQ(q))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Window {
    Hamming,
    Blackman,
    Rect,
}

impl Window {
    pub fn name(self) -> &'static str {
        match self {
            Window::Hamming => "hamming",
            Window::Blackman => "blackman",
            Window::Rect => "rect",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShelfKind {
    Low,
    High,
}

/// Everything needed to (re)compute a filter's coefficients at any rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FilterSpec {
    Butterworth {
        band: Band,
        order: usize,
    },
    Chebyshev1 {
        band: Band,
        order: usize,
        ripple_db: f64,
    },
    Shelf {
        kind: ShelfKind,
        fc: f64,
        gain_db: f64,
        q: f64,
    },
    Peaking {
        fc: f64,
        gain_db: f64,
        q: f64,
    },
    FirSinc {
        band: Band,
        num_taps: usize,
        window: Window,
    },
}

impl FilterSpec {
    pub fn butterworth(band: Band, order: usize) -> Self {
        FilterSpec::Butterworth { band, order }
    }

    pub fn chebyshev1(band: Band, order: usize, ripple_db: f64) -> Self {
        FilterSpec::Chebyshev1 { band, order, ripple_db }
    }

    pub fn low_shelf(fc: f64, gain_db: f64, q: f64) -> Self {
        FilterSpec::Shelf {
            kind: ShelfKind::Low,
            fc,
            gain_db,
            q,
        }
    }

    pub fn high_shelf(fc: f64, gain_db: f64, q: f64) -> Self {
        FilterSpec::Shelf {
            kind: ShelfKind::High,
            fc,
            gain_db,
            q,
        }
    }

    pub fn peaking(fc: f64, gain_db: f64, q: f64) -> Self {
        FilterSpec::Peaking { fc, gain_db, q }
    }

    pub fn fir(band: Band, num_taps: usize, window: Window) -> Self {
        FilterSpec::FirSinc { band, num_taps, window }
    }

    pub fn is_fir(&self) -> bool {
        matches!(self, FilterSpec::FirSinc { .. })
    }

    /// Short human-readable label, used in diagnostics.
    pub fn name(&self) -> String {
        match self {
            FilterSpec::Butterworth { band, order } => format!("butterworth {} order {order}", band.name()),
            FilterSpec::Chebyshev1 { band, order, .. } => format!("chebyshev1 {} order {order}", band.name()),
            FilterSpec::Shelf {
                kind: ShelfKind::Low, ..
            } => "low shelf".into(),
            FilterSpec::Shelf {
                kind: ShelfKind::High, ..
            } => "high shelf".into(),
            FilterSpec::Peaking { .. } => "peaking".into(),
            FilterSpec::FirSinc { band, num_taps, .. } => format!("fir {} {num_taps} taps", band.name()),
        }
    }

    /// Validates the parameters that do not depend on the sampling rate.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FilterSpec::Butterworth { band, order } => {
                if order == 0 {
                    return Err(Error::InvalidOrder(order));
                }
                band.validate_unbound()
            }
            FilterSpec::Chebyshev1 { band, order, ripple_db } => {
                if order == 0 {
                    return Err(Error::InvalidOrder(order));
                }
                if !(ripple_db > 0.0 && ripple_db.is_finite()) {
                    return Err(Error::InvalidRipple(ripple_db));
                }
                band.validate_unbound()
            }
            FilterSpec::Shelf { fc, gain_db, q, .. } | FilterSpec::Peaking { fc, gain_db, q } => {
                Band::Lowpass(fc).validate_unbound()?;
                if !gain_db.is_finite() {
                    return Err(Error::InvalidArgument(format!("gain {gain_db} dB is not finite")));
                }
                check_q(q)
            }
            FilterSpec::FirSinc { band, num_taps, .. } => {
                fir::check_taps(band, num_taps)?;
                band.validate_unbound()
            }
        }
    }

    /// Computes the coefficients at `fs`.
    pub fn design(&self, fs: u32) -> Result<Filter> {
        Ok(match *self {
            FilterSpec::Butterworth { band, order } => design_butterworth(band, order, fs)?.into(),
            FilterSpec::Chebyshev1 { band, order, ripple_db } => design_chebyshev1(band, order, ripple_db, fs)?.into(),
            FilterSpec::Shelf { kind, fc, gain_db, q } => design_shelf(kind, fc, gain_db, q, fs)?.into(),
            FilterSpec::Peaking { fc, gain_db, q } => design_peaking(fc, gain_db, q, fs)?.into(),
            FilterSpec::FirSinc { band, num_taps, window } => design_fir(band, num_taps, window, fs)?.into(),
        })
    }

    /// A filter that remembers this spec and designs itself once bound.
    pub fn unbound(&self) -> Result<Filter> {
        self.validate()?;
        Ok(if self.is_fir() {
            Filter::Fir(FirFilter {
                taps: Vec::new(),
                spec: Some(*self),
                fs: None,
            })
        } else {
            Filter::Iir(IirFilter {
                sections: Vec::new(),
                gain: 1.0,
                spec: Some(*self),
                fs: None,
            })
        })
    }
}

/// One second-order section, `a0` normalized to 1:
///
/// `H(z) = (b0 + b1·z⁻¹ + b2·z⁻²) / (1 + a1·z⁻¹ + a2·z⁻²)`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiquadSection {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl BiquadSection {
    pub const IDENTITY: BiquadSection = BiquadSection {
        b0: 1.0,
        b1: 0.0,
        b2: 0.0,
        a1: 0.0,
        a2: 0.0,
    };

    /// Builds a section from unnormalized `[b0, b1, b2]` and `[a0, a1, a2]`.
    pub fn from_coefficients(b: [f64; 3], a: [f64; 3]) -> Result<Self> {
        let a0 = a[0];
        if a0 == 0.0 || !a0.is_finite() {
            return Err(Error::InvalidCoefficients(format!("a0 = {a0} cannot be normalized")));
        }
        Ok(BiquadSection {
            b0: b[0] / a0,
            b1: b[1] / a0,
            b2: b[2] / a0,
            a1: a[1] / a0,
            a2: a[2] / a0,
        })
    }

    /// Both poles strictly inside the unit circle.
    pub fn is_stable(&self) -> bool {
        self.a2.abs() < 1.0 && self.a1.abs() < 1.0 + self.a2
    }

    pub fn numerator(&self) -> [f64; 3] {
        [self.b0, self.b1, self.b2]
    }

    pub fn denominator(&self) -> [f64; 3] {
        [1.0, self.a1, self.a2]
    }

    /// Transfer function evaluated at `z⁻¹ = zinv`.
    pub fn eval(&self, zinv: Complex64) -> Complex64 {
        let zinv2 = zinv * zinv;
        let num = zinv2 * self.b2 + zinv * self.b1 + self.b0;
        let den = zinv2 * self.a2 + zinv * self.a1 + 1.0;
        num / den
    }

    fn scaled(self, k: f64) -> Self {
        BiquadSection {
            b0: self.b0 * k,
            b1: self.b1 * k,
            b2: self.b2 * k,
            ..self
        }
    }
}

/// Cascade of second-order sections.
#[derive(Clone, Debug, PartialEq)]
pub struct IirFilter {
    sections: Vec<BiquadSection>,
    gain: f64,
    spec: Option<FilterSpec>,
    fs: Option<u32>,
}

impl IirFilter {
    /// A bound filter from raw sections. Every section must be stable.
    pub fn from_sections(sections: Vec<BiquadSection>, gain: f64, fs: u32) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::InvalidCoefficients(
                "a cascade needs at least one section".into(),
            ));
        }
        if fs == 0 {
            return Err(Error::InvalidArgument("sampling rate must be positive".into()));
        }
        if let Some(i) = sections.iter().position(|s| !s.is_stable()) {
            return Err(Error::InvalidCoefficients(format!(
                "section {i} is unstable: {:?}",
                sections[i]
            )));
        }
        if !gain.is_finite() {
            return Err(Error::InvalidCoefficients(format!("gain {gain} is not finite")));
        }
        Ok(IirFilter {
            sections,
            gain,
            spec: None,
            fs: Some(fs),
        })
    }

    pub(crate) fn designed(sections: Vec<BiquadSection>, spec: FilterSpec, fs: u32) -> Self {
        debug_assert!(
            sections.iter().all(BiquadSection::is_stable),
            "{spec:?} at {fs}: {sections:?}"
        );
        IirFilter {
            sections,
            gain: 1.0,
            spec: Some(spec),
            fs: Some(fs),
        }
    }

    pub fn sections(&self) -> &[BiquadSection] {
        &self.sections
    }

    /// Scalar applied after the cascade. Designed filters fold their gain
    /// into the sections, so this is 1 for them.
    pub fn gain(&self) -> f64 {
        self.gain
    }

    /// `None` for filters built from raw coefficients.
    pub fn spec(&self) -> Option<&FilterSpec> {
        self.spec.as_ref()
    }

    pub fn fs(&self) -> Option<u32> {
        self.fs
    }

    pub fn is_bound(&self) -> bool {
        self.fs.is_some()
    }
}

/// Tap vector of a finite impulse response filter.
#[derive(Clone, Debug, PartialEq)]
pub struct FirFilter {
    taps: Vec<f64>,
    spec: Option<FilterSpec>,
    fs: Option<u32>,
}

impl FirFilter {
    pub fn from_taps(taps: Vec<f64>, fs: u32) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidTapCount {
                taps: 0,
                reason: "an FIR filter needs at least one tap",
            });
        }
        if fs == 0 {
            return Err(Error::InvalidArgument("sampling rate must be positive".into()));
        }
        if taps.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidCoefficients("taps must be finite".into()));
        }
        Ok(FirFilter {
            taps,
            spec: None,
            fs: Some(fs),
        })
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn spec(&self) -> Option<&FilterSpec> {
        self.spec.as_ref()
    }

    pub fn fs(&self) -> Option<u32> {
        self.fs
    }

    pub fn is_bound(&self) -> bool {
        self.fs.is_some()
    }
}

/// Either kind of filter from the catalog.
#[derive(Clone, Debug, PartialEq)]
pub enum Filter {
    Iir(IirFilter),
    Fir(FirFilter),
}

impl From<IirFilter> for Filter {
    fn from(f: IirFilter) -> Self {
        Filter::Iir(f)
    }
}

impl From<FirFilter> for Filter {
    fn from(f: FirFilter) -> Self {
        Filter::Fir(f)
    }
}

impl Filter {
    pub fn fs(&self) -> Option<u32> {
        match self {
            Filter::Iir(f) => f.fs,
            Filter::Fir(f) => f.fs,
        }
    }

    pub fn is_bound(&self) -> bool {
        self.fs().is_some()
    }

    pub fn spec(&self) -> Option<&FilterSpec> {
        match self {
            Filter::Iir(f) => f.spec.as_ref(),
            Filter::Fir(f) => f.spec.as_ref(),
        }
    }

    pub fn name(&self) -> String {
        match (self.spec(), self) {
            (Some(spec), _) => spec.name(),
            (None, Filter::Iir(_)) => "iir coefficients".into(),
            (None, Filter::Fir(_)) => "fir taps".into(),
        }
    }

    /// Returns this filter with coefficients computed at `fs`.
    ///
    /// A filter already bound to `fs` is returned unchanged; one bound to a
    /// different rate is an error rather than being silently redesigned.
    pub fn bind(&self, fs: u32) -> Result<Filter> {
        match self.fs() {
            Some(bound) if bound == fs => Ok(self.clone()),
            Some(bound) => Err(Error::SampleRateMismatch {
                expected: fs,
                found: bound,
            }),
            None => {
                let spec = self.spec().ok_or(Error::UnboundFilter)?;
                spec.design(fs)
            }
        }
    }

    pub fn frequency_response(&self, freqs: &[f64]) -> Result<Vec<Complex64>> {
        frequency_response(self, freqs)
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.fs() {
            Some(fs) => write!(f, "{} @ {fs} Hz", self.name()),
            None => write!(f, "{} (unbound)", self.name()),
        }
    }
}
