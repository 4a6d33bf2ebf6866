use crate::design::BiquadSection;

/// Per-section delay registers `(w1, w2)` of one channel, zeroed on creation.
pub(crate) struct FilterState {
    registers: Vec<[f64; 2]>,
}

impl FilterState {
    pub(crate) fn new(sections: usize) -> Self {
        FilterState {
            registers: vec![[0.0; 2]; sections],
        }
    }

    /// Pushes `x` through the cascade sample by sample:
    ///
    /// ```text
    /// y  = b0·x + w1
    /// w1 = b1·x − a1·y + w2
    /// w2 = b2·x − a2·y
    /// ```
    pub(crate) fn run(&mut self, sections: &[BiquadSection], gain: f64, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(sections.len(), self.registers.len());
        for (xi, yi) in x.iter().zip(y.iter_mut()) {
            let mut v = *xi;
            for (s, w) in sections.iter().zip(self.registers.iter_mut()) {
                let out = s.b0 * v + w[0];
                w[0] = s.b1 * v - s.a1 * out + w[1];
                w[1] = s.b2 * v - s.a2 * out;
                v = out;
            }
            *yi = v * gain;
        }
    }
}
