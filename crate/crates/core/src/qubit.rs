use num_complex::Complex64;

use crate::error::{Error, Result};

/// Normalized single-qubit wavefunction `c0|0⟩ + c1|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    c0: Complex64,
    c1: Complex64,
}

impl QubitState {
    pub const ZERO_KET: QubitState = QubitState { c0: Complex64::new(1.0, 0.0), c1: Complex64::new(0.0, 0.0) };
    pub const ONE_KET: QubitState = QubitState { c0: Complex64::new(0.0, 0.0), c1: Complex64::new(1.0, 0.0) };

    /// Normalizes `(c0, c1)`; fails on a zero or non-finite vector.
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::DegenerateState);
        }
        Ok(Self { c0: c0 / norm, c1: c1 / norm })
    }

    /// `√p0·e^{iθ0}|0⟩ + √(1−p0)·e^{iθ1}|1⟩`.
    pub fn from_populations(p0: f64, theta0: f64, theta1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p0) {
            return Err(Error::Domain(format!("population {p0} outside [0, 1]")));
        }
        Ok(Self { c0: Complex64::from_polar(p0.sqrt(), theta0), c1: Complex64::from_polar((1.0 - p0).sqrt(), theta1) })
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.c0, self.c1]
    }

    pub fn p0(&self) -> f64 {
        self.c0.norm_sqr()
    }

    pub fn p1(&self) -> f64 {
        self.c1.norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap_sqr(&self, other: &QubitState) -> f64 {
        (self.c0.conj() * other.c0 + self.c1.conj() * other.c1).norm_sqr()
    }

    /// Rescale to unit norm, returning the applied `|1 − ‖ψ‖|` correction.
    pub(crate) fn from_raw_normalized(v: [Complex64; 2]) -> Result<(Self, f64)> {
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::DegenerateState);
        }
        Ok((Self { c0: v[0] / norm, c1: v[1] / norm }, (norm - 1.0).abs()))
    }
}
