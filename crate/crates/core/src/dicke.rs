//! Symmetric `N`-qubit states in the Dicke basis `|N, n⟩`, where `n` counts
//! the particles in `|0⟩`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::logcomplex::{log_sum_exp, LogComplex};
use crate::qubit::QubitState;
use crate::special::dicke_log_binomial;

#[derive(Debug, Clone, PartialEq)]
pub struct DickeState {
    n_particles: usize,
    amplitudes: Vec<LogComplex>,
}

impl DickeState {
    pub fn new(n_particles: usize, amplitudes: Vec<LogComplex>) -> Result<Self> {
        if n_particles == 0 {
            return Err(Error::Domain("a Dicke state needs N >= 1".into()));
        }
        if amplitudes.len() != n_particles + 1 {
            return Err(Error::DimensionMismatch { expected: n_particles + 1, found: amplitudes.len() });
        }
        let state = Self { n_particles, amplitudes };
        let ln_norm = state.ln_norm_sqr();
        if !ln_norm.is_finite() {
            return Err(Error::DegenerateState);
        }
        Ok(state)
    }

    pub(crate) fn from_parts(n_particles: usize, amplitudes: Vec<LogComplex>) -> Self {
        Self { n_particles, amplitudes }
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn amplitudes(&self) -> &[LogComplex] {
        &self.amplitudes
    }

    pub fn amplitude(&self, n: usize) -> LogComplex {
        self.amplitudes[n]
    }

    /// `ln Σ_n |c_n|²`.
    pub fn ln_norm_sqr(&self) -> f64 {
        let logs: Vec<f64> = self.amplitudes.iter().map(|a| a.ln_norm_sqr()).collect();
        log_sum_exp(&logs)
    }

    /// Amplitudes as ordinary complex numbers after division by the norm.
    pub fn normalized_amplitudes(&self) -> Vec<Complex64> {
        let shift = 0.5 * self.ln_norm_sqr();
        self.amplitudes.iter().map(|a| a.to_complex_scaled(shift)).collect()
    }

    /// Largest `ln |c_n|`.
    pub fn max_log_mag(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.log_mag).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Relative Frobenius distance `‖a − b‖ / max(‖a‖, ‖b‖)` between two
    /// states of the same `N`.
    pub fn relative_distance(&self, other: &DickeState) -> Result<f64> {
        if self.n_particles != other.n_particles {
            return Err(Error::DimensionMismatch { expected: self.n_particles, found: other.n_particles });
        }
        let shift = 0.5 * self.ln_norm_sqr().max(other.ln_norm_sqr());
        let mut diff = 0.0;
        for (a, b) in self.amplitudes.iter().zip(&other.amplitudes) {
            diff += (a.to_complex_scaled(shift) - b.to_complex_scaled(shift)).norm_sqr();
        }
        Ok(diff.sqrt())
    }
}

/// `|φ⟩^{⊗N}` expanded as `Σ_n φ0^n φ1^{N−n} √C(N,n) |N,n⟩`.
pub fn product_state(phi: &QubitState, n_particles: usize) -> Result<DickeState> {
    if n_particles == 0 {
        return Err(Error::Domain("a Dicke state needs N >= 1".into()));
    }
    let a0 = LogComplex::from_complex(phi.c0());
    let a1 = LogComplex::from_complex(phi.c1());
    let mut amplitudes = Vec::with_capacity(n_particles + 1);
    for n in 0..=n_particles {
        let ln_binom = dicke_log_binomial(n_particles, n)?;
        let amp = a0.powi(n as u64) * a1.powi((n_particles - n) as u64);
        amplitudes.push(amp.scale_ln(0.5 * ln_binom));
    }
    Ok(DickeState::from_parts(n_particles, amplitudes))
}
