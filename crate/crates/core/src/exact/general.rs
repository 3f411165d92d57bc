use num_complex::Complex64;

use crate::dicke::{product_state, DickeState};
use crate::error::{Error, Result};
use crate::exact::lift::lift_model;
use crate::logcomplex::LogComplex;
use crate::model::ModelSpec;
use crate::qubit::QubitState;

/// Largest `N` accepted by the dense propagator.
pub const DENSE_CAP: usize = 4096;

/// `exp(−i t A^(N)) |φ⟩^{⊗N}` by a dense matrix exponential of the lifted
/// operator, for `N <= DENSE_CAP`.
pub fn evolve_general(model: &ModelSpec, phi: &QubitState, n_particles: usize, t: f64) -> Result<DickeState> {
    evolve_general_with_cap(model, phi, n_particles, t, DENSE_CAP)
}

pub fn evolve_general_with_cap(
    model: &ModelSpec,
    phi: &QubitState,
    n_particles: usize,
    t: f64,
    cap: usize,
) -> Result<DickeState> {
    if n_particles > cap {
        return Err(Error::Capacity { requested: n_particles, cap });
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("evolution time must be finite and >= 0, got {t}")));
    }
    let initial = product_state(phi, n_particles)?;
    if t == 0.0 {
        return Ok(initial);
    }
    let op = lift_model(model, n_particles)?;
    let dim = n_particles + 1;
    let mut generator = op.into_matrix() * Complex64::new(0.0, -t);

    // Shift by a Gershgorin bound on the real parts so the exponential stays
    // in range; the shift is restored in the log magnitudes.
    let shift = (0..dim)
        .map(|r| {
            let off: f64 = (0..dim).filter(|&c| c != r).map(|c| generator[(r, c)].norm()).sum();
            generator[(r, r)].re + off
        })
        .fold(f64::NEG_INFINITY, f64::max);
    for r in 0..dim {
        generator[(r, r)] -= shift;
    }
    let propagator = generator.exp();

    // Same common scale as the input so tiny amplitudes survive the product.
    let scale = initial.max_log_mag();
    let v = nalgebra::DVector::from_iterator(dim, initial.amplitudes().iter().map(|a| a.to_complex_scaled(scale)));
    let w = propagator * v;
    let amplitudes = w.iter().map(|z| LogComplex::from_complex(*z).scale_ln(scale + shift)).collect();
    DickeState::new(n_particles, amplitudes)
}
