use crate::dicke::{product_state, DickeState};
use crate::error::{Error, Result};
use crate::logcomplex::LogComplex;
use crate::qubit::QubitState;

/// Eigenvalue of `−i A^(N)` on `|N, n⟩` for the ZZ model:
/// `((N − 2n)² − N) / (2(N − 1))`.
pub fn zz_eigenvalue(n_particles: usize, n: usize) -> Result<f64> {
    if n_particles < 2 {
        return Err(Error::Domain(format!("ZZ eigenvalues need N >= 2, got {n_particles}")));
    }
    if n > n_particles {
        return Err(Error::IndexOutOfRange { n, max: n_particles });
    }
    Ok(zz_eigenvalue_unchecked(n_particles, n))
}

#[inline]
pub(crate) fn zz_eigenvalue_unchecked(n_particles: usize, n: usize) -> f64 {
    let big_n = n_particles as f64;
    let d = big_n - 2.0 * n as f64;
    (d * d - big_n) / (2.0 * (big_n - 1.0))
}

/// Apply `e^{λ(N,n) t}` to every Dicke amplitude of `|φ⟩^{⊗N}`, with the
/// growth rates supplied by `rate`.
///
/// [`evolve_zz`] is this with [`zz_eigenvalue`]; the verification suite swaps
/// in other rate functions.
pub fn evolve_diagonal<F>(phi: &QubitState, n_particles: usize, t: f64, rate: F) -> Result<DickeState>
where
    F: Fn(usize, usize) -> f64,
{
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("evolution time must be finite and >= 0, got {t}")));
    }
    let initial = product_state(phi, n_particles)?;
    let amplitudes: Vec<LogComplex> =
        initial.amplitudes().iter().enumerate().map(|(n, a)| a.scale_ln(rate(n_particles, n) * t)).collect();
    Ok(DickeState::from_parts(n_particles, amplitudes))
}

/// Closed-form solution of the ZZ model from `|φ⟩^{⊗N}` (unnormalized).
pub fn evolve_zz(phi: &QubitState, n_particles: usize, t: f64) -> Result<DickeState> {
    if n_particles < 2 {
        return Err(Error::Domain(format!("ZZ evolution needs N >= 2, got {n_particles}")));
    }
    evolve_diagonal(phi, n_particles, t, zz_eigenvalue_unchecked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(zz_eigenvalue(2, 1).unwrap(), -1.0);
        assert_eq!(zz_eigenvalue(4, 1).unwrap(), 0.0);
        assert_eq!(zz_eigenvalue(4, 0).unwrap(), 2.0);
        assert_eq!(zz_eigenvalue(4, 4).unwrap(), 2.0);
        assert!(zz_eigenvalue(1, 0).is_err());
        assert!(zz_eigenvalue(4, 5).is_err());
    }

    #[test]
    fn eigenvalue_symmetry() {
        for big_n in [2usize, 3, 7, 100, 1_000_000] {
            for n in [0, 1, big_n / 3, big_n / 2] {
                assert_eq!(zz_eigenvalue(big_n, n).unwrap(), zz_eigenvalue(big_n, big_n - n).unwrap());
            }
        }
    }

    #[test]
    fn basis_state_grows_as_exp_half_nt() {
        let s = evolve_zz(&QubitState::ZERO_KET, 7, 0.9).unwrap();
        assert!((s.amplitude(7).log_mag - 7.0 * 0.9 / 2.0).abs() < 1e-14);
        assert!(s.amplitudes()[..7].iter().all(|a| a.is_zero()));
    }

    #[test]
    fn identity_at_time_zero() {
        let phi = QubitState::new(Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6)).unwrap();
        let s = evolve_zz(&phi, 11, 0.0).unwrap();
        assert_eq!(s, product_state(&phi, 11).unwrap());
    }

    #[test]
    fn survives_huge_n() {
        let phi = QubitState::from_populations(0.64, 0.0, 0.0).unwrap();
        let s = evolve_zz(&phi, 1_000_000, 2.0).unwrap();
        assert!(s.ln_norm_sqr().is_finite());
        assert!(evolve_zz(&phi, 10, -1.0).is_err());
    }
}
