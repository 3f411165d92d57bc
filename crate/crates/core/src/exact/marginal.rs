//! `k`-particle marginals of symmetric states.
//!
//! Splitting `N` particles into the first `k` and the remaining `N − k`,
//!
//! ```text
//! |N,n⟩ = Σ_m √(C(k,m) C(N−k,n−m) / C(N,n)) |k,m⟩ ⊗ |N−k,n−m⟩
//! ```
//!
//! so tracing out the tail leaves, for product-basis strings `b`, `b'` with
//! `m`, `m'` zeros,
//!
//! ```text
//! ρ_{b b'} = Σ_r c_{m+r} c*_{m'+r} C(N−k, r) / √(C(N, m+r) C(N, m'+r)).
//! ```
//!
//! For `k = 1` these are the familiar closed-form entries of the one-particle
//! marginal. All sums run in the log domain.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::density::{CMatrix, DensityMatrix};
use crate::dicke::DickeState;
use crate::error::{Error, Result};
use crate::logcomplex::{log_sum_exp_complex, LogComplex};
use crate::special::dicke_log_binomial;

/// Largest marginal order supported.
pub const MAX_MARGINAL_ORDER: usize = 3;

/// Unnormalized marginal `e^{log_scale} · scaled`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnnormalizedMarginal {
    pub log_scale: f64,
    pub scaled: DensityMatrix,
}

impl UnnormalizedMarginal {
    /// `ln Tr ρ^(k)`.
    pub fn ln_trace(&self) -> f64 {
        self.log_scale + self.scaled.trace().re.ln()
    }

    pub fn normalized(&self) -> Result<DensityMatrix> {
        self.scaled.normalized()
    }

    /// The marginal with the scale multiplied back in; overflows when the
    /// state norm does.
    pub fn to_unscaled(&self) -> DensityMatrix {
        let factor = Complex64::from(self.log_scale.exp());
        DensityMatrix::from_matrix(self.scaled.matrix() * factor).expect("square power-of-two matrix")
    }
}

/// Number of `|0⟩` entries in the `k`-bit string `b`.
fn zeros_in(b: usize, k: usize) -> usize {
    k - b.count_ones() as usize
}

pub fn marginal(state: &DickeState, k: usize) -> Result<UnnormalizedMarginal> {
    let n_particles = state.n_particles();
    if k == 0 || k > MAX_MARGINAL_ORDER {
        return Err(Error::Domain(format!("marginal order must be 1..={MAX_MARGINAL_ORDER}, got {k}")));
    }
    if k >= n_particles {
        return Err(Error::Domain(format!("marginal order {k} must be below N = {n_particles}")));
    }
    let ln_binom_n: Vec<f64> = (0..=n_particles).map(|n| dicke_log_binomial(n_particles, n)).collect::<Result<_>>()?;
    let ln_binom_tail: Vec<f64> =
        (0..=n_particles - k).map(|r| dicke_log_binomial(n_particles - k, r)).collect::<Result<_>>()?;
    let amps = state.amplitudes();

    // Symmetric block indexed by zero counts (m, m').
    let mut block = vec![vec![LogComplex::ZERO; k + 1]; k + 1];
    let mut terms = Vec::with_capacity(n_particles - k + 1);
    for m in 0..=k {
        for mp in m..=k {
            terms.clear();
            terms.extend((0..=n_particles - k).map(|r| {
                let weight = ln_binom_tail[r] - 0.5 * (ln_binom_n[m + r] + ln_binom_n[mp + r]);
                (amps[m + r] * amps[mp + r].conj()).scale_ln(weight)
            }));
            let sum = log_sum_exp_complex(&terms);
            block[m][mp] = sum;
            block[mp][m] = sum.conj();
        }
    }

    let log_scale = (0..=k).map(|m| block[m][m].log_mag).fold(f64::NEG_INFINITY, f64::max);
    if log_scale == f64::NEG_INFINITY {
        return Err(Error::DegenerateState);
    }
    let dim = 1usize << k;
    let scaled: CMatrix =
        DMatrix::from_fn(dim, dim, |b, bp| block[zeros_in(b, k)][zeros_in(bp, k)].to_complex_scaled(log_scale));
    Ok(UnnormalizedMarginal { log_scale, scaled: DensityMatrix::from_matrix(scaled)? })
}

/// Marginal divided by its trace.
pub fn marginal_normalized(state: &DickeState, k: usize) -> Result<DensityMatrix> {
    marginal(state, k)?.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicke::product_state;
    use crate::exact::zz::{evolve_zz, zz_eigenvalue};
    use crate::qubit::QubitState;
    use crate::special::dicke_log_binomial;

    #[test]
    fn product_state_marginal_is_projector() {
        let phi = QubitState::from_populations(0.7, 0.3, -0.9).unwrap();
        for n in [2usize, 5, 40, 1000] {
            let rho = marginal_normalized(&product_state(&phi, n).unwrap(), 1).unwrap();
            assert!(rho.distance(&DensityMatrix::pure(&phi)) < 1e-12, "N = {n}");
        }
        let s = product_state(&phi, 6).unwrap();
        let rho3 = marginal_normalized(&s, 3).unwrap();
        let pure = DensityMatrix::pure(&phi);
        assert!(rho3.distance(&pure.kron(&pure).kron(&pure)) < 1e-12);
    }

    /// Direct evaluation of the four closed-form one-particle entries.
    #[test]
    fn one_particle_entries_match_closed_form() {
        let phi = QubitState::from_populations(0.64, 0.5, -0.2).unwrap();
        let (n, t) = (4usize, 0.7);
        let (p0, p1) = (phi.p0(), phi.p1());
        let lam = |s: usize| zz_eigenvalue(n, s).unwrap();
        let binom = |s: usize| dicke_log_binomial(n - 1, s).unwrap().exp();
        let mut r00 = 0.0;
        let mut r11 = 0.0;
        let mut r01 = 0.0;
        for s in 0..n {
            r00 += p1.powi(s as i32) * p0.powi((n - 1 - s) as i32) * binom(s) * (2.0 * lam(s) * t).exp();
            r11 += p0.powi(s as i32) * p1.powi((n - 1 - s) as i32) * binom(s) * (2.0 * lam(s) * t).exp();
            r01 += p0.powi(s as i32) * p1.powi((n - 1 - s) as i32) * binom(s) * ((lam(s + 1) + lam(s)) * t).exp();
        }
        let expected = [
            [Complex64::from(p0 * r00), phi.c0() * phi.c1().conj() * r01],
            [phi.c1() * phi.c0().conj() * r01, Complex64::from(p1 * r11)],
        ];
        let rho = marginal(&evolve_zz(&phi, n, t).unwrap(), 1).unwrap().to_unscaled();
        for (i, row) in expected.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert!((rho.get(i, j) - e).norm() < 1e-12 * e.norm().max(1.0), "({i},{j})");
            }
        }
    }

    #[test]
    fn trace_equals_state_norm_for_every_order() {
        let phi = QubitState::from_populations(0.45, 0.0, 1.1).unwrap();
        let s = evolve_zz(&phi, 30, 1.3).unwrap();
        for k in 1..=3 {
            let m = marginal(&s, k).unwrap();
            assert!((m.ln_trace() - s.ln_norm_sqr()).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn nested_partial_traces_agree() {
        let phi = QubitState::from_populations(0.3, 0.2, 0.0).unwrap();
        let s = evolve_zz(&phi, 12, 0.8).unwrap();
        for k in 2..=3 {
            let hi = marginal_normalized(&s, k).unwrap().trace_last().unwrap();
            let lo = marginal_normalized(&s, k - 1).unwrap();
            assert!(hi.distance(&lo) < 1e-11);
        }
    }

    #[test]
    fn decomposition_weights_satisfy_vandermonde() {
        for big_n in [5usize, 17, 200, 5000] {
            for k in 1..=3 {
                for n in [0, 1, big_n / 2, big_n - 1, big_n] {
                    let lo = n.saturating_sub(big_n - k);
                    let hi = n.min(k);
                    let logs: Vec<f64> = (lo..=hi)
                        .map(|m| dicke_log_binomial(k, m).unwrap() + dicke_log_binomial(big_n - k, n - m).unwrap())
                        .collect();
                    let lhs = crate::logcomplex::log_sum_exp(&logs);
                    let rhs = dicke_log_binomial(big_n, n).unwrap();
                    assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "N={big_n} k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn order_limits() {
        let s = product_state(&QubitState::ZERO_KET, 3).unwrap();
        assert!(marginal(&s, 3).is_err());
        assert!(marginal(&s, 0).is_err());
        let s = product_state(&QubitState::ZERO_KET, 10).unwrap();
        assert!(marginal(&s, 4).is_err());
    }
}
