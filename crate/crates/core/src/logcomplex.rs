//! Complex numbers stored as `(ln |z|, arg z)`.
//!
//! Amplitudes of the evolved many-body state carry factors `e^{λ t}` with
//! `λ ~ N/2`, which leave the range of `f64` long before `N` becomes large.
//! Keeping the logarithm of the modulus sidesteps overflow; conversion back to
//! ordinary complex numbers is only done after a common scale is removed.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::{Div, Mul};

use num_complex::Complex64;

/// Reduce an angle to `(−π, π]`.
pub fn wrap_phase(phase: f64) -> f64 {
    if phase > -PI && phase <= PI {
        return phase;
    }
    let mut p = phase.rem_euclid(TAU);
    if p > PI {
        p -= TAU;
    }
    p
}

/// `r·e^{iφ}` with the axis directions mapped exactly, so that opposite
/// real terms cancel to an exact zero.
fn polar(r: f64, phase: f64) -> Complex64 {
    if phase == 0.0 {
        Complex64::new(r, 0.0)
    } else if phase == PI {
        Complex64::new(-r, 0.0)
    } else if phase == FRAC_PI_2 {
        Complex64::new(0.0, r)
    } else if phase == -FRAC_PI_2 {
        Complex64::new(0.0, -r)
    } else {
        Complex64::from_polar(r, phase)
    }
}

/// A complex number `e^{log_mag + i·phase}`. Zero is `log_mag = −∞`, phase 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub log_mag: f64,
    pub phase: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex { log_mag: f64::NEG_INFINITY, phase: 0.0 };
    pub const ONE: LogComplex = LogComplex { log_mag: 0.0, phase: 0.0 };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self { log_mag, phase: wrap_phase(phase) }
    }

    /// Positive real number from its logarithm.
    pub fn from_ln(log_mag: f64) -> Self {
        Self::new(log_mag, 0.0)
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        Self::new(z.norm().ln(), z.arg())
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        polar(self.log_mag.exp(), self.phase)
    }

    /// `self · e^{-shift}` as an ordinary complex number.
    pub fn to_complex_scaled(self, shift: f64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        polar((self.log_mag - shift).exp(), self.phase)
    }

    pub fn conj(self) -> Self {
        Self::new(self.log_mag, -self.phase)
    }

    /// `|z|²` in log form.
    pub fn ln_norm_sqr(self) -> f64 {
        2.0 * self.log_mag
    }

    pub fn powi(self, exponent: u64) -> Self {
        if exponent == 0 {
            return Self::ONE;
        }
        if self.is_zero() {
            return Self::ZERO;
        }
        let e = exponent as f64;
        Self::new(self.log_mag * e, self.phase * e)
    }

    /// Multiply by the positive real `e^{ln_factor}`.
    pub fn scale_ln(self, ln_factor: f64) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mag + ln_factor, self.phase)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;

    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;

    fn div(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mag - rhs.log_mag, self.phase - rhs.phase)
    }
}

/// Sum of log-domain complex numbers, factoring out the largest modulus.
///
/// An empty slice or a slice of zeros gives [`LogComplex::ZERO`].
pub fn log_sum_exp_complex(terms: &[LogComplex]) -> LogComplex {
    log_sum_exp_iter(terms.iter().copied())
}

pub(crate) fn log_sum_exp_iter<I>(terms: I) -> LogComplex
where
    I: Iterator<Item = LogComplex> + Clone,
{
    let max = terms.clone().fold(f64::NEG_INFINITY, |m, z| m.max(z.log_mag));
    if max == f64::NEG_INFINITY {
        return LogComplex::ZERO;
    }
    let sum: Complex64 = terms.map(|z| z.to_complex_scaled(max)).sum();
    LogComplex::from_complex(sum).scale_ln(max)
}

/// Real log-sum-exp; `−∞` when all inputs are `−∞`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_cancellation() {
        let s = log_sum_exp_complex(&[LogComplex::new(0.0, 0.0), LogComplex::new(0.0, PI)]);
        assert!(s.is_zero(), "{s:?}");
    }

    #[test]
    fn doubling() {
        let two = LogComplex::from_ln(2f64.ln());
        let s = log_sum_exp_complex(&[two, two]);
        assert!((s.log_mag - 4f64.ln()).abs() < 1e-15);
        assert_eq!(s.phase, 0.0);
    }

    #[test]
    fn zero_is_absorbing() {
        let z = LogComplex::new(3.0, 1.0);
        assert!((z * LogComplex::ZERO).is_zero());
        assert!((LogComplex::ZERO * z).is_zero());
        assert!(log_sum_exp_complex(&[LogComplex::ZERO; 3]).is_zero());
        assert!(log_sum_exp_complex(&[]).is_zero());
        assert_eq!(LogComplex::ZERO.to_complex(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn phase_stays_reduced() {
        let mut z = LogComplex::new(0.0, 3.0);
        for _ in 0..1000 {
            z = z * LogComplex::new(0.0, 3.0);
            assert!(z.phase > -PI && z.phase <= PI);
        }
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn round_trip(log_mag in -690.0f64..690.0, phase in -PI..PI) {
            let z = LogComplex::new(log_mag, phase);
            let back = LogComplex::from_complex(z.to_complex());
            let a = z.to_complex_scaled(log_mag);
            let b = back.to_complex_scaled(log_mag);
            prop_assert!((a - b).norm() < 1e-14);
        }

        #[test]
        fn permutation_invariant(
            terms in prop::collection::vec((-50.0f64..50.0, -PI..PI), 1..40),
            seed in any::<u64>(),
        ) {
            let xs: Vec<LogComplex> = terms.iter().map(|&(l, p)| LogComplex::new(l, p)).collect();
            let mut ys = xs.clone();
            // deterministic shuffle
            let mut state = seed | 1;
            for i in (1..ys.len()).rev() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                ys.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let a = log_sum_exp_complex(&xs);
            let b = log_sum_exp_complex(&ys);
            let scale = xs.iter().map(|z| z.log_mag).fold(f64::NEG_INFINITY, f64::max);
            let diff = (a.to_complex_scaled(scale) - b.to_complex_scaled(scale)).norm();
            let size = a.to_complex_scaled(scale).norm();
            prop_assert!(diff <= 1e-12 * size.max(1e-300) || diff < 1e-14);
        }
    }
}
