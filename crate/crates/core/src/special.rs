//! Log-gamma based combinatorics and polygamma functions.

use crate::error::{Error, Result};

/// `ln C(n, k)` via log-gamma.
pub fn dicke_log_binomial(n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Err(Error::IndexOutOfRange { n: k, max: n });
    }
    let j = k.min(n - k);
    if j <= SMALL_BINOMIAL {
        // Direct product: log-gamma differences lose digits when one side is small.
        return Ok((0..j).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum());
    }
    Ok(ln_binomial_real(n as f64, k as f64))
}

const SMALL_BINOMIAL: usize = 32;

/// `ln C(m, s)` for real `0 <= s <= m`, the continuous extension used by the
/// Laplace approximation.
pub(crate) fn ln_binomial_real(m: f64, s: f64) -> f64 {
    if s == 0.0 || s == m {
        return 0.0;
    }
    libm::lgamma(m + 1.0) - libm::lgamma(s + 1.0) - libm::lgamma(m - s + 1.0)
}

/// Digamma function for `x > 0`.
pub(crate) fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + x.ln()
        - 0.5 * inv
        - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
}

/// Trigamma function for `x > 0`.
pub(crate) fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 12.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + inv
        + 0.5 * inv2
        + inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 - inv2 * 5.0 / 66.0))))
}
