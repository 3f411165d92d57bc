//! Scalar figures of merit and power-law tail fits.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::qubit::QubitState;

/// Trace tolerance for inputs that must be normalized.
pub const TRACE_TOL: f64 = 1e-10;

/// Most negative eigenvalue accepted as positive semi-definite.
pub const POSITIVITY_TOL: f64 = 1e-10;

pub const DEFAULT_TAIL_FRACTION: f64 = 0.2;

/// `S_L = 1 − Tr ρ²`.
pub fn linear_entropy(rho: &DensityMatrix) -> Result<f64> {
    rho.validate(TRACE_TOL)?;
    Ok(1.0 - rho.purity())
}

/// `I = 1 − ⟨φ|ρ|φ⟩`.
pub fn hartree_infidelity(rho: &DensityMatrix, phi: &QubitState) -> Result<f64> {
    if rho.qubits() != 1 {
        return Err(Error::DimensionMismatch { expected: 2, found: rho.dim() });
    }
    let v = phi.amplitudes();
    let mut overlap = num_complex::Complex64::new(0.0, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            overlap += v[a].conj() * rho.get(a, b) * v[b];
        }
    }
    Ok(1.0 - overlap.re)
}

fn validate_qubit_state(rho: &DensityMatrix) -> Result<f64> {
    if rho.qubits() != 1 {
        return Err(Error::DimensionMismatch { expected: 2, found: rho.dim() });
    }
    rho.validate(TRACE_TOL)?;
    let min = rho.eigenvalues()[0];
    if min < -POSITIVITY_TOL {
        return Err(Error::NotPositive(min));
    }
    let det = (rho.get(0, 0) * rho.get(1, 1) - rho.get(0, 1) * rho.get(1, 0)).re;
    Ok(det.max(0.0))
}

/// Uhlmann fidelity of two qubit states, `Tr(ρσ) + 2√(det ρ · det σ)`.
pub fn qubit_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let det_rho = validate_qubit_state(rho)?;
    let det_sigma = validate_qubit_state(sigma)?;
    let overlap = (rho.matrix() * sigma.matrix()).trace().re;
    Ok((overlap + 2.0 * (det_rho * det_sigma).sqrt()).clamp(0.0, 1.0))
}

/// `ε = 1 − F(ρ_N, ρ_∞)`.
pub fn convergence_infidelity(rho_n: &DensityMatrix, rho_limit: &DensityMatrix) -> Result<f64> {
    Ok(1.0 - qubit_fidelity(rho_n, rho_limit)?)
}

/// Least-squares fit of `y = a·x^b` in log-log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub amplitude_a: f64,
    pub exponent_b: f64,
    /// RMS of the log-space residuals.
    pub residual: f64,
    pub n_points_used: usize,
    /// Standard error of the slope.
    pub slope_stderr: f64,
}

/// Fit the last `⌈tail_fraction · len⌉` points.
pub fn power_law_tail_fit(xs: &[f64], ys: &[f64], tail_fraction: f64) -> Result<FitResult> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch { expected: xs.len(), found: ys.len() });
    }
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::Domain(format!("tail fraction {tail_fraction} outside (0, 1]")));
    }
    for (i, &x) in xs.iter().enumerate() {
        if !(x > 0.0) || !x.is_finite() || (i > 0 && !(x > xs[i - 1])) {
            return Err(Error::NotIncreasing(i));
        }
    }
    let n = xs.len();
    let used = ((tail_fraction * n as f64) - 1e-9).ceil() as usize;
    if used < 3 {
        return Err(Error::InsufficientData(used));
    }
    let start = n - used;
    let mut lx = Vec::with_capacity(used);
    let mut ly = Vec::with_capacity(used);
    for i in start..n {
        if !(ys[i] > 0.0) || !ys[i].is_finite() {
            return Err(Error::NonPositiveTail(i));
        }
        lx.push(xs[i].ln());
        ly.push(ys[i].ln());
    }
    let m = used as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let slope_stderr = (sse / (m - 2.0) / sxx).sqrt();
    Ok(FitResult {
        amplitude_a: intercept.exp(),
        exponent_b: slope,
        residual: (sse / m).sqrt(),
        n_points_used: used,
        slope_stderr,
    })
}
