//! The non-Hermitian Hartree equation
//!
//! ```text
//! i ∂_t φ = (A1 − ⟨φ|(A1 − A1†)/2|φ⟩ + Tr_2[A2 (I ⊗ |φ⟩⟨φ|)] − ⟨φφ|(A2 − A2†)/2|φφ⟩) φ
//! ```
//!
//! integrated with RK4, and its closed-form solution for the ZZ model.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::ode::{rk4_step, uniform_steps};
use crate::qubit::QubitState;

/// Default RK4 step.
pub const DEFAULT_DT: f64 = 1e-3;

/// Amplitude tolerance for fixed-point detection.
pub const FIXED_POINT_TOL: f64 = 1e-10;

pub type Amplitudes = [Complex64; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct HartreeTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<QubitState>,
    /// Largest `|1 − ‖φ‖|` removed by the per-step renormalization.
    pub max_norm_correction: f64,
}

impl HartreeTrajectory {
    pub fn last(&self) -> &QubitState {
        self.states.last().expect("trajectory holds at least the initial state")
    }
}

fn expectation(m: &Matrix2<Complex64>, v: &Amplitudes) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            acc += v[a].conj() * m[(a, b)] * v[b];
        }
    }
    acc
}

/// The effective one-particle operator at `φ` (not necessarily normalized).
pub fn hartree_operator(model: &ModelSpec, v: &Amplitudes) -> Matrix2<Complex64> {
    let a1 = model.a1();
    let a2 = model.a2();
    let half = Complex64::from(0.5);
    let mut h = *a1;
    let shift1 = expectation(&(model.a1_anti() * half), v);
    let anti2 = model.a2_anti() * half;
    let mut shift2 = Complex64::new(0.0, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    h[(a, b)] += a2[(2 * a + c, 2 * b + d)] * v[c].conj() * v[d];
                    shift2 += (v[a] * v[c]).conj() * anti2[(2 * a + c, 2 * b + d)] * v[b] * v[d];
                }
            }
        }
    }
    for i in 0..2 {
        h[(i, i)] -= shift1 + shift2;
    }
    h
}

/// `∂_t φ` for normalized `φ`.
pub fn hartree_rhs(model: &ModelSpec, phi: &QubitState) -> Amplitudes {
    rhs_raw(model, &phi.amplitudes())
}

fn rhs_raw(model: &ModelSpec, v: &Amplitudes) -> Amplitudes {
    let h = hartree_operator(model, v);
    let mi = Complex64::new(0.0, -1.0);
    [mi * (h[(0, 0)] * v[0] + h[(0, 1)] * v[1]), mi * (h[(1, 0)] * v[0] + h[(1, 1)] * v[1])]
}

/// RK4 from `phi0` to `t_end` with renormalization after each step.
pub fn integrate_hartree(model: &ModelSpec, phi0: &QubitState, t_end: f64, dt: f64) -> Result<HartreeTrajectory> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain(format!("step size must be positive, got {dt}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::Domain(format!("end time must be finite and >= 0, got {t_end}")));
    }
    let (n, h) = uniform_steps(t_end, dt);
    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    times.push(0.0);
    states.push(*phi0);
    let mut f = |_t: f64, y: &Amplitudes| Ok::<_, Error>(rhs_raw(model, y));
    let mut max_norm_correction: f64 = 0.0;
    let mut y = phi0.amplitudes();
    for i in 0..n {
        let t = i as f64 * h;
        let next = rk4_step(&mut f, t, &y, h)?;
        if next.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::IntegrationFailure { last_valid_time: t });
        }
        let (state, correction) =
            QubitState::from_raw_normalized(next).map_err(|_| Error::IntegrationFailure { last_valid_time: t })?;
        max_norm_correction = max_norm_correction.max(correction);
        y = state.amplitudes();
        times.push(if i + 1 == n { t_end } else { (i + 1) as f64 * h });
        states.push(state);
    }
    Ok(HartreeTrajectory { times, states, max_norm_correction })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPoint {
    Stable,
    Unstable,
    None,
}

/// Fixed points of the ZZ Hartree flow.
pub fn classify_fixed_point(phi: &QubitState) -> FixedPoint {
    if phi.c0().norm() <= FIXED_POINT_TOL || phi.c1().norm() <= FIXED_POINT_TOL {
        FixedPoint::Stable
    } else if (phi.p0() - phi.p1()).abs() <= FIXED_POINT_TOL {
        FixedPoint::Unstable
    } else {
        FixedPoint::None
    }
}

/// Integration constants of the ZZ closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormParams {
    pub k: f64,
    pub theta0: f64,
    pub theta1: f64,
}

impl ClosedFormParams {
    /// `k = z/√(1 − z²)` with `z = |φ₀|² − |φ₁|²`; `None` at the stable fixed points.
    pub fn from_initial(phi0: &QubitState) -> Option<Self> {
        if classify_fixed_point(phi0) == FixedPoint::Stable {
            return None;
        }
        let (p0, p1) = (phi0.p0(), phi0.p1());
        let z = p0 - p1;
        // 1 − z² = 4 p0 p1 without cancellation.
        let k = z / (2.0 * (p0 * p1).sqrt());
        Some(Self { k, theta0: phi0.c0().arg(), theta1: phi0.c1().arg() })
    }

    /// `(|φ₀(t)|², |φ₁(t)|²)`.
    pub fn populations(&self, t: f64) -> (f64, f64) {
        if self.k == 0.0 {
            return (0.5, 0.5);
        }
        let ln_w = self.k.abs().ln() + 2.0 * t;
        // The smaller population is 1/(2 s (s + |w|)) with s = √(1 + w²).
        let small = if ln_w > 300.0 {
            (-(4f64.ln()) - 2.0 * ln_w).exp()
        } else {
            let w = ln_w.exp();
            let s = w.hypot(1.0);
            1.0 / (2.0 * s * (s + w))
        };
        if self.k > 0.0 {
            (1.0 - small, small)
        } else {
            (small, 1.0 - small)
        }
    }
}

/// Closed-form solution of the ZZ Hartree equation.
pub fn closed_form_zz(phi0: &QubitState, t: f64) -> QubitState {
    match ClosedFormParams::from_initial(phi0) {
        None => *phi0,
        Some(params) => {
            let (p0, p1) = params.populations(t);
            QubitState::new(
                Complex64::from_polar(p0.sqrt(), params.theta0),
                Complex64::from_polar(p1.sqrt(), params.theta1),
            )
            .expect("populations sum to one")
        }
    }
}
