//! Browser bindings: rate-function profiles, finite-N curves and the limit
//! trajectory, each sampled on a grid small enough to draw directly.
//!
//! Every exported function has a plain Rust twin (`*_data`) returning
//! `Result<_, String>` so the numerics can be tested natively.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use nhmf_core::asymptotics::{advance_limit_ode, find_global_maximizer, limit_marginal, RateFunction, Regime};
use nhmf_core::exact::{evolve_zz, marginal_normalized};
use nhmf_core::hartree::{classify_fixed_point, closed_form_zz, FixedPoint, DEFAULT_DT};
use nhmf_core::metrics::{hartree_infidelity, linear_entropy};
use nhmf_core::{DensityMatrix, QubitState};
use wasm_bindgen::prelude::*;

/// Largest particle number accepted from the page.
pub const MAX_PARTICLES: usize = 1_000_000;
pub const MAX_SAMPLES: usize = 4000;

fn state(p0: f64) -> Result<QubitState, String> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(format!("|φ₀|² = {p0} must lie in [0, 1]"));
    }
    QubitState::from_populations(p0, 0.0, 0.0).map_err(|e| e.to_string())
}

fn time_grid(t_max: f64, steps: usize) -> Result<Vec<f64>, String> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(format!("t_max = {t_max} must be positive"));
    }
    if steps == 0 || steps > MAX_SAMPLES {
        return Err(format!("steps must lie in 1..={MAX_SAMPLES}"));
    }
    Ok((0..=steps).map(|i| t_max * i as f64 / steps as f64).collect())
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct RateProfile {
    x: Vec<f64>,
    f: Vec<f64>,
    x_star: f64,
    x_mirror: f64,
}

#[wasm_bindgen]
impl RateProfile {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn f(&self) -> Vec<f64> {
        self.f.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn x_star(&self) -> f64 {
        self.x_star
    }

    /// Second maximizer in the balanced case above t = ½, otherwise NaN.
    #[wasm_bindgen(getter)]
    pub fn x_mirror(&self) -> f64 {
        self.x_mirror
    }
}

pub fn rate_profile_data(p0: f64, t: f64, points: usize) -> Result<RateProfile, String> {
    if !(3..=MAX_SAMPLES).contains(&points) {
        return Err(format!("points must lie in 3..={MAX_SAMPLES}"));
    }
    let rf = RateFunction::new(p0, 1.0 - p0, t).map_err(|e| e.to_string())?;
    let m = find_global_maximizer(&rf);
    let mut x = Vec::with_capacity(points);
    let mut f = Vec::with_capacity(points);
    for i in 1..=points {
        let xi = i as f64 / (points + 1) as f64;
        x.push(xi);
        f.push(rf.eval(xi).map_err(|e| e.to_string())?.0);
    }
    let x_mirror = match m.regime {
        Regime::Double => m.x_star_mirror.unwrap_or(f64::NAN),
        Regime::Single => f64::NAN,
    };
    Ok(RateProfile { x, f, x_star: m.x_star, x_mirror })
}

/// `f_t(x)` on `points` interior grid points plus its global maximizer.
#[wasm_bindgen]
pub fn rate_profile(p0: f64, t: f64, points: usize) -> Result<RateProfile, JsError> {
    rate_profile_data(p0, t, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteNCurves {
    t: Vec<f64>,
    entropy: Vec<f64>,
    entropy_limit: Vec<f64>,
    infidelity: Vec<f64>,
    infidelity_limit: Vec<f64>,
}

#[wasm_bindgen]
impl FiniteNCurves {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    /// Linear entropy of the exact one-particle marginal.
    #[wasm_bindgen(getter)]
    pub fn entropy(&self) -> Vec<f64> {
        self.entropy.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn entropy_limit(&self) -> Vec<f64> {
        self.entropy_limit.clone()
    }

    /// Infidelity of the exact marginal against the Hartree wavefunction.
    #[wasm_bindgen(getter)]
    pub fn infidelity(&self) -> Vec<f64> {
        self.infidelity.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn infidelity_limit(&self) -> Vec<f64> {
        self.infidelity_limit.clone()
    }
}

fn limit_rho(phi: &QubitState, t: f64) -> Result<DensityMatrix, String> {
    if classify_fixed_point(phi) == FixedPoint::Stable {
        return Ok(DensityMatrix::pure(phi));
    }
    limit_marginal(phi, t).map(|l| l.rho).map_err(|e| e.to_string())
}

pub fn finite_n_curves_data(p0: f64, n_particles: usize, t_max: f64, steps: usize) -> Result<FiniteNCurves, String> {
    if !(2..=MAX_PARTICLES).contains(&n_particles) {
        return Err(format!("N must lie in 2..={MAX_PARTICLES}"));
    }
    let phi = state(p0)?;
    let t = time_grid(t_max, steps)?;
    let mut out = FiniteNCurves {
        t: t.clone(),
        entropy: Vec::with_capacity(t.len()),
        entropy_limit: Vec::with_capacity(t.len()),
        infidelity: Vec::with_capacity(t.len()),
        infidelity_limit: Vec::with_capacity(t.len()),
    };
    let err = |e: nhmf_core::Error| e.to_string();
    for &ti in &t {
        let rho = marginal_normalized(&evolve_zz(&phi, n_particles, ti).map_err(err)?, 1).map_err(err)?;
        let lim = limit_rho(&phi, ti)?;
        let hartree = closed_form_zz(&phi, ti);
        out.entropy.push(linear_entropy(&rho).map_err(err)?);
        out.entropy_limit.push(linear_entropy(&lim).map_err(err)?);
        out.infidelity.push(hartree_infidelity(&rho, &hartree).map_err(err)?);
        out.infidelity_limit.push(hartree_infidelity(&lim, &hartree).map_err(err)?);
    }
    Ok(out)
}

/// Exact ZZ dynamics at `N` particles next to the `N → ∞` values.
#[wasm_bindgen]
pub fn finite_n_curves(p0: f64, n_particles: usize, t_max: f64, steps: usize) -> Result<FiniteNCurves, JsError> {
    finite_n_curves_data(p0, n_particles, t_max, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectories {
    t: Vec<f64>,
    x_star: Vec<f64>,
    nu0_abs2: Vec<f64>,
    hartree_phi0_abs2: Vec<f64>,
}

#[wasm_bindgen]
impl Trajectories {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn x_star(&self) -> Vec<f64> {
        self.x_star.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn nu0_abs2(&self) -> Vec<f64> {
        self.nu0_abs2.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn hartree_phi0_abs2(&self) -> Vec<f64> {
        self.hartree_phi0_abs2.clone()
    }
}

pub fn trajectories_data(p0: f64, t_max: f64, steps: usize) -> Result<Trajectories, String> {
    let phi = state(p0)?;
    match classify_fixed_point(&phi) {
        FixedPoint::Stable => return Err("|0⟩ and |1⟩ are stationary; pick 0 < |φ₀|² < 1".into()),
        FixedPoint::Unstable => {
            return Err("for |φ₀|² = ½ the limit turns mixed at t = ½ and has no wavefunction".into())
        }
        FixedPoint::None => {}
    }
    let t = time_grid(t_max, steps)?;
    let err = |e: nhmf_core::Error| e.to_string();
    let mut out = Trajectories { t: t.clone(), x_star: vec![], nu0_abs2: vec![], hartree_phi0_abs2: vec![] };
    let (mut nu, mut now) = (phi, 0.0);
    for &ti in &t {
        nu = advance_limit_ode(&nu, now, ti, DEFAULT_DT).map_err(err)?;
        now = ti;
        out.x_star.push(find_global_maximizer(&RateFunction::from_state(&phi, ti).map_err(err)?).x_star);
        out.nu0_abs2.push(nu.p0());
        out.hartree_phi0_abs2.push(closed_form_zz(&phi, ti).p0());
    }
    Ok(out)
}

/// Limit wavefunction against the Hartree solution from the same start.
#[wasm_bindgen]
pub fn trajectories(p0: f64, t_max: f64, steps: usize) -> Result<Trajectories, JsError> {
    trajectories_data(p0, t_max, steps).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        assert_eq!(time_grid(2.0, 4).unwrap(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!(time_grid(0.0, 4).is_err());
        assert!(time_grid(1.0, 0).is_err());
    }

    #[test]
    fn rejects_bad_population() {
        assert!(state(1.2).is_err());
        assert!(state(f64::NAN).is_err());
        assert!(rate_profile_data(0.4, 1.0, 2).is_err());
    }
}
