//! Large-`N` behaviour of the one-particle marginal in the ZZ model.
//!
//! The entries of the marginal are sums over `s ∈ 0..N` whose summands grow
//! like `exp(N f_t(s/N))` with the rate function
//!
//! ```text
//! f_t(x) = x ln(p1 (1−x) / (p0 x)) + ln(p0 / (1−x)) + t (1 − 2x)²
//! ```
//!
//! so the `N → ∞` limit is set by the global maximizer `x*_t`. For
//! `p0 = p1 = ½` and `t > ½` there are two maximizers and the limit is mixed.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::density::{CMatrix, DensityMatrix};
use crate::error::{Error, Result};
use crate::exact::zz::zz_eigenvalue_unchecked;
use crate::hartree::{classify_fixed_point, FixedPoint};
use crate::logcomplex::log_sum_exp;
use crate::ode::{rk4_step, uniform_steps};
use crate::qubit::QubitState;
use crate::special::{dicke_log_binomial, digamma, ln_binomial_real, trigamma};

/// `|p0 − p1|` below which the balanced (double-maximizer) case applies.
pub const BALANCE_TOL: f64 = 1e-12;

/// Denominators smaller than this are reported as singular.
pub const SINGULAR_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFunction {
    p0: f64,
    p1: f64,
    t: f64,
}

impl RateFunction {
    pub fn new(p0: f64, p1: f64, t: f64) -> Result<Self> {
        if !(p0 > 0.0 && p0 < 1.0 && p1 > 0.0 && p1 < 1.0) {
            return Err(Error::Domain(format!("populations ({p0}, {p1}) must lie in (0, 1)")));
        }
        if (p0 + p1 - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(p0 + p1));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
        }
        Ok(Self { p0, p1, t })
    }

    pub fn from_state(phi: &QubitState, t: f64) -> Result<Self> {
        Self::new(phi.p0(), phi.p1(), t)
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    fn ln_ratio(&self) -> f64 {
        self.p1.ln() - self.p0.ln()
    }

    /// `(f, f′, f″)` at `x ∈ (0, 1)`.
    pub fn eval(&self, x: f64) -> Result<(f64, f64, f64)> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("x = {x} outside (0, 1)")));
        }
        let ln_x = x.ln();
        let ln_1mx = (-x).ln_1p();
        let y = 1.0 - 2.0 * x;
        let f = x * (self.ln_ratio() + ln_1mx - ln_x) + self.p0.ln() - ln_1mx + self.t * y * y;
        let f1 = self.ln_ratio() + ln_1mx - ln_x - 4.0 * self.t * y;
        let f2 = 8.0 * self.t - 1.0 / (x * (1.0 - x));
        Ok((f, f1, f2))
    }

    /// `f′` as a function of `u = ln(x/(1−x))`, decreasing wherever `f″ < 0`.
    fn fprime_logit(&self, u: f64) -> f64 {
        self.ln_ratio() - u - 4.0 * self.t * (1.0 - 2.0 * logistic(u))
    }

    fn fprime_logit_derivative(&self, u: f64) -> f64 {
        let x = logistic(u);
        -1.0 + 8.0 * self.t * x * (1.0 - x)
    }
}

fn logistic(u: f64) -> f64 {
    if u >= 0.0 {
        1.0 / (1.0 + (-u).exp())
    } else {
        let e = u.exp();
        e / (1.0 + e)
    }
}

fn logit(x: f64) -> f64 {
    x.ln() - (-x).ln_1p()
}

/// Inflection points `r± = ½(1 ± √(1 − 1/(2t)))`; `None` for `t < ½`.
pub fn second_derivative_roots(t: f64) -> Option<(f64, f64)> {
    if !(t >= 0.5) {
        return None;
    }
    let d = (1.0 - 1.0 / (2.0 * t)).sqrt();
    Some((0.5 * (1.0 - d), 0.5 * (1.0 + d)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Single,
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximizerResult {
    pub regime: Regime,
    pub x_star: f64,
    pub x_star_mirror: Option<f64>,
    pub f_value: f64,
    pub f_second: f64,
}

/// Root of the decreasing `f′(u)` on `[lo, hi]` by bisection, then Newton.
fn decreasing_root(rf: &RateFunction, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if rf.fprime_logit(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut u = 0.5 * (lo + hi);
    for _ in 0..3 {
        let d = rf.fprime_logit_derivative(u);
        if d == 0.0 {
            break;
        }
        let next = u - rf.fprime_logit(u) / d;
        if !(next >= lo && next <= hi) {
            break;
        }
        u = next;
    }
    u
}

pub fn find_global_maximizer(rf: &RateFunction) -> MaximizerResult {
    let t = rf.t;
    let balanced = (rf.p0 - rf.p1).abs() <= BALANCE_TOL;
    // |4t(1 − 2x)| <= 4t, so these brackets hold the sign of f′.
    let u_min = rf.ln_ratio() - 4.0 * t - 1.0;
    let u_max = rf.ln_ratio() + 4.0 * t + 1.0;

    let finish = |regime: Regime, x: f64| {
        let (f_value, _, f_second) = rf.eval(x).expect("maximizer lies in (0, 1)");
        MaximizerResult {
            regime,
            x_star: x,
            x_star_mirror: (regime == Regime::Double).then_some(1.0 - x),
            f_value,
            f_second,
        }
    };

    let roots = match second_derivative_roots(t) {
        Some((rm, rp)) if t > 0.5 => (rm, rp),
        _ => {
            if balanced {
                return finish(Regime::Single, 0.5);
            }
            return finish(Regime::Single, logistic(decreasing_root(rf, u_min, u_max)));
        }
    };
    let (u_rm, u_rp) = (logit(roots.0), logit(roots.1));
    let left = (rf.fprime_logit(u_rm) < 0.0).then(|| logistic(decreasing_root(rf, u_min.min(u_rm), u_rm)));
    let right = (rf.fprime_logit(u_rp) > 0.0).then(|| logistic(decreasing_root(rf, u_rp, u_max.max(u_rp))));

    if balanced {
        let x = left.unwrap_or_else(|| 1.0 - right.expect("balanced case has a maximizer on each side"));
        return finish(Regime::Double, x);
    }
    let x = match (left, right) {
        (Some(l), Some(r)) => {
            if (1.0 - 2.0 * l) * rf.ln_ratio() <= 0.0 {
                l
            } else {
                r
            }
        }
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (None, None) => unreachable!("f′ changes sign on (0, 1)"),
    };
    finish(Regime::Single, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitRegime {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitState {
    pub regime: LimitRegime,
    pub rho: DensityMatrix,
    pub nu: Option<QubitState>,
    pub theta: f64,
    pub maximizer: MaximizerResult,
}

/// `θ = arg φ₀ − arg φ₁`.
pub fn relative_phase(phi: &QubitState) -> f64 {
    crate::logcomplex::wrap_phase(phi.c0().arg() - phi.c1().arg())
}

fn reject_fixed_point(phi: &QubitState) -> Result<()> {
    if classify_fixed_point(phi) == FixedPoint::Stable {
        return Err(Error::FixedPoint);
    }
    Ok(())
}

/// `N → ∞` limit of the normalized one-particle marginal.
pub fn limit_marginal(phi0: &QubitState, t: f64) -> Result<LimitState> {
    reject_fixed_point(phi0)?;
    let rf = RateFunction::from_state(phi0, t)?;
    let m = find_global_maximizer(&rf);
    let x = m.x_star;
    let theta = relative_phase(phi0);
    let off = Complex64::from_polar((x * (1.0 - x)).sqrt(), theta);
    let (regime, d0, d1, nu) = match m.regime {
        Regime::Single => {
            let nu = QubitState::new(Complex64::from_polar((1.0 - x).sqrt(), theta), Complex64::from(x.sqrt()))?;
            (LimitRegime::Pure, 1.0 - x, x, Some(nu))
        }
        Regime::Double => (LimitRegime::Mixed, 0.5, 0.5, None),
    };
    let rho = CMatrix::from_row_slice(2, 2, &[Complex64::from(d0), off, off.conj(), Complex64::from(d1)]);
    Ok(LimitState { regime, rho: DensityMatrix::from_matrix(rho)?, nu, theta, maximizer: m })
}

/// Right-hand side of the limit wavefunction equation.
pub fn limit_ode_rhs(nu: &QubitState, t: f64) -> Result<[Complex64; 2]> {
    limit_rhs_raw(&nu.amplitudes(), t)
}

fn limit_rhs_raw(v: &[Complex64; 2], t: f64) -> Result<[Complex64; 2]> {
    let a = v[0].norm_sqr();
    let b = v[1].norm_sqr();
    let z = a - b;
    let den = 1.0 - 8.0 * t * a * b;
    if den.abs() < SINGULAR_TOL {
        return Err(Error::Singular { t, x: b });
    }
    Ok([v[0] * ((z - z * z) / den), v[1] * ((-z - z * z) / den)])
}

/// `∂_t x* = 4(1 − 2x)/(8t − 1/(x(1−x)))`.
pub fn maximizer_ode_rhs(x: f64, t: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (0, 1)")));
    }
    let den = 8.0 * t - 1.0 / (x * (1.0 - x));
    if den.abs() < SINGULAR_TOL {
        return Err(Error::Singular { t, x });
    }
    Ok(4.0 * (1.0 - 2.0 * x) / den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<QubitState>,
}

/// RK4 for the limit wavefunction starting from `ν(0) = φ0`.
pub fn integrate_limit_ode(phi0: &QubitState, t_end: f64, dt: f64) -> Result<LimitTrajectory> {
    if !(dt > 0.0) || !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::Domain(format!("invalid time grid: t_end = {t_end}, dt = {dt}")));
    }
    let (n, h) = uniform_steps(t_end, dt);
    let mut times = vec![0.0];
    let mut states = vec![*phi0];
    let mut y = phi0.amplitudes();
    let mut f = |t: f64, v: &[Complex64; 2]| limit_rhs_raw(v, t);
    for i in 0..n {
        let t = i as f64 * h;
        let next = rk4_step(&mut f, t, &y, h)?;
        let (state, _) =
            QubitState::from_raw_normalized(next).map_err(|_| Error::IntegrationFailure { last_valid_time: t })?;
        y = state.amplitudes();
        times.push(if i + 1 == n { t_end } else { (i + 1) as f64 * h });
        states.push(state);
    }
    Ok(LimitTrajectory { times, states })
}

/// Advance the limit wavefunction from `t0` to `t1 >= t0` with steps of at most `dt`.
pub fn advance_limit_ode(nu: &QubitState, t0: f64, t1: f64, dt: f64) -> Result<QubitState> {
    if !(dt > 0.0) || !(t1 >= t0) || !t1.is_finite() {
        return Err(Error::Domain(format!("invalid interval [{t0}, {t1}] with dt = {dt}")));
    }
    let (n, h) = uniform_steps(t1 - t0, dt);
    let mut y = nu.amplitudes();
    let mut state = *nu;
    let mut f = |t: f64, v: &[Complex64; 2]| limit_rhs_raw(v, t);
    for i in 0..n {
        let t = t0 + i as f64 * h;
        let next = rk4_step(&mut f, t, &y, h)?;
        state = QubitState::from_raw_normalized(next).map_err(|_| Error::IntegrationFailure { last_valid_time: t })?.0;
        y = state.amplitudes();
    }
    Ok(state)
}

/// Log-summand of one marginal entry as a function of a continuous index
/// `s ∈ [0, N−1]`: `base + s ln p0 + (N−1−s) ln p1 + ln C(N−1, s) + t·(λ(s+a) + λ(s+b))`.
struct EntrySum {
    n: usize,
    base: f64,
    ln_p0: f64,
    ln_p1: f64,
    t: f64,
    offsets: (f64, f64),
}

impl EntrySum {
    fn lambda(&self, s: f64) -> f64 {
        let big_n = self.n as f64;
        let y = big_n - 2.0 * s;
        (y * y - big_n) / (2.0 * (big_n - 1.0))
    }

    fn lambda_prime(&self, s: f64) -> f64 {
        let big_n = self.n as f64;
        -2.0 * (big_n - 2.0 * s) / (big_n - 1.0)
    }

    fn common(&self, s: f64) -> f64 {
        let m = (self.n - 1) as f64;
        self.base + s * self.ln_p0 + (m - s) * self.ln_p1
    }

    fn at_integer(&self, s: usize) -> f64 {
        let (a, b) = self.offsets;
        let sf = s as f64;
        self.common(sf)
            + dicke_log_binomial(self.n - 1, s).expect("s <= N - 1")
            + self.t
                * (zz_eigenvalue_unchecked(self.n, s + a as usize) + zz_eigenvalue_unchecked(self.n, s + b as usize))
    }

    fn value(&self, s: f64) -> f64 {
        let (a, b) = self.offsets;
        self.common(s) + ln_binomial_real((self.n - 1) as f64, s) + self.t * (self.lambda(s + a) + self.lambda(s + b))
    }

    fn derivatives(&self, s: f64) -> (f64, f64) {
        let (a, b) = self.offsets;
        let m = (self.n - 1) as f64;
        let d1 = self.ln_p0 - self.ln_p1 + digamma(m - s + 1.0) - digamma(s + 1.0)
            + self.t * (self.lambda_prime(s + a) + self.lambda_prime(s + b));
        let d2 = -trigamma(m - s + 1.0) - trigamma(s + 1.0) + self.t * 8.0 / (self.n as f64 - 1.0);
        (d1, d2)
    }

    /// `ln Σ_s e^{g(s)}` with each interior peak replaced by its Gaussian
    /// integral and any peak on the boundary summed exactly.
    fn laplace_ln_sum(&self) -> f64 {
        let values: Vec<f64> = (0..self.n).map(|s| self.at_integer(s)).collect();
        let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let last = values.len() - 1;
        let mut parts = Vec::new();
        for s in 0..values.len() {
            let v = values[s];
            let left_ok = s == 0 || values[s - 1] < v;
            let right_ok = s == last || values[s + 1] <= v;
            if !(left_ok && right_ok) || v < top - 50.0 {
                continue;
            }
            parts.push(self.peak_contribution(&values, s));
        }
        log_sum_exp(&parts)
    }

    fn peak_contribution(&self, values: &[f64], peak: usize) -> f64 {
        let last = values.len() - 1;
        let lo = peak.saturating_sub(1) as f64;
        let hi = (peak + 1).min(last) as f64;
        let mut s = peak as f64;
        let mut refined = None;
        if peak > 0 && peak < last {
            for _ in 0..60 {
                let (d1, d2) = self.derivatives(s);
                if !(d2 < 0.0) {
                    break;
                }
                let next = s - d1 / d2;
                if !(next > lo && next < hi) {
                    break;
                }
                let done = (next - s).abs() <= 1e-12 * (1.0 + s);
                s = next;
                if done {
                    refined = Some(s);
                    break;
                }
            }
        }
        if let Some(s) = refined {
            let d2 = self.derivatives(s).1;
            return self.value(s) + 0.5 * (2.0 * std::f64::consts::PI / -d2).ln();
        }
        // Peak on the edge of the index range: sum the discrete terms around it.
        let floor = values[peak] - 40.0;
        let mut a = peak;
        while a > 0 && values[a - 1] >= floor && values[a - 1] <= values[a] {
            a -= 1;
        }
        let mut b = peak;
        while b < last && values[b + 1] >= floor && values[b + 1] <= values[b] {
            b += 1;
        }
        log_sum_exp(&values[a..=b])
    }
}

/// Finite-`N` Laplace approximation of the normalized one-particle marginal.
pub fn laplace_marginal_approx(phi0: &QubitState, t: f64, n_particles: usize) -> Result<DensityMatrix> {
    reject_fixed_point(phi0)?;
    if n_particles < 2 {
        return Err(Error::Domain(format!("need N >= 2, got {n_particles}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
    }
    let (ln_p0, ln_p1) = (phi0.p0().ln(), phi0.p1().ln());
    let entry = |base: f64, offsets: (f64, f64)| EntrySum { n: n_particles, base, ln_p0, ln_p1, t, offsets };
    let l00 = entry(ln_p0, (1.0, 1.0)).laplace_ln_sum();
    let l11 = entry(ln_p1, (0.0, 0.0)).laplace_ln_sum();
    let l01 = entry(0.5 * (ln_p0 + ln_p1), (0.0, 1.0)).laplace_ln_sum();
    let scale = l00.max(l11);
    let r00 = (l00 - scale).exp();
    let r11 = (l11 - scale).exp();
    let off = Complex64::from_polar((l01 - scale).exp(), relative_phase(phi0));
    let m = Matrix2::new(Complex64::from(r00), off, off.conj(), Complex64::from(r11));
    let rho = CMatrix::from_fn(2, 2, |i, j| m[(i, j)]);
    DensityMatrix::from_matrix(rho)?.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{marginal_normalized, zz::evolve_zz};
    use crate::hartree::{hartree_rhs, DEFAULT_DT};
    use crate::model::ModelSpec;

    fn rf(p0: f64, t: f64) -> RateFunction {
        RateFunction::new(p0, 1.0 - p0, t).unwrap()
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let r = rf(0.64, 0.9);
        for x in [0.05, 0.3, 0.5, 0.81] {
            let h = 1e-5;
            let (_, d1, d2) = r.eval(x).unwrap();
            let fd1 = (r.eval(x + h).unwrap().0 - r.eval(x - h).unwrap().0) / (2.0 * h);
            let fd2 = (r.eval(x + h).unwrap().1 - r.eval(x - h).unwrap().1) / (2.0 * h);
            assert!((d1 - fd1).abs() < 1e-8 && (d2 - fd2).abs() < 1e-6);
        }
        assert!(r.eval(0.0).is_err() && r.eval(1.0).is_err());
    }

    #[test]
    fn rate_function_examples() {
        for t in [0.0, 0.3, 2.0] {
            assert!(rf(0.5, t).eval(0.5).unwrap().1.abs() < 1e-15);
            let f2 = rf(0.7, t).eval(0.5).unwrap().2;
            assert!((f2 - (8.0 * t - 4.0)).abs() < 1e-12);
        }
        assert!(rf(0.64, 0.0).eval(0.36).unwrap().1.abs() < 1e-15);
    }

    #[test]
    fn inflection_points() {
        assert_eq!(second_derivative_roots(0.5), Some((0.5, 0.5)));
        assert_eq!(second_derivative_roots(0.3), None);
        let (rm, rp) = second_derivative_roots(1.0).unwrap();
        assert!((rm - 0.146_446_609_406_726_2).abs() < 1e-15);
        assert!((rp - 0.853_553_390_593_273_8).abs() < 1e-15);
        let r = rf(0.4, 1.0);
        let (mut lo, mut hi) = (0.01, 0.5);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if r.eval(mid).unwrap().2 < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - rm).abs() < 1e-14);
    }

    #[test]
    fn maximizer_examples() {
        for p0 in [0.1, 0.64, 0.999] {
            let m = find_global_maximizer(&rf(p0, 0.0));
            assert!((m.x_star - (1.0 - p0)).abs() < 1e-14);
        }
        let m = find_global_maximizer(&rf(0.64, 4.0));
        assert!(m.x_star < second_derivative_roots(4.0).unwrap().0);
        let m = find_global_maximizer(&rf(0.5, 0.4));
        assert_eq!((m.regime, m.x_star), (Regime::Single, 0.5));
        let m = find_global_maximizer(&rf(0.5, 0.5));
        assert_eq!((m.regime, m.x_star), (Regime::Single, 0.5));
        let m = find_global_maximizer(&rf(0.5, 1.0));
        assert_eq!(m.regime, Regime::Double);
        assert!((m.x_star_mirror.unwrap() - (1.0 - m.x_star)).abs() < 1e-12);
        let r = rf(0.5, 1.0);
        assert!((r.eval(m.x_star).unwrap().0 - r.eval(1.0 - m.x_star).unwrap().0).abs() < 1e-12);
    }

    #[test]
    fn maximizer_residuals_on_grid() {
        for i in 0..10 {
            for j in 0..5 {
                let p0 = 0.05 + 0.1 * i as f64;
                let t = [0.1, 0.5, 0.51, 1.3, 6.0][j];
                let r = rf(p0, t);
                let m = find_global_maximizer(&r);
                let (_, d1, d2) = r.eval(m.x_star).unwrap();
                // Near x = 1 the float spacing of x alone moves f′ by ~ulp·|f″|.
                let ulp_term = 2.0 * f64::EPSILON * d2.abs();
                assert!(d1.abs() <= 1e-12 + ulp_term, "p0 {p0} t {t}: f' = {d1:e}");
                assert!(d2 <= 0.0);
                assert!((1.0 - 2.0 * m.x_star) * (r.p1().ln() - r.p0().ln()) <= 1e-15);
                // No grid point beats the returned maximizer.
                let best = (1..1000).map(|k| r.eval(k as f64 / 1000.0).unwrap().0).fold(f64::NEG_INFINITY, f64::max);
                assert!(m.f_value >= best - 1e-12);
            }
        }
    }

    #[test]
    fn maximizer_trajectory_is_continuous() {
        let dt = 1e-3;
        let mut prev = find_global_maximizer(&rf(0.45, 0.0)).x_star;
        let mut bound: f64 = 0.0;
        for i in 1..=3000 {
            let t = i as f64 * dt;
            let x = find_global_maximizer(&rf(0.45, t)).x_star;
            bound = bound.max(maximizer_ode_rhs(x, t).unwrap().abs());
            assert!((x - prev).abs() <= 10.0 * dt * bound.max(1e-3), "jump at t = {t}");
            prev = x;
        }
    }

    #[test]
    fn limit_state_examples() {
        let phi = QubitState::from_populations(0.64, 0.3, -0.4).unwrap();
        let at0 = limit_marginal(&phi, 0.0).unwrap();
        assert!(at0.rho.distance(&DensityMatrix::pure(&phi)) < 1e-12);
        let later = limit_marginal(&phi, 1.0).unwrap();
        assert_eq!(later.regime, LimitRegime::Pure);
        assert!((later.rho.purity() - 1.0).abs() < 1e-12);
        assert!(later.rho.distance(&DensityMatrix::pure(&later.nu.unwrap())) < 1e-12);

        let balanced = QubitState::from_populations(0.5, 0.0, 0.0).unwrap();
        let mut prev = 0.0;
        for t in [0.1, 0.3, 0.5, 0.6, 1.0, 2.0, 5.0] {
            let s = limit_marginal(&balanced, t).unwrap();
            let sl = 1.0 - s.rho.purity();
            if t <= 0.5 {
                assert!(sl.abs() < 1e-15);
            } else {
                assert_eq!(s.regime, LimitRegime::Mixed);
                let x = s.maximizer.x_star;
                assert!((sl - (0.5 - 2.0 * x * (1.0 - x))).abs() < 1e-15);
                assert!(sl > prev);
                prev = sl;
            }
        }
        assert!(prev > 0.49);
        assert_eq!(limit_marginal(&QubitState::ZERO_KET, 1.0).unwrap_err(), Error::FixedPoint);
    }

    #[test]
    fn limit_rhs_reduces_to_hartree_at_time_zero() {
        let phi = QubitState::from_populations(0.64, 0.5, 0.1).unwrap();
        let a = limit_ode_rhs(&phi, 0.0).unwrap();
        let b = hartree_rhs(&ModelSpec::zz(), &phi);
        assert!((a[0] - b[0]).norm() < 1e-15 && (a[1] - b[1]).norm() < 1e-15);
        let z = limit_ode_rhs(&QubitState::ZERO_KET, 0.7).unwrap();
        assert_eq!(z, [Complex64::new(0.0, 0.0); 2]);
        let half = QubitState::from_populations(0.5, 0.0, 0.0).unwrap();
        assert!(matches!(limit_ode_rhs(&half, 0.5), Err(Error::Singular { .. })));
    }

    #[test]
    fn maximizer_ode_examples() {
        assert_eq!(maximizer_ode_rhs(0.5, 0.2).unwrap(), 0.0);
        assert!(matches!(maximizer_ode_rhs(0.5, 0.5), Err(Error::Singular { .. })));
        for x in [0.01, 0.3, 0.5, 0.9] {
            assert!(8.0 * 0.49 - 1.0 / (x * (1.0 - x)) < 0.0);
        }
        let h = 1e-6;
        let x_at = |t: f64| find_global_maximizer(&rf(0.64, t)).x_star;
        let fd = (x_at(h) - x_at(0.0)) / h;
        assert!((maximizer_ode_rhs(0.36, 0.0).unwrap() - fd).abs() < 1e-5);
        let fd = (x_at(0.5 + h) - x_at(0.5 - h)) / (2.0 * h);
        let x = x_at(0.5);
        assert!((maximizer_ode_rhs(x, 0.5).unwrap() - fd).abs() < 1e-6);
    }

    #[test]
    fn limit_ode_tracks_maximizer() {
        for p0 in [0.3, 0.4, 0.45, 0.6] {
            let phi = QubitState::from_populations(p0, 0.0, 0.0).unwrap();
            let traj = integrate_limit_ode(&phi, 3.0, DEFAULT_DT).unwrap();
            for (t, nu) in traj.times.iter().zip(&traj.states).step_by(100) {
                let x = find_global_maximizer(&rf(p0, *t)).x_star;
                assert!((nu.p1() - x).abs() < 1e-8, "p0 {p0} t {t}");
            }
        }
    }

    #[test]
    fn piecewise_advance_matches_single_run() {
        let phi = QubitState::from_populations(0.7, 0.1, 0.0).unwrap();
        let whole = *integrate_limit_ode(&phi, 1.5, DEFAULT_DT).unwrap().states.last().unwrap();
        let mid = advance_limit_ode(&phi, 0.0, 0.6, DEFAULT_DT).unwrap();
        let end = advance_limit_ode(&mid, 0.6, 1.5, DEFAULT_DT).unwrap();
        assert!((end.p1() - whole.p1()).abs() < 1e-12);
        assert_eq!(advance_limit_ode(&phi, 0.3, 0.3, DEFAULT_DT).unwrap(), phi);
    }

    #[test]
    fn laplace_improves_on_limit_at_moderate_n() {
        let phi = QubitState::from_populations(0.64, 0.0, 0.0).unwrap();
        let exact = marginal_normalized(&evolve_zz(&phi, 100, 0.5).unwrap(), 1).unwrap();
        let laplace = laplace_marginal_approx(&phi, 0.5, 100).unwrap();
        let limit = limit_marginal(&phi, 0.5).unwrap().rho;
        assert!(exact.distance(&laplace) < exact.distance(&limit));
    }

    #[test]
    fn laplace_converges_to_exact_and_limit() {
        let phi = QubitState::from_populations(0.64, 0.2, -0.3).unwrap();
        let mut prev = f64::INFINITY;
        for n in [100usize, 1000, 10_000] {
            let exact = marginal_normalized(&evolve_zz(&phi, n, 1.0).unwrap(), 1).unwrap();
            let d = exact.distance(&laplace_marginal_approx(&phi, 1.0, n).unwrap());
            assert!(d < prev, "N = {n}: {d:e}");
            prev = d;
        }
        let far = laplace_marginal_approx(&phi, 1.0, 1_000_000).unwrap();
        assert!(far.distance(&limit_marginal(&phi, 1.0).unwrap().rho) <= 1e-5);
    }

    #[test]
    fn laplace_handles_both_peaks_in_balanced_case() {
        let phi = QubitState::from_populations(0.5, 0.0, 0.0).unwrap();
        let exact = marginal_normalized(&evolve_zz(&phi, 2000, 1.0).unwrap(), 1).unwrap();
        let laplace = laplace_marginal_approx(&phi, 1.0, 2000).unwrap();
        assert!(exact.distance(&laplace) < 1e-3);
        assert!((laplace.get(0, 0).re - 0.5).abs() < 1e-12);
    }
}
