//! Classical fixed-step Runge–Kutta.

use nalgebra::{allocator::Allocator, DefaultAllocator, Dim, OMatrix};
use num_complex::Complex64;

/// Anything RK4 can step: a real vector space with `y + h·d`.
pub trait OdeState: Clone {
    fn add_scaled(&self, h: f64, d: &Self) -> Self;
}

impl OdeState for f64 {
    fn add_scaled(&self, h: f64, d: &Self) -> Self {
        self + h * d
    }
}

impl<const K: usize> OdeState for [Complex64; K] {
    fn add_scaled(&self, h: f64, d: &Self) -> Self {
        std::array::from_fn(|i| self[i] + d[i] * h)
    }
}

impl<R: Dim, C: Dim> OdeState for OMatrix<Complex64, R, C>
where
    DefaultAllocator: Allocator<R, C>,
{
    fn add_scaled(&self, h: f64, d: &Self) -> Self {
        self + d * Complex64::from(h)
    }
}

/// One RK4 step of `y' = f(t, y)`.
pub fn rk4_step<S, E, F>(f: &mut F, t: f64, y: &S, h: f64) -> Result<S, E>
where
    S: OdeState,
    F: FnMut(f64, &S) -> Result<S, E>,
{
    let k1 = f(t, y)?;
    let k2 = f(t + 0.5 * h, &y.add_scaled(0.5 * h, &k1))?;
    let k3 = f(t + 0.5 * h, &y.add_scaled(0.5 * h, &k2))?;
    let k4 = f(t + h, &y.add_scaled(h, &k3))?;
    Ok(y.add_scaled(h / 6.0, &k1).add_scaled(h / 3.0, &k2).add_scaled(h / 3.0, &k3).add_scaled(h / 6.0, &k4))
}

/// Number of equal steps of size at most `dt` covering `[0, t_end]`, and the
/// step size actually used.
pub fn uniform_steps(t_end: f64, dt: f64) -> (usize, f64) {
    if t_end == 0.0 {
        return (0, 0.0);
    }
    let n = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    (n, t_end / n as f64)
}
