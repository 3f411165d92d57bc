//! Oracle verification suite: every fast path against an independent slow one.

use std::fmt;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nhmf_core::asymptotics::{find_global_maximizer, integrate_limit_ode, RateFunction};
use nhmf_core::density::CMatrix;
use nhmf_core::exact::{
    bbgky_rhs, bbgky_terms, brute_force_evolve, evolve_diagonal, evolve_general, evolve_zz, marginal_normalized,
    zz_eigenvalue, BRUTE_FORCE_CAP,
};
use nhmf_core::hartree::{closed_form_zz, integrate_hartree, DEFAULT_DT};
use nhmf_core::metrics::qubit_fidelity;
use nhmf_core::model::{max_abs, swap};
use nhmf_core::{DensityMatrix, ModelSpec, QubitState};

use crate::CliError;

pub const DEFAULT_MAX_N: usize = 10;
const MIN_MAX_N: usize = 4;

pub type EigenvalueFn = fn(usize, usize) -> f64;

fn zz_rate(n_particles: usize, n: usize) -> f64 {
    zz_eigenvalue(n_particles, n).expect("index within 0..=N")
}

/// `2N` in place of `2(N − 1)` in the denominator.
pub fn corrupted_eigenvalue(n_particles: usize, n: usize) -> f64 {
    let big_n = n_particles as f64;
    let d = big_n - 2.0 * n as f64;
    (d * d - big_n) / (2.0 * big_n)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub max_n: usize,
    /// Eigenvalues fed to the Dicke-basis evolution in the first check.
    pub eigenvalue: EigenvalueFn,
}

impl VerifyOptions {
    pub fn new(seed: u64, max_n: usize) -> Result<Self, CliError> {
        if !(MIN_MAX_N..=BRUTE_FORCE_CAP).contains(&max_n) {
            return Err(CliError::Config(format!("max-n must lie in {MIN_MAX_N}..={BRUTE_FORCE_CAP}, got {max_n}")));
        }
        Ok(Self { seed, max_n, eigenvalue: zz_rate })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub cases: usize,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub max_n: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify: seed {} max N {}", self.seed, self.max_n)?;
        for c in &self.checks {
            writeln!(
                f,
                "{}  {:<42} tol {:.1e}  max dev {:.3e}  ({} cases)",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.tolerance,
                c.max_deviation,
                c.cases
            )?;
        }
        let failed = self.failures().len();
        writeln!(f, "verify: {} of {} checks passed", self.checks.len() - failed, self.checks.len())
    }
}

fn random_state(rng: &mut ChaCha8Rng) -> QubitState {
    QubitState::from_populations(rng.gen_range(0.0..1.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
        .expect("valid population")
}

fn generic_state(rng: &mut ChaCha8Rng) -> QubitState {
    loop {
        let p0: f64 = rng.gen_range(0.05..0.95);
        if (p0 - 0.5).abs() > 0.02 {
            return QubitState::from_populations(p0, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
                .expect("valid population");
        }
    }
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random swap-symmetric model, Hermitian on request.
fn random_model(rng: &mut ChaCha8Rng, hermitian: bool) -> ModelSpec {
    let mut a1 = Matrix2::from_fn(|_, _| random_complex(rng));
    let raw = Matrix4::from_fn(|_, _| random_complex(rng));
    let mut a2 = (raw + swap() * raw * swap()) * Complex64::from(0.5);
    if hermitian {
        a1 = (a1 + a1.adjoint()) * Complex64::from(0.5);
        a2 = (a2 + a2.adjoint()) * Complex64::from(0.5);
    }
    ModelSpec::new(a1, a2).expect("symmetrized operator")
}

fn random_mixed(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = Matrix2::from_fn(|_, _| random_complex(rng));
    let m = g * g.adjoint();
    let m = m / m.trace();
    DensityMatrix::from_matrix(CMatrix::from_fn(2, 2, |i, j| m[(i, j)])).expect("square matrix")
}

/// `(Tr √(√ρ σ √ρ))²` through Hermitian eigendecompositions.
fn fidelity_oracle(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    fn sqrt_psd(m: &CMatrix) -> CMatrix {
        let h = (m + m.adjoint()) * Complex64::from(0.5);
        let eig = h.symmetric_eigen();
        let d = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from(l.max(0.0).sqrt())));
        &eig.eigenvectors * d * eig.eigenvectors.adjoint()
    }
    let sr = sqrt_psd(rho.matrix());
    sqrt_psd(&(&sr * sigma.matrix() * &sr)).trace().re.powi(2)
}

struct Tally {
    worst: f64,
    cases: usize,
}

impl Tally {
    fn new() -> Self {
        Self { worst: 0.0, cases: 0 }
    }

    /// NaN counts as an infinite deviation.
    fn add(&mut self, dev: f64) {
        self.worst = if dev.is_nan() { f64::INFINITY } else { self.worst.max(dev) };
        self.cases += 1;
    }

    fn finish(self, name: &'static str, tolerance: f64) -> CheckResult {
        CheckResult { name, tolerance, max_deviation: self.worst, cases: self.cases }
    }
}

type Res<T> = Result<T, CliError>;

fn check_evolution(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Res<CheckResult> {
    let mut tally = Tally::new();
    let zz = ModelSpec::zz();
    for n in 2..=opts.max_n {
        for t in [0.1, 0.5, 1.0, 2.0] {
            let phi = random_state(rng);
            let fast = marginal_normalized(&evolve_diagonal(&phi, n, t, opts.eigenvalue)?, 1)?;
            let brute = brute_force_evolve(&zz, &phi, n, t)?.marginal(1)?.normalized()?;
            tally.add(fast.distance(&brute));
        }
    }
    Ok(tally.finish("Dicke evolution vs full Hilbert space", 1e-9))
}

fn check_marginals(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Res<CheckResult> {
    let mut tally = Tally::new();
    let zz = ModelSpec::zz();
    for n in 4..=opts.max_n.min(8) {
        let phi = random_state(rng);
        let t = rng.gen_range(0.0..2.0);
        let fast = evolve_zz(&phi, n, t)?;
        let brute = brute_force_evolve(&zz, &phi, n, t)?;
        for k in 1..=3 {
            let oracle = brute.marginal_via_density(k)?.normalized()?;
            tally.add(marginal_normalized(&fast, k)?.distance(&oracle));
        }
    }
    Ok(tally.finish("k-marginals vs dense partial trace", 1e-9))
}

fn check_hierarchy(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Res<CheckResult> {
    let mut tally = Tally::new();
    let zz = ModelSpec::zz();
    let dt = 1e-5;
    for n in 4..=opts.max_n {
        let phi = generic_state(rng);
        let t = rng.gen_range(0.2..1.2);
        let s = evolve_zz(&phi, n, t)?;
        let [r1, r2, r3] = [1, 2, 3].map(|k| marginal_normalized(&s, k));
        let rhs = bbgky_rhs(&zz, &r1?, &r2?, &r3?, n)?;
        let plus = marginal_normalized(&evolve_zz(&phi, n, t + dt)?, 1)?;
        let minus = marginal_normalized(&evolve_zz(&phi, n, t - dt)?, 1)?;
        let fd = (plus.matrix() - minus.matrix()) / Complex64::from(2.0 * dt);
        tally.add(max_abs(&(rhs.matrix() - fd)));
    }
    Ok(tally.finish("hierarchy RHS vs finite differences", 1e-6))
}

fn check_hermitian_corrections(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Res<CheckResult> {
    let mut tally = Tally::new();
    for _ in 0..3 {
        let model = random_model(rng, true);
        let phi = random_state(rng);
        let n = opts.max_n;
        let s = evolve_general(&model, &phi, n, rng.gen_range(0.1..1.0))?;
        let [r1, r2, r3] = [1, 2, 3].map(|k| marginal_normalized(&s, k));
        let terms = bbgky_terms(&model, &r1?, &r2?, &r3?, n)?;
        tally.add(max_abs(&terms.one_body_correction).max(max_abs(&terms.two_body_correction)));
    }
    Ok(tally.finish("hierarchy O(N) terms, Hermitian model", 1e-12))
}

fn check_general_propagator(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Res<CheckResult> {
    let mut tally = Tally::new();
    for n in [2, 3, opts.max_n.min(8)] {
        let model = random_model(rng, false);
        let phi = random_state(rng);
        let t = rng.gen_range(0.1..1.0);
        let fast = marginal_normalized(&evolve_general(&model, &phi, n, t)?, 1)?;
        let brute = brute_force_evolve(&model, &phi, n, t)?.marginal(1)?.normalized()?;
        tally.add(fast.distance(&brute));
    }
    Ok(tally.finish("dense collective propagator vs full space", 1e-9))
}

fn check_closed_form(rng: &mut ChaCha8Rng) -> Res<CheckResult> {
    let mut tally = Tally::new();
    for _ in 0..10 {
        let phi = generic_state(rng);
        let end = *integrate_hartree(&ModelSpec::zz(), &phi, 2.0, DEFAULT_DT)?.last();
        let exact = closed_form_zz(&phi, 2.0);
        tally.add((end.c0() - exact.c0()).norm().max((end.c1() - exact.c1()).norm()));
    }
    Ok(tally.finish("Hartree closed form vs RK4", 1e-8))
}

fn check_limit_ode(rng: &mut ChaCha8Rng) -> Res<CheckResult> {
    let mut tally = Tally::new();
    for _ in 0..3 {
        let phi = generic_state(rng);
        let traj = integrate_limit_ode(&phi, 2.0, DEFAULT_DT)?;
        for (t, nu) in traj.times.iter().zip(&traj.states).step_by(50) {
            let x = find_global_maximizer(&RateFunction::from_state(&phi, *t)?).x_star;
            tally.add((nu.p1() - x).abs());
        }
    }
    Ok(tally.finish("limit ODE vs maximizer bisection", 1e-8))
}

fn check_fidelity(rng: &mut ChaCha8Rng) -> Res<CheckResult> {
    let mut tally = Tally::new();
    for _ in 0..200 {
        let (rho, sigma) = (random_mixed(rng), random_mixed(rng));
        tally.add((qubit_fidelity(&rho, &sigma)? - fidelity_oracle(&rho, &sigma)).abs());
    }
    Ok(tally.finish("qubit fidelity vs matrix square roots", 1e-10))
}

/// Run every check; each draws from its own stream derived from the seed.
pub fn run_checks(opts: &VerifyOptions) -> Result<Report, CliError> {
    let rng = |k: u64| ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k));
    let checks = vec![
        check_evolution(opts, &mut rng(1))?,
        check_marginals(opts, &mut rng(2))?,
        check_hierarchy(opts, &mut rng(3))?,
        check_hermitian_corrections(opts, &mut rng(4))?,
        check_general_propagator(opts, &mut rng(5))?,
        check_closed_form(&mut rng(6))?,
        check_limit_ode(&mut rng(7))?,
        check_fidelity(&mut rng(8))?,
    ];
    Ok(Report { seed: opts.seed, max_n: opts.max_n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let report = run_checks(&VerifyOptions::new(7, 6).unwrap()).unwrap();
        assert!(report.failures().is_empty(), "{report}");
        assert_eq!(report.checks.len(), 8);
    }

    #[test]
    fn corrupted_eigenvalues_fail_only_the_evolution_check() {
        let mut opts = VerifyOptions::new(7, 6).unwrap();
        opts.eigenvalue = corrupted_eigenvalue;
        let report = run_checks(&opts).unwrap();
        assert_eq!(report.failures(), vec!["Dicke evolution vs full Hilbert space"]);
    }

    #[test]
    fn max_n_bounds() {
        assert!(VerifyOptions::new(0, 3).is_err());
        assert!(VerifyOptions::new(0, 13).is_err());
        assert!(VerifyOptions::new(0, 12).is_ok());
    }

    #[test]
    fn nan_is_a_failure() {
        let mut t = Tally::new();
        t.add(f64::NAN);
        t.add(0.0);
        assert!(!t.finish("x", 1.0).passed());
    }
}
