//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nhmf_core::asymptotics::{find_global_maximizer, integrate_limit_ode, limit_marginal, limit_ode_rhs, RateFunction};
use nhmf_core::exact::{bbgky_rhs, brute_force_evolve, evolve_zz, marginal_normalized};
use nhmf_core::hartree::{closed_form_zz, hartree_rhs, integrate_hartree, DEFAULT_DT};
use nhmf_core::metrics::{convergence_infidelity, hartree_infidelity, linear_entropy, power_law_tail_fit};
use nhmf_core::{DensityMatrix, ModelSpec, QubitState};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn exact_rho1(phi: &QubitState, n: usize, t: f64) -> DensityMatrix {
    marginal_normalized(&evolve_zz(phi, n, t).unwrap(), 1).unwrap()
}

fn log_spaced(lo: f64, hi: f64, points: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..points)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (points - 1) as f64).exp().round() as usize)
        .collect();
    v.dedup();
    v
}

fn generic_state(rng: &mut ChaCha8Rng) -> QubitState {
    loop {
        let p0: f64 = rng.gen_range(0.05..0.95);
        if (p0 - 0.5).abs() > 0.02 {
            return QubitState::from_populations(p0, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)).unwrap();
        }
    }
}

/// `ε(N)` against the limit and its tail fit over `N ∈ [10², 10⁵]`.
fn convergence_exponent(phi: &QubitState, t: f64) -> (f64, f64) {
    let limit = limit_marginal(phi, t).unwrap().rho;
    let ns = log_spaced(1e2, 1e5, 40);
    let eps: Vec<f64> = ns.iter().map(|&n| convergence_infidelity(&exact_rho1(phi, n, t), &limit).unwrap()).collect();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let fit = power_law_tail_fit(&xs, &eps, 0.2).unwrap();
    (fit.exponent_b, *eps.last().unwrap())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let states: Vec<QubitState> = (0..20)
        .map(|_| {
            QubitState::from_populations(rng.gen_range(0.0..1.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
                .unwrap()
        })
        .collect();
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        for &t in &[0.1, 0.5, 1.0, 2.0] {
            for phi in &states {
                let brute = brute_force_evolve(&ModelSpec::zz(), phi, n, t).unwrap();
                let full = brute.marginal(1).unwrap().normalized().unwrap();
                worst = worst.max(full.distance(&exact_rho1(phi, n, t)));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed < Duration::from_secs(60),
        format!("max Frobenius distance {worst:.2e} over 720 runs in {:.1}s", elapsed.as_secs_f64()),
    )
}

fn bbgky_consistency() -> Outcome {
    let dt = 1e-5;
    let mut worst: f64 = 0.0;
    let phis =
        [QubitState::from_populations(0.64, 0.3, -0.2).unwrap(), QubitState::from_populations(0.3, 1.1, 0.4).unwrap()];
    for phi in &phis {
        for n in [4usize, 6, 8] {
            for t in [0.2, 0.6, 1.2] {
                let s = evolve_zz(phi, n, t).unwrap();
                let [r1, r2, r3] = [1, 2, 3].map(|k| marginal_normalized(&s, k).unwrap());
                let rhs = bbgky_rhs(&ModelSpec::zz(), &r1, &r2, &r3, n).unwrap();
                let plus = exact_rho1(phi, n, t + dt);
                let minus = exact_rho1(phi, n, t - dt);
                for i in 0..2 {
                    for j in 0..2 {
                        let fd = (plus.get(i, j) - minus.get(i, j)) / Complex64::from(2.0 * dt);
                        worst = worst.max((rhs.get(i, j) - fd).norm());
                    }
                }
            }
        }
    }
    outcome(worst <= 1e-6, format!("max entrywise deviation {worst:.2e}"))
}

fn hartree_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    let mut drift: f64 = 0.0;
    for _ in 0..10 {
        let phi = generic_state(&mut rng);
        let traj = integrate_hartree(&ModelSpec::zz(), &phi, 2.0, DEFAULT_DT).unwrap();
        let end = traj.last();
        let exact = closed_form_zz(&phi, 2.0);
        worst = worst.max((end.c0() - exact.c0()).norm()).max((end.c1() - exact.c1()).norm());
        drift = drift.max(traj.max_norm_correction);
    }
    outcome(worst <= 1e-8 && drift <= 1e-10, format!("max component error {worst:.2e}, max norm drift {drift:.2e}"))
}

fn limit_law() -> Outcome {
    let phi = QubitState::from_populations(0.64, 0.0, 0.0).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for t in [0.25, 1.0] {
        let (b, eps_top) = convergence_exponent(&phi, t);
        pass &= eps_top <= 1e-4 && (-1.15..=-0.85).contains(&b);
        parts.push(format!("t={t}: eps(1e5)={eps_top:.2e}, b={b:.4}"));
    }
    outcome(pass, parts.join("; "))
}

fn hartree_breakdown() -> Outcome {
    let phi = QubitState::from_populations(0.64, 0.0, 0.0).unwrap();
    let t = 1.0;
    let hartree = closed_form_zz(&phi, t);
    let predicted = hartree_infidelity(&limit_marginal(&phi, t).unwrap().rho, &hartree).unwrap();
    let observed = hartree_infidelity(&exact_rho1(&phi, 100_000, t), &hartree).unwrap();
    outcome(
        (observed - predicted).abs() <= 1e-3 && predicted > 1e-2,
        format!("I(1e5) = {observed:.6}, predicted limit {predicted:.6}"),
    )
}

fn mixedness_transition() -> Outcome {
    let phi = QubitState::from_populations(0.5, 0.0, 0.0).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for t in [0.1, 0.3, 0.5] {
        let sl = linear_entropy(&limit_marginal(&phi, t).unwrap().rho).unwrap();
        pass &= sl.abs() < 1e-15;
        parts.push(format!("t={t}: S_L^lim={sl:.1e}"));
    }
    for t in [0.6, 1.0, 2.0] {
        let lim = limit_marginal(&phi, t).unwrap();
        let x = lim.maximizer.x_star;
        let predicted = 0.5 - 2.0 * x * (1.0 - x);
        let sl = linear_entropy(&lim.rho).unwrap();
        let exact = linear_entropy(&exact_rho1(&phi, 100_000, t)).unwrap();
        pass &= predicted > 0.0 && (sl - predicted).abs() < 1e-14 && (exact - predicted).abs() <= 1e-3;
        parts.push(format!("t={t}: predicted {predicted:.6}, exact(1e5) {exact:.6}"));
    }
    let late = linear_entropy(&exact_rho1(&phi, 100_000, 5.0)).unwrap();
    pass &= (0.5 - late).abs() <= 1e-2;
    parts.push(format!("t=5: exact(1e5) {late:.8}"));
    outcome(pass, parts.join("; "))
}

fn exceptional_rate() -> Outcome {
    let phi = QubitState::from_populations(0.5, 0.0, 0.0).unwrap();
    let (b_late, _) = convergence_exponent(&phi, 1.0);
    let (b_early, _) = convergence_exponent(&phi, 0.3);
    outcome(
        (-2.2..=-1.8).contains(&b_late) && (-1.15..=-0.85).contains(&b_early),
        format!("t=1: b={b_late:.4}; t=0.3: b={b_early:.4}"),
    )
}

fn limit_ode_equivalence() -> Outcome {
    let mut worst_track: f64 = 0.0;
    let mut worst_rhs: f64 = 0.0;
    for p0 in [0.3, 0.64, 0.8] {
        let phi = QubitState::from_populations(p0, 0.4, -0.7).unwrap();
        let traj = integrate_limit_ode(&phi, 2.0, DEFAULT_DT).unwrap();
        for (t, nu) in traj.times.iter().zip(&traj.states).step_by(10) {
            let rf = RateFunction::from_state(&phi, *t).unwrap();
            worst_track = worst_track.max((nu.p1() - find_global_maximizer(&rf).x_star).abs());
        }
        let a = limit_ode_rhs(&phi, 0.0).unwrap();
        let b = hartree_rhs(&ModelSpec::zz(), &phi);
        worst_rhs = worst_rhs.max((a[0] - b[0]).norm()).max((a[1] - b[1]).norm());
    }
    outcome(
        worst_track <= 1e-8 && worst_rhs <= 1e-12,
        format!("max |x* - |nu1|^2| {worst_track:.2e}, t=0 RHS difference {worst_rhs:.2e}"),
    )
}

fn fixed_point_exactness() -> Outcome {
    let phi = QubitState::ZERO_KET;
    let mut worst: f64 = 0.0;
    for n in [2usize, 100, 100_000] {
        for t in [0.0, 1.0, 10.0] {
            let rho = exact_rho1(&phi, n, t);
            let sl = linear_entropy(&rho).unwrap();
            let i = hartree_infidelity(&rho, &closed_form_zz(&phi, t)).unwrap();
            worst = worst.max(sl.abs()).max(i.abs());
        }
    }
    outcome(worst < 1e-14, format!("max |S_L|, |I| = {worst:.1e}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence (exact dynamics)", oracle_equivalence),
        ("hierarchy consistency", bbgky_consistency),
        ("Hartree closed form", hartree_closed_form),
        ("limit-law agreement", limit_law),
        ("Hartree breakdown", hartree_breakdown),
        ("mixedness transition", mixedness_transition),
        ("exceptional-case convergence rate", exceptional_rate),
        ("limit-ODE equivalence", limit_ode_equivalence),
        ("fixed-point exactness", fixed_point_exactness),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("{tag}  {name}: {} [{:.1}s]", result.detail, start.elapsed().as_secs_f64());
        if !result.pass {
            failures += 1;
        }
    }
    if failures == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
