//! The experiments behind each subcommand.

use rayon::prelude::*;

use nhmf_core::asymptotics::{advance_limit_ode, find_global_maximizer, limit_marginal, RateFunction};
use nhmf_core::exact::{evolve_general, evolve_zz, marginal_normalized};
use nhmf_core::hartree::{classify_fixed_point, closed_form_zz, integrate_hartree, FixedPoint};
use nhmf_core::metrics::{convergence_infidelity, hartree_infidelity, linear_entropy, power_law_tail_fit};
use nhmf_core::{DensityMatrix, ModelSpec, QubitState};

use crate::config::ExperimentConfig;
use crate::output::{Cell, FitRecord, Table};
use crate::CliError;

pub struct ScanResult {
    pub tables: Vec<Table>,
    pub fits: Vec<FitRecord>,
}

/// Normalized one-particle marginal of the exact N-particle state.
pub fn exact_rho1(model: &ModelSpec, zz: bool, phi: &QubitState, n: usize, t: f64) -> Result<DensityMatrix, CliError> {
    let state = if zz { evolve_zz(phi, n, t)? } else { evolve_general(model, phi, n, t)? };
    Ok(marginal_normalized(&state, 1)?)
}

/// Evaluate `f(N, j, t_j)` on every grid point; result indexed `[i_n][j]`.
fn grid<T, F>(ns: &[usize], ts: &[f64], f: F) -> Result<Vec<Vec<T>>, CliError>
where
    T: Send,
    F: Fn(usize, usize, f64) -> Result<T, CliError> + Sync,
{
    let flat: Vec<T> = ns
        .par_iter()
        .flat_map_iter(|&n| ts.iter().enumerate().map(move |(j, &t)| (n, j, t)))
        .map(|(n, j, t)| f(n, j, t))
        .collect::<Result<_, _>>()?;
    let mut it = flat.into_iter();
    Ok(ns.iter().map(|_| it.by_ref().take(ts.len()).collect()).collect())
}

/// Fit `ys` against `ns`; `nan` columns and an error message on failure.
fn fit_curve(file: &str, t: f64, ns: &[usize], ys: &[f64], tail_fraction: f64) -> FitRecord {
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    match power_law_tail_fit(&xs, ys, tail_fraction) {
        Ok(fit) => FitRecord {
            file: file.into(),
            t,
            fit_a: Some(fit.amplitude_a),
            fit_b: Some(fit.exponent_b),
            residual: Some(fit.residual),
            slope_stderr: Some(fit.slope_stderr),
            n_points_used: Some(fit.n_points_used),
            error: None,
        },
        Err(e) => FitRecord {
            file: file.into(),
            t,
            fit_a: None,
            fit_b: None,
            residual: None,
            slope_stderr: None,
            n_points_used: None,
            error: Some(e.to_string()),
        },
    }
}

fn or_nan(v: Option<f64>) -> Cell {
    Cell::Float(v.unwrap_or(f64::NAN))
}

pub fn entropy_scan(cfg: &ExperimentConfig) -> Result<ScanResult, CliError> {
    let model = cfg.model.spec()?;
    let zz = cfg.model.is_zz();
    let phi = cfg.initial_state()?;
    let (ns, ts) = (cfg.particle_numbers(), cfg.times());
    let sl = grid(&ns, &ts, |n, _, t| Ok(linear_entropy(&exact_rho1(&model, zz, &phi, n, t)?)?))?;

    let mut by_t = Table::new("entropy_vs_t.csv", &["t", "N", "S_L"]);
    for (i, &n) in ns.iter().enumerate() {
        for (j, &t) in ts.iter().enumerate() {
            by_t.push(vec![t.into(), n.into(), sl[i][j].into()]);
        }
    }
    let mut by_n = Table::new("entropy_vs_N.csv", &["N", "t", "S_L", "fit_a", "fit_b"]);
    let mut fits = Vec::new();
    for (j, &t) in ts.iter().enumerate() {
        let curve: Vec<f64> = sl.iter().map(|row| row[j]).collect();
        let fit = fit_curve(by_n.file, t, &ns, &curve, cfg.tail_fraction);
        for (i, &n) in ns.iter().enumerate() {
            by_n.push(vec![n.into(), t.into(), curve[i].into(), or_nan(fit.fit_a), or_nan(fit.fit_b)]);
        }
        fits.push(fit);
    }
    Ok(ScanResult { tables: vec![by_t, by_n], fits })
}

/// Limit marginal, with the constant solution at the stable fixed points.
fn limit_rho(phi: &QubitState, t: f64) -> Result<DensityMatrix, CliError> {
    if classify_fixed_point(phi) == FixedPoint::Stable {
        return Ok(DensityMatrix::pure(phi));
    }
    Ok(limit_marginal(phi, t)?.rho)
}

pub fn hartree_scan(cfg: &ExperimentConfig) -> Result<ScanResult, CliError> {
    let model = cfg.model.spec()?;
    let zz = cfg.model.is_zz();
    let phi = cfg.initial_state()?;
    let (ns, ts) = (cfg.particle_numbers(), cfg.times());
    let per_t: Vec<(QubitState, f64)> = ts
        .par_iter()
        .map(|&t| {
            if zz {
                let hartree = closed_form_zz(&phi, t);
                Ok((hartree, hartree_infidelity(&limit_rho(&phi, t)?, &hartree)?))
            } else {
                Ok((*integrate_hartree(&model, &phi, t, cfg.dt)?.last(), f64::NAN))
            }
        })
        .collect::<Result<_, CliError>>()?;
    let values = grid(&ns, &ts, |n, j, t| Ok(hartree_infidelity(&exact_rho1(&model, zz, &phi, n, t)?, &per_t[j].0)?))?;
    let mut table = Table::new("hartree_infidelity.csv", &["N", "t", "I", "I_limit"]);
    for (i, &n) in ns.iter().enumerate() {
        for (j, &t) in ts.iter().enumerate() {
            table.push(vec![n.into(), t.into(), values[i][j].into(), per_t[j].1.into()]);
        }
    }
    Ok(ScanResult { tables: vec![table], fits: Vec::new() })
}

fn require_zz(cfg: &ExperimentConfig, what: &str) -> Result<(), CliError> {
    if !cfg.model.is_zz() {
        return Err(CliError::Config(format!("{what} is only defined for the ZZ model")));
    }
    Ok(())
}

pub fn convergence_scan(cfg: &ExperimentConfig) -> Result<ScanResult, CliError> {
    require_zz(cfg, "convergence-scan")?;
    let model = ModelSpec::zz();
    let phi = cfg.initial_state()?;
    let (ns, ts) = (cfg.particle_numbers(), cfg.times());
    let limits: Vec<DensityMatrix> = ts.par_iter().map(|&t| limit_rho(&phi, t)).collect::<Result<_, _>>()?;
    let eps =
        grid(&ns, &ts, |n, j, t| Ok(convergence_infidelity(&exact_rho1(&model, true, &phi, n, t)?, &limits[j])?))?;
    let mut table = Table::new("convergence.csv", &["N", "t", "p0", "epsilon", "fit_a", "fit_b"]);
    let mut fits = Vec::new();
    for (j, &t) in ts.iter().enumerate() {
        let curve: Vec<f64> = eps.iter().map(|row| row[j]).collect();
        let fit = fit_curve(table.file, t, &ns, &curve, cfg.tail_fraction);
        for (i, &n) in ns.iter().enumerate() {
            table.push(vec![
                n.into(),
                t.into(),
                cfg.initial_p0.into(),
                curve[i].into(),
                or_nan(fit.fit_a),
                or_nan(fit.fit_b),
            ]);
        }
        fits.push(fit);
    }
    Ok(ScanResult { tables: vec![table], fits })
}

pub fn limit_trajectory(cfg: &ExperimentConfig) -> Result<ScanResult, CliError> {
    require_zz(cfg, "limit-trajectory")?;
    let phi = cfg.initial_state()?;
    match classify_fixed_point(&phi) {
        FixedPoint::Stable => {
            return Err(CliError::Config("initial state is a stable fixed point; every curve is constant".into()))
        }
        FixedPoint::Unstable => {
            return Err(CliError::Config(
                "balanced initial state: the limit marginal turns mixed at t = 1/2 and has no wavefunction".into(),
            ))
        }
        FixedPoint::None => {}
    }
    let mut table = Table::new("limit_trajectory.csv", &["t", "x_star", "nu0_abs2", "hartree_phi0_abs2"]);
    let (mut nu, mut now) = (phi, 0.0);
    for t in cfg.times() {
        nu = advance_limit_ode(&nu, now, t, cfg.dt)?;
        now = t;
        let x_star = find_global_maximizer(&RateFunction::from_state(&phi, t)?).x_star;
        table.push(vec![t.into(), x_star.into(), nu.p0().into(), closed_form_zz(&phi, t).p0().into()]);
    }
    Ok(ScanResult { tables: vec![table], fits: Vec::new() })
}

pub fn rate_function_scan(cfg: &ExperimentConfig) -> Result<ScanResult, CliError> {
    let phi = cfg.initial_state()?;
    let ts = cfg.times();
    let denom = (cfg.x_points + 1) as f64;
    let blocks: Vec<Vec<Vec<Cell>>> = ts
        .par_iter()
        .map(|&t| {
            let rf = RateFunction::from_state(&phi, t)?;
            (1..=cfg.x_points)
                .map(|i| {
                    let x = i as f64 / denom;
                    let (f, f1, f2) = rf.eval(x)?;
                    Ok(vec![t.into(), x.into(), f.into(), f1.into(), f2.into()])
                })
                .collect::<Result<Vec<_>, CliError>>()
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new("rate_function.csv", &["t", "x", "f", "f_prime", "f_second"]);
    blocks.into_iter().flatten().for_each(|row| table.push(row));
    Ok(ScanResult { tables: vec![table], fits: Vec::new() })
}
