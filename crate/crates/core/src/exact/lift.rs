//! Restriction of `A^(N)` to the symmetric subspace.
//!
//! With the collective matrix units `E_ab = Σ_i |a⟩⟨b|_i` the lifted operator is
//!
//! ```text
//! A^(N) = Σ_ab A1[a,b] E_ab
//!       + 1/(2(N−1)) Σ_abcd A2[(a,c),(b,d)] (E_ab E_cd − δ_bc E_ad)
//! ```
//!
//! which uses the swap symmetry of `A2` to trade `Σ_{i<j}` for half of
//! `Σ_{i≠j}`. On `|N, n⟩` (n qubits in `|0⟩`) the units act as
//! `E_00 = n`, `E_11 = N − n`, `E_01|n⟩ = √((n+1)(N−n)) |n+1⟩` and
//! `E_10|n⟩ = √(n(N−n+1)) |n−1⟩`.

use num_complex::Complex64;

use crate::density::CMatrix;
use crate::error::{Error, Result};
use crate::model::ModelSpec;

/// `A^(N)` as an `(N+1) × (N+1)` matrix in the Dicke basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveOperator {
    n_particles: usize,
    matrix: CMatrix,
}

impl CollectiveOperator {
    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
}

/// Sparse `E_ab` as `(row, col, value)` triplets.
fn matrix_unit(n_particles: usize, a: usize, b: usize) -> Vec<(usize, usize, f64)> {
    let big_n = n_particles as f64;
    match (a, b) {
        (0, 0) => (0..=n_particles).map(|n| (n, n, n as f64)).collect(),
        (1, 1) => (0..=n_particles).map(|n| (n, n, big_n - n as f64)).collect(),
        (0, 1) => (0..n_particles).map(|n| (n + 1, n, ((n as f64 + 1.0) * (big_n - n as f64)).sqrt())).collect(),
        (1, 0) => (1..=n_particles).map(|n| (n - 1, n, (n as f64 * (big_n - n as f64 + 1.0)).sqrt())).collect(),
        _ => unreachable!("qubit indices are 0 or 1"),
    }
}

/// Product of two sparse units; each has at most one entry per column.
fn unit_product(lhs: &[(usize, usize, f64)], rhs: &[(usize, usize, f64)], dim: usize) -> Vec<(usize, usize, f64)> {
    let mut by_col = vec![None; dim];
    for &(r, c, v) in lhs {
        by_col[c] = Some((r, v));
    }
    rhs.iter().filter_map(|&(k, c, v)| by_col[k].map(|(r, u)| (r, c, u * v))).collect()
}

/// Swap symmetry of `A2` is guaranteed by [`ModelSpec::new`].
pub fn lift_model(model: &ModelSpec, n_particles: usize) -> Result<CollectiveOperator> {
    if n_particles < 2 {
        return Err(Error::Domain(format!("lifting needs N >= 2, got {n_particles}")));
    }
    let dim = n_particles + 1;
    let units: Vec<Vec<Vec<(usize, usize, f64)>>> =
        (0..2).map(|a| (0..2).map(|b| matrix_unit(n_particles, a, b)).collect()).collect();

    let mut m = CMatrix::zeros(dim, dim);
    let mut add = |triplets: &[(usize, usize, f64)], coeff: Complex64| {
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        for &(r, c, v) in triplets {
            m[(r, c)] += coeff * v;
        }
    };

    let a1 = model.a1();
    for a in 0..2 {
        for b in 0..2 {
            add(&units[a][b], a1[(a, b)]);
        }
    }

    let a2 = model.a2();
    let pair_scale = 0.5 / (n_particles as f64 - 1.0);
    for a in 0..2 {
        for b in 0..2 {
            for cc in 0..2 {
                for d in 0..2 {
                    let coeff = a2[(2 * a + cc, 2 * b + d)] * pair_scale;
                    if coeff == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    add(&unit_product(&units[a][b], &units[cc][d], dim), coeff);
                    if b == cc {
                        add(&units[a][d], -coeff);
                    }
                }
            }
        }
    }
    Ok(CollectiveOperator { n_particles, matrix: m })
}
