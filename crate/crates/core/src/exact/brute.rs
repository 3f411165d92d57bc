//! Full `2^N`-dimensional propagation, used as an independent oracle for the
//! symmetric-subspace paths.

use num_complex::Complex64;

use crate::density::{partial_trace_tail, CMatrix, DensityMatrix};
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::qubit::QubitState;

pub const BRUTE_FORCE_CAP: usize = 12;

/// `A^(N)` on the full tensor-product space, stored by columns.
#[derive(Debug, Clone)]
pub struct FullOperator {
    n_qubits: usize,
    columns: Vec<Vec<(usize, Complex64)>>,
}

#[inline]
fn bit(x: usize, site: usize, n: usize) -> usize {
    (x >> (n - 1 - site)) & 1
}

#[inline]
fn with_bit(x: usize, site: usize, n: usize, value: usize) -> usize {
    let mask = 1 << (n - 1 - site);
    (x & !mask) | (value << (n - 1 - site))
}

impl FullOperator {
    pub fn new(model: &ModelSpec, n_qubits: usize) -> Result<Self> {
        if n_qubits > BRUTE_FORCE_CAP {
            return Err(Error::Capacity { requested: n_qubits, cap: BRUTE_FORCE_CAP });
        }
        if n_qubits < 2 {
            return Err(Error::Domain(format!("need N >= 2, got {n_qubits}")));
        }
        let dim = 1usize << n_qubits;
        let a1 = model.a1();
        let a2 = model.a2();
        let pair = 1.0 / (n_qubits as f64 - 1.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut columns = Vec::with_capacity(dim);
        for x in 0..dim {
            let mut entries: Vec<(usize, Complex64)> = Vec::new();
            for i in 0..n_qubits {
                let b = bit(x, i, n_qubits);
                for a in 0..2 {
                    let v = a1[(a, b)];
                    if v != zero {
                        entries.push((with_bit(x, i, n_qubits, a), v));
                    }
                }
            }
            for i in 0..n_qubits {
                for j in i + 1..n_qubits {
                    let col = 2 * bit(x, i, n_qubits) + bit(x, j, n_qubits);
                    for row in 0..4 {
                        let v = a2[(row, col)];
                        if v != zero {
                            let y = with_bit(with_bit(x, i, n_qubits, row / 2), j, n_qubits, row % 2);
                            entries.push((y, v * pair));
                        }
                    }
                }
            }
            entries.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(entries.len());
            for (y, v) in entries {
                match merged.last_mut() {
                    Some(last) if last.0 == y => last.1 += v,
                    _ => merged.push((y, v)),
                }
            }
            columns.push(merged);
        }
        Ok(Self { n_qubits, columns })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (x, col) in self.columns.iter().enumerate() {
            let vx = v[x];
            if vx == Complex64::new(0.0, 0.0) {
                continue;
            }
            for &(y, a) in col {
                out[y] += a * vx;
            }
        }
        out
    }

    /// Largest absolute column sum.
    pub fn norm_one(&self) -> f64 {
        self.columns.iter().map(|c| c.iter().map(|e| e.1.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> CMatrix {
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim, dim);
        for (x, col) in self.columns.iter().enumerate() {
            for &(y, a) in col {
                m[(y, x)] += a;
            }
        }
        m
    }

    /// `exp(−i t A) v` by a Taylor series on sub-steps with `‖t A‖₁ / m <= ½`.
    pub fn propagate(&self, v: &[Complex64], t: f64) -> Vec<Complex64> {
        let steps = ((self.norm_one() * t.abs()) / 0.5).ceil().max(1.0) as usize;
        let tau = t / steps as f64;
        let mut state = v.to_vec();
        for _ in 0..steps {
            let mut term = state.clone();
            let mut acc = state.clone();
            for order in 1..=60 {
                let next = self.apply(&term);
                let coeff = Complex64::new(0.0, -tau / order as f64);
                term = next.into_iter().map(|z| z * coeff).collect();
                let mut term_norm = 0.0;
                let mut acc_norm = 0.0;
                for (a, z) in acc.iter_mut().zip(&term) {
                    *a += z;
                    term_norm += z.norm_sqr();
                    acc_norm += a.norm_sqr();
                }
                if term_norm <= 1e-34 * acc_norm {
                    break;
                }
            }
            state = acc;
        }
        state
    }
}

/// Full `N`-qubit state vector.
#[derive(Debug, Clone)]
pub struct FullState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl FullState {
    /// `|φ⟩^{⊗N}`.
    pub fn product(phi: &QubitState, n_qubits: usize) -> Self {
        let v = phi.amplitudes();
        let amplitudes =
            (0..1usize << n_qubits).map(|x| (0..n_qubits).map(|i| v[bit(x, i, n_qubits)]).product()).collect();
        Self { n_qubits, amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Unnormalized marginal of the first `k` qubits.
    pub fn marginal(&self, k: usize) -> Result<DensityMatrix> {
        if k == 0 || k >= self.n_qubits {
            return Err(Error::Domain(format!("marginal order {k} out of range for N = {}", self.n_qubits)));
        }
        let tail = 1usize << (self.n_qubits - k);
        let keep = 1usize << k;
        let psi = &self.amplitudes;
        let m =
            CMatrix::from_fn(keep, keep, |i, j| (0..tail).map(|r| psi[i * tail + r] * psi[j * tail + r].conj()).sum());
        DensityMatrix::from_matrix(m)
    }

    /// Full `|Ψ⟩⟨Ψ|`; only sensible for small `N`.
    pub fn density(&self) -> CMatrix {
        let dim = self.amplitudes.len();
        CMatrix::from_fn(dim, dim, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }

    /// Partial trace of the full density matrix, the slow way.
    pub fn marginal_via_density(&self, k: usize) -> Result<DensityMatrix> {
        DensityMatrix::from_matrix(partial_trace_tail(&self.density(), self.n_qubits - k))
    }
}

/// Propagate `|φ⟩^{⊗N}` under the full operator for `N <= 12`.
pub fn brute_force_evolve(model: &ModelSpec, phi: &QubitState, n_qubits: usize, t: f64) -> Result<FullState> {
    let op = FullOperator::new(model, n_qubits)?;
    let initial = FullState::product(phi, n_qubits);
    Ok(FullState { n_qubits, amplitudes: op.propagate(&initial.amplitudes, t) })
}
