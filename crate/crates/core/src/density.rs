//! Few-qubit density matrices in the product basis.
//!
//! Basis index convention: for `k` qubits the index of `|b_1 … b_k⟩` is
//! `Σ b_i 2^{k−i}`, so the first particle is the most significant bit and the
//! bit value 0 stands for `|0⟩`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::QubitState;

pub type CMatrix = DMatrix<Complex64>;

/// Hermitian tolerance used by [`DensityMatrix::validate`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// `k`-qubit density matrix (`2^k × 2^k`), normalized or not.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::DimensionMismatch { expected: dim.next_power_of_two().max(2), found: entries.ncols() });
        }
        Ok(Self { qubits: dim.trailing_zeros() as usize, entries })
    }

    pub fn pure(phi: &QubitState) -> Self {
        let v = phi.amplitudes();
        let m = CMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj());
        Self { qubits: 1, entries: m }
    }

    /// `(1/2^k)·I`.
    pub fn maximally_mixed(qubits: usize) -> Self {
        let dim = 1 << qubits;
        Self { qubits, entries: CMatrix::identity(dim, dim) / Complex64::from(dim as f64) }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Largest entrywise `|M − M†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.entries;
        let mut worst: f64 = 0.0;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Divide by the trace.
    pub fn normalized(&self) -> Result<Self> {
        let tr = self.trace();
        if tr.norm() == 0.0 || !tr.norm().is_finite() {
            return Err(Error::DegenerateState);
        }
        Ok(Self { qubits: self.qubits, entries: &self.entries / tr })
    }

    /// Check Hermiticity and unit trace.
    pub fn validate(&self, trace_tol: f64) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > trace_tol || tr.im.abs() > trace_tol {
            return Err(Error::NotNormalized(tr.re));
        }
        Ok(())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.entries + self.entries.adjoint()) * Complex64::from(0.5);
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    /// Trace out the last qubit.
    pub fn trace_last(&self) -> Result<Self> {
        if self.qubits < 2 {
            return Err(Error::Domain("cannot trace the only qubit".into()));
        }
        Ok(Self { qubits: self.qubits - 1, entries: partial_trace_tail(&self.entries, 1) })
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &DensityMatrix) -> Self {
        Self { qubits: self.qubits + other.qubits, entries: self.entries.kronecker(&other.entries) }
    }

    /// Frobenius distance.
    pub fn distance(&self, other: &DensityMatrix) -> f64 {
        (&self.entries - &other.entries).norm()
    }
}

/// Trace out the last `traced` qubits of a `2^n × 2^n` operator.
pub fn partial_trace_tail(m: &CMatrix, traced: usize) -> CMatrix {
    let tail = 1usize << traced;
    let keep = m.nrows() / tail;
    CMatrix::from_fn(keep, keep, |i, j| (0..tail).map(|r| m[(i * tail + r, j * tail + r)]).sum())
}
