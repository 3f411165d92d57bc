//! Time derivative of the normalized one-particle marginal, written in terms of
//! the normalized one-, two- and three-particle marginals.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::density::{partial_trace_tail, CMatrix, DensityMatrix};
use crate::error::{Error, Result};
use crate::model::ModelSpec;

/// The three groups of terms in `i ∂_t ρ̂^(1)`.
#[derive(Debug, Clone)]
pub struct BbgkyTerms {
    /// One- and two-body Hartree-like terms with their norm-control traces.
    pub mean_field: CMatrix,
    /// `(N−1) Tr_2[(I ⊗ (A1 − A1†)) (ρ̂^(2) − ρ̂^(1)⊗ρ̂^(1))]`.
    pub one_body_correction: CMatrix,
    /// `(N−2)/2 Tr_23[(I ⊗ (A2 − A2†)) (ρ̂^(3) − ρ̂^(1)⊗ρ̂^(2))]`.
    pub two_body_correction: CMatrix,
}

impl BbgkyTerms {
    /// `∂_t ρ̂^(1) = −i (sum of all terms)`.
    pub fn derivative(&self) -> CMatrix {
        (&self.mean_field + &self.one_body_correction + &self.two_body_correction) * Complex64::new(0.0, -1.0)
    }
}

fn to_dyn<const R: usize>(m: &nalgebra::SMatrix<Complex64, R, R>) -> CMatrix {
    DMatrix::from_fn(R, R, |i, j| m[(i, j)])
}

fn expect_qubits(rho: &DensityMatrix, k: usize) -> Result<()> {
    if rho.qubits() != k {
        return Err(Error::DimensionMismatch { expected: 1 << k, found: rho.dim() });
    }
    Ok(())
}

/// Term-by-term evaluation from normalized marginals of a common symmetric
/// state.
///
/// The subtraction in the three-particle correction keeps `ρ̂^(1)` on the
/// first particle and `ρ̂^(2)` on the traced pair, so that it reproduces the
/// norm-control trace `Tr[(A2 − A2†) ρ̂^(2)] ρ̂^(1)`.
pub fn bbgky_terms(
    model: &ModelSpec,
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    rho3: &DensityMatrix,
    n_particles: usize,
) -> Result<BbgkyTerms> {
    expect_qubits(rho1, 1)?;
    expect_qubits(rho2, 2)?;
    expect_qubits(rho3, 3)?;
    if n_particles < 3 {
        return Err(Error::Domain(format!("the hierarchy needs N >= 3, got {n_particles}")));
    }
    let big_n = n_particles as f64;
    let a1 = to_dyn(model.a1());
    let a2 = to_dyn(model.a2());
    let b1 = to_dyn(&model.a1_anti());
    let b2 = to_dyn(&model.a2_anti());
    let r1 = rho1.matrix();
    let r2 = rho2.matrix();
    let r3 = rho3.matrix();
    let id2 = CMatrix::identity(2, 2);

    let tr_b1 = (&b1 * r1).trace();
    let tr_b2 = (&b2 * r2).trace();
    let mean_field =
        &a1 * r1 - r1 * a1.adjoint() - r1 * tr_b1 + partial_trace_tail(&(&a2 * r2 - r2 * a2.adjoint()), 1) - r1 * tr_b2;

    let factor1 = Complex64::from(big_n - 1.0);
    let one_body_correction = partial_trace_tail(&(id2.kronecker(&b1) * (r2 - r1.kronecker(r1))), 1) * factor1;

    let factor2 = Complex64::from((big_n - 2.0) / 2.0);
    let two_body_correction = partial_trace_tail(&(id2.kronecker(&b2) * (r3 - r1.kronecker(r2))), 2) * factor2;

    Ok(BbgkyTerms { mean_field, one_body_correction, two_body_correction })
}

/// `∂_t ρ̂^(1)` from the first three normalized marginals.
pub fn bbgky_rhs(
    model: &ModelSpec,
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    rho3: &DensityMatrix,
    n_particles: usize,
) -> Result<DensityMatrix> {
    DensityMatrix::from_matrix(bbgky_terms(model, rho1, rho2, rho3, n_particles)?.derivative())
}
