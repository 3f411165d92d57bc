use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const SWAP_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn pauli_x() -> Matrix2<Complex64> {
    Matrix2::new(c(0.0), c(1.0), c(1.0), c(0.0))
}

pub fn pauli_y() -> Matrix2<Complex64> {
    Matrix2::new(c(0.0), -I, I, c(0.0))
}

pub fn pauli_z() -> Matrix2<Complex64> {
    Matrix2::new(c(1.0), c(0.0), c(0.0), c(-1.0))
}

/// Two-qubit swap operator.
pub fn swap() -> Matrix4<Complex64> {
    let mut s = Matrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            s[(2 * a + b, 2 * b + a)] = c(1.0);
        }
    }
    s
}

/// Largest entry modulus of a complex matrix.
pub fn max_abs<R: nalgebra::Dim, C: nalgebra::Dim, S: nalgebra::RawStorage<Complex64, R, C>>(
    m: &nalgebra::Matrix<Complex64, R, C, S>,
) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn kron2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// One-particle operator `A1` and swap-symmetric two-particle operator `A2`
/// defining `A^(N) = Σ_i A1_i + (N−1)^{-1} Σ_{i<j} A2_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    a1: Matrix2<Complex64>,
    a2: Matrix4<Complex64>,
}

impl ModelSpec {
    pub fn new(a1: Matrix2<Complex64>, a2: Matrix4<Complex64>) -> Result<Self> {
        let s = swap();
        let defect = max_abs(&(s * a2 - a2 * s));
        if !(defect <= SWAP_TOL) {
            return Err(Error::NotSwapSymmetric(defect));
        }
        Ok(Self { a1, a2 })
    }

    /// `A1 = 0`, `A2 = i Z⊗Z`: the purely anti-Hermitian interaction.
    pub fn zz() -> Self {
        let z = pauli_z();
        Self { a1: Matrix2::zeros(), a2: kron2(&z, &z) * I }
    }

    pub fn a1(&self) -> &Matrix2<Complex64> {
        &self.a1
    }

    pub fn a2(&self) -> &Matrix4<Complex64> {
        &self.a2
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        max_abs(&(self.a1 - self.a1.adjoint())) <= tol && max_abs(&(self.a2 - self.a2.adjoint())) <= tol
    }

    /// `A1 − A1†`.
    pub fn a1_anti(&self) -> Matrix2<Complex64> {
        self.a1 - self.a1.adjoint()
    }

    /// `A2 − A2†`.
    pub fn a2_anti(&self) -> Matrix4<Complex64> {
        self.a2 - self.a2.adjoint()
    }
}
