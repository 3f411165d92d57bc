//! Exact and mean-field dynamics of `N` bosonic qubits under non-Hermitian
//! mean-field Hamiltonians.
//!
//! The crate evolves symmetric product states exactly in the Dicke basis
//! (log-domain amplitudes, so `N` can reach `10^6`), extracts few-particle
//! marginals, integrates the non-Hermitian Hartree equation, and evaluates the
//! large-`N` limit of the one-particle marginal obtained by Laplace's method.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod density;
pub mod dicke;
pub mod error;
pub mod exact;
pub mod hartree;
pub mod logcomplex;
pub mod metrics;
pub mod model;
pub mod ode;
pub mod qubit;
pub mod special;

pub use density::DensityMatrix;
pub use dicke::{product_state, DickeState};
pub use error::{Error, Result};
pub use logcomplex::{log_sum_exp_complex, LogComplex};
pub use model::ModelSpec;
pub use qubit::QubitState;
pub use special::dicke_log_binomial;
