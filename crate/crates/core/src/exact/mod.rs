//! Exact non-unitary evolution in the symmetric subspace and its marginals.

pub mod bbgky;
pub mod brute;
pub mod general;
pub mod lift;
pub mod marginal;
pub mod zz;

pub use bbgky::{bbgky_rhs, bbgky_terms, BbgkyTerms};
pub use brute::{brute_force_evolve, FullOperator, FullState, BRUTE_FORCE_CAP};
pub use general::{evolve_general, evolve_general_with_cap, DENSE_CAP};
pub use lift::{lift_model, CollectiveOperator};
pub use marginal::{marginal, marginal_normalized, UnnormalizedMarginal};
pub use zz::{evolve_diagonal, evolve_zz, zz_eigenvalue};
