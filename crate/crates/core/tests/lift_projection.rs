//! The symmetric-subspace operator equals the full operator projected onto
//! Dicke vectors, and the Dicke-basis propagators agree with the full one.

mod common;

use nhmf_core::density::CMatrix;
use nhmf_core::exact::{brute_force_evolve, evolve_general, lift_model, marginal_normalized, FullOperator};
use nhmf_core::ModelSpec;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Columns are `|N, n⟩` in the product basis.
fn dicke_columns(n_qubits: usize) -> CMatrix {
    let dim = 1usize << n_qubits;
    let mut binom = vec![0f64; n_qubits + 1];
    for x in 0..dim {
        binom[n_qubits - x.count_ones() as usize] += 1.0;
    }
    CMatrix::from_fn(dim, n_qubits + 1, |x, n| {
        if n_qubits - x.count_ones() as usize == n {
            Complex64::from(1.0 / binom[n].sqrt())
        } else {
            Complex64::from(0.0)
        }
    })
}

#[test]
fn projection_of_full_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in [2usize, 3, 5] {
        for _ in 0..5 {
            let model = common::random_model(&mut rng);
            let full = FullOperator::new(&model, n).unwrap().to_dense();
            let p = dicke_columns(n);
            let projected = p.adjoint() * &full * &p;
            let lifted = lift_model(&model, n).unwrap();
            assert!((&projected - lifted.matrix()).norm() < 1e-12, "N = {n}");
            let leak = (CMatrix::identity(1 << n, 1 << n) - &p * p.adjoint()) * &full * &p;
            assert!(leak.norm() < 1e-12, "symmetric subspace not invariant");
        }
    }
}

#[test]
fn general_propagator_matches_full_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [3usize, 6, 8] {
        let model = common::random_model(&mut rng);
        let phi = common::random_state(&mut rng);
        for t in [0.1, 0.6] {
            let brute = brute_force_evolve(&model, &phi, n, t).unwrap().marginal(1).unwrap().normalized().unwrap();
            let sym = marginal_normalized(&evolve_general(&model, &phi, n, t).unwrap(), 1).unwrap();
            assert!(brute.distance(&sym) < 1e-9, "N = {n}, t = {t}: {:e}", brute.distance(&sym));
        }
    }
}

#[test]
fn zz_is_a_special_case() {
    let full = FullOperator::new(&ModelSpec::zz(), 4).unwrap().to_dense();
    let i = Complex64::new(0.0, 1.0);
    for x in 0..16usize {
        let n = 4 - x.count_ones() as usize;
        let lambda = nhmf_core::exact::zz_eigenvalue(4, n).unwrap();
        assert!((full[(x, x)] - i * lambda).norm() < 1e-14);
    }
}
