#![allow(dead_code)]

use nalgebra::{Matrix2, Matrix4};
use nhmf_core::model::swap;
use nhmf_core::{ModelSpec, QubitState};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random non-Hermitian model with a swap-symmetric `A2`.
pub fn random_model(rng: &mut ChaCha8Rng) -> ModelSpec {
    let a1 = Matrix2::from_fn(|_, _| random_complex(rng));
    let b = Matrix4::from_fn(|_, _| random_complex(rng));
    let s = swap();
    let a2 = (b + s * b * s) * Complex64::from(0.5);
    ModelSpec::new(a1, a2).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng) -> QubitState {
    let p0 = rng.gen_range(0.02..0.98);
    QubitState::from_populations(p0, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)).unwrap()
}
