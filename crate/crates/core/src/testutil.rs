use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{vector_norm, ComplexMatrix, C64};
use crate::quantum;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[track_caller]
pub fn assert_close(actual: f64, expected: f64, tol: f64) {
    assert!(
        (actual - expected).abs() <= tol,
        "expected {expected}, got {actual} (|diff| = {:e} > {tol:e})",
        (actual - expected).abs()
    );
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    quantum::gaussian_matrix(rows, cols, rng)
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    random_matrix(rng, d, d).hermitian_part()
}

pub fn random_psd(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    let g = random_matrix(rng, d, d);
    (&g * &g.adjoint()).hermitian_part()
}

pub fn vector_norm_of(v: &[C64]) -> f64 {
    vector_norm(v)
}

pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    quantum::random_unitary(d, rng)
}

pub fn random_density(rng: &mut ChaCha8Rng, d: usize) -> quantum::DensityMatrix {
    quantum::random_density(d, rng)
}

pub fn random_povm(rng: &mut ChaCha8Rng, d: usize, n: usize) -> quantum::Povm {
    quantum::random_povm(d, n, rng).unwrap()
}
