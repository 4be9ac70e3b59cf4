//! Seeded fixtures shared by the benchmarks.

use qframe_core::harness::{gen_hermitian, gen_kframe_instance, gen_matrix, GenConfig, QRng};
use qframe_core::{FrameSystem, QMatrix};

pub const SEED: u64 = 7;

/// A random `rows × cols` operator.
pub fn matrix(rows: usize, cols: usize) -> QMatrix {
    gen_matrix(&mut QRng::new(SEED), rows, cols)
}

pub fn hermitian(n: usize) -> QMatrix {
    gen_hermitian(&mut QRng::new(SEED), n)
}

/// A K-frame of `m` vectors in ℍⁿ with `K = TX`.
pub fn kframe(n: usize, m: usize) -> (FrameSystem, QMatrix) {
    let cfg = GenConfig { seed: SEED, n1: n, m, ..GenConfig::default() };
    gen_kframe_instance(&mut QRng::new(SEED), &cfg)
}
