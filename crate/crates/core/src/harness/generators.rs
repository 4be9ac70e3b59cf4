//! Random quaternionic objects with i.i.d. standard normal components.

use super::rng::QRng;
use super::GenConfig;
use crate::frames::FrameSystem;
use crate::linalg::{gram_schmidt, pinv, QMatrix, QVector};
use crate::quaternion::Quaternion;
use crate::superspace::SuperFrame;

pub fn gen_quaternion(rng: &mut QRng) -> Quaternion {
    Quaternion::new(rng.normal(), rng.normal(), rng.normal(), rng.normal())
}

pub fn gen_vector(rng: &mut QRng, n: usize) -> QVector {
    (0..n).map(|_| gen_quaternion(rng)).collect()
}

pub fn gen_matrix(rng: &mut QRng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| gen_quaternion(rng))
}

/// `m` vectors in `ℍⁿ`; a frame with probability one when `m ≥ n`.
pub fn gen_frame(rng: &mut QRng, n: usize, m: usize) -> FrameSystem {
    FrameSystem::from_synthesis(&gen_matrix(rng, n, m)).expect("m ≥ 1")
}

/// `m` vectors drawn from a random subspace of `ℍⁿ` of dimension `r`.
pub fn gen_low_rank_frame(rng: &mut QRng, n: usize, m: usize, r: usize) -> FrameSystem {
    let t = &gen_matrix(rng, n, r) * &gen_matrix(rng, r, m);
    FrameSystem::from_synthesis(&t).expect("m ≥ 1")
}

/// A frame of length `cfg.m` in `ℍ^{n1}` and `K = T·X0` for random `X0`.
pub fn gen_kframe_instance(rng: &mut QRng, cfg: &GenConfig) -> (FrameSystem, QMatrix) {
    let f = gen_frame(rng, cfg.n1, cfg.m);
    let k = f.synthesis() * &gen_matrix(rng, cfg.m, cfg.n1);
    (f, k)
}

/// `K = T·X0 + E` with `E ⊥ R(T)` and `‖E‖ = ‖T·X0‖ / 2` (or `1` when
/// `T·X0 = 0`), so the part of `K` outside `R(T)` has relative size at
/// least `1/3`. Requires `rank(T) < n`.
pub fn gen_outside_range(rng: &mut QRng, t: &QMatrix) -> QMatrix {
    let (n, m) = t.shape();
    let k0 = t * &gen_matrix(rng, m, n);
    let proj = QMatrix::identity(n).try_sub(&(t * &pinv(t, None))).expect("square");
    let e = &proj * &gen_matrix(rng, n, n);
    let size = if k0.op_norm() > 0.0 { 0.5 * k0.op_norm() } else { 1.0 };
    let ratio = size / e.op_norm();
    &k0 + &e.scale(ratio)
}

pub fn gen_hermitian(rng: &mut QRng, n: usize) -> QMatrix {
    let g = gen_matrix(rng, n, n);
    (&g + &g.adjoint()).scale(0.5)
}

/// Orthonormal columns spanning a random `r`-dimensional subspace.
pub fn gen_orthonormal(rng: &mut QRng, n: usize, r: usize) -> Vec<QVector> {
    loop {
        let vs: Vec<QVector> = (0..r).map(|_| gen_vector(rng, n)).collect();
        let z = gram_schmidt(&vs);
        if z.len() == r {
            return z;
        }
    }
}

pub fn gen_unitary(rng: &mut QRng, n: usize) -> QMatrix {
    QMatrix::from_columns(n, &gen_orthonormal(rng, n, n)).expect("n-vectors")
}

/// Components supported on disjoint coefficient slots: `{u_i}` lives on
/// `0..split`, `{v_i}` on `split..m`.
pub fn gen_disjoint_pair(rng: &mut QRng, n1: usize, n2: usize, m: usize, split: usize) -> (FrameSystem, FrameSystem) {
    let mut t1 = gen_matrix(rng, n1, m);
    let mut t2 = gen_matrix(rng, n2, m);
    for c in 0..m {
        let (zero, rows) = if c < split { (&mut t2, n2) } else { (&mut t1, n1) };
        for r in 0..rows {
            zero[(r, c)] = Quaternion::ZERO;
        }
    }
    (FrameSystem::from_synthesis(&t1).expect("m ≥ 1"), FrameSystem::from_synthesis(&t2).expect("m ≥ 1"))
}

/// `I − T⁺T`, the projection onto `N(T)`.
pub fn null_projection(t: &QMatrix) -> QMatrix {
    QMatrix::identity(t.cols()).try_sub(&(&pinv(t, None) * t)).expect("square")
}

/// A super frame with `K1 = T1·P_{N(T2)}·Y1` and `K2 = T2·P_{N(T1)}·Y2`, so
/// that `K1⊕K2 = T·X` for the combined synthesis `T`.
pub fn gen_certified_super(rng: &mut QRng, cfg: &GenConfig) -> (SuperFrame, QMatrix, QMatrix) {
    let fu = gen_frame(rng, cfg.n1, cfg.m);
    let fv = gen_frame(rng, cfg.n2, cfg.m);
    let k1 = &(fu.synthesis() * &null_projection(fv.synthesis())) * &gen_matrix(rng, cfg.m, cfg.n1);
    let k2 = &(fv.synthesis() * &null_projection(fu.synthesis())) * &gen_matrix(rng, cfg.m, cfg.n2);
    (SuperFrame::new(fu, fv).expect("equal lengths"), k1, k2)
}
