//! Right ℍ-module vectors, right ℍ-linear operators and the numerical
//! backbone built on the complex adjoint embedding.

mod eigen;
mod embed;
mod matrix;
mod subspace;
mod svd;
mod vector;

pub use eigen::{hermitian_eig, hermitian_eigenvalues, jacobi_hermitian, HermitianEigen};
pub use embed::{embed, embed_vector, unembed, unembed_vector, ComplexMatrix};
pub use matrix::QMatrix;
pub use subspace::{
    gram_schmidt, inclusion_residual, orth_complement, psd_geq, span_distance, subspace_equal, SubspaceTest,
};
pub use svd::{default_rank_tol, null_basis, pinv, range_basis, rank, svd, svd_with_cutoff, Svd};
pub use vector::{inner, QVector};

/// Relative asymmetry tolerated by Hermitian-only routines.
pub const HERMITIAN_TOL: f64 = 1e-10;
