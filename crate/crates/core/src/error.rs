use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("division by a zero quaternion")]
    ZeroDivision,

    #[error("non-finite component encountered")]
    NonFinite,

    #[error("matrix lacks the block symmetry of an embedded quaternion matrix (residual {residual:e})")]
    NotEmbeddable { residual: f64 },

    #[error("matrix is not Hermitian (asymmetry {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("system has no vectors")]
    EmptyFrame,

    #[error("system is not a frame (lower bound {lower_bound:e})")]
    NotAFrame { lower_bound: f64 },

    #[error("system is not a K-frame (range residual {range_residual:e})")]
    NotAKFrame { range_residual: f64 },

    #[error("system is not a K-orthonormal basis")]
    NotKOrthonormal,

    #[error("sequence is not a K-dual (residual {residual:e})")]
    NotADual { residual: f64 },

    #[error("certificate rejected: {0}")]
    CertificateInvalid(String),

    #[error("component not certified: {0}")]
    ComponentNotCertified(String),

    #[error("assertion failed: {what} (norm {norm:e})")]
    AssertionFailure { what: String, norm: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub(crate) fn dim_mismatch(what: &str, expected: usize, found: usize) -> Error {
    Error::DimensionMismatch(format!("{what}: expected {expected}, found {found}"))
}
