//! Frame and K-frame theory over finite-dimensional quaternionic Hilbert
//! spaces ℍⁿ: quaternion arithmetic, right-linear operators, Douglas
//! factorization, K-duals, minimality, direct-sum (super) frames and a
//! seeded harness that exercises every result on random instances.

pub mod error;
pub mod frames;
pub mod harness;
pub mod json;
pub mod linalg;
pub mod quaternion;
pub mod superspace;

pub use error::{Error, Result};
pub use frames::{FrameBounds, FrameSystem, KFrameReport};
pub use linalg::{inner, QMatrix, QVector};
pub use quaternion::Quaternion;
pub use superspace::{SuperFrame, SuperVector};
