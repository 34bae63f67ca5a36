//! Canonical forms of quaternion matrices under unitary similarity.

pub mod cmatrix;
pub mod error;
pub mod json;
pub mod littlewood;
pub mod matrix;
pub mod qr;
pub mod quaternion;
pub mod rank;
pub mod schur_real;
pub mod special_forms;
pub mod spectrum;
pub mod suite;
pub mod svd;
pub mod testkit;
pub mod tolerance;

pub use error::{Error, Result};
pub use matrix::QMatrix;
pub use quaternion::Quaternion;
pub use tolerance::Tolerance;
