//! Scalars, small dense matrices, bilinear forms, matrix exponential and
//! forward-mode differentiation.

pub mod expm;
pub mod field;
pub mod form;
pub mod jacobian;
pub mod linalg;
pub mod matrix;
pub mod scalar;

pub use expm::matrix_exp;
pub use field::{Dual, Field};
pub use form::{signature, Signature, SymBilinearForm};
pub use jacobian::{central_difference_jacobian, jacobian, SmoothMap};
pub use matrix::Matrix;
pub use scalar::{Scalar, Tolerance};
