//! Transvection groups: multiplication laws, charts on G/H and discrete
//! automorphisms.

pub mod affine;
pub mod heis;
pub mod ngroup;
pub mod roundtrip;

pub use affine::{cross_eps, gram_eps, AffineElement, OrthoGroup};
pub use heis::{chart_phi, chart_phi_inverse, heis_mul, heisenberg_affine_rep, HeisAut, HeisExtElement, HeisExtGroup};
pub use ngroup::{alpha, NGroup, NGroupElement, SlPm2};
pub use roundtrip::{structure_constants_from_group, AffineLocal, LocalGroup};

use crate::numeric::Matrix;

/// Columns: ∂z1 ↦ −σ2, ∂z2 ↦ σ1, ∂a ↦ a, ∂l_i ↦ e_i in the list basis (σ1, σ2, a, e1, e2) of N.
pub fn n_coordinate_basis() -> Matrix {
    Matrix::from_ints(&[&[0, 1, 0, 0, 0], &[-1, 0, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]])
}
