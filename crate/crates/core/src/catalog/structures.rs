//! Parallel complex and para-complex structures, as derivations of the triple.

use serde::Serialize;

use super::{item_data, SpaceSpec};
use crate::lie::InvolutiveMetricLieAlgebra;
use crate::numeric::matrix::Matrix;
use crate::numeric::{Scalar, Tolerance};
use crate::report::{CheckReport, Residual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JKind {
    /// J² = −id on g₋
    Hermitian,
    /// J² = +id on g₋
    Para,
}

impl JKind {
    fn square_sign(self) -> i64 {
        match self {
            JKind::Hermitian => -1,
            JKind::Para => 1,
        }
    }
}

/// (−J_lᵀ) ⊕ 0 ⊕ J_l on l* ⊕ a ⊕ l.
fn lift(j_l: &Matrix, a_dim: usize) -> Matrix {
    let neg_t = j_l.transpose().neg();
    Matrix::block_diag(&[&neg_t, &Matrix::zeros(a_dim, a_dim), j_l])
}

pub fn hermitian_j(spec: &SpaceSpec) -> Option<Matrix> {
    match spec {
        SpaceSpec::N { .. } => Some(lift(&Matrix::from_ints(&[&[0, -1], &[1, 0]]), 1)),
        SpaceSpec::Z { .. } => {
            let (base, _, _) = item_data(spec).ok()?;
            Some(lift(&base.l.ad_basis(0), 0))
        }
        _ => None,
    }
}

pub fn para_j(spec: &SpaceSpec) -> Option<Matrix> {
    match spec {
        SpaceSpec::N { .. } => Some(lift(&Matrix::diag_ints(&[1, -1]), 1)),
        SpaceSpec::Zprime { .. } => {
            let (base, _, _) = item_data(spec).ok()?;
            Some(lift(&base.l.ad_basis(1), 0))
        }
        _ => None,
    }
}

pub fn check_j(t: &InvolutiveMetricLieAlgebra, j: &Matrix, kind: JKind, tol: &Tolerance) -> Vec<CheckReport> {
    let n = t.dim();
    let mut skew = Residual::zero();
    skew.absorb_all(j.transpose().mul(&t.gram).add(&t.gram.mul(j)).entries());
    let mut commute = Residual::zero();
    commute.absorb_all(j.mul(&t.theta).sub(&t.theta.mul(j)).entries());
    let mut plus = Residual::zero();
    for x in t.plus_basis(tol) {
        plus.absorb_all(j.mul_vec(&x).iter());
    }
    let mut square = Residual::zero();
    let j2 = j.mul(j);
    let sign = Scalar::int(kind.square_sign());
    for x in t.minus_basis(tol) {
        for (a, b) in j2.mul_vec(&x).iter().zip(&x) {
            square.absorb(&(a - &(&sign * b)));
        }
    }
    let name = match kind {
        JKind::Hermitian => "hermitian-j",
        JKind::Para => "para-j",
    };
    vec![
        CheckReport::from_residual(format!("{name}/derivation"), t.algebra.derivation_residual(j), n * n * n, tol.abs_tol),
        CheckReport::from_residual(format!("{name}/skew"), skew, n * n, tol.abs_tol),
        CheckReport::from_residual(format!("{name}/theta-commute"), commute, n * n, tol.abs_tol),
        CheckReport::from_residual(format!("{name}/kills-plus"), plus, n, tol.abs_tol),
        CheckReport::from_residual(format!("{name}/square"), square, 4, tol.abs_tol),
    ]
}
