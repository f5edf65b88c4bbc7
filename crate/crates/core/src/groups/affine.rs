//! ℝ³ ⋊ (pseudo-)orthogonal groups acting on the Z and Z′ models.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{linalg, Field, Matrix, Scalar, Tolerance};

/// Matrix groups preserving diag(ε,1,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrthoGroup {
    SO3,
    O3,
    SO012,
    OPlus12,
    O12,
}

impl OrthoGroup {
    pub fn eps(self) -> i64 {
        match self {
            OrthoGroup::SO3 | OrthoGroup::O3 => 1,
            _ => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrthoGroup::SO3 => "SO(3)",
            OrthoGroup::O3 => "O(3)",
            OrthoGroup::SO012 => "SO0(1,2)",
            OrthoGroup::OPlus12 => "O+(1,2)",
            OrthoGroup::O12 => "O(1,2)",
        }
    }

    pub fn contains(self, a: &Matrix, tol: &Tolerance) -> bool {
        let g = gram_eps(self.eps());
        if a.rows() != 3 || a.cols() != 3 || a.congruence(&g).sub(&g).max_abs() > tol.abs_tol + tol.rel_tol * a.max_abs().powi(2) {
            return false;
        }
        let det = linalg::det(a).sign();
        let future = a[(0, 0)].sign() > 0;
        match self {
            OrthoGroup::SO3 => det > 0,
            OrthoGroup::O3 | OrthoGroup::O12 => true,
            OrthoGroup::SO012 => det > 0 && future,
            OrthoGroup::OPlus12 => future,
        }
    }
}

/// diag(ε,1,1).
pub fn gram_eps(eps: i64) -> Matrix {
    Matrix::diag_ints(&[eps, 1, 1])
}

/// e1 ×_ε e2 = e3, e2 ×_ε e3 = εe1, e3 ×_ε e1 = e2.
pub fn cross_eps<F: Field>(eps: i64, u: &[F], v: &[F]) -> Vec<F> {
    vec![
        F::from_int(eps) * (u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone()),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ]
}

/// (b, A) with composition (b1,A1)(b2,A2) = (b1 + |A1|A1b2, A1A2).
#[derive(Clone, Debug, PartialEq)]
pub struct AffineElement<F = Scalar> {
    pub b: Vec<F>,
    pub a: Matrix<F>,
}

impl<F: Field> AffineElement<F> {
    pub fn new(b: Vec<F>, a: Matrix<F>) -> Self {
        AffineElement { b, a }
    }

    pub fn identity() -> Self {
        AffineElement { b: vec![F::zero(); 3], a: Matrix::identity(3) }
    }

    /// |A| = ±1, read off the sign of the determinant.
    pub fn det_sign(&self) -> F {
        F::from_int(linalg::det(&self.a).sign() as i64)
    }

    pub fn mul(&self, o: &AffineElement<F>) -> AffineElement<F> {
        let ab = self.a.mul_vec(&o.b);
        let d = self.det_sign();
        AffineElement {
            b: self.b.iter().zip(&ab).map(|(x, y)| x.clone() + d.clone() * y.clone()).collect(),
            a: self.a.mul(&o.a),
        }
    }

    /// (−|A|A⁻¹b, A⁻¹) with A⁻¹ = G⁻¹AᵀG.
    pub fn inverse(&self, eps: i64) -> AffineElement<F> {
        let g = Matrix::<F>::lift(&gram_eps(eps));
        let inv = g.mul(&self.a.transpose()).mul(&g);
        let d = self.det_sign();
        let ib = inv.mul_vec(&self.b);
        AffineElement { b: ib.into_iter().map(|x| -(d.clone() * x)).collect(), a: inv }
    }

    /// (v,u) ↦ (Av + b ×_ε Au, Au).
    pub fn act(&self, eps: i64, v: &[F], u: &[F]) -> (Vec<F>, Vec<F>) {
        let au = self.a.mul_vec(u);
        let cross = cross_eps(eps, &self.b, &au);
        let av = self.a.mul_vec(v);
        (av.iter().zip(&cross).map(|(x, y)| x.clone() + y.clone()).collect(), au)
    }

    pub fn act_point(&self, eps: i64, p: &[F]) -> Vec<F> {
        let (v, u) = self.act(eps, &p[0..3], &p[3..6]);
        v.into_iter().chain(u).collect()
    }
}

impl AffineElement<Scalar> {
    pub fn checked(b: Vec<Scalar>, a: Matrix, group: OrthoGroup, tol: &Tolerance) -> Result<Self> {
        if b.len() != 3 {
            return Err(Error::Dimension("b must have 3 entries".into()));
        }
        if !group.contains(&a, tol) {
            return Err(Error::NotInGroup(format!("A is not in {}", group.name())));
        }
        Ok(AffineElement { b, a })
    }
}
