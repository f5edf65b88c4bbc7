//! The Heisenberg extensions G_L = H(ω) ⋊ ℝ, their chart and the affine
//! representation of H₅.

use crate::catalog::{l_of, omega0, SpaceSpec};
use crate::error::{Error, Result};
use crate::numeric::matrix::{form, vec_add};
use crate::numeric::{matrix_exp, Field, Matrix, Scalar};

/// `t·(z,a)`, stored as (z, a, t).
#[derive(Clone, Debug, PartialEq)]
pub struct HeisExtElement<F = Scalar> {
    pub z: F,
    pub a: Vec<F>,
    pub t: F,
}

impl<F: Field> HeisExtElement<F> {
    pub fn new(z: F, a: Vec<F>, t: F) -> Self {
        HeisExtElement { z, a, t }
    }

    pub fn identity(n: usize) -> Self {
        HeisExtElement { z: F::zero(), a: vec![F::zero(); n], t: F::zero() }
    }

    pub fn to_vec(&self) -> Vec<F> {
        let mut v = vec![self.z.clone()];
        v.extend(self.a.iter().cloned());
        v.push(self.t.clone());
        v
    }

    pub fn from_slice(x: &[F]) -> Self {
        let n = x.len();
        HeisExtElement { z: x[0].clone(), a: x[1..n - 1].to_vec(), t: x[n - 1].clone() }
    }
}

/// (z,a)·(z′,a′) = (z + z′ + ½ω(a,a′), a + a′).
pub fn heis_mul<F: Field>(omega: &Matrix<F>, x: (&F, &[F]), y: (&F, &[F])) -> (F, Vec<F>) {
    let half = F::from_ratio(1, 2);
    let z = x.0.clone() + y.0.clone() + half * form(omega, x.1, y.1);
    (z, vec_add(x.1, y.1))
}

/// G_L for L ∈ sp(a, ω).
#[derive(Clone, Debug, PartialEq)]
pub struct HeisExtGroup {
    pub l: Matrix,
    pub omega: Matrix,
}

impl HeisExtGroup {
    pub fn new(l: Matrix, omega: Matrix) -> Result<Self> {
        if !l.is_square() || l.rows() != omega.rows() || !omega.is_square() {
            return Err(Error::Dimension("L and ω must be square of equal size".into()));
        }
        let defect = l.transpose().mul(&omega).add(&omega.mul(&l));
        if defect.max_abs() > 1e-12 {
            return Err(Error::InvalidParameter("L is not in sp(ω)".into()));
        }
        Ok(HeisExtGroup { l, omega })
    }

    /// The transvection group of an X1, X2 or Y space, with ω = ω₀.
    pub fn for_spec(spec: &SpaceSpec) -> Result<Self> {
        HeisExtGroup::new(l_of(spec)?, omega0())
    }

    pub fn dim_a(&self) -> usize {
        self.l.rows()
    }

    pub fn exp_l<F: Field>(&self, t: &F) -> Matrix<F> {
        matrix_exp(&Matrix::<F>::lift(&self.l), t).expect("square")
    }

    pub fn identity<F: Field>(&self) -> HeisExtElement<F> {
        HeisExtElement::identity(self.dim_a())
    }

    /// t·(z,a) · t′·(z′,a′) = (t+t′)·((z, e^{−t′L}a)·(z′,a′)).
    pub fn mul<F: Field>(&self, x: &HeisExtElement<F>, y: &HeisExtElement<F>) -> HeisExtElement<F> {
        let a = self.exp_l(&-y.t.clone()).mul_vec(&x.a);
        let (z, a) = heis_mul(&Matrix::lift(&self.omega), (&x.z, &a), (&y.z, &y.a));
        HeisExtElement { z, a, t: x.t.clone() + y.t.clone() }
    }

    pub fn inverse<F: Field>(&self, x: &HeisExtElement<F>) -> HeisExtElement<F> {
        let a = self.exp_l(&x.t).mul_vec(&x.a);
        HeisExtElement { z: -x.z.clone(), a: a.into_iter().map(|v| -v).collect(), t: -x.t.clone() }
    }
}

/// Φ(t·(z,a)) = (z + ½⟨a₊,a₋⟩, a₋, t) for a = ℝ⁴ split as a₊ ⊕ a₋.
pub fn chart_phi<F: Field>(g: &HeisExtElement<F>) -> Vec<F> {
    let a = &g.a;
    let half = F::from_ratio(1, 2);
    let v = g.z.clone() + half * (a[0].clone() * a[2].clone() + a[1].clone() * a[3].clone());
    vec![v, a[2].clone(), a[3].clone(), g.t.clone()]
}

/// Φ⁻¹(v,x,u) = u·(v,(0,x)).
pub fn chart_phi_inverse<F: Field>(p: &[F]) -> HeisExtElement<F> {
    HeisExtElement { z: p[0].clone(), a: vec![F::zero(), F::zero(), p[1].clone(), p[2].clone()], t: p[3].clone() }
}

/// M(z,a) as a 4×4 homogeneous matrix acting on (v, x1, x2, 1).
pub fn heisenberg_affine_rep<F: Field>(z: &F, a: &[F]) -> Matrix<F> {
    let half = F::from_ratio(1, 2);
    let corner = z.clone() + half * (a[0].clone() * a[2].clone() + a[1].clone() * a[3].clone());
    let (o, i) = (F::zero(), F::one());
    Matrix::from_rows(vec![
        vec![i.clone(), a[0].clone(), a[1].clone(), corner],
        vec![o.clone(), i.clone(), o.clone(), a[2].clone()],
        vec![o.clone(), o.clone(), i.clone(), a[3].clone()],
        vec![o.clone(), o.clone(), o, i],
    ])
}

/// An automorphism (z,a,t) ↦ (s·z, S·a, s·t) of G_L, s = ±1.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisAut {
    pub s: i64,
    pub m: Matrix,
}

impl HeisAut {
    pub fn identity() -> Self {
        HeisAut { s: 1, m: Matrix::identity(4) }
    }

    /// The involution θ: s = −1, S = θ_a.
    pub fn theta() -> Self {
        HeisAut { s: -1, m: Matrix::diag_ints(&[1, 1, -1, -1]) }
    }

    /// S = diag(δ1, δ2, δ1, δ2).
    pub fn deltas(d1: i64, d2: i64) -> Self {
        HeisAut { s: 1, m: Matrix::diag_ints(&[d1, d2, d1, d2]) }
    }

    /// A ∈ O(1,1) acting by (A⁻ᵀ a₊, A a₋).
    pub fn o11(a: &Matrix, tol: &crate::numeric::Tolerance) -> Result<Self> {
        let eta = Matrix::diag_ints(&[-1, 1]);
        let defect = a.congruence(&eta).sub(&eta);
        if defect.max_abs() > tol.abs_tol {
            return Err(Error::NotInGroup("matrix is not in O(1,1)".into()));
        }
        let a_inv_t = crate::numeric::linalg::inverse(a, tol)?.transpose();
        Ok(HeisAut { s: 1, m: Matrix::block_diag(&[&a_inv_t, a]) })
    }

    pub fn compose(&self, o: &HeisAut) -> HeisAut {
        HeisAut { s: self.s * o.s, m: self.m.mul(&o.m) }
    }

    pub fn apply<F: Field>(&self, g: &HeisExtElement<F>) -> HeisExtElement<F> {
        let s = F::from_int(self.s);
        HeisExtElement { z: s.clone() * g.z.clone(), a: Matrix::<F>::lift(&self.m).mul_vec(&g.a), t: s * g.t.clone() }
    }

    pub fn is_automorphism(&self, group: &HeisExtGroup, tol: &crate::numeric::Tolerance) -> bool {
        let s = Scalar::int(self.s);
        let w = self.m.congruence(&group.omega).sub(&group.omega.scale(&s));
        let c = self.m.mul(&group.l).sub(&group.l.mul(&self.m).scale(&s));
        w.max_abs() <= tol.abs_tol && c.max_abs() <= tol.abs_tol
    }
}
