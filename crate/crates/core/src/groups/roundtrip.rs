//! Structure constants recovered from a group law.
//!
//! For curves x(s), y(t) through the identity, the mixed second derivative of
//! x(s)y(t)x(s)⁻¹y(t)⁻¹ at 0 is the bracket of their tangents. Evaluating the
//! commutator over nested duals (ε₁² = ε₂² = 0) isolates that coefficient
//! exactly when the group law is rational.

use super::affine::AffineElement;
use super::heis::{HeisExtElement, HeisExtGroup};
use super::ngroup::{NGroup, NGroupElement};
use crate::error::Result;
use crate::lie::{coords_in, LieAlgebra};
use crate::numeric::{Dual, Field, Matrix, Scalar, Tolerance};

type D2 = Dual<Dual<Scalar>>;

/// A group law written on some flat encoding of its elements.
pub trait LocalGroup {
    fn lie_dim(&self) -> usize;
    /// An encoded curve through the identity with tangent the i-th basis vector.
    fn curve<F: Field>(&self, i: usize, s: &F) -> Vec<F>;
    fn mul<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F>;
    fn inv<F: Field>(&self, x: &[F]) -> Vec<F>;
    /// Linear map from a tangent vector in the encoding to Lie algebra coordinates.
    fn readout(&self, tangent: &[Scalar], tol: &Tolerance) -> Result<Vec<Scalar>>;
}

pub fn structure_constants_from_group<G: LocalGroup>(g: &G, tol: &Tolerance) -> Result<LieAlgebra> {
    let n = g.lie_dim();
    let e1 = D2::new(Dual::constant(Scalar::int(0)), Dual::constant(Scalar::int(1)));
    let e2 = D2::constant(Dual::variable(Scalar::int(0)));
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = g.curve(i, &e1);
            let y = g.curve(j, &e2);
            let xy = g.mul(&x, &y);
            let c = g.mul(&g.mul(&xy, &g.inv(&x)), &g.inv(&y));
            let mixed: Vec<Scalar> = c.iter().map(|d| d.eps.eps.clone()).collect();
            brackets.push((i, j, g.readout(&mixed, tol)?));
        }
    }
    LieAlgebra::from_brackets(n, &brackets)
}

fn coordinate_curve<F: Field>(n: usize, i: usize, s: &F) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = s.clone();
    v
}

/// Coordinates (z, a, t); tangent basis ∂z, ∂a_i, ∂t.
impl LocalGroup for HeisExtGroup {
    fn lie_dim(&self) -> usize {
        self.dim_a() + 2
    }
    fn curve<F: Field>(&self, i: usize, s: &F) -> Vec<F> {
        coordinate_curve(self.lie_dim(), i, s)
    }
    fn mul<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F> {
        HeisExtGroup::mul(self, &HeisExtElement::from_slice(x), &HeisExtElement::from_slice(y)).to_vec()
    }
    fn inv<F: Field>(&self, x: &[F]) -> Vec<F> {
        self.inverse(&HeisExtElement::from_slice(x)).to_vec()
    }
    fn readout(&self, tangent: &[Scalar], _: &Tolerance) -> Result<Vec<Scalar>> {
        Ok(tangent.to_vec())
    }
}

/// Coordinates (z, a, l); tangent basis ∂z1, ∂z2, ∂a, ∂l1, ∂l2.
impl LocalGroup for NGroup {
    fn lie_dim(&self) -> usize {
        5
    }
    fn curve<F: Field>(&self, i: usize, s: &F) -> Vec<F> {
        coordinate_curve(5, i, s)
    }
    fn mul<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F> {
        NGroup::mul(self, &NGroupElement::from_slice(x), &NGroupElement::from_slice(y)).to_vec()
    }
    fn inv<F: Field>(&self, x: &[F]) -> Vec<F> {
        self.inverse(&NGroupElement::from_slice(x)).to_vec()
    }
    fn readout(&self, tangent: &[Scalar], _: &Tolerance) -> Result<Vec<Scalar>> {
        Ok(tangent.to_vec())
    }
}

/// ℝ³ ⋊ SO(diag(ε,1,1)) encoded as (b, A row-major); tangent basis
/// (e_i, 0) then (0, ad(e_k)) for the algebra `l` acting by ad.
#[derive(Clone, Debug)]
pub struct AffineLocal {
    pub eps: i64,
    pub l: LieAlgebra,
}

impl AffineLocal {
    fn split<F: Field>(x: &[F]) -> AffineElement<F> {
        AffineElement::new(x[0..3].to_vec(), Matrix::from_vec(3, 3, x[3..12].to_vec()).expect("3×3"))
    }
    fn join<F: Field>(g: AffineElement<F>) -> Vec<F> {
        g.b.into_iter().chain(g.a.entries().iter().cloned()).collect()
    }
}

impl LocalGroup for AffineLocal {
    fn lie_dim(&self) -> usize {
        6
    }
    fn curve<F: Field>(&self, i: usize, s: &F) -> Vec<F> {
        if i < 3 {
            Self::join(AffineElement::new(coordinate_curve(3, i, s), Matrix::identity(3)))
        } else {
            // I + sW is exp(sW) once s² = 0
            let w = Matrix::<F>::lift(&self.l.ad_basis(i - 3)).scale(s);
            Self::join(AffineElement::new(vec![F::zero(); 3], Matrix::identity(3).add(&w)))
        }
    }
    fn mul<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F> {
        Self::join(Self::split(x).mul(&Self::split(y)))
    }
    fn inv<F: Field>(&self, x: &[F]) -> Vec<F> {
        Self::join(Self::split(x).inverse(self.eps))
    }
    fn readout(&self, tangent: &[Scalar], tol: &Tolerance) -> Result<Vec<Scalar>> {
        let cols: Vec<Vec<Scalar>> = (0..3).map(|k| self.l.ad_basis(k).entries().to_vec()).collect();
        let w = coords_in(&Matrix::from_cols(&cols), &tangent[3..12], tol)?;
        Ok(tangent[0..3].iter().cloned().chain(w).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dc_isomorphism, full_grid, heis_presentation, item_data, SpaceSpec};

    #[test]
    fn heisenberg_groups_recover_their_triples() {
        let tol = Tolerance::default();
        for spec in full_grid().into_iter().filter(|s| s.family().is_heisenberg() && s.is_exact()) {
            let g = HeisExtGroup::for_spec(&spec).unwrap();
            let got = structure_constants_from_group(&g, &tol).unwrap();
            let map = heis_presentation(&spec, &tol).unwrap();
            assert!(got.difference(&map.source.algebra).is_exact_zero(), "{spec}");
        }
    }

    #[test]
    fn n_group_recovers_triple() {
        let tol = Tolerance::default();
        for kappa in [1, -1] {
            let spec = SpaceSpec::n(kappa).unwrap();
            let got = structure_constants_from_group(&NGroup::new(kappa).unwrap(), &tol).unwrap();
            let list = crate::catalog::build_triple(&spec, &tol).unwrap().metric.algebra;
            let p = super::super::n_coordinate_basis();
            assert!(got.difference(&list.change_basis(&p, &tol).unwrap()).is_exact_zero(), "κ={kappa}");
        }
    }

    #[test]
    fn affine_groups_recover_semidirect_products() {
        let tol = Tolerance::default();
        for spec in [SpaceSpec::z(1, Scalar::int(1)).unwrap(), SpaceSpec::z(-1, Scalar::int(0)).unwrap(), SpaceSpec::zprime(Scalar::int(2)).unwrap()] {
            let (base, _, _) = item_data(&spec).unwrap();
            let eps = match spec {
                SpaceSpec::Z { eps, .. } => eps,
                _ => -1,
            };
            let got = structure_constants_from_group(&AffineLocal { eps, l: base.l }, &tol).unwrap();
            let map = dc_isomorphism(&spec, &tol).unwrap();
            assert!(got.difference(&map.target.algebra).is_exact_zero(), "{spec}");
        }
    }
}
