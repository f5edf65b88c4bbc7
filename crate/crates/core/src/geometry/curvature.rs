//! Curvature of a symmetric space from its triple, and parallel fields.

use crate::catalog::{build_triple, SpaceSpec};
use crate::error::{Error, Result};
use crate::lie::{invariant_subspace_dim, InvolutiveMetricLieAlgebra};
use crate::numeric::matrix::vec_add;
use crate::numeric::{Scalar, Tolerance};
use crate::report::Residual;

fn in_minus(t: &InvolutiveMetricLieAlgebra, x: &[Scalar], tol: &Tolerance) -> bool {
    let mut r = Residual::zero();
    for (a, b) in t.theta.mul_vec(x).iter().zip(x) {
        r.absorb(&(a + b));
    }
    r.passes(tol)
}

/// R(X,Y)Z = [[X,Y],Z] for X, Y, Z ∈ g₋.
pub fn curvature(t: &InvolutiveMetricLieAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: &Tolerance) -> Result<Vec<Scalar>> {
    if ![x, y, z].iter().all(|v| v.len() == t.dim() && in_minus(t, v, tol)) {
        return Err(Error::InvalidParameter("curvature arguments must lie in g-".into()));
    }
    t.algebra.bracket(&t.algebra.bracket(x, y)?, z)
}

/// Largest defect over a basis of g₋ of: R(X,Y)Z ∈ g₋, the skew and pair
/// symmetries of ⟨R(X,Y)Z,W⟩, and the first Bianchi identity.
pub fn curvature_identities(t: &InvolutiveMetricLieAlgebra, tol: &Tolerance) -> Result<Residual> {
    let b = t.minus_basis(tol);
    let n = b.len();
    let mut r_xyz = vec![vec![vec![Vec::new(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                r_xyz[i][j][k] = curvature(t, &b[i], &b[j], &b[k], tol)?;
            }
        }
    }
    let mut res = Residual::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &r_xyz[i][j][k];
                for (a, c) in t.theta.mul_vec(v).iter().zip(v) {
                    res.absorb(&(a + c));
                }
                let bianchi = vec_add(&vec_add(v, &r_xyz[j][k][i]), &r_xyz[k][i][j]);
                res.absorb_all(bianchi.iter());
                for l in 0..n {
                    let rijkl = t.inner(v, &b[l]);
                    res.absorb(&(&rijkl + &t.inner(&r_xyz[j][i][k], &b[l])));
                    res.absorb(&(&rijkl + &t.inner(&r_xyz[i][j][l], &b[k])));
                    res.absorb(&(&rijkl - &t.inner(&r_xyz[k][l][i], &b[j])));
                }
            }
        }
    }
    Ok(res)
}

/// Dimension of the space of parallel vector fields: vectors of g₋ killed
/// by ad(g₊).
pub fn parallel_field_dim(spec: &SpaceSpec, tol: &Tolerance) -> Result<usize> {
    let t = build_triple(spec, tol)?.metric;
    let reps = t.holonomy_reps(tol)?;
    Ok(invariant_subspace_dim(&reps, t.minus_basis(tol).len(), tol))
}
