//! Fixed points of transvections on the Z and Z′ models.
//!
//! (v,u) is fixed by (b,A) iff Au = u and (A − I)v = −b ×_ε u. The first
//! equation picks u on the fixed line of A, the second is solved in u⊥.

use super::extrinsic::{extrinsic_space, Embedding};
use super::so12::fixed_vector;
use crate::catalog::SpaceSpec;
use crate::error::{Error, Result};
use crate::groups::{cross_eps, AffineElement, OrthoGroup};
use crate::numeric::matrix::{form, vec_scale, vec_sub};
use crate::numeric::{linalg, Field, Matrix, Scalar, Tolerance};
use crate::report::Residual;

struct Setup {
    eps: i64,
    eta: Matrix,
    level: i64,
    group: OrthoGroup,
}

fn setup(spec: &SpaceSpec) -> Result<Setup> {
    match spec {
        SpaceSpec::Z { eps: 1, .. } => Ok(Setup { eps: 1, eta: Matrix::identity(3), level: 1, group: OrthoGroup::SO3 }),
        SpaceSpec::Z { eps: -1, .. } => Ok(Setup { eps: -1, eta: Matrix::diag_ints(&[-1, 1, 1]), level: -1, group: OrthoGroup::SO012 }),
        SpaceSpec::Zprime { .. } => Ok(Setup { eps: -1, eta: Matrix::diag_ints(&[-1, 1, 1]), level: 1, group: OrthoGroup::SO012 }),
        _ => Err(Error::Unsupported(format!("no fixed-point solver for {}", spec.family()))),
    }
}

/// Scale w onto ⟨u,u⟩ = level, choosing the sign canonically (u1 > 0 on
/// the two-sheeted hyperboloid, else largest entry positive).
fn normalize(w: &[Scalar], eta: &Matrix, level: i64, tol: &Tolerance) -> Option<Vec<Scalar>> {
    let q = form(eta, w, w);
    let scale: f64 = w.iter().map(|x| x.to_f64().powi(2)).sum();
    let null = if q.is_exact() { q.is_zero() } else { q.to_f64().abs() <= tol.abs_tol.max(1e-9) * scale };
    if null || q.sign() != level.signum() as i32 {
        return None;
    }
    let mut u = vec_scale(w, &(q / Scalar::int(level)).sqrt().recip());
    let lead = if level < 0 {
        0
    } else {
        (0..3).max_by(|&i, &j| u[i].to_f64().abs().total_cmp(&u[j].to_f64().abs()).then(j.cmp(&i))).unwrap()
    };
    if u[lead].sign() < 0 {
        u = u.into_iter().map(|x| -x).collect();
    }
    Some(u)
}

/// A fixed point (v, u) ∈ ℝ⁶ of (b, A) on the model of `spec`, or `None`
/// when the fixed line of A misses the model (or, for A = I, b does).
pub fn fixed_point(spec: &SpaceSpec, g: &AffineElement, tol: &Tolerance) -> Result<Option<Vec<Scalar>>> {
    let st = setup(spec)?;
    if g.b.len() != 3 || !st.group.contains(&g.a, tol) {
        return Err(Error::NotInGroup(format!("(b, A) is not in R3 x {}", st.group.name())));
    }
    let zero = vec![Scalar::int(0); 3];
    let id = g.a.sub(&Matrix::identity(3));
    let is_identity = if id.all_exact() { id.is_zero_exact() } else { id.max_abs() <= tol.abs_tol };
    if is_identity {
        if g.b.iter().all(|x| x.magnitude() <= tol.abs_tol) {
            let base = extrinsic_space(spec, if matches!(spec, SpaceSpec::Zprime { .. }) { Embedding::Zprime } else { Embedding::Z })?.base;
            return Ok(Some(base));
        }
        // b ×_ε u = 0 forces u ∥ b
        return Ok(normalize(&g.b, &st.eta, st.level, tol).map(|u| zero.into_iter().chain(u).collect()));
    }
    let Some(w) = fixed_vector(&g.a) else { return Ok(None) };
    let Some(u) = normalize(&w, &st.eta, st.level, tol) else { return Ok(None) };
    // basis of u⊥ and the 2×2 system there
    let perp = linalg::kernel(&Matrix::from_rows(vec![st.eta.mul_vec(&u)]), tol);
    let p = Matrix::from_cols(&perp);
    let lhs = p.transpose().mul(&st.eta).mul(&id).mul(&p);
    let rhs_vec: Vec<Scalar> = cross_eps(st.eps, &g.b, &u).into_iter().map(|x| -x).collect();
    let rhs = p.transpose().mul(&st.eta).mul_vec(&rhs_vec);
    let c = linalg::solve(&lhs, &rhs, tol)?;
    let mut v = p.mul_vec(&c);
    if !v.iter().all(Scalar::is_exact) {
        // far-out fixed points (small rotation angle) need refinement
        for _ in 0..2 {
            let d = vec_sub(&id.mul_vec(&v), &rhs_vec);
            let dc = linalg::solve(&lhs, &p.transpose().mul(&st.eta).mul_vec(&d), tol)?;
            v = vec_sub(&v, &p.mul_vec(&dc));
        }
    }
    Ok(Some(v.into_iter().chain(u).collect()))
}

/// (max |g·p − p|, defining-equation residual) for a candidate fixed point.
pub fn fixed_point_residual(spec: &SpaceSpec, g: &AffineElement, p: &[Scalar]) -> Result<(Residual, Residual)> {
    let st = setup(spec)?;
    let q = g.act_point(st.eps, p);
    let mut act = Residual::zero();
    for (a, b) in q.iter().zip(p) {
        act.absorb(&(a - b));
    }
    let e = extrinsic_space(spec, if matches!(spec, SpaceSpec::Zprime { .. }) { Embedding::Zprime } else { Embedding::Z })?;
    let mut on = e.defining_residual(p);
    if !e.on_sheet(p) {
        on.absorb_f64(f64::INFINITY);
    }
    Ok((act, on))
}
