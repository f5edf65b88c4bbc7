//! Isomorphisms between the list presentation of a triple and the
//! presentations the groups are built on.

use super::{build_triple, SpaceSpec};
use crate::error::{Error, Result};
use crate::lie::{coords_in, InvolutiveMetricLieAlgebra, LieAlgebra};
use crate::numeric::linalg;
use crate::numeric::matrix::Matrix;
use crate::numeric::{Scalar, Tolerance};
use crate::quadext::{build_quadratic_extension, BaseAlgebra, OrthogonalModule, QuadraticCocycle};
use crate::report::{CheckReport, Residual};

/// A linear map F from `source` to `target` claimed to be an isomorphism of
/// symmetric triples.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationMap {
    pub source: InvolutiveMetricLieAlgebra,
    pub target: InvolutiveMetricLieAlgebra,
    pub f: Matrix,
}

impl PresentationMap {
    pub fn homomorphism_residual(&self) -> Residual {
        let n = self.source.dim();
        let mut r = Residual::zero();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.f.mul_vec(&self.source.algebra.basis_bracket(i, j));
                let rhs = self.target.algebra.bracket(&self.f.col(i), &self.f.col(j)).expect("dim");
                for (a, b) in lhs.iter().zip(&rhs) {
                    r.absorb(&(a - b));
                }
            }
        }
        r
    }

    pub fn isometry_residual(&self) -> Residual {
        let mut r = Residual::zero();
        r.absorb_all(self.f.congruence(&self.target.gram).sub(&self.source.gram).entries());
        r
    }

    pub fn equivariance_residual(&self) -> Residual {
        let mut r = Residual::zero();
        r.absorb_all(self.f.mul(&self.source.theta).sub(&self.target.theta.mul(&self.f)).entries());
        r
    }

    pub fn check(&self, name: &str, tol: &Tolerance) -> Vec<CheckReport> {
        let n = self.source.dim();
        let invertible = self.f.is_square() && self.f.rows() == self.target.dim() && linalg::rank(&self.f, tol) == n;
        vec![
            CheckReport::boolean(format!("{name}/invertible"), invertible, 1),
            CheckReport::from_residual(format!("{name}/homomorphism"), self.homomorphism_residual(), n * n, tol.abs_tol),
            CheckReport::from_residual(format!("{name}/isometry"), self.isometry_residual(), n * n, tol.abs_tol),
            CheckReport::from_residual(format!("{name}/theta-equivariance"), self.equivariance_residual(), n * n, tol.abs_tol),
        ]
    }

    pub fn passes(&self, tol: &Tolerance) -> bool {
        self.check("map", tol).iter().all(CheckReport::passed)
    }
}

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

/// The standard symplectic form ω₀(a,a') = a1a3′ − a3a1′ + a2a4′ − a4a2′ as `aᵀ Ω a'`.
pub fn omega0() -> Matrix {
    Matrix::from_ints(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]])
}

/// The matrix L with Ĝ ≅ G_L, in the coordinates where ω = ω₀.
pub fn l_of(spec: &SpaceSpec) -> Result<Matrix> {
    Ok(match spec {
        SpaceSpec::X1 { eps1, eps2, lambda } => {
            // L(a) = (−ε1 a3, −ε2 λ² a4, −a1, a2)
            let l2 = lambda * lambda;
            Matrix::from_rows(vec![
                vec![s(0), s(0), s(-eps1), s(0)],
                vec![s(0), s(0), s(0), &s(-eps2) * &l2],
                vec![s(-1), s(0), s(0), s(0)],
                vec![s(0), s(1), s(0), s(0)],
            ])
        }
        SpaceSpec::X2 { nu } => {
            // L(a) = ((ν²−1)a3 − 2νa4, −2νa3 − (ν²−1)a4, −a1, a2)
            let m = &(nu * nu) - &s(1);
            let tn = &s(2) * nu;
            Matrix::from_rows(vec![
                vec![s(0), s(0), m.clone(), -tn.clone()],
                vec![s(0), s(0), -tn, -m],
                vec![s(-1), s(0), s(0), s(0)],
                vec![s(0), s(1), s(0), s(0)],
            ])
        }
        SpaceSpec::Y { eps, kappa } => {
            // L(a) = (a4, a3 − κa4, εκa1 − εa2, −εa1)
            Matrix::from_ints(&[&[0, 0, 0, 1], &[0, 0, 1, -kappa], &[eps * kappa, -eps, 0, 0], &[-eps, 0, 0, 0]])
        }
        _ => return Err(Error::Unsupported(format!("{} has no Heisenberg presentation", spec.family()))),
    })
}

/// Columns: the G_L basis (σ, â1..â4, e) written in the list basis.
fn heis_basis(spec: &SpaceSpec) -> Result<Matrix> {
    Ok(match spec {
        SpaceSpec::X1 { lambda, .. } => {
            // â = (−a1, λa2, a3, a4)
            Matrix::diag(&[s(1), s(-1), lambda.recip(), s(1), s(1), s(1)])
        }
        SpaceSpec::X2 { nu } => {
            // â = (−νa1 − a2, a1 − νa2, a3, a4), inverted
            let d = (&(nu * nu) + &s(1)).recip();
            let mut m = Matrix::identity(6);
            m[(1, 1)] = -(nu * &d);
            m[(2, 1)] = -d.clone();
            m[(1, 2)] = d.clone();
            m[(2, 2)] = -(nu * &d);
            m
        }
        SpaceSpec::Y { eps, kappa } => {
            // basis σ1 σ2 σ3 e1 e2 e3 of the list presentation
            let (e, k) = (s(*eps), s(*kappa));
            let half = Scalar::ratio(1, 2);
            let b1 = vec![s(1), s(0), s(0), s(0), s(0), s(0)];
            let b2 = vec![s(0), s(0), &k * &half, s(0), s(0), s(-1)];
            let b3 = vec![s(0), s(0), s(1), s(0), s(0), s(0)];
            let b4 = vec![s(0), e.clone(), s(0), s(0), s(0), s(0)];
            let b5 = vec![s(0), &(&e * &k) * &half, s(0), s(0), s(-1), s(0)];
            let b6 = vec![s(0), s(0), s(0), s(1), s(0), s(0)];
            Matrix::from_cols(&[b1, b2, b3, b4, b5, b6])
        }
        _ => return Err(Error::Unsupported(format!("{} has no Heisenberg presentation", spec.family()))),
    })
}

/// From the G_L presentation (basis σ, â, e with [e,â] = Lâ,
/// [â,â'] = ω₀(â,â')σ) to the list presentation.
pub fn heis_presentation(spec: &SpaceSpec, tol: &Tolerance) -> Result<PresentationMap> {
    let target = build_triple(spec, tol)?.metric;
    let f = heis_basis(spec)?;
    let a_idx: Vec<usize> = (1..5).collect();
    let a_cols = f.submatrix(&(0..6).collect::<Vec<_>>(), &a_idx);
    let gram_a = a_cols.congruence(&target.gram);
    let module = OrthogonalModule { rho: vec![l_of(spec)?], gram_a, theta_a: Matrix::diag_ints(&[1, 1, -1, -1]) };
    let base = BaseAlgebra::new(LieAlgebra::abelian(1), Matrix::diag_ints(&[-1]))?;
    let source = build_quadratic_extension(&base, &module, &QuadraticCocycle::zero(1, 4), tol)?.metric;
    Ok(PresentationMap { source, target, f })
}

/// Basis change of the list presentation of Y onto b1..b6, with target the
/// list triple; also returns ad(b6) on span(b2..b5) in b-coordinates.
pub fn y_heisenberg_presentation(eps: i64, kappa: i64, tol: &Tolerance) -> Result<(PresentationMap, Matrix)> {
    let spec = SpaceSpec::y(eps, kappa)?;
    let map = heis_presentation(&spec, tol)?;
    let b = &map.f;
    let span: Vec<Vec<Scalar>> = (1..5).map(|j| b.col(j)).collect();
    let span_m = Matrix::from_cols(&span);
    let b6 = b.col(5);
    let cols: Vec<Vec<Scalar>> = span
        .iter()
        .map(|x| coords_in(&span_m, &map.target.algebra.bracket(&b6, x)?, tol))
        .collect::<Result<_>>()?;
    Ok((map, Matrix::from_cols(&cols)))
}

/// The triple (l⋊l, θ_l⊕θ_l, ⟨,⟩'_c); basis: first summand (abelian) then second.
pub fn semidirect_triple(l: &LieAlgebra, theta_l: &Matrix, beta: &Matrix, c: &Scalar) -> Result<InvolutiveMetricLieAlgebra> {
    let m = l.dim();
    let n = 2 * m;
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in 0..m {
            // [(v,0),(0,x)] = −([x,v], 0)
            let mut v = vec![s(0); n];
            for k in 0..m {
                v[k] = -l.get(j, i, k).clone();
            }
            brackets.push((i, m + j, v));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let mut v = vec![s(0); n];
            for k in 0..m {
                v[m + k] = l.get(i, j, k).clone();
            }
            brackets.push((m + i, m + j, v));
        }
    }
    let algebra = LieAlgebra::from_brackets(n, &brackets)?;
    let mut gram = Matrix::zeros(n, n);
    let m2c = &s(-2) * c;
    for i in 0..m {
        for j in 0..m {
            gram[(i, m + j)] = beta[(i, j)].clone();
            gram[(m + j, i)] = beta[(j, i)].clone();
            gram[(m + i, m + j)] = &m2c * &beta[(i, j)];
        }
    }
    let theta = Matrix::block_diag(&[theta_l, theta_l]);
    InvolutiveMetricLieAlgebra::new(algebra, gram, theta)
}

/// F₂⁻¹∘F₁ from d_c (list item 4 for Z, item 5 for Z′) to l⋊l.
pub fn dc_isomorphism(spec: &SpaceSpec, tol: &Tolerance) -> Result<PresentationMap> {
    let (eps, c) = match spec {
        SpaceSpec::Z { eps, c } => (*eps, c.clone()),
        SpaceSpec::Zprime { c } => (-1, c.clone()),
        _ => return Err(Error::Unsupported(format!("{} is not of type Z", spec.family()))),
    };
    let (base, _, _) = super::item_data(spec)?;
    let source = build_triple(spec, tol)?.metric;
    let beta = base.l.beta_l(eps);
    let target = semidirect_triple(&base.l, &base.theta, &beta, &c)?;
    let beta_inv = linalg::inverse(&beta, tol)?;
    // (z, l) ↦ (β⁻¹z + c·l, l)
    let ci = Matrix::identity(3).scale(&c);
    let f = Matrix::from_fn(6, 6, |i, j| match (i < 3, j < 3) {
        (true, true) => beta_inv[(i, j)].clone(),
        (true, false) => ci[(i, j - 3)].clone(),
        (false, true) => s(0),
        (false, false) => if i == j { s(1) } else { s(0) },
    });
    Ok(PresentationMap { source, target, f })
}
