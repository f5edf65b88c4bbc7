//! Closed-form chart metrics and the same metrics obtained by left
//! translation of the origin gram.

use crate::catalog::{heis_presentation, SpaceSpec};
use crate::error::{Error, Result};
use crate::groups::{chart_phi, chart_phi_inverse, HeisExtElement, HeisExtGroup, NGroup};
use crate::numeric::{jacobian, linalg, Field, Matrix, Scalar, SmoothMap, Tolerance};
use crate::report::Residual;

/// A four-dimensional chart with its metric.
///
/// Coordinates are (v, x1, x2, u) for X1, X2 and Y, and (v1, v2, u1, u2) for N.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateModel {
    pub spec: SpaceSpec,
}

impl CoordinateModel {
    pub fn dim(&self) -> usize {
        4
    }

    pub fn chart(&self) -> &'static str {
        match self.spec {
            SpaceSpec::N { .. } => "(v1,v2,u1,u2)",
            _ => "(v,x1,x2,u)",
        }
    }

    pub fn metric<F: Field>(&self, p: &[F]) -> Matrix<F> {
        let mut g = Matrix::<F>::zeros(4, 4);
        let set = |g: &mut Matrix<F>, i: usize, j: usize, x: F| {
            g[(i, j)] = x.clone();
            g[(j, i)] = x;
        };
        let sq = |x: &F| x.clone() * x.clone();
        match &self.spec {
            SpaceSpec::N { kappa } => {
                let k3 = F::from_ratio(*kappa, 3);
                let (u1, u2) = (p[2].clone(), p[3].clone());
                set(&mut g, 1, 2, F::one());
                set(&mut g, 0, 3, -F::one());
                set(&mut g, 2, 2, -(k3.clone() * sq(&u2)));
                set(&mut g, 3, 3, -(k3.clone() * sq(&u1)));
                set(&mut g, 2, 3, k3 * u1 * u2);
            }
            spec => {
                let (x1, x2) = (p[1].clone(), p[2].clone());
                set(&mut g, 0, 3, F::one());
                let h = match spec {
                    SpaceSpec::X1 { eps1, eps2, lambda } => {
                        set(&mut g, 1, 1, -F::one());
                        set(&mut g, 2, 2, F::one());
                        let l2 = F::from_scalar(&(lambda * lambda));
                        -(F::from_int(*eps1) * sq(&x1)) - F::from_int(*eps2) * l2 * sq(&x2)
                    }
                    SpaceSpec::X2 { nu } => {
                        set(&mut g, 1, 1, -F::one());
                        set(&mut g, 2, 2, F::one());
                        let nu = F::from_scalar(nu);
                        (sq(&nu) - F::one()) * (sq(&x1) - sq(&x2)) - F::from_int(4) * nu * x1 * x2
                    }
                    SpaceSpec::Y { eps, kappa } => {
                        set(&mut g, 1, 2, F::from_int(-eps));
                        set(&mut g, 2, 2, F::from_int(-eps * kappa));
                        F::from_int(2) * x1 * x2.clone() - F::from_int(*kappa) * sq(&x2)
                    }
                    _ => unreachable!("checked in model_metric"),
                };
                set(&mut g, 3, 3, h);
            }
        }
        g
    }
}

pub fn model_metric(spec: &SpaceSpec) -> Result<CoordinateModel> {
    spec.validate()?;
    match spec {
        SpaceSpec::Z { .. } | SpaceSpec::Zprime { .. } => {
            Err(Error::Unsupported(format!("{} has no coordinate chart; use its extrinsic model", spec.family())))
        }
        _ => Ok(CoordinateModel { spec: spec.clone() }),
    }
}

/// Gram of g₋ at the origin in chart coordinates, read off the triple.
pub fn origin_gram(spec: &SpaceSpec, tol: &Tolerance) -> Result<Matrix> {
    match spec {
        SpaceSpec::N { .. } => Ok(Matrix::from_ints(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]])),
        SpaceSpec::Z { .. } | SpaceSpec::Zprime { .. } => Err(Error::Unsupported("no chart".into())),
        _ => {
            // chart directions ∂v, ∂x1, ∂x2, ∂u are σ, â3, â4, e
            let source = heis_presentation(spec, tol)?.source;
            let idx = [0, 3, 4, 5];
            Ok(source.gram.submatrix(&idx, &idx))
        }
    }
}

/// p ↦ Φ(g·Φ⁻¹(p)).
pub struct LeftTranslation {
    kind: Translation,
    g: Vec<Scalar>,
}

enum Translation {
    Heis(HeisExtGroup),
    N(NGroup),
}

impl LeftTranslation {
    /// Left translation by the group element sitting over chart point `q`.
    pub fn over(spec: &SpaceSpec, q: &[Scalar]) -> Result<Self> {
        let kind = match spec {
            SpaceSpec::N { kappa } => Translation::N(NGroup::new(*kappa)?),
            SpaceSpec::X1 { .. } | SpaceSpec::X2 { .. } | SpaceSpec::Y { .. } => Translation::Heis(HeisExtGroup::for_spec(spec)?),
            _ => return Err(Error::Unsupported("no chart".into())),
        };
        let g = match &kind {
            Translation::N(n) => n.chart_phi_inverse(q).to_vec(),
            Translation::Heis(_) => chart_phi_inverse(q).to_vec(),
        };
        Ok(LeftTranslation { kind, g })
    }
}

impl SmoothMap for LeftTranslation {
    fn dim_in(&self) -> usize {
        4
    }
    fn dim_out(&self) -> usize {
        4
    }
    fn eval<F: Field>(&self, p: &[F]) -> Vec<F> {
        let g: Vec<F> = self.g.iter().map(F::from_scalar).collect();
        match &self.kind {
            Translation::Heis(grp) => {
                let h = grp.mul(&HeisExtElement::from_slice(&g), &chart_phi_inverse(p));
                chart_phi(&h)
            }
            Translation::N(grp) => {
                let h = grp.mul(&crate::groups::NGroupElement::from_slice(&g), &grp.chart_phi_inverse(p));
                grp.chart_phi(&h)
            }
        }
    }
}

/// The metric at `q` pushed forward from the origin: J⁻ᵀ G₀ J⁻¹ with J = d(l_g)₀.
pub fn group_metric(spec: &SpaceSpec, q: &[Scalar], tol: &Tolerance) -> Result<Matrix> {
    if q.len() != 4 {
        return Err(Error::Dimension("chart points have 4 coordinates".into()));
    }
    let lt = LeftTranslation::over(spec, q)?;
    let j = jacobian(&lt, &vec![Scalar::int(0); 4])?;
    let j_inv = linalg::inverse(&j, tol)?;
    Ok(j_inv.congruence(&origin_gram(spec, tol)?))
}

/// Largest entry of group_metric − model_metric at `q`.
pub fn metric_agreement(spec: &SpaceSpec, q: &[Scalar], tol: &Tolerance) -> Result<Residual> {
    let model = model_metric(spec)?.metric(q);
    let mut r = Residual::zero();
    r.absorb_all(group_metric(spec, q, tol)?.sub(&model).entries());
    Ok(r)
}
