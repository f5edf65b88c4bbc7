//! Isometry groups of the models: transvections extended by the discrete
//! factors, their actions, and pullback verification.

use super::extrinsic::{extrinsic_space, Embedding, ExtrinsicSpace};
use super::metric::{model_metric, CoordinateModel};
use crate::catalog::SpaceSpec;
use crate::error::{Error, Result};
use crate::groups::{chart_phi, chart_phi_inverse, heisenberg_affine_rep, AffineElement, HeisAut, HeisExtElement, HeisExtGroup, NGroup, NGroupElement, OrthoGroup, SlPm2};
use crate::numeric::{jacobian, Field, Matrix, Scalar, SmoothMap, Tolerance};
use crate::report::Residual;

/// An isometry (g, p): first the discrete/linear part p, then the
/// transvection g. Composition is (g1,p1)(g2,p2) = (g1·p1(g2), p1p2).
#[derive(Clone, Debug, PartialEq)]
pub enum IsometryElement {
    Heis { g: HeisExtElement, aut: HeisAut },
    N { g: NGroupElement, s: SlPm2 },
    Affine(AffineElement),
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Heis(HeisExtGroup),
    N(NGroup),
    Affine { eps: i64, group: OrthoGroup },
}

/// The isometry group of a space acting on its model.
#[derive(Clone, Debug, PartialEq)]
pub struct IsometryGroup {
    pub spec: SpaceSpec,
    kind: Kind,
}

/// Metric of the model the group acts on.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Chart(CoordinateModel),
    Embedded(ExtrinsicSpace),
}

impl Model {
    pub fn for_spec(spec: &SpaceSpec) -> Result<Model> {
        match spec {
            SpaceSpec::Z { .. } => Ok(Model::Embedded(extrinsic_space(spec, Embedding::Z)?)),
            SpaceSpec::Zprime { .. } => Ok(Model::Embedded(extrinsic_space(spec, Embedding::Zprime)?)),
            _ => Ok(Model::Chart(model_metric(spec)?)),
        }
    }

    pub fn point_dim(&self) -> usize {
        match self {
            Model::Chart(_) => 4,
            Model::Embedded(e) => e.ambient_dim(),
        }
    }
}

impl IsometryGroup {
    pub fn for_spec(spec: &SpaceSpec) -> Result<Self> {
        spec.validate()?;
        let kind = match spec {
            SpaceSpec::X1 { .. } | SpaceSpec::X2 { .. } | SpaceSpec::Y { .. } => Kind::Heis(HeisExtGroup::for_spec(spec)?),
            SpaceSpec::N { kappa } => Kind::N(NGroup::new(*kappa)?),
            SpaceSpec::Z { eps, .. } => Kind::Affine { eps: *eps, group: if *eps == 1 { OrthoGroup::O3 } else { OrthoGroup::OPlus12 } },
            SpaceSpec::Zprime { .. } => Kind::Affine { eps: -1, group: OrthoGroup::O12 },
        };
        Ok(IsometryGroup { spec: spec.clone(), kind })
    }

    /// The matrix group of the linear part, for the Z types.
    pub fn ortho_group(&self) -> Option<OrthoGroup> {
        match self.kind {
            Kind::Affine { group, .. } => Some(group),
            _ => None,
        }
    }

    pub fn heis_group(&self) -> Option<&HeisExtGroup> {
        match &self.kind {
            Kind::Heis(g) => Some(g),
            _ => None,
        }
    }

    pub fn point_dim(&self) -> usize {
        match self.kind {
            Kind::Affine { .. } => 6,
            _ => 4,
        }
    }

    pub fn identity(&self) -> IsometryElement {
        match &self.kind {
            Kind::Heis(g) => IsometryElement::Heis { g: g.identity(), aut: HeisAut::identity() },
            Kind::N(_) => IsometryElement::N { g: NGroupElement::identity(), s: SlPm2::identity() },
            Kind::Affine { .. } => IsometryElement::Affine(AffineElement::identity()),
        }
    }

    /// Rejects elements whose discrete part is not an automorphism for this space.
    pub fn validate(&self, x: &IsometryElement, tol: &Tolerance) -> Result<()> {
        let ok = match (&self.kind, x) {
            (Kind::Heis(g), IsometryElement::Heis { aut, .. }) => aut.is_automorphism(g, tol),
            (Kind::N(_), IsometryElement::N { .. }) => true,
            (Kind::Affine { group, .. }, IsometryElement::Affine(a)) => a.b.len() == 3 && group.contains(&a.a, tol),
            _ => return Err(Error::InvalidParameter("element does not belong to this family".into())),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotInGroup(format!("not an isometry of {}", self.spec)))
        }
    }

    pub fn compose(&self, x: &IsometryElement, y: &IsometryElement) -> Result<IsometryElement> {
        Ok(match (&self.kind, x, y) {
            (Kind::Heis(grp), IsometryElement::Heis { g: g1, aut: p1 }, IsometryElement::Heis { g: g2, aut: p2 }) => {
                IsometryElement::Heis { g: grp.mul(g1, &p1.apply(g2)), aut: p1.compose(p2) }
            }
            (Kind::N(grp), IsometryElement::N { g: g1, s: s1 }, IsometryElement::N { g: g2, s: s2 }) => {
                IsometryElement::N { g: grp.mul(g1, &s1.apply(g2)), s: s1.compose(s2) }
            }
            (Kind::Affine { .. }, IsometryElement::Affine(a), IsometryElement::Affine(b)) => IsometryElement::Affine(a.mul(b)),
            _ => return Err(Error::InvalidParameter("element does not belong to this family".into())),
        })
    }

    /// Closed-form action on the model.
    pub fn act<F: Field>(&self, x: &IsometryElement, p: &[F]) -> Vec<F> {
        match (&self.kind, x) {
            (Kind::Heis(grp), IsometryElement::Heis { g, aut }) => {
                // t·(z,a)·(v,x,u) = (M(z, e^{−uL}a)(v,x), u+t), after the discrete part
                let q = discrete_on_chart(aut, p);
                let g: HeisExtElement<F> = lift_heis(g);
                let a = grp.exp_l(&-q[3].clone()).mul_vec(&g.a);
                let m = heisenberg_affine_rep(&g.z, &a);
                let vx = m.mul_vec(&[q[0].clone(), q[1].clone(), q[2].clone(), F::one()]);
                vec![vx[0].clone(), vx[1].clone(), vx[2].clone(), q[3].clone() + g.t]
            }
            (Kind::N(grp), IsometryElement::N { g, s }) => grp.act_formula(&lift_n(g), s, p),
            (Kind::Affine { eps, .. }, IsometryElement::Affine(a)) => lift_affine(a).act_point(*eps, p),
            _ => panic!("element does not belong to this family"),
        }
    }

    /// The same action computed through the group law and the chart,
    /// Φ(g·p(Φ⁻¹(x))); only for the chart models.
    pub fn act_via_group<F: Field>(&self, x: &IsometryElement, p: &[F]) -> Result<Vec<F>> {
        match (&self.kind, x) {
            (Kind::Heis(grp), IsometryElement::Heis { g, aut }) => {
                let h = aut.apply(&chart_phi_inverse(p));
                Ok(chart_phi(&grp.mul(&lift_heis(g), &h)))
            }
            (Kind::N(grp), IsometryElement::N { g, s }) => {
                let h = s.apply(&grp.chart_phi_inverse(p));
                Ok(grp.chart_phi(&grp.mul(&lift_n(g), &h)))
            }
            _ => Err(Error::Unsupported("no chart".into())),
        }
    }
}

fn lift_heis<F: Field>(g: &HeisExtElement) -> HeisExtElement<F> {
    HeisExtElement::from_slice(&g.to_vec().iter().map(F::from_scalar).collect::<Vec<_>>())
}

fn lift_n<F: Field>(g: &NGroupElement) -> NGroupElement<F> {
    NGroupElement::from_slice(&g.to_vec().iter().map(F::from_scalar).collect::<Vec<_>>())
}

fn lift_affine<F: Field>(g: &AffineElement) -> AffineElement<F> {
    AffineElement::new(g.b.iter().map(F::from_scalar).collect(), Matrix::lift(&g.a))
}

/// (v, x, u) ↦ (s·v, S₋x, s·u).
fn discrete_on_chart<F: Field>(aut: &HeisAut, p: &[F]) -> Vec<F> {
    let s = F::from_int(aut.s);
    let minus = Matrix::<F>::lift(&aut.m.submatrix(&[2, 3], &[2, 3]));
    let x = minus.mul_vec(&p[1..3]);
    vec![s.clone() * p[0].clone(), x[0].clone(), x[1].clone(), s * p[3].clone()]
}

/// One isometry viewed as a smooth self-map of the model's coordinates.
pub struct ActionMap<'a> {
    pub group: &'a IsometryGroup,
    pub element: &'a IsometryElement,
}

impl SmoothMap for ActionMap<'_> {
    fn dim_in(&self) -> usize {
        self.group.point_dim()
    }
    fn dim_out(&self) -> usize {
        self.group.point_dim()
    }
    fn eval<F: Field>(&self, x: &[F]) -> Vec<F> {
        self.group.act(self.element, x)
    }
}

/// max |J^T G(φ(p)) J − G(p)| over the sample points. On embedded models
/// J is restricted to a tangent basis of M at p; the image point must also
/// stay on M.
pub fn pullback_check(model: &Model, group: &IsometryGroup, x: &IsometryElement, points: &[Vec<Scalar>], tol: &Tolerance) -> Result<Residual> {
    let map = ActionMap { group, element: x };
    let mut r = Residual::zero();
    for p in points {
        let q = map.eval(p);
        // float data goes through plain f64, much faster than float Scalars
        let float = !p.iter().chain(&q).all(Scalar::is_exact);
        let pf: Vec<f64> = p.iter().map(Scalar::to_f64).collect();
        match model {
            Model::Chart(m) if float => {
                let j = jacobian(&map, &pf)?;
                let qf = map.eval(&pf);
                r.absorb_all(j.congruence(&m.metric(&qf)).sub(&m.metric(&pf)).entries());
            }
            Model::Chart(m) => {
                let j = jacobian(&map, p)?;
                r.absorb_all(j.congruence(&m.metric(&q)).sub(&m.metric(p)).entries());
            }
            Model::Embedded(e) => {
                e.check_point(p, tol)?;
                let t = e.tangent_basis(p, tol)?;
                if float {
                    let (t, g) = (t.to_f64(), e.gram.to_f64());
                    let jt = jacobian(&map, &pf)?.mul(&t);
                    r.absorb_all(jt.congruence(&g).sub(&t.congruence(&g)).entries());
                } else {
                    let jt = jacobian(&map, p)?.mul(&t);
                    r.absorb_all(jt.congruence(&e.gram).sub(&t.congruence(&e.gram)).entries());
                }
                r.merge(e.defining_residual(&q));
                if !e.on_sheet(&q) {
                    r.absorb_f64(f64::INFINITY);
                }
            }
        }
    }
    Ok(r)
}

/// max |(xy)·p − x·(y·p)| over the sample points, relative to the size
/// of the image on the float path.
pub fn homomorphism_residual(group: &IsometryGroup, x: &IsometryElement, y: &IsometryElement, points: &[Vec<Scalar>]) -> Result<Residual> {
    let xy = group.compose(x, y)?;
    let mut r = Residual::zero();
    for p in points {
        let lhs = group.act(&xy, p);
        let rhs = group.act(x, &group.act(y, p));
        r.merge(Residual::relative_diff(&lhs, &rhs));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| s(x)).collect()
    }

    #[test]
    fn identity_acts_trivially() {
        for spec in crate::catalog::default_grid() {
            let g = IsometryGroup::for_spec(&spec).unwrap();
            let p = if g.point_dim() == 4 { v(&[1, 2, 3, 4]) } else { v(&[0, 0, 0, 1, 0, 0]) };
            assert_eq!(g.act(&g.identity(), &p), p, "{spec}");
        }
    }

    #[test]
    fn pure_translation_shifts_u() {
        let spec = SpaceSpec::x1(1, 1, s(2)).unwrap();
        let g = IsometryGroup::for_spec(&spec).unwrap();
        let t = IsometryElement::Heis { g: HeisExtElement::new(s(0), v(&[0, 0, 0, 0]), s(5)), aut: HeisAut::identity() };
        assert_eq!(g.act(&t, &v(&[1, 2, 3, 4])), v(&[1, 2, 3, 9]));
    }

    #[test]
    fn z_translation_example() {
        let spec = SpaceSpec::z(1, s(0)).unwrap();
        let g = IsometryGroup::for_spec(&spec).unwrap();
        let x = IsometryElement::Affine(AffineElement::new(v(&[1, 0, 0]), Matrix::identity(3)));
        assert_eq!(g.act(&x, &v(&[0, 0, 0, 0, 1, 0])), v(&[0, 0, 1, 0, 1, 0]));
    }

    #[test]
    fn discrete_factor_examples() {
        // (δ1,δ2,δ3)·(v,x,u) = (δ3v, δ1δ3x1, δ2δ3x2, δ3u)
        let spec = SpaceSpec::x1(1, -1, s(3)).unwrap();
        let g = IsometryGroup::for_spec(&spec).unwrap();
        let x = IsometryElement::Heis { g: g.identity_heis(), aut: HeisAut::deltas(-1, 1).compose(&HeisAut::theta()) };
        assert_eq!(g.act(&x, &v(&[1, 2, 3, 4])), v(&[-1, 2, -3, -4]));
    }

    #[test]
    fn closed_form_matches_group_law_on_chart() {
        let q = vec![Scalar::ratio(1, 2), Scalar::ratio(-1, 3), s(2), Scalar::ratio(3, 4)];
        let spec = SpaceSpec::y(1, -1).unwrap();
        let g = IsometryGroup::for_spec(&spec).unwrap();
        let x = IsometryElement::Heis { g: HeisExtElement::new(s(1), v(&[2, -1, 3, 1]), s(-2)), aut: HeisAut::theta() };
        // e^{uL} leaves the exact path here: L is not nilpotent for Y
        for (a, b) in g.act(&x, &q).iter().zip(&g.act_via_group(&x, &q).unwrap()) {
            assert!((a - b).magnitude() < 1e-12);
        }
        let spec = SpaceSpec::n(-1).unwrap();
        let g = IsometryGroup::for_spec(&spec).unwrap();
        let sm = SlPm2::new(Matrix::from_ints(&[&[2, 1], &[3, 1]]), &Tolerance::default()).unwrap();
        let x = IsometryElement::N { g: NGroupElement::new([s(1), s(-2)], Scalar::ratio(1, 3), [s(2), s(1)]), s: sm };
        assert_eq!(g.act(&x, &q), g.act_via_group(&x, &q).unwrap());
    }

    #[test]
    fn boost_is_an_isometry_of_x1_balanced() {
        let tol = Tolerance::default();
        let spec = SpaceSpec::x1(-1, 1, s(1)).unwrap();
        let g = IsometryGroup::for_spec(&spec).unwrap();
        let boost = Matrix::from_rows(vec![vec![Scalar::ratio(5, 4), Scalar::ratio(3, 4)], vec![Scalar::ratio(3, 4), Scalar::ratio(5, 4)]]);
        let x = IsometryElement::Heis { g: g.identity_heis(), aut: HeisAut::o11(&boost, &tol).unwrap() };
        let pts = vec![v(&[1, 2, 3, 0]), v(&[0, -1, 1, 2])];
        let r = pullback_check(&Model::for_spec(&spec).unwrap(), &g, &x, &pts, &tol).unwrap();
        assert!(r.within(1e-10), "{r:?}");
    }

    impl IsometryGroup {
        fn identity_heis(&self) -> HeisExtElement {
            self.heis_group().unwrap().identity()
        }
    }
}
