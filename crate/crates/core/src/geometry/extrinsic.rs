//! Extrinsic models: quadrics in pseudo-Euclidean space and reflections
//! through their normal spaces.

use serde::Serialize;

use crate::catalog::SpaceSpec;
use crate::error::{Error, Result};
use crate::numeric::matrix::{form, vec_add, vec_scale, vec_sub};
use crate::numeric::{jacobian, linalg, signature, Field, Matrix, Scalar, Signature, SmoothMap, Tolerance};
use crate::report::Residual;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Embedding {
    /// N(κ) in ℂ² × ℝ, real coordinates (a, b, x, p, q) with η1 = a+ib, η2 = p+iq.
    NComplex,
    /// N(κ) in ℝ⁵, coordinates (p1, p2, x, q1, q2).
    NReal,
    /// Z(ε,c) in ℝ⁶, coordinates (v, u).
    Z,
    /// Z′(c) in ℝ⁶, coordinates (v, u).
    Zprime,
}

impl Embedding {
    pub fn name(self) -> &'static str {
        match self {
            Embedding::NComplex => "n-complex",
            Embedding::NReal => "n-real",
            Embedding::Z => "z",
            Embedding::Zprime => "zprime",
        }
    }

    pub fn for_spec(spec: &SpaceSpec) -> Vec<Embedding> {
        match spec {
            SpaceSpec::N { .. } => vec![Embedding::NComplex, Embedding::NReal],
            SpaceSpec::Z { .. } => vec![Embedding::Z],
            SpaceSpec::Zprime { .. } => vec![Embedding::Zprime],
            _ => vec![],
        }
    }
}

/// A nondegenerate submanifold M, cut out by polynomial equations, of
/// (ℝⁿ, gram).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtrinsicSpace {
    pub spec: SpaceSpec,
    pub embedding: Embedding,
    pub gram: Matrix,
    pub base: Vec<Scalar>,
    /// diag of the 3×3 form for the Z types
    eta: [i64; 3],
    /// value of ⟨u,u⟩ on M for the Z types
    level: i64,
}

fn diag3(d: [i64; 3]) -> Matrix {
    Matrix::diag_ints(&d)
}

pub fn extrinsic_space(spec: &SpaceSpec, which: Embedding) -> Result<ExtrinsicSpace> {
    spec.validate()?;
    let unsupported = || Error::Unsupported(format!("{} has no {} embedding", spec.family(), which.name()));
    let s = Scalar::int;
    let (gram, base, eta, level) = match (spec, which) {
        (SpaceSpec::N { kappa }, Embedding::NComplex) => {
            let mut g = Matrix::zeros(5, 5);
            for (i, j) in [(0, 3), (1, 4), (3, 0), (4, 1)] {
                g[(i, j)] = s(1);
            }
            g[(2, 2)] = s(*kappa);
            (g, vec![s(0); 5], [0; 3], 0)
        }
        (SpaceSpec::N { kappa }, Embedding::NReal) => {
            let mut g = Matrix::zeros(5, 5);
            for (i, j) in [(0, 3), (1, 4), (3, 0), (4, 1)] {
                g[(i, j)] = s(-1);
            }
            g[(2, 2)] = s(-kappa);
            (g, vec![s(0); 5], [0; 3], 0)
        }
        (SpaceSpec::Z { eps, c }, Embedding::Z) => {
            let beta = diag3([*eps, 1, 1]);
            let g = Matrix::vstack(&[hstack(&Matrix::zeros(3, 3), &beta), hstack(&beta, &beta.scale(&(&s(-2) * c)))]);
            (g, vec![s(0), s(0), s(0), s(1), s(0), s(0)], [*eps, 1, 1], *eps)
        }
        (SpaceSpec::Zprime { c }, Embedding::Zprime) => {
            let eta = diag3([-1, 1, 1]);
            let g = Matrix::vstack(&[hstack(&Matrix::zeros(3, 3), &eta.neg()), hstack(&eta.neg(), &eta.scale(&(&s(2) * c)))]);
            (g, vec![s(0), s(0), s(0), s(0), s(1), s(0)], [-1, 1, 1], 1)
        }
        _ => return Err(unsupported()),
    };
    Ok(ExtrinsicSpace { spec: spec.clone(), embedding: which, gram, base, eta, level })
}

fn hstack(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), a.cols() + b.cols(), |i, j| if j < a.cols() { a[(i, j)].clone() } else { b[(i, j - a.cols())].clone() })
}

impl SmoothMap for ExtrinsicSpace {
    fn dim_in(&self) -> usize {
        self.gram.rows()
    }
    fn dim_out(&self) -> usize {
        match self.embedding {
            Embedding::NComplex | Embedding::NReal => 1,
            _ => 2,
        }
    }
    fn eval<F: Field>(&self, x: &[F]) -> Vec<F> {
        self.defining(x)
    }
}

impl ExtrinsicSpace {
    pub fn ambient_dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eta(&self) -> Matrix {
        diag3(self.eta)
    }

    /// Values of the defining polynomials; M is their common zero set.
    pub fn defining<F: Field>(&self, x: &[F]) -> Vec<F> {
        let half = F::from_ratio(1, 2);
        match self.embedding {
            Embedding::NComplex => vec![x[2].clone() + half * (x[3].clone() * x[3].clone() + x[4].clone() * x[4].clone())],
            Embedding::NReal => vec![x[2].clone() - x[3].clone() * x[4].clone()],
            Embedding::Z | Embedding::Zprime => {
                let eta = Matrix::<F>::lift(&self.eta());
                let (v, u) = (&x[0..3], &x[3..6]);
                vec![form(&eta, u, u) - F::from_int(self.level), form(&eta, u, v)]
            }
        }
    }

    /// Largest |f_i(x)|.
    pub fn defining_residual(&self, x: &[Scalar]) -> Residual {
        let mut r = Residual::zero();
        r.absorb_all(self.defining(x).iter());
        r
    }

    /// Extra component condition: Z(−1,c) lives on the sheet u1 > 0.
    pub fn on_sheet(&self, x: &[Scalar]) -> bool {
        match (&self.spec, self.embedding) {
            (SpaceSpec::Z { eps: -1, .. }, Embedding::Z) => x[3].sign() > 0,
            _ => true,
        }
    }

    pub fn contains(&self, x: &[Scalar], tol: &Tolerance) -> bool {
        x.len() == self.ambient_dim() && self.defining_residual(x).passes(tol) && self.on_sheet(x)
    }

    pub fn check_point(&self, x: &[Scalar], tol: &Tolerance) -> Result<()> {
        if x.len() != self.ambient_dim() {
            return Err(Error::Dimension(format!("{} model points have {} coordinates", self.embedding.name(), self.ambient_dim())));
        }
        let r = self.defining_residual(x);
        if !r.passes(tol) || !self.on_sheet(x) {
            return Err(Error::OffManifold(r.value));
        }
        Ok(())
    }

    /// Columns span T_xM = ker(df_x).
    pub fn tangent_basis(&self, x: &[Scalar], tol: &Tolerance) -> Result<Matrix> {
        let grads = jacobian(self, x)?;
        let t = linalg::kernel(&grads, tol);
        if t.len() != self.ambient_dim() - self.dim_out() {
            return Err(Error::Degenerate);
        }
        // unit sup-norm columns keep float residuals on a fixed scale
        let t: Vec<Vec<Scalar>> = t
            .into_iter()
            .map(|c| {
                let big = c.iter().max_by(|a, b| a.to_f64().abs().total_cmp(&b.to_f64().abs())).cloned().expect("nonempty");
                vec_scale(&c, &big.abs().recip())
            })
            .collect();
        Ok(Matrix::from_cols(&t))
    }

    /// Induced metric on T_xM in the basis of `tangent_basis`.
    pub fn induced_gram(&self, x: &[Scalar], tol: &Tolerance) -> Result<Matrix> {
        Ok(self.tangent_basis(x, tol)?.congruence(&self.gram))
    }

    pub fn induced_signature(&self, x: &[Scalar], tol: &Tolerance) -> Result<Signature> {
        Ok(signature(&self.induced_gram(x, tol)?, tol))
    }

    /// R = I − 2P_T with P_T the gram-orthogonal projection onto T_xM.
    pub fn reflection_matrix(&self, x: &[Scalar], tol: &Tolerance) -> Result<Matrix> {
        let t = self.tangent_basis(x, tol)?;
        let inner = t.congruence(&self.gram);
        let inv = linalg::inverse(&inner, tol).map_err(|_| Error::Degenerate)?;
        let p = t.mul(&inv).mul(&t.transpose()).mul(&self.gram);
        let n = self.ambient_dim();
        Ok(Matrix::identity(n).sub(&p.scale(&Scalar::int(2))))
    }

    /// s_x(y) = x + R(y − x).
    pub fn reflect(&self, x: &[Scalar], r: &Matrix, y: &[Scalar]) -> Vec<Scalar> {
        vec_add(x, &r.mul_vec(&vec_sub(y, x)))
    }

    /// Largest defining-equation residual of s_x(y) over the samples; a
    /// sample leaving the sheet of x counts as a failure.
    pub fn reflection_check(&self, x: &[Scalar], samples: &[Vec<Scalar>], tol: &Tolerance) -> Result<Residual> {
        self.check_point(x, tol)?;
        let r = self.reflection_matrix(x, tol)?;
        let mut res = Residual::zero();
        for y in samples {
            let sy = self.reflect(x, &r, y);
            res.merge(self.defining_residual(&sy));
            if !self.on_sheet(&sy) {
                res.absorb_f64(f64::INFINITY);
            }
        }
        Ok(res)
    }

    /// The point of M through `base` in direction `d` (second intersection of
    /// the line with the quadric), plus a normal-to-u component `w` for v.
    /// Rational inputs give rational points.
    pub fn point_from(&self, d: &[Scalar], w: &[Scalar]) -> Option<Vec<Scalar>> {
        match self.embedding {
            Embedding::NComplex => {
                let (p, q) = (&d[2], &d[3]);
                let x = -(&(p * p) + &(q * q)) * Scalar::ratio(1, 2);
                Some(vec![d[0].clone(), d[1].clone(), x, p.clone(), q.clone()])
            }
            Embedding::NReal => Some(vec![d[0].clone(), d[1].clone(), &d[2] * &d[3], d[2].clone(), d[3].clone()]),
            Embedding::Z | Embedding::Zprime => {
                let eta = self.eta();
                let u0 = self.base[3..6].to_vec();
                let qd = form(&eta, d, d);
                if qd.is_zero() || qd.magnitude() < 1e-6 {
                    return None;
                }
                let t = -(&Scalar::int(2) * &form(&eta, &u0, d)) / qd;
                let u = vec_add(&u0, &vec_scale(d, &t));
                let wu = form(&eta, w, &u);
                let uu = form(&eta, &u, &u);
                let v = vec_sub(w, &vec_scale(&u, &(wu / uu)));
                let p: Vec<Scalar> = v.into_iter().chain(u).collect();
                self.on_sheet(&p).then_some(p)
            }
        }
    }
}

/// ι(x1, y1, u1, u2) = (x1 − (κ/4)|u|²u1, y1 − (κ/4)|u|²u2, −½|u|², u1, u2).
pub struct Iota {
    pub kappa: i64,
}

impl SmoothMap for Iota {
    fn dim_in(&self) -> usize {
        4
    }
    fn dim_out(&self) -> usize {
        5
    }
    fn eval<F: Field>(&self, p: &[F]) -> Vec<F> {
        let (u1, u2) = (p[2].clone(), p[3].clone());
        let r2 = u1.clone() * u1.clone() + u2.clone() * u2.clone();
        let k4 = F::from_ratio(self.kappa, 4);
        vec![
            p[0].clone() - k4.clone() * r2.clone() * u1.clone(),
            p[1].clone() - k4 * r2.clone() * u2.clone(),
            -(F::from_ratio(1, 2) * r2),
            u1,
            u2,
        ]
    }
}

/// Complex-coordinate metric on (x1, y1, u1, u2): 2dx1du1 + 2dy1du2 − (κ/2)|u|²|du|².
pub fn complex_coordinate_metric<F: Field>(kappa: i64, p: &[F]) -> Matrix<F> {
    let r2 = p[2].clone() * p[2].clone() + p[3].clone() * p[3].clone();
    let h = -(F::from_ratio(kappa, 2) * r2);
    let mut g = Matrix::<F>::zeros(4, 4);
    for (i, j) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        g[(i, j)] = F::one();
    }
    g[(2, 2)] = h.clone();
    g[(3, 3)] = h;
    g
}

/// max |ι*G − g_complex| over the samples.
pub fn iota_isometry_check(kappa: i64, samples: &[Vec<Scalar>]) -> Result<Residual> {
    let space = extrinsic_space(&SpaceSpec::n(kappa)?, Embedding::NComplex)?;
    let iota = Iota { kappa };
    let mut r = Residual::zero();
    for p in samples {
        let j = jacobian(&iota, p)?;
        r.absorb_all(j.congruence(&space.gram).sub(&complex_coordinate_metric(kappa, p)).entries());
        r.merge(space.defining_residual(&iota.eval(p)));
    }
    Ok(r)
}

/// (v, u) ↦ (x1, y1, u) = (v2 + (κ/12)u1|u|², −v1 + (κ/12)u2|u|², u).
pub struct ComplexCoordinates {
    pub kappa: i64,
}

impl SmoothMap for ComplexCoordinates {
    fn dim_in(&self) -> usize {
        4
    }
    fn dim_out(&self) -> usize {
        4
    }
    fn eval<F: Field>(&self, p: &[F]) -> Vec<F> {
        let (u1, u2) = (p[2].clone(), p[3].clone());
        let r2 = u1.clone() * u1.clone() + u2.clone() * u2.clone();
        let k12 = F::from_ratio(self.kappa, 12);
        vec![p[1].clone() + k12.clone() * u1.clone() * r2.clone(), -p[0].clone() + k12 * u2.clone() * r2, u1, u2]
    }
}

/// max |ψ*g_complex − g_chart| for the change to complex coordinates on N.
pub fn complex_coordinates_check(kappa: i64, samples: &[Vec<Scalar>]) -> Result<Residual> {
    let psi = ComplexCoordinates { kappa };
    let model = super::metric::model_metric(&SpaceSpec::n(kappa)?)?;
    let mut r = Residual::zero();
    for p in samples {
        let j = jacobian(&psi, p)?;
        let pulled = j.congruence(&complex_coordinate_metric(kappa, &psi.eval(p)));
        r.absorb_all(pulled.sub(&model.metric(p)).entries());
    }
    Ok(r)
}
