//! Lie algebras given by dense structure constants, and metric Lie algebras
//! with an involution.

use crate::error::{Error, Result};
use crate::numeric::form::{signature, Signature};
use crate::numeric::linalg;
use crate::numeric::matrix::{dot, unit, Matrix};
use crate::numeric::{Scalar, Tolerance};
use crate::report::{CheckReport, Residual};

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Scalar>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, c: vec![Scalar::int(0); dim * dim * dim] }
    }

    /// Build from the brackets of pairs `i < j`; the rest follows by antisymmetry.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<Scalar>)]) -> Result<Self> {
        let mut a = LieAlgebra::abelian(dim);
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::Dimension("bracket entry out of range".into()));
            }
            if i == j {
                return Err(Error::InvalidParameter("[e_i, e_i] must vanish".into()));
            }
            for k in 0..dim {
                a.set(*i, *j, k, v[k].clone());
                a.set(*j, *i, k, -v[k].clone());
            }
        }
        Ok(a)
    }

    /// Structure constants from a dense array; antisymmetry is verified.
    pub fn from_constants(dim: usize, c: Vec<Scalar>, tol: &Tolerance) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::Dimension("need dim³ structure constants".into()));
        }
        let a = LieAlgebra { dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let s = a.get(i, j, k).clone() + a.get(j, i, k).clone();
                    if !tol.close(&s, &Scalar::int(0)) {
                        return Err(Error::InvalidParameter(format!("c[{i}][{j}] not antisymmetric")));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let n = self.dim;
        self.c[(i * n + j) * n + k] = v;
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim;
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension(format!("bracket on a {n}-dimensional algebra")));
        }
        let mut out = vec![Scalar::int(0); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let w = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&w * c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.get(i, j, k).clone()).collect()
    }

    /// Matrix of `ad(x)`; column j is `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.bracket(x, &unit(n, j)).expect("dim")).collect();
        Matrix::from_cols(&cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit(self.dim, i))
    }

    pub fn jacobi_residual(&self) -> Residual {
        let n = self.dim;
        let mut r = Residual::zero();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
                    let a = self.bracket(&self.basis_bracket(i, j), &ek).expect("dim");
                    let b = self.bracket(&self.basis_bracket(j, k), &ei).expect("dim");
                    let c = self.bracket(&self.basis_bracket(k, i), &ej).expect("dim");
                    for t in 0..n {
                        r.absorb(&(&(&a[t] + &b[t]) + &c[t]));
                    }
                }
            }
        }
        r
    }

    pub fn check_jacobi(&self, tol: &Tolerance) -> CheckReport {
        let n = self.dim;
        let triples = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        CheckReport::from_residual("jacobi", self.jacobi_residual(), triples, tol.abs_tol)
    }

    pub fn killing_form(&self) -> Matrix {
        let n = self.dim;
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        Matrix::from_fn(n, n, |i, j| ads[i].mul(&ads[j]).trace())
    }

    /// `−ε·½·killing`.
    pub fn beta_l(&self, eps: i64) -> Matrix {
        self.killing_form().scale(&Scalar::ratio(-eps, 2))
    }

    pub fn derivation_residual(&self, d: &Matrix) -> Residual {
        let n = self.dim;
        let mut r = Residual::zero();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.mul_vec(&self.basis_bracket(i, j));
                let a = self.bracket(&d.col(i), &unit(n, j)).expect("dim");
                let b = self.bracket(&unit(n, i), &d.col(j)).expect("dim");
                for k in 0..n {
                    r.absorb(&(&(&lhs[k] - &a[k]) - &b[k]));
                }
            }
        }
        r
    }

    pub fn is_derivation(&self, d: &Matrix, tol: &Tolerance) -> bool {
        d.rows() == self.dim && d.is_square() && self.derivation_residual(d).passes(tol)
    }

    pub fn automorphism_residual(&self, f: &Matrix) -> Residual {
        let n = self.dim;
        let mut r = Residual::zero();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = f.mul_vec(&self.basis_bracket(i, j));
                let rhs = self.bracket(&f.col(i), &f.col(j)).expect("dim");
                for k in 0..n {
                    r.absorb(&(&lhs[k] - &rhs[k]));
                }
            }
        }
        r
    }

    pub fn is_automorphism(&self, f: &Matrix, tol: &Tolerance) -> bool {
        f.rows() == self.dim
            && f.is_square()
            && self.automorphism_residual(f).passes(tol)
            && linalg::rank(f, tol) == self.dim
    }

    /// `⟨[x,y],z⟩ + ⟨y,[x,z]⟩` over all basis triples.
    pub fn ad_invariance_residual(&self, gram: &Matrix) -> Residual {
        let n = self.dim;
        let mut r = Residual::zero();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        for ad in &ads {
            // adᵀ G + G ad = 0
            let m = ad.transpose().mul(gram).add(&gram.mul(ad));
            r.absorb_all(m.entries());
        }
        r
    }

    pub fn ad_invariance(&self, gram: &Matrix, tol: &Tolerance) -> CheckReport {
        let n = self.dim;
        CheckReport::from_residual("ad-invariance", self.ad_invariance_residual(gram), n * n * n, tol.abs_tol)
    }

    /// Same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix, tol: &Tolerance) -> Result<LieAlgebra> {
        let n = self.dim;
        let pinv = linalg::inverse(p, tol)?;
        let mut out = LieAlgebra::abelian(n);
        for i in 0..n {
            for j in 0..n {
                let b = pinv.mul_vec(&self.bracket(&p.col(i), &p.col(j))?);
                for (k, v) in b.into_iter().enumerate() {
                    out.set(i, j, k, v);
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise difference of structure constants.
    pub fn difference(&self, other: &LieAlgebra) -> Residual {
        let mut r = Residual::zero();
        for (a, b) in self.c.iter().zip(&other.c) {
            r.absorb(&(a - b));
        }
        r
    }
}

/// Dimension of the joint kernel of `reps` acting on a `dim`-dimensional space.
pub fn invariant_subspace_dim(reps: &[Matrix], dim: usize, tol: &Tolerance) -> usize {
    if reps.is_empty() {
        return dim;
    }
    let stacked = Matrix::vstack(reps);
    dim - linalg::rank(&stacked, tol)
}

/// A Lie algebra with an ad-invariant inner product and an involution:
/// the data of a symmetric triple.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutiveMetricLieAlgebra {
    pub algebra: LieAlgebra,
    pub gram: Matrix,
    pub theta: Matrix,
}

impl InvolutiveMetricLieAlgebra {
    pub fn new(algebra: LieAlgebra, gram: Matrix, theta: Matrix) -> Result<Self> {
        let n = algebra.dim();
        if gram.rows() != n || !gram.is_square() || theta.rows() != n || !theta.is_square() {
            return Err(Error::Dimension("gram and θ must match the algebra".into()));
        }
        Ok(InvolutiveMetricLieAlgebra { algebra, gram, theta })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.gram.mul_vec(y))
    }

    /// Basis of the (±1)-eigenspace of θ.
    pub fn eigenspace(&self, sign: i64, tol: &Tolerance) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let proj = Matrix::identity(n).add(&self.theta.scale(&Scalar::int(sign)));
        linalg::column_space(&proj, tol)
    }

    pub fn plus_basis(&self, tol: &Tolerance) -> Vec<Vec<Scalar>> {
        self.eigenspace(1, tol)
    }

    pub fn minus_basis(&self, tol: &Tolerance) -> Vec<Vec<Scalar>> {
        self.eigenspace(-1, tol)
    }

    /// Gram of ⟨,⟩ restricted to g₋ in the basis `minus_basis`.
    pub fn minus_gram(&self, tol: &Tolerance) -> Matrix {
        let m = Matrix::from_cols(&self.minus_basis(tol));
        m.congruence(&self.gram)
    }

    pub fn minus_signature(&self, tol: &Tolerance) -> Signature {
        signature(&self.minus_gram(tol), tol)
    }

    /// Restrictions `ad(x)|g₋` for x running over a basis of g₊, written in
    /// the coordinates of `minus_basis`.
    pub fn holonomy_reps(&self, tol: &Tolerance) -> Result<Vec<Matrix>> {
        let plus = self.plus_basis(tol);
        let minus = self.minus_basis(tol);
        let m = Matrix::from_cols(&minus);
        let mut reps = Vec::new();
        for x in &plus {
            let cols: Vec<Vec<Scalar>> = minus
                .iter()
                .map(|y| {
                    let b = self.algebra.bracket(x, y)?;
                    coords_in(&m, &b, tol)
                })
                .collect::<Result<_>>()?;
            reps.push(Matrix::from_cols(&cols));
        }
        Ok(reps)
    }
}

/// Coordinates of `v` in the column basis `m` (v must lie in its span).
pub fn coords_in(m: &Matrix, v: &[Scalar], tol: &Tolerance) -> Result<Vec<Scalar>> {
    // normal equations with the Euclidean product keep the system square
    let mt = m.transpose();
    let sol = linalg::solve(&mt.mul(m), &mt.mul_vec(v), tol)?;
    let back = m.mul_vec(&sol);
    let mut r = Residual::zero();
    for (a, b) in back.iter().zip(v) {
        r.absorb(&(a - b));
    }
    if !r.passes(tol) {
        return Err(Error::Dimension("vector is not in the span".into()));
    }
    Ok(sol)
}
