//! Quadratic extensions d = l* ⊕ a ⊕ l of an orthogonal module by a
//! quadratic cocycle, and the symmetric-triple axioms.

use crate::error::{Error, Result};
use crate::lie::{InvolutiveMetricLieAlgebra, LieAlgebra};
use crate::numeric::form::{signature, Signature};
use crate::numeric::linalg;
use crate::numeric::matrix::{dot, unit, Matrix};
use crate::numeric::{matrix_exp, Scalar, Tolerance};
use crate::report::{CheckReport, Residual};

/// A Lie algebra l with involution θ_l.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseAlgebra {
    pub l: LieAlgebra,
    pub theta: Matrix,
}

impl BaseAlgebra {
    pub fn new(l: LieAlgebra, theta: Matrix) -> Result<Self> {
        if theta.rows() != l.dim() || !theta.is_square() {
            return Err(Error::Dimension("θ_l must act on l".into()));
        }
        Ok(BaseAlgebra { l, theta })
    }

    pub fn dim(&self) -> usize {
        self.l.dim()
    }
}

/// Representation ρ of l on (a, ⟨,⟩_a) with a compatible involution θ_a.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalModule {
    /// ρ(e_i) for each basis vector of l.
    pub rho: Vec<Matrix>,
    pub gram_a: Matrix,
    pub theta_a: Matrix,
}

impl OrthogonalModule {
    pub fn trivial(l_dim: usize) -> Self {
        OrthogonalModule { rho: vec![Matrix::zeros(0, 0); l_dim], gram_a: Matrix::zeros(0, 0), theta_a: Matrix::zeros(0, 0) }
    }

    pub fn a_dim(&self) -> usize {
        self.gram_a.rows()
    }

    /// ρ(x) for a vector x of l.
    pub fn rho_of(&self, x: &[Scalar]) -> Matrix {
        let k = self.a_dim();
        let mut m = Matrix::zeros(k, k);
        for (xi, r) in x.iter().zip(&self.rho) {
            if !xi.is_zero() {
                m = m.add(&r.scale(xi));
            }
        }
        m
    }

    /// Representation, skewness and θ-compatibility residuals.
    pub fn check(&self, base: &BaseAlgebra, tol: &Tolerance) -> Vec<CheckReport> {
        let m = base.dim();
        let k = self.a_dim();
        let mut hom = Residual::zero();
        let mut skew = Residual::zero();
        let mut theta = Residual::zero();
        if self.rho.len() != m {
            return vec![CheckReport::boolean("module-shape", false, 0)];
        }
        for i in 0..m {
            for j in i + 1..m {
                let lhs = self.rho_of(&base.l.basis_bracket(i, j));
                let rhs = self.rho[i].commutator(&self.rho[j]);
                hom.absorb_all(lhs.sub(&rhs).entries());
            }
        }
        for r in &self.rho {
            skew.absorb_all(r.transpose().mul(&self.gram_a).add(&self.gram_a.mul(r)).entries());
        }
        let inv = self.theta_a.mul(&self.theta_a).sub(&Matrix::identity(k));
        theta.absorb_all(inv.entries());
        theta.absorb_all(self.gram_a.sub(&self.theta_a.congruence(&self.gram_a)).entries());
        for i in 0..m {
            let lhs = self.theta_a.mul(&self.rho_of(&base.theta.col(i)));
            let rhs = self.rho[i].mul(&self.theta_a);
            theta.absorb_all(lhs.sub(&rhs).entries());
        }
        vec![
            CheckReport::from_residual("module-representation", hom, m * m, tol.abs_tol),
            CheckReport::from_residual("module-skew", skew, m, tol.abs_tol),
            CheckReport::from_residual("module-theta", theta, m, tol.abs_tol),
        ]
    }
}

/// α: Λ²l → a and γ: Λ³l → ℝ, stored as full antisymmetric tables.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticCocycle {
    l_dim: usize,
    a_dim: usize,
    alpha: Vec<Vec<Scalar>>,
    gamma: Vec<Scalar>,
}

impl QuadraticCocycle {
    pub fn zero(l_dim: usize, a_dim: usize) -> Self {
        QuadraticCocycle {
            l_dim,
            a_dim,
            alpha: vec![vec![Scalar::int(0); a_dim]; l_dim * l_dim],
            gamma: vec![Scalar::int(0); l_dim * l_dim * l_dim],
        }
    }

    /// Set α(e_i, e_j) = v (and α(e_j, e_i) = −v).
    pub fn with_alpha(mut self, i: usize, j: usize, v: Vec<Scalar>) -> Self {
        assert!(i != j && v.len() == self.a_dim);
        self.alpha[j * self.l_dim + i] = v.iter().map(|x| -x.clone()).collect();
        self.alpha[i * self.l_dim + j] = v;
        self
    }

    /// Set γ(e_i, e_j, e_k) = g, extended antisymmetrically.
    pub fn with_gamma(mut self, i: usize, j: usize, k: usize, g: Scalar) -> Self {
        assert!(i != j && j != k && i != k);
        let m = self.l_dim;
        let perms = [
            ([i, j, k], 1),
            ([j, k, i], 1),
            ([k, i, j], 1),
            ([j, i, k], -1),
            ([i, k, j], -1),
            ([k, j, i], -1),
        ];
        for (p, s) in perms {
            self.gamma[(p[0] * m + p[1]) * m + p[2]] = &g * &Scalar::int(s);
        }
        self
    }

    pub fn alpha(&self, i: usize, j: usize) -> &[Scalar] {
        &self.alpha[i * self.l_dim + j]
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.gamma[(i * self.l_dim + j) * self.l_dim + k]
    }

    /// α(x, e_j) for a vector x.
    fn alpha_vec(&self, x: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::int(0); self.a_dim];
        for (p, xp) in x.iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.alpha(p, j)) {
                *o = &*o + &(xp * v);
            }
        }
        out
    }

    /// γ(x, e_j, e_k) for a vector x.
    fn gamma_vec(&self, x: &[Scalar], j: usize, k: usize) -> Scalar {
        let mut out = Scalar::int(0);
        for (p, xp) in x.iter().enumerate() {
            if !xp.is_zero() {
                out = &out + &(xp * self.gamma(p, j, k));
            }
        }
        out
    }

    pub fn l_dim(&self) -> usize {
        self.l_dim
    }

    pub fn a_dim(&self) -> usize {
        self.a_dim
    }
}

/// Residuals of dα = 0, dγ = ½⟨α∧α⟩ and the two θ-equivariance identities.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleReport {
    pub d_alpha: Residual,
    pub d_gamma: Residual,
    pub theta_alpha: Residual,
    pub theta_gamma: Residual,
}

impl CocycleReport {
    pub fn total(&self) -> Residual {
        let mut r = self.d_alpha;
        r.merge(self.d_gamma);
        r.merge(self.theta_alpha);
        r.merge(self.theta_gamma);
        r
    }

    pub fn passes(&self, tol: &Tolerance) -> bool {
        self.total().passes(tol)
    }

    pub fn to_check(&self, tol: &Tolerance, samples: usize) -> CheckReport {
        let r = CheckReport::from_residual("cocycle", self.total(), samples, tol.abs_tol);
        if r.passed() {
            r
        } else {
            r.with_note(format!(
                "dα {}, dγ−½⟨α∧α⟩ {}, θα {}, θγ {}",
                self.d_alpha.render(),
                self.d_gamma.render(),
                self.theta_alpha.render(),
                self.theta_gamma.render()
            ))
        }
    }
}

/// (dα)(e_i,e_j,e_k) in the sign convention
/// ρ(x)α(y,z) − ρ(y)α(x,z) + ρ(z)α(x,y) − α([x,y],z) + α([x,z],y) − α([y,z],x).
pub fn d_alpha(base: &BaseAlgebra, module: &OrthogonalModule, co: &QuadraticCocycle, i: usize, j: usize, k: usize) -> Vec<Scalar> {
    let l = &base.l;
    let mut out = vec![Scalar::int(0); module.a_dim()];
    let mut add = |v: Vec<Scalar>, s: i64| {
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(&x * &Scalar::int(s));
        }
    };
    add(module.rho[i].mul_vec(co.alpha(j, k)), 1);
    add(module.rho[j].mul_vec(co.alpha(i, k)), -1);
    add(module.rho[k].mul_vec(co.alpha(i, j)), 1);
    add(co.alpha_vec(&l.basis_bracket(i, j), k), -1);
    add(co.alpha_vec(&l.basis_bracket(i, k), j), 1);
    add(co.alpha_vec(&l.basis_bracket(j, k), i), -1);
    out
}

/// (dγ)(x0,x1,x2,x3) = Σ_{i<j} (−1)^{i+j} γ([x_i,x_j], remaining two in order).
pub fn d_gamma(base: &BaseAlgebra, co: &QuadraticCocycle, x: [usize; 4]) -> Scalar {
    let mut out = Scalar::int(0);
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&t| t != i && t != j).map(|t| x[t]).collect();
            let v = co.gamma_vec(&base.l.basis_bracket(x[i], x[j]), rest[0], rest[1]);
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            out = &out + &(&v * &Scalar::int(s));
        }
    }
    out
}

/// ½⟨α∧α⟩(x0,x1,x2,x3) = ⟨α01,α23⟩ − ⟨α02,α13⟩ + ⟨α03,α12⟩.
pub fn half_alpha_wedge_alpha(module: &OrthogonalModule, co: &QuadraticCocycle, x: [usize; 4]) -> Scalar {
    let g = &module.gram_a;
    let p = |a: usize, b: usize, c: usize, d: usize| dot(co.alpha(x[a], x[b]), &g.mul_vec(co.alpha(x[c], x[d])));
    &(&p(0, 1, 2, 3) - &p(0, 2, 1, 3)) + &p(0, 3, 1, 2)
}

pub fn check_cocycle(base: &BaseAlgebra, module: &OrthogonalModule, co: &QuadraticCocycle) -> Result<CocycleReport> {
    let m = base.dim();
    let k = module.a_dim();
    if co.l_dim() != m || co.a_dim() != k || module.rho.len() != m {
        return Err(Error::Dimension("cocycle, module and l disagree on dimensions".into()));
    }
    let mut d_a = Residual::zero();
    for i in 0..m {
        for j in i + 1..m {
            for t in j + 1..m {
                d_a.absorb_all(d_alpha(base, module, co, i, j, t).iter());
            }
        }
    }
    let mut d_g = Residual::zero();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let x = [a, b, c, d];
                    d_g.absorb(&(&d_gamma(base, co, x) - &half_alpha_wedge_alpha(module, co, x)));
                }
            }
        }
    }
    let th = &base.theta;
    let mut t_a = Residual::zero();
    for i in 0..m {
        for j in 0..m {
            let mut acc = vec![Scalar::int(0); k];
            for p in 0..m {
                for q in 0..m {
                    let w = &th[(p, i)] * &th[(q, j)];
                    if w.is_zero() {
                        continue;
                    }
                    for (o, v) in acc.iter_mut().zip(co.alpha(p, q)) {
                        *o = &*o + &(&w * v);
                    }
                }
            }
            let lhs = module.theta_a.mul_vec(&acc);
            for (x, y) in lhs.iter().zip(co.alpha(i, j)) {
                t_a.absorb(&(x - y));
            }
        }
    }
    let mut t_g = Residual::zero();
    for i in 0..m {
        for j in 0..m {
            for t in 0..m {
                let mut acc = Scalar::int(0);
                for p in 0..m {
                    for q in 0..m {
                        for r in 0..m {
                            let w = &(&th[(p, i)] * &th[(q, j)]) * &th[(r, t)];
                            if !w.is_zero() {
                                acc = &acc + &(&w * co.gamma(p, q, r));
                            }
                        }
                    }
                }
                t_g.absorb(&(&acc - co.gamma(i, j, t)));
            }
        }
    }
    Ok(CocycleReport { d_alpha: d_a, d_gamma: d_g, theta_alpha: t_a, theta_gamma: t_g })
}

/// d = l* ⊕ a ⊕ l as an involutive metric Lie algebra, with block bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricTriple {
    pub metric: InvolutiveMetricLieAlgebra,
    pub l_dim: usize,
    pub a_dim: usize,
}

impl SymmetricTriple {
    pub fn dim(&self) -> usize {
        self.metric.dim()
    }
    pub fn algebra(&self) -> &LieAlgebra {
        &self.metric.algebra
    }
    pub fn gram(&self) -> &Matrix {
        &self.metric.gram
    }
    pub fn theta(&self) -> &Matrix {
        &self.metric.theta
    }
    pub fn lstar_range(&self) -> std::ops::Range<usize> {
        0..self.l_dim
    }
    pub fn a_range(&self) -> std::ops::Range<usize> {
        self.l_dim..self.l_dim + self.a_dim
    }
    pub fn l_range(&self) -> std::ops::Range<usize> {
        self.l_dim + self.a_dim..2 * self.l_dim + self.a_dim
    }
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.metric.algebra.bracket(x, y)
    }
}

/// Assemble the brackets without checking the cocycle conditions.
pub fn build_unchecked(base: &BaseAlgebra, module: &OrthogonalModule, co: &QuadraticCocycle) -> Result<SymmetricTriple> {
    let m = base.dim();
    let k = module.a_dim();
    if co.l_dim() != m || co.a_dim() != k || module.rho.len() != m {
        return Err(Error::Dimension("cocycle, module and l disagree on dimensions".into()));
    }
    let n = 2 * m + k;
    let sig = |p: usize| p;
    let av = |r: usize| m + r;
    let el = |i: usize| m + k + i;
    let zero = || vec![Scalar::int(0); n];
    let mut brackets: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();

    // [σ^p, e_i] = −ad*(e_i)σ^p = Σ_s c_is^p σ^s
    for p in 0..m {
        for i in 0..m {
            let mut v = zero();
            for s in 0..m {
                v[sig(s)] = base.l.get(i, s, p).clone();
            }
            brackets.push((sig(p), el(i), v));
        }
    }
    // [a_r, a_t] = Σ_s ⟨ρ(e_s)a_r, a_t⟩ σ^s
    for r in 0..k {
        for t in r + 1..k {
            let mut v = zero();
            for s in 0..m {
                v[sig(s)] = module.rho[s].transpose().mul(&module.gram_a)[(r, t)].clone();
            }
            brackets.push((av(r), av(t), v));
        }
    }
    // [a_r, e_i] = −ρ(e_i)a_r + ⟨a_r, α(e_i,·)⟩
    for r in 0..k {
        for i in 0..m {
            let mut v = zero();
            for t in 0..k {
                v[av(t)] = -module.rho[i][(t, r)].clone();
            }
            for s in 0..m {
                v[sig(s)] = module.gram_a.mul_vec(co.alpha(i, s))[r].clone();
            }
            brackets.push((av(r), el(i), v));
        }
    }
    // [e_i, e_j] = γ(e_i,e_j,·) + α(e_i,e_j) + [e_i,e_j]_l
    for i in 0..m {
        for j in i + 1..m {
            let mut v = zero();
            for s in 0..m {
                v[sig(s)] = co.gamma(i, j, s).clone();
                v[el(s)] = base.l.get(i, j, s).clone();
            }
            for t in 0..k {
                v[av(t)] = co.alpha(i, j)[t].clone();
            }
            brackets.push((el(i), el(j), v));
        }
    }
    let algebra = LieAlgebra::from_brackets(n, &brackets)?;

    let mut gram = Matrix::zeros(n, n);
    for i in 0..m {
        gram[(sig(i), el(i))] = Scalar::int(1);
        gram[(el(i), sig(i))] = Scalar::int(1);
    }
    for r in 0..k {
        for t in 0..k {
            gram[(av(r), av(t))] = module.gram_a[(r, t)].clone();
        }
    }
    let theta = Matrix::block_diag(&[&base.theta.transpose(), &module.theta_a, &base.theta]);
    Ok(SymmetricTriple { metric: InvolutiveMetricLieAlgebra::new(algebra, gram, theta)?, l_dim: m, a_dim: k })
}

pub fn build_quadratic_extension(
    base: &BaseAlgebra,
    module: &OrthogonalModule,
    co: &QuadraticCocycle,
    tol: &Tolerance,
) -> Result<SymmetricTriple> {
    let rep = check_cocycle(base, module, co)?;
    if !rep.passes(tol) {
        return Err(Error::Cocycle(rep.to_check(tol, 0).note.unwrap_or_default()));
    }
    build_unchecked(base, module, co)
}

/// Outcome of the symmetric-triple axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleReport {
    pub checks: Vec<CheckReport>,
    pub minus_signature: Signature,
    pub plus_dim: usize,
    pub minus_dim: usize,
}

impl TripleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect()
    }
}

pub fn check_symmetric_triple(t: &InvolutiveMetricLieAlgebra, tol: &Tolerance) -> TripleReport {
    let n = t.dim();
    let id = Matrix::identity(n);
    let mut checks = vec![t.algebra.check_jacobi(tol)];

    let mut inv = Residual::zero();
    inv.absorb_all(t.theta.mul(&t.theta).sub(&id).entries());
    checks.push(CheckReport::from_residual("theta-involution", inv, n * n, tol.abs_tol));

    let mut iso = Residual::zero();
    iso.absorb_all(t.theta.congruence(&t.gram).sub(&t.gram).entries());
    checks.push(CheckReport::from_residual("theta-isometry", iso, n * n, tol.abs_tol));

    checks.push(CheckReport::from_residual(
        "theta-automorphism",
        t.algebra.automorphism_residual(&t.theta),
        n * (n - 1) / 2,
        tol.abs_tol,
    ));

    let sig = signature(&t.gram, tol);
    checks.push(
        CheckReport::boolean("nondegenerate", sig.r == 0, 1).with_note(format!("signature ({},{},{})", sig.p, sig.q, sig.r)),
    );

    checks.push(t.algebra.ad_invariance(&t.gram, tol));

    let plus = t.plus_basis(tol);
    let minus = t.minus_basis(tol);
    let mut in_plus = Residual::zero();
    let mut span = Vec::new();
    for i in 0..minus.len() {
        for j in i + 1..minus.len() {
            let b = t.algebra.bracket(&minus[i], &minus[j]).expect("dim");
            let tb = t.theta.mul_vec(&b);
            for (x, y) in tb.iter().zip(&b) {
                in_plus.absorb(&(x - y));
            }
            span.push(b);
        }
    }
    let span_rank = if span.is_empty() { 0 } else { linalg::rank(&Matrix::from_cols(&span), tol) };
    let transvection = in_plus.passes(tol) && span_rank == plus.len();
    checks.push(
        CheckReport {
            status: if transvection { crate::report::Status::Pass } else { crate::report::Status::Fail },
            ..CheckReport::from_residual("transvection", in_plus, span.len(), tol.abs_tol)
        }
        .with_note(format!("dim span[g-,g-] = {span_rank}, dim g+ = {}", plus.len())),
    );

    let minus_signature = t.minus_signature(tol);
    TripleReport { checks, minus_signature, plus_dim: plus.len(), minus_dim: minus.len() }
}

/// The l* block is an isotropic ideal, and stays put under the given
/// inner automorphisms exp(ad x).
pub fn balanced_ideal_check(t: &SymmetricTriple, samples: &[Vec<Scalar>], tol: &Tolerance) -> Result<CheckReport> {
    let n = t.dim();
    let lstar: Vec<usize> = t.lstar_range().collect();
    let outside: Vec<usize> = (0..n).filter(|i| !lstar.contains(i)).collect();
    let mut r = Residual::zero();
    for &p in &lstar {
        for q in 0..n {
            let b = t.algebra().basis_bracket(p, q);
            for &o in &outside {
                r.absorb(&b[o]);
            }
        }
        for &q in &lstar {
            r.absorb(&t.gram()[(p, q)]);
        }
    }
    for x in samples {
        let ad = t.algebra().ad(x);
        let e = matrix_exp(&ad, &Scalar::int(1))?;
        for &p in &lstar {
            let img = e.mul_vec(&unit(n, p));
            for &o in &outside {
                r.absorb(&img[o]);
            }
        }
    }
    Ok(CheckReport::from_residual("balanced-ideal", r, samples.len(), tol.abs_tol))
}
