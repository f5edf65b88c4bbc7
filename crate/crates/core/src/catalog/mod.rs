//! The six families and their symmetric triples.

mod presentation;
mod structures;

pub use presentation::{dc_isomorphism, heis_presentation, l_of, omega0, semidirect_triple, y_heisenberg_presentation, PresentationMap};
pub use structures::{check_j, hermitian_j, para_j, JKind};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::numeric::matrix::Matrix;
use crate::numeric::{Scalar, Tolerance};
use crate::quadext::{build_quadratic_extension, BaseAlgebra, OrthogonalModule, QuadraticCocycle, SymmetricTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    X1,
    X2,
    N,
    Y,
    Z,
    Zprime,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::X1, Family::X2, Family::N, Family::Y, Family::Z, Family::Zprime];

    pub fn name(self) -> &'static str {
        match self {
            Family::X1 => "X1",
            Family::X2 => "X2",
            Family::N => "N",
            Family::Y => "Y",
            Family::Z => "Z",
            Family::Zprime => "Zprime",
        }
    }

    /// Families whose transvection group is a Heisenberg extension G_L.
    pub fn is_heisenberg(self) -> bool {
        matches!(self, Family::X1 | Family::X2 | Family::Y)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with admissible parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceSpec {
    X1 { eps1: i64, eps2: i64, lambda: Scalar },
    X2 { nu: Scalar },
    N { kappa: i64 },
    Y { eps: i64, kappa: i64 },
    Z { eps: i64, c: Scalar },
    Zprime { c: Scalar },
}

fn check_sign(name: &str, v: i64) -> Result<()> {
    if v == 1 || v == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be ±1, got {v}")))
    }
}

fn check_positive(name: &str, v: &Scalar) -> Result<()> {
    if v.signum() > 0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be > 0, got {}", v.render())))
    }
}

impl SpaceSpec {
    pub fn x1(eps1: i64, eps2: i64, lambda: Scalar) -> Result<Self> {
        check_sign("eps1", eps1)?;
        check_sign("eps2", eps2)?;
        check_positive("lambda", &lambda)?;
        Ok(SpaceSpec::X1 { eps1, eps2, lambda })
    }

    pub fn x2(nu: Scalar) -> Result<Self> {
        check_positive("nu", &nu)?;
        Ok(SpaceSpec::X2 { nu })
    }

    pub fn n(kappa: i64) -> Result<Self> {
        check_sign("kappa", kappa)?;
        Ok(SpaceSpec::N { kappa })
    }

    pub fn y(eps: i64, kappa: i64) -> Result<Self> {
        check_sign("eps", eps)?;
        check_sign("kappa", kappa)?;
        Ok(SpaceSpec::Y { eps, kappa })
    }

    pub fn z(eps: i64, c: Scalar) -> Result<Self> {
        check_sign("eps", eps)?;
        Ok(SpaceSpec::Z { eps, c })
    }

    pub fn zprime(c: Scalar) -> Result<Self> {
        Ok(SpaceSpec::Zprime { c })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::X1 { eps1, eps2, lambda } => SpaceSpec::x1(*eps1, *eps2, lambda.clone()).map(|_| ()),
            SpaceSpec::X2 { nu } => check_positive("nu", nu),
            SpaceSpec::N { kappa } => check_sign("kappa", *kappa),
            SpaceSpec::Y { eps, kappa } => check_sign("eps", *eps).and(check_sign("kappa", *kappa)),
            SpaceSpec::Z { eps, .. } => check_sign("eps", *eps),
            SpaceSpec::Zprime { .. } => Ok(()),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            SpaceSpec::X1 { .. } => Family::X1,
            SpaceSpec::X2 { .. } => Family::X2,
            SpaceSpec::N { .. } => Family::N,
            SpaceSpec::Y { .. } => Family::Y,
            SpaceSpec::Z { .. } => Family::Z,
            SpaceSpec::Zprime { .. } => Family::Zprime,
        }
    }

    /// Parameters in declaration order, rendered exactly.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        let i = |v: &i64| v.to_string();
        match self {
            SpaceSpec::X1 { eps1, eps2, lambda } => vec![("eps1", i(eps1)), ("eps2", i(eps2)), ("lambda", lambda.render())],
            SpaceSpec::X2 { nu } => vec![("nu", nu.render())],
            SpaceSpec::N { kappa } => vec![("kappa", i(kappa))],
            SpaceSpec::Y { eps, kappa } => vec![("eps", i(eps)), ("kappa", i(kappa))],
            SpaceSpec::Z { eps, c } => vec![("eps", i(eps)), ("c", c.render())],
            SpaceSpec::Zprime { c } => vec![("c", c.render())],
        }
    }

    pub fn label(&self) -> String {
        let ps: Vec<String> = self.params().into_iter().map(|(_, v)| v).collect();
        format!("{}({})", self.family(), ps.join(","))
    }

    /// True when every parameter is an exact rational.
    pub fn is_exact(&self) -> bool {
        match self {
            SpaceSpec::X1 { lambda, .. } => lambda.is_exact(),
            SpaceSpec::X2 { nu } => nu.is_exact(),
            SpaceSpec::Z { c, .. } | SpaceSpec::Zprime { c } => c.is_exact(),
            _ => true,
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| s(x)).collect()
}

/// The three-dimensional algebras of the list, all of the form
/// [e1,e2] = e3, [e1,e3] = p e2, [e2,e3] = q e1.
fn three_dim(p: i64, q: i64) -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, v(&[0, 0, 1])), (0, 2, v(&[0, p, 0])), (1, 2, v(&[q, 0, 0]))]).expect("static data")
}

/// Base algebra, module and cocycle of a list item.
pub fn item_data(spec: &SpaceSpec) -> Result<(BaseAlgebra, OrthogonalModule, QuadraticCocycle)> {
    spec.validate()?;
    Ok(match spec {
        SpaceSpec::X1 { eps1, eps2, lambda } => {
            let (e1, e2, la) = (s(*eps1), s(*eps2), lambda.clone());
            // ρ(e1)(a1,a2,a3,a4) = (ε1 a3, −ε2 λ a4, a1, λ a2)
            let rho = Matrix::from_rows(vec![
                vec![s(0), s(0), e1.clone(), s(0)],
                vec![s(0), s(0), s(0), -(&e2 * &la)],
                vec![s(1), s(0), s(0), s(0)],
                vec![s(0), la, s(0), s(0)],
            ]);
            let module = OrthogonalModule {
                rho: vec![rho],
                gram_a: Matrix::diag(&[e1, e2, s(-1), s(1)]),
                theta_a: Matrix::diag_ints(&[1, 1, -1, -1]),
            };
            (BaseAlgebra::new(LieAlgebra::abelian(1), Matrix::diag_ints(&[-1]))?, module, QuadraticCocycle::zero(1, 4))
        }
        SpaceSpec::X2 { nu } => {
            let n = nu.clone();
            // ρ(e1)(a) = (−ν a3 + a4, a3 + ν a4, ν a1 + a2, a1 − ν a2)
            let rho = Matrix::from_rows(vec![
                vec![s(0), s(0), -n.clone(), s(1)],
                vec![s(0), s(0), s(1), n.clone()],
                vec![n.clone(), s(1), s(0), s(0)],
                vec![s(1), -n, s(0), s(0)],
            ]);
            let module = OrthogonalModule {
                rho: vec![rho],
                gram_a: Matrix::diag_ints(&[-1, 1, -1, 1]),
                theta_a: Matrix::diag_ints(&[1, 1, -1, -1]),
            };
            (BaseAlgebra::new(LieAlgebra::abelian(1), Matrix::diag_ints(&[-1]))?, module, QuadraticCocycle::zero(1, 4))
        }
        SpaceSpec::N { kappa } => {
            let module = OrthogonalModule {
                rho: vec![Matrix::zeros(1, 1); 2],
                gram_a: Matrix::diag_ints(&[*kappa]),
                theta_a: Matrix::identity(1),
            };
            let co = QuadraticCocycle::zero(2, 1).with_alpha(0, 1, v(&[1]));
            (BaseAlgebra::new(LieAlgebra::abelian(2), Matrix::diag_ints(&[-1, -1]))?, module, co)
        }
        SpaceSpec::Y { eps, kappa } => {
            let l = LieAlgebra::from_brackets(3, &[(0, 1, v(&[0, 0, 1])), (0, 2, v(&[0, -eps, 0]))])?;
            let co = QuadraticCocycle::zero(3, 0).with_gamma(0, 1, 2, s(*kappa));
            (BaseAlgebra::new(l, Matrix::diag_ints(&[-1, -1, 1]))?, OrthogonalModule::trivial(3), co)
        }
        SpaceSpec::Z { eps, c } => {
            let co = QuadraticCocycle::zero(3, 0).with_gamma(0, 1, 2, c.clone());
            (BaseAlgebra::new(three_dim(-1, *eps), Matrix::diag_ints(&[1, -1, -1]))?, OrthogonalModule::trivial(3), co)
        }
        SpaceSpec::Zprime { c } => {
            let co = QuadraticCocycle::zero(3, 0).with_gamma(0, 1, 2, c.clone());
            (BaseAlgebra::new(three_dim(-1, -1), Matrix::diag_ints(&[-1, 1, -1]))?, OrthogonalModule::trivial(3), co)
        }
    })
}

pub fn build_triple(spec: &SpaceSpec, tol: &Tolerance) -> Result<SymmetricTriple> {
    let (base, module, co) = item_data(spec)?;
    build_quadratic_extension(&base, &module, &co, tol)
}

/// Default parameter grid.
pub fn default_grid() -> Vec<SpaceSpec> {
    grid(&[Scalar::ratio(1, 2), s(1), s(2)], &[s(-1), s(0), s(1)])
}

/// Default grid plus λ, ν ∈ {1/3, 3} and c ∈ {−2, 2}.
pub fn full_grid() -> Vec<SpaceSpec> {
    grid(
        &[Scalar::ratio(1, 3), Scalar::ratio(1, 2), s(1), s(2), s(3)],
        &[s(-2), s(-1), s(0), s(1), s(2)],
    )
}

fn grid(positive: &[Scalar], cs: &[Scalar]) -> Vec<SpaceSpec> {
    let signs = [1, -1];
    let mut out = Vec::new();
    for &e1 in &signs {
        for &e2 in &signs {
            for l in positive {
                out.push(SpaceSpec::X1 { eps1: e1, eps2: e2, lambda: l.clone() });
            }
        }
    }
    for n in positive {
        out.push(SpaceSpec::X2 { nu: n.clone() });
    }
    for &k in &signs {
        out.push(SpaceSpec::N { kappa: k });
    }
    for &e in &signs {
        for &k in &signs {
            out.push(SpaceSpec::Y { eps: e, kappa: k });
        }
    }
    for &e in &signs {
        for c in cs {
            out.push(SpaceSpec::Z { eps: e, c: c.clone() });
        }
    }
    for c in cs {
        out.push(SpaceSpec::Zprime { c: c.clone() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x1_rho_example() {
        let spec = SpaceSpec::x1(1, -1, s(1)).unwrap();
        let (_, module, _) = item_data(&spec).unwrap();
        let a = v(&[1, 2, 3, 4]);
        assert_eq!(module.rho[0].mul_vec(&a), v(&[3, 4, 1, 2]));
    }

    #[test]
    fn n_triple_is_five_dimensional() {
        let t = build_triple(&SpaceSpec::n(1).unwrap(), &Tolerance::default()).unwrap();
        assert_eq!(t.dim(), 5);
        assert_eq!(t.gram()[(2, 2)], s(1));
    }

    #[test]
    fn invalid_parameters() {
        assert!(SpaceSpec::x1(1, 1, s(0)).is_err());
        assert!(SpaceSpec::x2(s(-1)).is_err());
        assert!(SpaceSpec::n(2).is_err());
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(default_grid().len(), 30);
        assert_eq!(full_grid().len(), 46);
    }

    #[test]
    fn perturbed_item4_constant_breaks_jacobi() {
        let t = build_triple(&SpaceSpec::z(1, s(0)).unwrap(), &Tolerance::default()).unwrap();
        let n = t.dim();
        let mut c = t.algebra().constants().to_vec();
        // [e1, e2] = (1 + 10⁻³) e3 in the 6-dim table; indices e1 = 3, e2 = 4, e3 = 5
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        c[idx(3, 4, 5)] = Scalar::ratio(1001, 1000);
        c[idx(4, 3, 5)] = Scalar::ratio(-1001, 1000);
        let bad = LieAlgebra::from_constants(n, c, &Tolerance::default()).unwrap();
        let rep = bad.check_jacobi(&Tolerance::default());
        assert!(!rep.passed());
        assert!(t.algebra().check_jacobi(&Tolerance::default()).passed());
    }
}
