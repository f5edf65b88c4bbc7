//! Families and verification checks, looked up by name.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{full_grid, default_grid, hermitian_j, para_j, Family, SpaceSpec};
use crate::error::{Error, Result};
use crate::geometry::Embedding;
use crate::numeric::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// ±1
    Sign,
    /// a real number > 0
    Positive,
    /// any real number
    Real,
}

impl Domain {
    pub fn describe(self) -> &'static str {
        match self {
            Domain::Sign => "{-1, 1}",
            Domain::Positive => "(0, inf)",
            Domain::Real => "R",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Param {
    pub name: &'static str,
    pub domain: Domain,
}

const fn p(name: &'static str, domain: Domain) -> Param {
    Param { name, domain }
}

/// What a family supports beyond the triple itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Supports {
    pub hermitian_j: bool,
    pub para_j: bool,
    pub coordinate_chart: bool,
    pub embeddings: Vec<&'static str>,
    pub fixed_point_solver: bool,
}

pub trait SpaceFamily: Send + Sync {
    fn family(&self) -> Family;
    fn params(&self) -> &'static [Param];
    /// Build a spec from values in `params()` order.
    fn build(&self, values: &[Scalar]) -> Result<SpaceSpec>;
    fn example(&self) -> SpaceSpec;

    fn name(&self) -> &'static str {
        self.family().name()
    }

    fn supports(&self) -> Supports {
        let ex = self.example();
        Supports {
            hermitian_j: hermitian_j(&ex).is_some(),
            para_j: para_j(&ex).is_some(),
            coordinate_chart: crate::geometry::model_metric(&ex).is_ok(),
            embeddings: Embedding::for_spec(&ex).into_iter().map(Embedding::name).collect(),
            fixed_point_solver: matches!(ex, SpaceSpec::Z { .. } | SpaceSpec::Zprime { .. }),
        }
    }

    fn grid(&self, full: bool) -> Vec<SpaceSpec> {
        let all = if full { full_grid() } else { default_grid() };
        all.into_iter().filter(|s| s.family() == self.family()).collect()
    }
}

fn sign(v: &Scalar, name: &str) -> Result<i64> {
    [1, -1]
        .into_iter()
        .find(|&k| *v == Scalar::int(k))
        .ok_or_else(|| Error::InvalidParameter(format!("{name} must be ±1, got {}", v.render())))
}

struct X1Family;
struct X2Family;
struct NFamily;
struct YFamily;
struct ZFamily;
struct ZprimeFamily;

impl SpaceFamily for X1Family {
    fn family(&self) -> Family {
        Family::X1
    }
    fn params(&self) -> &'static [Param] {
        const P: [Param; 3] = [p("eps1", Domain::Sign), p("eps2", Domain::Sign), p("lambda", Domain::Positive)];
        &P
    }
    fn build(&self, v: &[Scalar]) -> Result<SpaceSpec> {
        SpaceSpec::x1(sign(&v[0], "eps1")?, sign(&v[1], "eps2")?, v[2].clone())
    }
    fn example(&self) -> SpaceSpec {
        SpaceSpec::X1 { eps1: 1, eps2: 1, lambda: Scalar::int(1) }
    }
}

impl SpaceFamily for X2Family {
    fn family(&self) -> Family {
        Family::X2
    }
    fn params(&self) -> &'static [Param] {
        const P: [Param; 1] = [p("nu", Domain::Positive)];
        &P
    }
    fn build(&self, v: &[Scalar]) -> Result<SpaceSpec> {
        SpaceSpec::x2(v[0].clone())
    }
    fn example(&self) -> SpaceSpec {
        SpaceSpec::X2 { nu: Scalar::int(1) }
    }
}

impl SpaceFamily for NFamily {
    fn family(&self) -> Family {
        Family::N
    }
    fn params(&self) -> &'static [Param] {
        const P: [Param; 1] = [p("kappa", Domain::Sign)];
        &P
    }
    fn build(&self, v: &[Scalar]) -> Result<SpaceSpec> {
        SpaceSpec::n(sign(&v[0], "kappa")?)
    }
    fn example(&self) -> SpaceSpec {
        SpaceSpec::N { kappa: 1 }
    }
}

impl SpaceFamily for YFamily {
    fn family(&self) -> Family {
        Family::Y
    }
    fn params(&self) -> &'static [Param] {
        const P: [Param; 2] = [p("eps", Domain::Sign), p("kappa", Domain::Sign)];
        &P
    }
    fn build(&self, v: &[Scalar]) -> Result<SpaceSpec> {
        SpaceSpec::y(sign(&v[0], "eps")?, sign(&v[1], "kappa")?)
    }
    fn example(&self) -> SpaceSpec {
        SpaceSpec::Y { eps: 1, kappa: 1 }
    }
}

impl SpaceFamily for ZFamily {
    fn family(&self) -> Family {
        Family::Z
    }
    fn params(&self) -> &'static [Param] {
        const P: [Param; 2] = [p("eps", Domain::Sign), p("c", Domain::Real)];
        &P
    }
    fn build(&self, v: &[Scalar]) -> Result<SpaceSpec> {
        SpaceSpec::z(sign(&v[0], "eps")?, v[1].clone())
    }
    fn example(&self) -> SpaceSpec {
        SpaceSpec::Z { eps: 1, c: Scalar::int(0) }
    }
}

impl SpaceFamily for ZprimeFamily {
    fn family(&self) -> Family {
        Family::Zprime
    }
    fn params(&self) -> &'static [Param] {
        const P: [Param; 1] = [p("c", Domain::Real)];
        &P
    }
    fn build(&self, v: &[Scalar]) -> Result<SpaceSpec> {
        SpaceSpec::zprime(v[0].clone())
    }
    fn example(&self) -> SpaceSpec {
        SpaceSpec::Zprime { c: Scalar::int(0) }
    }
}

/// All families in catalog order.
pub fn families() -> Vec<Box<dyn SpaceFamily>> {
    vec![Box::new(X1Family), Box::new(X2Family), Box::new(NFamily), Box::new(YFamily), Box::new(ZFamily), Box::new(ZprimeFamily)]
}

/// Case-insensitive lookup; `Z'` is accepted for `Zprime`.
pub fn family(name: &str) -> Result<Box<dyn SpaceFamily>> {
    let key = name.trim().replace('\'', "prime").to_ascii_lowercase();
    families()
        .into_iter()
        .find(|f| f.name().to_ascii_lowercase() == key)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown family {name:?}")))
}

/// Parse a spec from a family name and string-valued parameters. Every
/// parameter of the family must be present and no others.
pub fn parse_spec(name: &str, args: &BTreeMap<String, String>) -> Result<SpaceSpec> {
    let fam = family(name)?;
    let known: Vec<&str> = fam.params().iter().map(|p| p.name).collect();
    if let Some(extra) = args.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(Error::InvalidParameter(format!("{} takes no parameter {extra:?}", fam.name())));
    }
    let mut values = Vec::new();
    for param in fam.params() {
        let raw = args
            .get(param.name)
            .ok_or_else(|| Error::InvalidParameter(format!("{} needs --{}", fam.name(), param.name)))?;
        values.push(raw.parse::<Scalar>()?);
    }
    fam.build(&values)
}
