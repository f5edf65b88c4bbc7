//! Seeded random points, group elements and isometries for the checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::SpaceSpec;
use crate::geometry::{ExtrinsicSpace, IsometryElement, IsometryGroup};
use crate::groups::{AffineElement, HeisAut, HeisExtElement, NGroupElement, OrthoGroup, SlPm2};
use crate::numeric::{matrix_exp, Matrix, Scalar, Tolerance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// p/q with |p| ≤ max_num and 1 ≤ q ≤ max_den.
pub fn rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

pub fn rationals(rng: &mut impl Rng, n: usize, max_num: i64, max_den: i64) -> Vec<Scalar> {
    (0..n).map(|_| rational(rng, max_num, max_den)).collect()
}

pub fn float(rng: &mut impl Rng, lo: f64, hi: f64) -> Scalar {
    Scalar::Float(rng.gen_range(lo..hi))
}

pub fn floats(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Vec<Scalar> {
    (0..n).map(|_| float(rng, lo, hi)).collect()
}

fn skew3(rng: &mut impl Rng) -> Matrix {
    let (a, b, c) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    Matrix::from_fn(3, 3, |i, j| {
        Scalar::Float(match (i, j) {
            (0, 1) => a,
            (1, 0) => -a,
            (0, 2) => b,
            (2, 0) => -b,
            (1, 2) => c,
            (2, 1) => -c,
            _ => 0.0,
        })
    })
}

/// exp of a random antisymmetric matrix with entries uniform in [−2, 2].
pub fn random_so3(rng: &mut impl Rng) -> Matrix {
    matrix_exp(&skew3(rng), &Scalar::int(1)).expect("square")
}

/// exp of a random diag(−1,1,1)-antisymmetric matrix GK, K antisymmetric.
pub fn random_so012(rng: &mut impl Rng) -> Matrix {
    let gk = Matrix::diag_ints(&[-1, 1, 1]).mul(&skew3(rng));
    matrix_exp(&gk, &Scalar::int(1)).expect("square")
}

/// A random element of SL±(2) with rational entries: a product of shears,
/// optionally times diag(1, −1).
pub fn random_sl_pm2(rng: &mut impl Rng, flip: bool) -> SlPm2 {
    let upper = Matrix::from_rows(vec![vec![Scalar::int(1), rational(rng, 3, 2)], vec![Scalar::int(0), Scalar::int(1)]]);
    let lower = Matrix::from_rows(vec![vec![Scalar::int(1), Scalar::int(0)], vec![rational(rng, 3, 2), Scalar::int(1)]]);
    let mut m = upper.mul(&lower);
    if flip {
        m = m.mul(&Matrix::diag_ints(&[1, -1]));
    }
    SlPm2::new(m, &Tolerance::default()).expect("det ±1 by construction")
}

/// Discrete and extra linear factors of the isometry group, by name.
/// Every factor listed for the family appears here.
pub fn heis_factors(spec: &SpaceSpec) -> Vec<(&'static str, HeisAut)> {
    let theta = HeisAut::theta();
    let mut out = vec![("identity", HeisAut::identity()), ("theta", theta.clone())];
    match spec {
        SpaceSpec::X1 { eps1, eps2, lambda } => {
            out.push(("delta(-1,1)", HeisAut::deltas(-1, 1)));
            out.push(("delta(1,-1)", HeisAut::deltas(1, -1)));
            out.push(("delta(-1,-1)", HeisAut::deltas(-1, -1)));
            if eps1 == &-eps2 && *lambda == Scalar::int(1) {
                out.push(("o11-boost", HeisAut::identity()));
            }
        }
        _ => out.push(("delta(-1)", HeisAut::deltas(-1, -1))),
    }
    out
}

/// Linear factors for the Z types: the identity component and the other
/// components of the stated matrix group.
pub fn affine_factors(group: OrthoGroup) -> Vec<(&'static str, Matrix)> {
    let mut out = vec![("identity-component", Matrix::identity(3))];
    match group {
        OrthoGroup::SO3 | OrthoGroup::SO012 => {}
        OrthoGroup::O3 => out.push(("minus-identity", Matrix::diag_ints(&[-1, -1, -1]))),
        OrthoGroup::OPlus12 => out.push(("space-reflection", Matrix::diag_ints(&[1, -1, 1]))),
        OrthoGroup::O12 => {
            out.push(("time-reflection", Matrix::diag_ints(&[-1, 1, 1])));
            out.push(("space-reflection", Matrix::diag_ints(&[1, -1, 1])));
            out.push(("minus-identity", Matrix::diag_ints(&[-1, -1, -1])));
        }
    }
    out
}

/// Number of factors that `random_isometry` cycles through.
pub fn factor_count(group: &IsometryGroup) -> usize {
    match &group.spec {
        SpaceSpec::N { .. } => 2,
        SpaceSpec::Z { .. } | SpaceSpec::Zprime { .. } => affine_factors(group.ortho_group().expect("affine")).len(),
        spec => heis_factors(spec).len(),
    }
}

pub fn factor_names(group: &IsometryGroup) -> Vec<&'static str> {
    match &group.spec {
        SpaceSpec::N { .. } => vec!["sl2", "sl2-flip"],
        SpaceSpec::Z { .. } | SpaceSpec::Zprime { .. } => affine_factors(group.ortho_group().expect("affine")).into_iter().map(|f| f.0).collect(),
        spec => heis_factors(spec).into_iter().map(|f| f.0).collect(),
    }
}

/// A random isometry whose discrete part is factor number `factor`
/// (mod the factor count). N uses rational data; the other families use
/// floats.
pub fn random_isometry(rng: &mut impl Rng, group: &IsometryGroup, factor: usize) -> IsometryElement {
    let k = factor % factor_count(group);
    match &group.spec {
        SpaceSpec::N { .. } => {
            let g = NGroupElement::new([rational(rng, 4, 3), rational(rng, 4, 3)], rational(rng, 4, 3), [rational(rng, 4, 3), rational(rng, 4, 3)]);
            IsometryElement::N { g, s: random_sl_pm2(rng, k == 1) }
        }
        SpaceSpec::Z { .. } | SpaceSpec::Zprime { .. } => {
            let og = group.ortho_group().expect("affine");
            let id_comp = if og.eps() == 1 { random_so3(rng) } else { random_so012(rng) };
            let a = id_comp.mul(&affine_factors(og)[k].1);
            IsometryElement::Affine(AffineElement::new(floats(rng, 3, -2.0, 2.0), a))
        }
        spec => {
            let (name, mut aut) = heis_factors(spec).swap_remove(k);
            if name == "o11-boost" {
                let r: f64 = rng.gen_range(-1.5..1.5);
                let (c, s) = (Scalar::Float(r.cosh()), Scalar::Float(r.sinh()));
                let boost = Matrix::from_rows(vec![vec![c.clone(), s.clone()], vec![s, c]]);
                aut = HeisAut::o11(&boost, &Tolerance::default()).expect("boost is in O(1,1)");
            }
            let g = HeisExtElement::new(float(rng, -1.0, 1.0), floats(rng, 4, -1.0, 1.0), float(rng, -1.0, 1.0));
            IsometryElement::Heis { g, aut }
        }
    }
}

/// A random chart point: rational for N, float in [−1, 1] otherwise.
pub fn random_chart_point(rng: &mut impl Rng, spec: &SpaceSpec) -> Vec<Scalar> {
    match spec {
        SpaceSpec::N { .. } => rationals(rng, 4, 5, 4),
        _ => floats(rng, 4, -1.0, 1.0),
    }
}

/// A random rational point of an extrinsic model (retrying until the
/// construction lands on the right component).
pub fn random_model_point(rng: &mut impl Rng, e: &ExtrinsicSpace) -> Vec<Scalar> {
    loop {
        let d = rationals(rng, if e.ambient_dim() == 5 { 4 } else { 3 }, 4, 3);
        let w = rationals(rng, 3, 4, 3);
        if let Some(p) = e.point_from(&d, &w) {
            if p.iter().all(|x| x.to_f64().abs() <= 50.0) {
                return p;
            }
        }
    }
}
