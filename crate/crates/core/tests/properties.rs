use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sig22::catalog::{build_triple, dc_isomorphism, full_grid, omega0, SpaceSpec};
use sig22::geometry::{
    classify_so12, curvature, fixed_point, fixed_point_residual, ActionMap, IsometryGroup, SO12Class,
};
use sig22::groups::{cross_eps, heis_mul, heisenberg_affine_rep, chart_phi, chart_phi_inverse, AffineElement, HeisExtElement, HeisExtGroup, NGroup, NGroupElement};
use sig22::numeric::{central_difference_jacobian, jacobian, linalg, matrix_exp, signature, Matrix, Scalar, Tolerance};
use sig22::sampling;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn q() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn qs(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(q(), n)
}

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

fn sq(m: &Matrix) -> Matrix {
    m.mul(m)
}

/// (I + K)(I − K)⁻¹ for K skew with respect to `g`; rational whenever K is.
fn cayley(g: &Matrix, skew: &[Scalar]) -> Option<Matrix> {
    let (a, b, c) = (skew[0].clone(), skew[1].clone(), skew[2].clone());
    let sk = Matrix::from_rows(vec![vec![s(0), a.clone(), b.clone()], vec![-a, s(0), c.clone()], vec![-b, -c, s(0)]]);
    let k = linalg::inverse(g, &tol()).ok()?.mul(&sk);
    let id = Matrix::identity(3);
    Some(id.add(&k).mul(&linalg::inverse(&id.sub(&k), &tol()).ok()?))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn signature_is_a_congruence_invariant(d in proptest::collection::vec(-1i64..=1, 4), p in qs(16)) {
        let g = Matrix::diag_ints(&d);
        let p = Matrix::from_vec(4, 4, p).unwrap();
        prop_assume!(!linalg::det(&p).is_zero());
        prop_assert_eq!(signature(&p.transpose().mul(&g).mul(&p), &tol()), signature(&g, &tol()));
    }

    #[test]
    fn exp_is_a_one_parameter_group(l in proptest::collection::vec(-1.0f64..1.0, 9), s1 in -1.0f64..1.0, s2 in -1.0f64..1.0) {
        let l = Matrix::from_vec(3, 3, l).unwrap();
        let lhs = matrix_exp(&l, &s1).unwrap().mul(&matrix_exp(&l, &s2).unwrap());
        let rhs = matrix_exp(&l, &(s1 + s2)).unwrap();
        prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * rhs.max_abs().max(1.0));
    }

    #[test]
    fn dual_jacobian_matches_richardson_differences(seed in any::<u64>(), which in 0usize..6) {
        let spec = [
            SpaceSpec::x1(1, -1, s(1)).unwrap(),
            SpaceSpec::x2(Scalar::ratio(1, 2)).unwrap(),
            SpaceSpec::n(-1).unwrap(),
            SpaceSpec::y(1, -1).unwrap(),
            SpaceSpec::z(1, s(1)).unwrap(),
            SpaceSpec::zprime(s(-1)).unwrap(),
        ][which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = IsometryGroup::for_spec(&spec).unwrap();
        let x = sampling::random_isometry(&mut rng, &group, seed as usize);
        let map = ActionMap { group: &group, element: &x };
        let p = sampling::floats(&mut rng, group.point_dim(), -1.0, 1.0).iter().map(Scalar::to_f64).collect::<Vec<_>>();
        let exact = jacobian(&map, &p).unwrap();
        let fd = central_difference_jacobian(&map, &p, 1e-5);
        prop_assert!(exact.sub(&fd).max_abs() <= 1e-6 * exact.max_abs().max(1.0));
    }

    #[test]
    fn n_group_law_is_exact(kappa in prop_oneof![Just(1i64), Just(-1)], x in qs(5), y in qs(5), z in qs(5)) {
        let grp = NGroup::new(kappa).unwrap();
        let (x, y, z) = (NGroupElement::from_slice(&x), NGroupElement::from_slice(&y), NGroupElement::from_slice(&z));
        prop_assert_eq!(grp.mul(&grp.mul(&x, &y), &z), grp.mul(&x, &grp.mul(&y, &z)));
        prop_assert_eq!(grp.mul(&x, &grp.inverse(&x)), NGroupElement::identity());
        prop_assert_eq!(grp.mul(&NGroupElement::identity(), &x), x);
    }

    /// L = [[0, B], [0, 0]] with B symmetric lies in sp(ω₀) and squares to zero,
    /// so e^{tL} = I + tL and the group law stays rational.
    #[test]
    fn nilpotent_heisenberg_extension_is_exactly_associative(b in qs(3), x in qs(6), y in qs(6), z in qs(6)) {
        let mut l = Matrix::zeros(4, 4);
        l[(0, 2)] = b[0].clone();
        l[(0, 3)] = b[1].clone();
        l[(1, 2)] = b[1].clone();
        l[(1, 3)] = b[2].clone();
        prop_assert!(sq(&l).is_zero_exact());
        let grp = HeisExtGroup::new(l, omega0()).unwrap();
        let (x, y, z) = (HeisExtElement::from_slice(&x), HeisExtElement::from_slice(&y), HeisExtElement::from_slice(&z));
        prop_assert_eq!(grp.mul(&grp.mul(&x, &y), &z), grp.mul(&x, &grp.mul(&y, &z)));
        prop_assert_eq!(grp.mul(&grp.inverse(&x), &x), grp.identity());
    }

    #[test]
    fn affine_heisenberg_rep_is_a_homomorphism(x in qs(5), y in qs(5)) {
        let (z, sum) = heis_mul(&omega0(), (&x[0], &x[1..]), (&y[0], &y[1..]));
        let lhs = heisenberg_affine_rep(&z, &sum);
        let rhs = heisenberg_affine_rep(&x[0], &x[1..]).mul(&heisenberg_affine_rep(&y[0], &y[1..]));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn affine_heisenberg_rep_separates_points(x in qs(5), y in qs(5)) {
        let same = heisenberg_affine_rep(&x[0], &x[1..]) == heisenberg_affine_rep(&y[0], &y[1..]);
        prop_assert_eq!(same, x == y);
    }

    #[test]
    fn heisenberg_chart_round_trips(p in qs(4)) {
        prop_assert_eq!(chart_phi(&chart_phi_inverse(&p)), p);
    }

    #[test]
    fn n_chart_round_trips(kappa in prop_oneof![Just(1i64), Just(-1)], p in qs(4), g in qs(5)) {
        let grp = NGroup::new(kappa).unwrap();
        prop_assert_eq!(grp.chart_phi(&grp.chart_phi_inverse(&p)), p);
        let g = NGroupElement::from_slice(&g);
        let back = grp.chart_phi_inverse(&grp.chart_phi(&g));
        // Φ forgets the stabilizer coordinate; the coset is what survives
        prop_assert_eq!(grp.chart_phi(&back), grp.chart_phi(&g));
    }

    #[test]
    fn cross_product_is_antisymmetric_and_orthogonal(eps in prop_oneof![Just(1i64), Just(-1)], u in qs(3), v in qs(3), w in qs(3), k in q()) {
        let g = Matrix::diag_ints(&[eps, 1, 1]);
        let uv = cross_eps(eps, &u, &v);
        let vu: Vec<Scalar> = cross_eps(eps, &v, &u).into_iter().map(|x| -x).collect();
        prop_assert_eq!(&uv, &vu);
        let ip = |a: &[Scalar], b: &[Scalar]| g.mul_vec(a).iter().zip(b).fold(s(0), |acc, (x, y)| acc + x.clone() * y.clone());
        prop_assert!(ip(&uv, &u).is_zero());
        prop_assert!(ip(&uv, &v).is_zero());
        let lin: Vec<Scalar> = u.iter().zip(&w).map(|(a, b)| a.clone() + k.clone() * b.clone()).collect();
        let split: Vec<Scalar> = uv.iter().zip(cross_eps(eps, &w, &v)).map(|(a, b)| a.clone() + k.clone() * b).collect();
        prop_assert_eq!(cross_eps(eps, &lin, &v), split);
    }

    /// A(u × v) = |A| (Au × Av) for A ∈ O(g); checked exactly on Cayley
    /// transforms and their reflections.
    #[test]
    fn cross_product_is_equivariant(eps in prop_oneof![Just(1i64), Just(-1)], skew in qs(3), flip in any::<bool>(), u in qs(3), v in qs(3)) {
        let g = Matrix::diag_ints(&[eps, 1, 1]);
        let a = cayley(&g, &skew);
        prop_assume!(a.is_some());
        let mut a = a.unwrap();
        let mut sign = s(1);
        if flip {
            a = a.mul(&Matrix::diag_ints(&[1, 1, -1]));
            sign = s(-1);
        }
        prop_assert!(a.congruence(&g).sub(&g).is_zero_exact());
        let lhs = a.mul_vec(&cross_eps(eps, &u, &v));
        let rhs: Vec<Scalar> = cross_eps(eps, &a.mul_vec(&u), &a.mul_vec(&v)).into_iter().map(|x| sign.clone() * x).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn affine_action_is_an_exact_homomorphism(eps in prop_oneof![Just(1i64), Just(-1)], k1 in qs(3), k2 in qs(3), b1 in qs(3), b2 in qs(3), p in qs(6)) {
        let g = Matrix::diag_ints(&[eps, 1, 1]);
        let (a1, a2) = (cayley(&g, &k1), cayley(&g, &k2));
        prop_assume!(a1.is_some() && a2.is_some());
        let x = AffineElement::new(b1, a1.unwrap().mul(&Matrix::diag_ints(&[1, -1, 1])));
        let y = AffineElement::new(b2, a2.unwrap());
        prop_assert_eq!(x.mul(&y).act_point(eps, &p), x.act_point(eps, &y.act_point(eps, &p)));
        prop_assert_eq!(x.mul(&x.inverse(eps)), AffineElement::identity());
    }

    #[test]
    fn rotations_of_z_have_fixed_points(skew in qs(3), b in qs(3), c in q()) {
        let spec = SpaceSpec::z(1, c).unwrap();
        let a = cayley(&Matrix::identity(3), &skew).unwrap();
        let g = AffineElement::new(b, a);
        let p = fixed_point(&spec, &g, &tol()).unwrap();
        prop_assert!(p.is_some());
        let p = p.unwrap();
        let (act, on) = fixed_point_residual(&spec, &g, &p).unwrap();
        prop_assert!(act.value <= 1e-9, "action residual {}", act.value);
        prop_assert!(on.value <= 1e-10, "model residual {}", on.value);
    }

    /// SO₀(1,2) as Ad(SL₂ℝ) on sl₂ in the basis (E − F, H, E + F), where the
    /// trace form is 2·diag(−1, 1, 1). The class of Ad(g) is read off |tr g|.
    #[test]
    fn so12_class_follows_the_sl2_trace(g in sl2(), h in sl2()) {
        let a = ad(&g);
        let tr_g = g.trace();
        prop_assert_eq!(a.trace(), tr_g.clone() * tr_g.clone() - s(1));
        let t = tr_g.abs();
        let expected = if g == Matrix::identity(2) || g == Matrix::identity(2).scale(&s(-1)) {
            SO12Class::Identity
        } else if t > s(2) {
            SO12Class::Hyperbolic
        } else if t == s(2) {
            SO12Class::Parabolic
        } else {
            SO12Class::Elliptic
        };
        prop_assert_eq!(classify_so12(&a, &tol()).unwrap(), expected);
        let p = ad(&h);
        let p_inv = ad(&linalg::inverse(&h, &tol()).unwrap());
        prop_assert_eq!(classify_so12(&p.mul(&a).mul(&p_inv), &tol()).unwrap(), expected);
    }

    /// R(X,Y)Z = [[X,Y],Z] on Z(ε,c) in the l⋊l presentation, against the
    /// bracket [(v,x),(w,y)] = (x×w − y×v, x×y) written out directly.
    #[test]
    fn z_curvature_matches_double_brackets(eps in prop_oneof![Just(1i64), Just(-1)], c in q(), x in qs(4), y in qs(4), z in qs(4)) {
        let spec = SpaceSpec::z(eps, c).unwrap();
        let t = dc_isomorphism(&spec, &tol()).unwrap().target;
        // θ_l = diag(1, −1, −1): g₋ = span(e2, e3) in both summands
        let embed = |w: &[Scalar]| vec![s(0), w[0].clone(), w[1].clone(), s(0), w[2].clone(), w[3].clone()];
        let (x, y, z) = (embed(&x), embed(&y), embed(&z));
        let got = curvature(&t, &x, &y, &z, &tol()).unwrap();
        prop_assert_eq!(got, oracle_bracket(eps, &oracle_bracket(eps, &x, &y), &z));
    }
}

fn sl2() -> impl Strategy<Value = Matrix> {
    (q(), q(), 1i64..=4, 1i64..=4, any::<bool>()).prop_map(|(a, b, n, d, neg)| {
        let upper = Matrix::from_rows(vec![vec![s(1), a], vec![s(0), s(1)]]);
        let lower = Matrix::from_rows(vec![vec![s(1), s(0)], vec![b, s(1)]]);
        let r = Scalar::ratio(n, d);
        let diag = Matrix::diag(&[r.clone(), r.recip()]);
        let g = upper.mul(&diag).mul(&lower);
        if neg { g.scale(&s(-1)) } else { g }
    })
}

fn ad(g: &Matrix) -> Matrix {
    let g_inv = linalg::inverse(g, &tol()).unwrap();
    let basis = [
        Matrix::from_ints(&[&[0, 1], &[-1, 0]]),
        Matrix::from_ints(&[&[1, 0], &[0, -1]]),
        Matrix::from_ints(&[&[0, 1], &[1, 0]]),
    ];
    let half = Scalar::ratio(1, 2);
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|x| {
            let y = g.mul(x).mul(&g_inv);
            let (a, b, c) = (y[(0, 0)].clone(), y[(0, 1)].clone(), y[(1, 0)].clone());
            vec![half.clone() * (b.clone() - c.clone()), a, half.clone() * (b + c)]
        })
        .collect();
    Matrix::from_cols(&cols)
}

fn oracle_cross(eps: i64, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    vec![
        s(eps) * (u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone()),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ]
}

fn oracle_bracket(eps: i64, p: &[Scalar], r: &[Scalar]) -> Vec<Scalar> {
    let (v, x, w, y) = (&p[..3], &p[3..], &r[..3], &r[3..]);
    let first: Vec<Scalar> = oracle_cross(eps, x, w).into_iter().zip(oracle_cross(eps, y, v)).map(|(a, b)| a - b).collect();
    first.into_iter().chain(oracle_cross(eps, x, y)).collect()
}

#[test]
fn z_curvature_basis_example() {
    let spec = SpaceSpec::z(1, Scalar::ratio(1, 2)).unwrap();
    let t = dc_isomorphism(&spec, &tol()).unwrap().target;
    let e = |i: usize| (0..6).map(|k| s((k == i) as i64)).collect::<Vec<_>>();
    // R(e2,e3)e2 with e2, e3 in the l summand: [[e2,e3],e2] = e1 × e2 = e3
    assert_eq!(curvature(&t, &e(4), &e(5), &e(4), &tol()).unwrap(), e(5));
    assert_eq!(curvature(&t, &e(4), &e(5), &e(4), &tol()).unwrap(), oracle_bracket(1, &oracle_bracket(1, &e(4), &e(5)), &e(4)));
}

#[test]
fn affine_heisenberg_rep_is_injective_on_a_sample() {
    let mut rng = sampling::rng(11);
    let mut inputs = HashSet::new();
    let mut images = HashSet::new();
    for _ in 0..1000 {
        let x = sampling::rationals(&mut rng, 5, 6, 4);
        let m = heisenberg_affine_rep(&x[0], &x[1..]);
        let key = |v: &[Scalar]| v.iter().map(Scalar::render).collect::<Vec<_>>().join(",");
        inputs.insert(key(&x));
        images.insert(key(m.entries()));
    }
    assert_eq!(inputs.len(), images.len());
}

#[test]
fn catalog_triples_split_four_dimensional_minus_parts() {
    for spec in full_grid() {
        let t = build_triple(&spec, &tol()).unwrap().metric;
        assert_eq!(t.minus_basis(&tol()).len(), 4, "{}", spec.label());
        assert_eq!(t.plus_basis(&tol()).len(), t.dim() - 4, "{}", spec.label());
        let killing = t.algebra.killing_form();
        assert!(t.algebra.ad_invariance_residual(&killing).is_exact_zero(), "{}", spec.label());
    }
}
