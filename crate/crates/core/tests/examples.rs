use sig22::catalog::{build_triple, dc_isomorphism, full_grid, item_data, SpaceSpec};
use sig22::geometry::{classify_so12, extrinsic_space, Embedding, SO12Class};
use sig22::lie::InvolutiveMetricLieAlgebra;
use sig22::numeric::matrix::form;
use sig22::numeric::{linalg, matrix_exp, signature, Matrix, Scalar, Signature, Tolerance};
use sig22::quadext::{check_cocycle, check_symmetric_triple};
use sig22::sampling;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|k| s((k == i) as i64)).collect()
}

#[test]
fn semidirect_gram_at_c_zero_is_split() {
    for spec in [SpaceSpec::z(1, s(0)).unwrap(), SpaceSpec::z(-1, s(0)).unwrap(), SpaceSpec::zprime(s(0)).unwrap()] {
        let g = dc_isomorphism(&spec, &tol()).unwrap().target.gram;
        // [[0, β], [β, 0]] with β nondegenerate: a sum of three hyperbolic planes
        assert!(g.submatrix(&[0, 1, 2], &[0, 1, 2]).is_zero_exact());
        assert_eq!(signature(&g, &tol()), Signature::new(3, 3, 0), "{}", spec.label());
    }
}

#[test]
fn complex_ambient_form_realifies_to_three_two() {
    let e = extrinsic_space(&SpaceSpec::n(1).unwrap(), Embedding::NComplex).unwrap();
    // dη1dη̄2 + dη̄1dη2 = 2(da dp + db dq) on (a, b, x, p, q), plus κ dx²
    let oracle = Matrix::from_ints(&[&[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1], &[0, 0, 1, 0, 0], &[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]]);
    let eta = e.gram.clone();
    let scale = eta[(0, 3)].clone();
    assert_eq!(eta, oracle.scale(&scale));
    assert_eq!(signature(&eta, &tol()), Signature::new(3, 2, 0));
}

/// Brackets of N(κ) from [l,l'] = γ(l,l',·) + α(l,l') + [l,l']_l and
/// [l,a] = ρ(l)a − ⟨a, α(l,·)⟩, with α(e1,e2) = a₀, ⟨a₀,a₀⟩ = κ, l abelian.
#[test]
fn n_brackets_match_the_extension_formulas() {
    for kappa in [1, -1] {
        let t = build_triple(&SpaceSpec::n(kappa).unwrap(), &tol()).unwrap();
        let alg = t.algebra();
        // basis (σ¹, σ², a₀, e1, e2)
        assert_eq!(alg.basis_bracket(3, 4), unit(5, 2));
        // [e2, a₀] = −⟨a₀, α(e2,·)⟩ = κσ¹ since α(e2,e1) = −a₀
        assert_eq!(alg.basis_bracket(4, 2), vec![s(kappa), s(0), s(0), s(0), s(0)]);
        assert_eq!(alg.basis_bracket(2, 4), vec![s(-kappa), s(0), s(0), s(0), s(0)]);
        assert_eq!(alg.basis_bracket(3, 2), vec![s(0), s(-kappa), s(0), s(0), s(0)]);
        assert!(alg.basis_bracket(0, 3).iter().all(Scalar::is_zero));
    }
}

/// [e1, a] = ρ(e1)a and [a, a'] = ⟨ρ(e1)a, a'⟩σ for X1(ε1, ε2, 1), with ρ
/// and ⟨,⟩_a typed in from the list item.
#[test]
fn x1_brackets_match_rho() {
    for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let t = build_triple(&SpaceSpec::x1(e1, e2, s(1)).unwrap(), &tol()).unwrap();
        let rho = Matrix::from_ints(&[&[0, 0, e1, 0], &[0, 0, 0, -e2], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let gram_a = Matrix::diag_ints(&[e1, e2, -1, 1]);
        // basis (σ, a1..a4, e1)
        for i in 0..4 {
            let mut want = vec![s(0)];
            want.extend(rho.col(i));
            want.push(s(0));
            assert_eq!(t.algebra().basis_bracket(5, 1 + i), want);
            for j in 0..4 {
                let mut want = vec![form(&gram_a, &rho.col(i), &unit(4, j))];
                want.extend(vec![s(0); 5]);
                assert_eq!(t.algebra().basis_bracket(1 + i, 1 + j), want, "X1({e1},{e2}) [a{i},a{j}]");
            }
        }
    }
}

#[test]
fn item4_cocycle_is_closed_and_theta_invariant() {
    for c in [s(-1), s(0), Scalar::ratio(3, 2)] {
        let (base, module, co) = item_data(&SpaceSpec::z(1, c.clone()).unwrap()).unwrap();
        assert!(co.alpha(0, 1).is_empty() || co.alpha(0, 1).iter().all(Scalar::is_zero));
        assert_eq!(co.gamma(0, 1, 2), &c);
        let rep = check_cocycle(&base, &module, &co).unwrap();
        assert!(rep.total().is_exact_zero());
        // θ_l = diag(1, −1, −1) has determinant 1, so θ_l*γ = γ for the volume form
        assert_eq!(linalg::det(&base.theta), s(1));
    }
}

#[test]
fn flipped_module_form_breaks_ad_invariance() {
    let t = build_triple(&SpaceSpec::x1(1, 1, s(1)).unwrap(), &tol()).unwrap().metric;
    let mut gram = t.gram.clone();
    gram[(1, 1)] = -gram[(1, 1)].clone();
    let broken = InvolutiveMetricLieAlgebra::new(t.algebra.clone(), gram, t.theta.clone()).unwrap();
    let failures = check_symmetric_triple(&broken, &tol()).failures().into_iter().map(String::from).collect::<Vec<_>>();
    assert!(failures.contains(&"ad-invariance".to_string()), "{failures:?}");
}

#[test]
fn exponentials_of_inner_derivations_from_g_plus_are_automorphisms() {
    let mut rng = sampling::rng(3);
    for spec in full_grid() {
        let t = build_triple(&spec, &tol()).unwrap().metric;
        let plus = t.plus_basis(&tol());
        let coeffs = sampling::floats(&mut rng, plus.len(), -1.0, 1.0);
        let x = plus.iter().zip(&coeffs).fold(vec![s(0); t.dim()], |acc, (b, k)| acc.iter().zip(b).map(|(a, b)| a + &(k * b)).collect());
        let f = matrix_exp(&t.algebra.ad(&x), &s(1)).unwrap();
        let r = t.algebra.automorphism_residual(&f);
        assert!(r.within(1e-9), "{}: {r:?}", spec.label());
    }
}

#[test]
fn ad_of_an_eighth_turn_is_elliptic() {
    // g = rotation by π/4 in SL(2): Ad(g) rotates by π/2, trace 1 + 2cos(π/2) = 1
    let (c, sn) = (std::f64::consts::FRAC_PI_4.cos(), std::f64::consts::FRAC_PI_4.sin());
    // Ad in the basis (E − F, H, E + F): fixes E − F, rotates (H, E + F) by 2·π/4
    let (c2, s2) = (c * c - sn * sn, 2.0 * sn * c);
    let a = Matrix::from_rows(vec![
        vec![Scalar::float(1.0), Scalar::float(0.0), Scalar::float(0.0)],
        vec![Scalar::float(0.0), Scalar::float(c2), Scalar::float(-s2)],
        vec![Scalar::float(0.0), Scalar::float(s2), Scalar::float(c2)],
    ]);
    assert!((a.trace().to_f64() - 1.0).abs() < 1e-15);
    assert!(2.0 * c < 2.0);
    assert_eq!(classify_so12(&a, &tol()).unwrap(), SO12Class::Elliptic);
}
