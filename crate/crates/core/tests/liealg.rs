mod common;

use common::{s, so3_chart};
use dirac_core::exactalg::{parse_poly, Scalar};
use dirac_core::liealg::*;
use dirac_core::oracle::alg_schouten_oracle;
use proptest::prelude::*;

fn vec_of(g: &LieAlgebra, terms: &[(usize, i64)]) -> Vec<Scalar> {
    let mut v = vec![s(0); g.dim()];
    for &(i, c) in terms {
        v[i] = s(c);
    }
    v
}

#[test]
fn validation_examples() {
    assert!(validate_lie(&so3()).is_valid());
    let bad = LieAlgebra::from_raw(vec!["a".into(), "b".into(), "c".into()], [(0, 1, 2, s(1)), (1, 0, 2, s(1))]);
    assert_eq!(validate_lie(&bad), LieVerdict::NotAntisymmetric { i: 0, j: 1 });
    // sl(2) with [h, e] = 3e breaks Jacobi
    let perturbed = LieAlgebra::from_brackets(
        vec!["e".into(), "f".into(), "h".into()],
        [(0, 1, vec![s(0), s(0), s(1)]), (2, 0, vec![s(3), s(0), s(0)]), (2, 1, vec![s(0), s(-2), s(0)])],
    );
    assert!(matches!(validate_lie(&perturbed), LieVerdict::JacobiFails { .. }));
}

#[test]
fn sl2_relations() {
    let g = sl_chevalley(2);
    let (e, f, h) = (0, 1, 2);
    let b = |i: usize, j: usize| g.bracket(&g.basis_vector::<Scalar>(i), &g.basis_vector(j));
    assert_eq!(b(h, e), vec_of(&g, &[(e, 2)]));
    assert_eq!(b(h, f), vec_of(&g, &[(f, -2)]));
    assert_eq!(b(e, f), vec_of(&g, &[(h, 1)]));
}

#[test]
fn chevalley_counts_and_pairing() {
    for n in 2..=4 {
        let g = sl_chevalley(n);
        assert_eq!(g.dim(), n * n - 1);
        let roots = g.roots().unwrap();
        assert_eq!(roots.positive.len(), n * (n - 1) / 2);
        let mats = g.matrices().unwrap();
        for a in &roots.positive {
            // trace of e_alpha f_alpha
            let prod = &mats[a.e] * &mats[a.f];
            let mut tr = s(0);
            for i in 0..n {
                tr += &prod[(i, i)];
            }
            assert_eq!(tr, a.d);
            assert_eq!(a.d, s(1));
        }
        assert!(validate_lie(&g).is_valid());
    }
}

#[test]
fn compact_forms() {
    let c = su_compact(2);
    assert_eq!(c.algebra.dim(), 3);
    assert!(validate_lie(&c.algebra).is_valid());
    let mut expected = AlgElement::zero(3, 2);
    expected.add_term(&[0, 1], Scalar::ratio(1, 2));
    assert_eq!(c.r_hat, expected);
    // [t, X] is a multiple of Y
    let tx = c.algebra.bracket(&c.algebra.basis_vector::<Scalar>(2), &c.algebra.basis_vector(0));
    assert!(tx[0] == s(0) && tx[2] == s(0) && tx[1] != s(0));
    for m in c.algebra.matrices().unwrap() {
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m[(i, j)].conj(), -m[(j, i)].clone());
            }
        }
    }
    assert!(validate_lie(&su_compact(3).algebra).is_valid());
}

#[test]
fn lie_poisson_charts() {
    let ch = lie_poisson_chart(&so3());
    assert_eq!(ch.pi(), so3_chart().pi());
    assert!(lie_poisson_chart(&abelian(4)).pi().is_zero());
    let sl2 = lie_poisson_chart(&sl_chevalley(2));
    let c = parse_poly("4*x1*x2 + x3^2", sl2.names()).unwrap();
    assert!(sl2.is_casimir(&c).unwrap().is_casimir());
}

#[test]
fn schouten_examples() {
    let g = sl_chevalley(2);
    let x = AlgElement::from_vector(&vec_of(&g, &[(2, 1)]));
    let y = AlgElement::from_vector(&vec_of(&g, &[(0, 1)]));
    assert_eq!(alg_schouten(&g, &x, &y).to_vector(), vec_of(&g, &[(0, 2)]));
    let r = standard_r(&g);
    let rr = alg_schouten(&g, &r, &r);
    assert_eq!(rr.degree(), 3);
    assert_eq!(rr, alg_schouten_oracle(&g, &r, &r));
    assert_eq!(rr.coeff(&[0, 1, 2]), s(2));
    // [X, r] is the cobracket of X
    let delta = alg_schouten(&g, &x, &r);
    assert_eq!(delta, alg_schouten_oracle(&g, &x, &r));
    assert_eq!(delta.degree(), 2);
}

#[test]
fn coboundary_examples() {
    let g2 = sl_chevalley(2);
    assert!(coboundary_check(&g2, &standard_r(&g2)).passed());
    assert!(coboundary_check(&g2, &AlgElement::zero(3, 2)).passed());
    let g3 = sl_chevalley(3);
    assert!(coboundary_check(&g3, &standard_r(&g3)).passed());
}

#[test]
fn symmetric_bialgebras() {
    for n in [2, 3] {
        let g = sl_chevalley(n);
        let s_map = LinearAlgMap::transpose(&g).unwrap();
        assert!(fixes_cartan(&g, &s_map));
        let roots = g.roots().unwrap();
        for a in &roots.positive {
            assert_eq!(s_map.apply(&g.basis_vector(a.e)), g.basis_vector::<Scalar>(a.f));
        }
        let checks = symmetric_bialgebra_check(&g, &standard_r(&g), &s_map);
        assert!(checks.passed(), "{}", checks);
        let id = symmetric_bialgebra_check(&g, &standard_r(&g), &LinearAlgMap::identity(g.dim()));
        assert_eq!(id.first_failure().unwrap().name, "phi anti-morphism");
    }
    for n in [2, 3] {
        let c = su_compact(n);
        let checks = symmetric_bialgebra_check(&c.algebra, &c.r_hat, &c.phi_hat);
        assert!(checks.passed(), "{}", checks);
    }
}

#[test]
fn doubles() {
    let ab = drinfeld_double(&abelian(2), &AlgElement::zero(2, 2)).unwrap();
    assert_eq!(ab.algebra.dim(), 4);
    assert!(lie_poisson_chart(&ab.algebra).pi().is_zero());

    for n in [2, 3] {
        let g = sl_chevalley(n);
        let d = drinfeld_double(&g, &standard_r(&g)).unwrap();
        assert_eq!(d.algebra.dim(), 2 * g.dim());
        assert!(validate_lie(&d.algebra).is_valid());
        assert!(validate_lie(&d.dual).is_valid());
        assert_eq!(d.pairing_invariance_violation(), None);
        assert!(d.checks().passed(), "{}", d.checks());
        let chi = chi_check(&d, &LinearAlgMap::transpose(&g).unwrap());
        assert!(chi.passed(), "{}", chi);
    }
    for n in [2, 3] {
        let c = su_compact(n);
        let d = drinfeld_double(&c.algebra, &c.r_hat).unwrap();
        assert!(chi_check(&d, &c.phi_hat).passed());
    }
}

#[test]
fn abelian_double_with_minus_identity() {
    let g = abelian(2);
    let d = drinfeld_double(&g, &AlgElement::zero(2, 2)).unwrap();
    let minus = LinearAlgMap::new(dirac_core::exactalg::ExactMatrix::identity(2).scale(&s(-1)));
    assert!(chi_check(&d, &minus).passed());
}

#[test]
fn lie_file_round_trip() {
    for name in ["sl2", "sl3", "su3", "so3"] {
        let g = builtin(name).unwrap();
        let text = emit_lie_file(&g);
        let back = parse_lie_file(&text).unwrap();
        assert_eq!(back.labels(), g.labels());
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                assert_eq!(back.bracket_basis(i, j), g.bracket_basis(i, j));
            }
        }
    }
    assert!(builtin("sl9").is_err());
}

fn element(dim: usize, degree: usize) -> impl Strategy<Value = AlgElement<Scalar>> {
    proptest::collection::vec((proptest::collection::vec(0..dim, degree), -3i64..=3), 0..6).prop_map(move |ts| {
        let mut a = AlgElement::zero(dim, degree);
        for (idx, c) in ts {
            a.add_term(&idx, s(c));
        }
        a
    })
}

fn algebra_and_pair() -> impl Strategy<Value = (usize, AlgElement<Scalar>, AlgElement<Scalar>)> {
    (2usize..=3, 1usize..=2, 1usize..=2).prop_flat_map(|(n, p, q)| {
        let d = n * n - 1;
        (Just(n), element(d, p), element(d, q))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn schouten_matches_oracle((n, a, b) in algebra_and_pair()) {
        let g = sl_chevalley(n);
        prop_assert_eq!(alg_schouten(&g, &a, &b), alg_schouten_oracle(&g, &a, &b));
    }
}
