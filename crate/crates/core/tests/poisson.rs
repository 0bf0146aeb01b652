mod common;

use common::{chart, dubrovin, names, poly, s, so3_chart};
use dirac_core::dirac::AlignedSubmanifold;
use dirac_core::exactalg::{parse_poly, Poly, PolyMultiVec};
use dirac_core::liealg::{lie_poisson_chart, sl_chevalley, so3};
use dirac_core::oracle::chart_schouten;
use dirac_core::poisson::{relative_modular, relative_modular_value, CasimirVerdict, PoissonChart};
use proptest::prelude::*;

fn p(src: &str, ch: &PoissonChart) -> Poly {
    parse_poly(src, ch.names()).unwrap()
}

fn vf(ch: &PoissonChart, comps: &[&str]) -> PolyMultiVec {
    PolyMultiVec::vector_field(ch.dim(), comps.iter().map(|c| p(c, ch)).collect()).unwrap()
}

#[test]
fn dubrovin_chart_is_poisson() {
    assert!(dubrovin().jacobiator().is_zero());
    assert!(chart(&["a", "b"], &[(0, 1, "1")]).is_poisson());
}

#[test]
fn non_poisson_jacobiator_matches_oracle() {
    let ch = chart(&["x1", "x2", "x3"], &[(0, 1, "x3"), (1, 2, "x3"), (2, 0, "x2")]);
    let j = ch.jacobiator();
    assert!(!j.is_zero());
    assert_eq!(j, chart_schouten(ch.pi(), ch.pi()).unwrap());
    // x3 d1^d2 + d2^d3 is in fact Poisson.
    let q = chart(&["x1", "x2", "x3"], &[(0, 1, "x3"), (1, 2, "1")]);
    assert!(q.jacobiator().is_zero());
    assert!(chart_schouten(q.pi(), q.pi()).unwrap().is_zero());
}

#[test]
fn brackets() {
    let d = dubrovin();
    assert_eq!(d.bracket(&p("x", &d), &p("y", &d)).unwrap(), p("x*y - 2*z", &d));
    assert_eq!(d.bracket(&p("y", &d), &p("z", &d)).unwrap(), p("y*z - 2*x", &d));
    assert_eq!(d.bracket(&p("z", &d), &p("x", &d)).unwrap(), p("z*x - 2*y", &d));
    let so = lie_poisson_chart(&so3());
    assert_eq!(so.bracket(&so.coord(0), &so.coord(1)).unwrap(), so.coord(2));
    assert!(d.bracket(&Poly::var(2, 0), &p("x", &d)).is_err());
}

#[test]
fn hamiltonian_fields() {
    let c = chart(&["x1", "x2"], &[(0, 1, "1")]);
    assert_eq!(c.hamiltonian_vf(&c.coord(0)).unwrap(), vf(&c, &["0", "1"]));
    let c = chart(&["x1", "x2"], &[(0, 1, "x1")]);
    assert_eq!(c.hamiltonian_vf(&c.coord(1)).unwrap(), vf(&c, &["-x1", "0"]));
    let d = dubrovin();
    assert!(d.hamiltonian_vf(&p("x^2 + y^2 + z^2 - x*y*z", &d)).unwrap().is_zero());
}

#[test]
fn casimirs() {
    let d = dubrovin();
    assert!(d.is_casimir(&p("x^2 + y^2 + z^2 - x*y*z", &d)).unwrap().is_casimir());
    assert!(d.is_casimir(&Poly::constant(3, s(7))).unwrap().is_casimir());
    let so = so3_chart();
    assert!(so.is_casimir(&p("x1^2 + x2^2 + x3^2", &so)).unwrap().is_casimir());
    match d.is_casimir(&p("x", &d)).unwrap() {
        CasimirVerdict::NotCasimir { index, component } => {
            assert_eq!(index, 1);
            assert_eq!(component, p("x*y - 2*z", &d));
        }
        CasimirVerdict::Casimir => panic!("x is not a Casimir"),
    }
    let sl2 = lie_poisson_chart(&sl_chevalley(2));
    let c = p("4*x1*x2 + x3^2", &sl2);
    assert!(sl2.is_casimir(&c).unwrap().is_casimir());
}

#[test]
fn modular_fields() {
    let c = chart(&["x1", "x2"], &[(0, 1, "1")]);
    assert!(c.modular_vf().unwrap().is_zero());
    let c = chart(&["x1", "x2"], &[(0, 1, "x1")]);
    assert_eq!(c.modular_vf().unwrap(), vf(&c, &["0", "-1"]));
    assert!(lie_poisson_chart(&so3()).modular_vf().unwrap().is_zero());
}

#[test]
fn modular_fields_are_poisson() {
    let fixtures = [
        dubrovin(),
        so3_chart(),
        chart(&["x1", "x2"], &[(0, 1, "x1")]),
        chart(&["x", "y"], &[(0, 1, "y")]),
        lie_poisson_chart(&sl_chevalley(2)),
        lie_poisson_chart(&sl_chevalley(3)),
    ];
    for ch in &fixtures {
        let nu = ch.modular_vf().unwrap();
        assert!(nu.schouten(ch.pi()).unwrap().is_zero(), "{:?}", ch.names());
    }
}

#[test]
fn constant_rescaled_volume_leaves_modular_field() {
    let ch = chart(&["x1", "x2"], &[(0, 1, "x1")]);
    let scaled = ch.with_volume(Poly::constant(2, s(5))).unwrap();
    assert_eq!(ch.modular_vf().unwrap(), scaled.modular_vf().unwrap());
    assert!(ch.with_volume(Poly::zero(2)).is_err());
}

#[test]
fn relative_modular_on_plane() {
    let ch = chart(&["x", "y"], &[(0, 1, "y")]);
    let q = AlignedSubmanifold::new(ch.clone(), vec![0], vec![1]).unwrap();
    let r = relative_modular(&q).unwrap();
    let dx = PolyMultiVec::vector_field(1, vec![Poly::one(1)]).unwrap();
    assert_eq!(r.nu_r, dx);
    assert_eq!(r.pr_nu_p, dx);
    assert!(r.nu_q.is_zero());
    assert!(r.relation_holds);
    assert!(r.nu_r.schouten(&PolyMultiVec::zero(1, 2)).unwrap().is_zero());
    // a second extension of f = x with df annihilating d/dy on Q
    let alt = relative_modular_value(&q, &p("x + y^2", &ch)).unwrap();
    assert_eq!(alt, Poly::one(1));
    assert!(relative_modular_value(&q, &p("x + y", &ch)).is_err());
}

#[test]
fn relative_modular_on_r4() {
    let ch = chart(&["x1", "x2", "y1", "y2"], &[(0, 1, "1"), (2, 3, "y1*y2")]);
    let q = AlignedSubmanifold::new(ch, vec![0, 1], vec![2, 3]).unwrap();
    let r = relative_modular(&q).unwrap();
    assert!(r.nu_r.is_zero() && r.pr_nu_p.is_zero() && r.nu_q.is_zero());
    assert!(r.relation_holds);
    let blocks = chart(&["a", "b", "c", "d"], &[(0, 1, "1"), (2, 3, "1")]);
    let q = AlignedSubmanifold::new(blocks, vec![0, 1], vec![2, 3]).unwrap();
    let r = relative_modular(&q).unwrap();
    assert!(r.nu_r.is_zero() && r.pr_nu_p.is_zero() && r.nu_q.is_zero() && r.relation_holds);
}

#[test]
fn relative_modular_rejects_non_dirac() {
    let ch = chart(&["a", "b", "c", "d"], &[(0, 1, "1"), (2, 3, "1")]);
    let q = AlignedSubmanifold::new(ch, vec![0, 3], vec![1, 2]).unwrap();
    assert!(relative_modular(&q).is_err());
}

fn jacobi_sum(ch: &PoissonChart, f: &Poly, g: &Poly, h: &Poly) -> Poly {
    let b = |a: &Poly, c: &Poly| ch.bracket(a, c).unwrap();
    &(&b(f, &b(g, h)) + &b(g, &b(h, f))) + &b(h, &b(f, g))
}

fn poisson_fixture() -> impl Strategy<Value = PoissonChart> {
    prop_oneof![
        Just(dubrovin()),
        Just(so3_chart()),
        Just(lie_poisson_chart(&sl_chevalley(2))),
        Just(chart(&["x", "y", "z"], &[(0, 1, "z"), (1, 2, "1")])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_on_random_triples(ch in poisson_fixture(), f in poly(3, 2), g in poly(3, 2), h in poly(3, 2)) {
        prop_assert!(jacobi_sum(&ch, &f, &g, &h).is_zero());
    }

    #[test]
    fn leibniz_on_random_triples(ch in poisson_fixture(), f in poly(3, 2), g in poly(3, 2), h in poly(3, 2)) {
        let lhs = ch.bracket(&f, &(&g * &h)).unwrap();
        let rhs = &(&g * &ch.bracket(&f, &h).unwrap()) + &(&h * &ch.bracket(&f, &g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric(f in poly(3, 2), g in poly(3, 2)) {
        let d = dubrovin();
        prop_assert!(d.bracket(&f, &f).unwrap().is_zero());
        prop_assert_eq!(d.bracket(&f, &g).unwrap(), -d.bracket(&g, &f).unwrap());
    }
}

#[test]
fn names_are_kept() {
    assert_eq!(dubrovin().names(), &names(&["x", "y", "z"])[..]);
}
