mod common;

use common::{dubrovin, low_multivec, multivec, names, poly, s};
use dirac_core::exactalg::{parse_poly, Monomial, Poly, PolyMultiVec, Scalar};
use dirac_core::oracle::chart_schouten;
use proptest::prelude::*;

fn xyz() -> Vec<String> {
    names(&["x", "y", "z"])
}

fn vf(comps: &[&str]) -> PolyMultiVec {
    let n = xyz();
    PolyMultiVec::vector_field(3, comps.iter().map(|c| parse_poly(c, &n).unwrap()).collect()).unwrap()
}

fn mono(e: &[u32]) -> Monomial {
    Monomial(e.to_vec())
}

#[test]
fn parses_dubrovin_entry() {
    let p = parse_poly("x*y - 2*z", &xyz()).unwrap();
    assert_eq!(p.num_terms(), 2);
    assert_eq!(p.coeff(&mono(&[1, 1, 0])), s(1));
    assert_eq!(p.coeff(&mono(&[0, 0, 1])), s(-2));
}

#[test]
fn parses_zero_and_fractions() {
    assert!(parse_poly("0", &xyz()).unwrap().is_zero());
    let p = parse_poly("(1/2)*x^2 + i*y", &xyz()).unwrap();
    assert_eq!(p.coeff(&mono(&[2, 0, 0])), Scalar::ratio(1, 2));
    assert_eq!(p.coeff(&mono(&[0, 1, 0])), Scalar::i());
    assert_eq!(p.num_terms(), 2);
}

#[test]
fn parse_errors_carry_position() {
    let e = parse_poly("x + w", &xyz()).unwrap_err();
    assert_eq!((e.line, e.column), (1, 5));
    let e = parse_poly("x * (y + ", &xyz()).unwrap_err();
    assert_eq!(e.line, 1);
    assert!(parse_poly("x^-1", &xyz()).is_err());
}

#[test]
fn wedge_examples() {
    let d1 = vf(&["1", "0", "0"]);
    let d2 = vf(&["0", "1", "0"]);
    let e12 = PolyMultiVec::monomial(3, &[0, 1], Poly::one(3)).unwrap();
    assert_eq!(d1.wedge(&d2).unwrap(), e12);
    assert!(d1.wedge(&d1).unwrap().is_zero());
    let lhs = vf(&["x", "0", "0"]).wedge(&vf(&["0", "y", "1"])).unwrap();
    let mut rhs = PolyMultiVec::zero(3, 2);
    rhs.add_component(&[0, 1], parse_poly("x*y", &xyz()).unwrap()).unwrap();
    rhs.add_component(&[0, 2], parse_poly("x", &xyz()).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn schouten_examples() {
    let d1 = vf(&["1", "0", "0"]);
    let x1 = PolyMultiVec::function(3, Poly::var(3, 0));
    let r = d1.schouten(&x1).unwrap();
    assert_eq!(r.degree(), 0);
    assert_eq!(r.component(&[]), Poly::one(3));

    let e12 = PolyMultiVec::monomial(3, &[0, 1], Poly::one(3)).unwrap();
    assert!(e12.schouten(&e12).unwrap().is_zero());

    let a = PolyMultiVec::monomial(3, &[0, 1], Poly::var(3, 0)).unwrap();
    assert_eq!(a.schouten(&d1).unwrap(), chart_schouten(&a, &d1).unwrap());
    // [x1 d1^d2, d1] = -[d1, x1 d1^d2] = -d1^d2
    assert_eq!(a.schouten(&d1).unwrap(), e12.scale(&s(-1)));
}

#[test]
fn schouten_of_vector_fields_is_lie_bracket() {
    let x = vf(&["y", "0", "0"]);
    let y = vf(&["0", "x", "0"]);
    // [y d_x, x d_y] = y d_y - x d_x
    assert_eq!(x.schouten(&y).unwrap(), vf(&["-x", "y", "0"]));
}

#[test]
fn diff_examples() {
    let n = xyz();
    let m = PolyMultiVec::monomial(3, &[0, 1], parse_poly("x*y", &n).unwrap()).unwrap();
    assert_eq!(m.diff(1).unwrap(), PolyMultiVec::monomial(3, &[0, 1], Poly::var(3, 0)).unwrap());
    let c = PolyMultiVec::monomial(3, &[1, 2], Poly::constant(3, s(5))).unwrap();
    assert!(c.diff(0).unwrap().is_zero());
    let dz = dubrovin().pi().diff(2).unwrap();
    assert_eq!(dz.component(&[0, 1]), Poly::constant(3, s(-2)));
    assert_eq!(dz.component(&[1, 2]), Poly::var(3, 1));
    assert_eq!(dz.component(&[0, 2]), Poly::var(3, 0).scale(&s(-1)));
    assert!(dz.diff(5).is_err());
}

#[test]
fn eval_examples() {
    let origin = vec![s(0); 3];
    assert!(dubrovin().pi().eval(&origin).unwrap().is_empty());
    assert!(PolyMultiVec::zero(3, 2).eval(&[s(1), s(2), s(3)]).unwrap().is_empty());
    let so3 = common::so3_chart();
    let v = so3.pi().eval(&[s(1), s(2), s(3)]).unwrap();
    assert_eq!(v[&vec![0, 1]], s(3));
    assert_eq!(v[&vec![1, 2]], s(1));
    // stored as e{1,3}; e{3,1} carries 2
    assert_eq!(v[&vec![0, 2]], s(-2));
    assert!(so3.pi().eval(&[s(1)]).is_err());
}

#[test]
fn canonical_printing_is_grlex() {
    let p = parse_poly("z + x^2 + 3 + x*y", &xyz()).unwrap();
    assert_eq!(p.display_with(&xyz()), "x^2 + x*y + z + 3");
}

fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        s(1)
    } else {
        s(-1)
    }
}

fn pair(pdeg: u32) -> impl Strategy<Value = (PolyMultiVec, PolyMultiVec)> {
    (2usize..=4).prop_flat_map(move |d| (low_multivec(d, pdeg), low_multivec(d, pdeg)))
}

fn triple() -> impl Strategy<Value = (PolyMultiVec, PolyMultiVec, PolyMultiVec)> {
    (2usize..=4).prop_flat_map(|d| (low_multivec(d, 2), low_multivec(d, 2), low_multivec(d, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graded_antisymmetry((a, b) in pair(2)) {
        let (p, q) = (a.degree() as i64, b.degree() as i64);
        prop_assume!(p + q >= 1);
        let lhs = a.schouten(&b).unwrap();
        let rhs = b.schouten(&a).unwrap().scale(&-sign((p - 1) * (q - 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_leibniz((a, b, c) in triple()) {
        let (p, q) = (a.degree() as i64, b.degree() as i64);
        prop_assume!(p >= 1);
        let lhs = a.schouten(&b.wedge(&c).unwrap()).unwrap();
        let first = a.schouten(&b).unwrap().wedge(&c).unwrap();
        let second = b.wedge(&a.schouten(&c).unwrap()).unwrap().scale(&sign((p - 1) * q));
        prop_assert_eq!(lhs, first.add(&second).unwrap());
    }

    #[test]
    fn oracle_equivalence_dim3(a in low_multivec(3, 2), b in low_multivec(3, 2)) {
        prop_assume!(a.degree() + b.degree() >= 1);
        prop_assert_eq!(a.schouten(&b).unwrap(), chart_schouten(&a, &b).unwrap());
    }

    #[test]
    fn wedge_is_graded_commutative(a in multivec(4, 1, 2), b in multivec(4, 2, 1)) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
    }

    #[test]
    fn print_parse_round_trip(p in poly(3, 3)) {
        let n = xyz();
        let printed = p.display_with(&n);
        let back = parse_poly(&printed, &n).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.display_with(&n), printed);
    }
}
