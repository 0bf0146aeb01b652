use dirac_core::dynr::*;
use dirac_core::liealg::{sl_chevalley, AlgElement, LinearAlgMap};
use proptest::prelude::*;

fn family(n: usize, kind: FamilyKind) -> DynamicalRFamily {
    DynamicalRFamily::new(&sl_chevalley(n), kind).unwrap()
}

/// Hand computation on sl(2): with `r = F(p) e^f`, `p = k lambda`,
/// `[e^f, e^f] = 2 h^e^f`, so the residual is `(k F'(p) - F(p)^2) h^e^f`.
fn sl2_closed_form(kind: FamilyKind, lambda: f64) -> f64 {
    match kind {
        FamilyKind::Trig => {
            let c = 1.0 / (-lambda).tanh();
            -2.0 * 0.5 * (1.0 - c * c) - c * c
        }
        FamilyKind::Rational => {
            let p = -lambda;
            -(-1.0 / (p * p)) - 1.0 / (p * p)
        }
        FamilyKind::TanhCorrupted => {
            let t = (-lambda).tanh();
            -(1.0 - t * t) - t * t
        }
    }
}

#[test]
fn sl2_residual_matches_closed_form() {
    for kind in [FamilyKind::Trig, FamilyKind::Rational, FamilyKind::TanhCorrupted] {
        let fam = family(2, kind);
        for &l in &[-1.7, -0.4, 0.6, 1.3] {
            let res = fam.cdybe_residual(&[l]).unwrap();
            // basis order e, f, h
            let expected = sl2_closed_form(kind, l);
            assert!((res.coeff(&[2, 0, 1]) - expected).abs() < 1e-12, "{} at {}", kind, l);
            assert!(res.len() <= 1);
        }
    }
    let trig = family(2, FamilyKind::Trig).cdybe_residual(&[0.9]).unwrap();
    assert!((trig.coeff(&[0, 1, 2]) + 1.0).abs() < 1e-12);
}

#[test]
fn sl2_residual_constant_at_two_points() {
    for kind in [FamilyKind::Trig, FamilyKind::Rational] {
        let fam = family(2, kind);
        let a = fam.cdybe_residual(&[0.8]).unwrap();
        let b = fam.cdybe_residual(&[-1.9]).unwrap();
        assert!(a.sub(&b).max_abs() <= 1e-8);
        assert!(fam.ad_defect(&a) <= 1e-8);
    }
}

#[test]
fn scans_pass_for_solutions() {
    for n in [2, 3] {
        for kind in [FamilyKind::Trig, FamilyKind::Rational] {
            let rep = residual_scan(&family(n, kind), 10, 1, 1e-7).unwrap();
            assert!(rep.passed(), "sl{} {}: {:?}", n, kind, rep.lines());
        }
    }
    assert!(residual_scan(&family(2, FamilyKind::Trig), 10, 4, 1e-8).unwrap().spread <= 1e-8);
}

#[test]
fn tanh_fails_on_sl3() {
    let rep = residual_scan(&family(3, FamilyKind::TanhCorrupted), 10, 1, 1e-7).unwrap();
    assert!(!rep.passed());
    assert!(rep.spread > 1e-3);
}

#[test]
fn scan_is_deterministic() {
    let fam = family(3, FamilyKind::Trig);
    assert_eq!(residual_scan(&fam, 10, 7, 1e-7).unwrap(), residual_scan(&fam, 10, 7, 1e-7).unwrap());
}

#[test]
fn transpose_reverses_r() {
    for n in [2, 3] {
        let fam = family(n, FamilyKind::Trig);
        let s = LinearAlgMap::transpose(fam.algebra()).unwrap();
        assert!(equivariance_check(&fam, &s, 10, 2).unwrap().defect <= 1e-10);
        let id = LinearAlgMap::identity(fam.algebra().dim());
        assert!(equivariance_check(&fam, &id, 10, 2).unwrap().defect > 0.5);
    }
}

#[test]
fn non_cartan_map_rejected() {
    let fam = family(2, FamilyKind::Trig);
    let mut m = dirac_core::exactalg::ExactMatrix::identity(3);
    m[(0, 2)] = dirac_core::exactalg::Scalar::from_int(1);
    let err = equivariance_check(&fam, &LinearAlgMap::new(m), 3, 0).unwrap_err();
    assert_eq!(err, DynrError::NotCartanPreserving);
}

proptest! {
    #[test]
    fn rational_is_homogeneous(l1 in 0.6f64..2.0, l2 in 0.6f64..2.0, c in 0.5f64..3.0) {
        let fam = family(3, FamilyKind::Rational);
        let a = fam.eval_r(&[l1, l2]).unwrap().scale(&(1.0 / c));
        let b = fam.eval_r(&[c * l1, c * l2]).unwrap();
        prop_assert!(a.sub(&b).max_abs() < 1e-12);
    }

    #[test]
    fn r_is_antisymmetric(l1 in 0.6f64..2.0, l2 in -2.0f64..-0.6) {
        let fam = family(3, FamilyKind::Trig);
        let r = fam.eval_r(&[l1, l2]).unwrap();
        for (idx, &c) in r.terms() {
            prop_assert_eq!(r.coeff(&[idx[1], idx[0]]), -c);
        }
        let res = fam.cdybe_residual(&[l1, l2]).unwrap();
        for (idx, &c) in res.terms() {
            prop_assert_eq!(res.coeff(&[idx[1], idx[0], idx[2]]), -c);
            prop_assert_eq!(res.coeff(&[idx[2], idx[0], idx[1]]), c);
        }
    }

    #[test]
    fn derivatives_match_differences(l1 in 0.6f64..2.0, l2 in 0.6f64..2.0) {
        let fam = family(3, FamilyKind::Trig);
        prop_assert!(fam.gradient_error(&[l1, l2], FD_STEP).unwrap() <= 1e-7);
    }
}

#[test]
fn residual_has_degree_three() {
    let res: AlgElement<f64> = family(3, FamilyKind::Trig).cdybe_residual(&[0.7, 1.4]).unwrap();
    assert_eq!(res.degree(), 3);
}
