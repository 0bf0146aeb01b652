mod common;

use common::{chart, s};
use dirac_core::dirac::*;
use dirac_core::exactalg::{parse_poly, ExactMatrix, Poly, PolyMultiVec, Scalar};
use dirac_core::liealg::{abelian, lie_poisson_chart, sl_chevalley, so3};
use dirac_core::poisson::PoissonChart;

fn e(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![s(0); n];
    v[i] = s(1);
    v
}

fn product_r4() -> PoissonChart {
    chart(&["x1", "x2", "x3", "x4"], &[(0, 1, "1"), (2, 3, "1")])
}

fn e12(k: usize) -> PolyMultiVec {
    PolyMultiVec::monomial(k, &[0, 1], Poly::one(k)).unwrap()
}

#[test]
fn symplectic_complement_passes() {
    let q = AlignedSubmanifold::new(product_r4(), vec![0, 1], vec![2, 3]).unwrap();
    assert!(check_aligned_dirac(&q).unwrap().passed());
    assert_eq!(induced_poisson(&q).unwrap().pi(), &e12(2));
}

#[test]
fn isotropic_complement_fails_with_witness() {
    let q = AlignedSubmanifold::new(product_r4(), vec![0, 3], vec![1, 2]).unwrap();
    match check_aligned_dirac(&q).unwrap() {
        DiracVerdict::Fail(w) => {
            assert_eq!(w.kind, WitnessKind::Lambda);
            assert_eq!((w.left.as_str(), w.right.as_str(), w.residual.as_str()), ("x1", "x2", "1"));
        }
        DiracVerdict::Pass => panic!("expected failure"),
    }
    assert!(matches!(induced_poisson(&q), Err(DiracError::CriterionFails(_))));
}

#[test]
fn so3_axis() {
    let q = AlignedSubmanifold::new(lie_poisson_chart(&so3()), vec![2], vec![0, 1]).unwrap();
    assert!(check_aligned_dirac(&q).unwrap().passed());
    let ind = induced_poisson(&q).unwrap();
    assert_eq!(ind.dim(), 1);
    assert!(ind.pi().is_zero());
}

#[test]
fn quadratic_transverse_block_drops() {
    let ch = chart(&["x1", "x2", "y1", "y2"], &[(0, 1, "1"), (2, 3, "y1*y2")]);
    let q = AlignedSubmanifold::new(ch, vec![0, 1], vec![2, 3]).unwrap();
    assert_eq!(induced_poisson(&q).unwrap().pi(), &e12(2));
}

#[test]
fn phi_derivative_witness() {
    let ch = chart(&["x1", "x2", "y"], &[(0, 1, "y")]);
    let q = AlignedSubmanifold::from_names(ch, &common::names(&["x1", "x2"])).unwrap();
    match check_aligned_dirac(&q).unwrap() {
        DiracVerdict::Fail(w) => assert_eq!(w.kind, WitnessKind::PhiDerivative { y: "y".into() }),
        DiracVerdict::Pass => panic!("expected failure"),
    }
}

#[test]
fn non_poisson_chart_rejected() {
    let ch = chart(&["x1", "x2", "x3"], &[(0, 1, "x3"), (1, 2, "x3"), (2, 0, "x2")]);
    let q = AlignedSubmanifold::new(ch, vec![0], vec![1, 2]).unwrap();
    assert!(matches!(check_aligned_dirac(&q), Err(DiracError::NotPoisson(_))));
}

#[test]
fn degenerate_splits() {
    let whole = AlignedSubmanifold::new(product_r4(), vec![0, 1, 2, 3], vec![]).unwrap();
    assert_eq!(induced_poisson(&whole).unwrap(), product_r4());
    let point = AlignedSubmanifold::new(product_r4(), vec![], vec![0, 1, 2, 3]).unwrap();
    assert_eq!(induced_poisson(&point).unwrap().dim(), 0);
    assert!(AlignedSubmanifold::new(product_r4(), vec![0, 1], vec![1, 2]).is_err());
}

fn sample_points(k: usize) -> Vec<Vec<Scalar>> {
    (0..10i64).map(|t| (0..k as i64).map(|a| Scalar::ratio(t * (a + 2) - 3, a + 1)).collect()).collect()
}

#[test]
fn rank_relation_on_passing_examples() {
    let cases = [
        AlignedSubmanifold::new(product_r4(), vec![0, 1], vec![2, 3]).unwrap(),
        AlignedSubmanifold::new(lie_poisson_chart(&so3()), vec![2], vec![0, 1]).unwrap(),
        AlignedSubmanifold::new(chart(&["x1", "x2", "y1", "y2"], &[(0, 1, "1"), (2, 3, "y1*y2")]), vec![0, 1], vec![2, 3])
            .unwrap(),
        AlignedSubmanifold::new(chart(&["x", "y"], &[(0, 1, "y")]), vec![0], vec![1]).unwrap(),
        AlignedSubmanifold::new(chart(&["a", "b", "c"], &[(0, 1, "a*b + c^2")]), vec![0, 1], vec![2]).unwrap(),
    ];
    for q in &cases {
        for x in sample_points(q.x_indices().len()) {
            let r = rank_relation(q, &x).unwrap();
            assert!(r.holds(), "{:?} at {:?}: {:?}", q.x_names(), x, r);
        }
    }
}

#[test]
fn induced_structures_are_poisson() {
    let ch = chart(&["a", "b", "c", "d"], &[(0, 1, "a*b"), (2, 3, "c*d")]);
    assert!(ch.is_poisson());
    let q = AlignedSubmanifold::new(ch, vec![0, 1], vec![2, 3]).unwrap();
    assert!(check_aligned_dirac(&q).unwrap().passed());
    assert!(induced_poisson(&q).unwrap().is_poisson());
}

fn agree(ch: &PoissonChart, inv: &LinearInvolution) -> FixedLocus {
    let sym = fixed_locus_symbolic(ch, inv).unwrap();
    let proj = fixed_locus_projection(ch, inv).unwrap();
    assert_eq!(sym.induced.pi(), proj.pi(), "routes disagree");
    assert!(sym.induced.is_poisson());
    sym
}

#[test]
fn identity_involution_keeps_pi() {
    let ch = chart(&["x", "y", "z"], &[(0, 1, "x*y - 2*z"), (1, 2, "y*z - 2*x"), (2, 0, "z*x - 2*y")]);
    let fl = agree(&ch, &LinearInvolution::diagonal(&[1, 1, 1]).unwrap());
    assert_eq!(fl.fixed_dim, 3);
    let back = fl.induced.pi().with_dim(3);
    assert_eq!(&back, ch.pi());
}

#[test]
fn plane_reflection() {
    let s = LinearInvolution::diagonal(&[1, -1]).unwrap();
    let ch = chart(&["x", "y"], &[(0, 1, "y")]);
    let fl = agree(&ch, &s);
    assert_eq!(fl.fixed_dim, 1);
    assert!(fl.induced.pi().is_zero());
    // d/dx ^ d/dy is reversed by the reflection
    let sym = chart(&["x", "y"], &[(0, 1, "1")]);
    assert!(matches!(fixed_locus_symbolic(&sym, &s), Err(DiracError::NotPoissonInvolution { .. })));
    assert!(matches!(fixed_locus_projection(&sym, &s), Err(DiracError::NotPoissonInvolution { .. })));
}

#[test]
fn so3_half_turn() {
    let s = LinearInvolution::diagonal(&[-1, -1, 1]).unwrap();
    let fl = agree(&lie_poisson_chart(&so3()), &s);
    assert_eq!(fl.fixed_dim, 1);
    assert!(fl.induced.pi().is_zero());
}

#[test]
fn block_swap_on_r4() {
    let mut m = ExactMatrix::zeros(4, 4);
    for (a, b) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        m[(a, b)] = s(1);
    }
    let inv = LinearInvolution::new(m).unwrap();
    let fl = agree(&product_r4(), &inv);
    assert_eq!(fl.fixed_dim, 2);
    assert!(!fl.induced.pi().is_zero());
    assert!(LinearInvolution::diagonal(&[2, 1]).is_err());
}

#[test]
fn sl2_coadjoint_reflection() {
    // minus the dual of e <-> f, h -> h on sl(2)*
    let mut m = ExactMatrix::zeros(3, 3);
    m[(0, 1)] = s(-1);
    m[(1, 0)] = s(-1);
    m[(2, 2)] = s(-1);
    let inv = LinearInvolution::new(m).unwrap();
    let fl = agree(&lie_poisson_chart(&sl_chevalley(2)), &inv);
    assert_eq!(fl.fixed_dim, 1);
}

#[test]
fn affine_subspaces() {
    let g = so3();
    let v = affine_lie_poisson_dirac(&g, &[e(3, 2)], &[e(3, 0), e(3, 1)], &e(3, 2)).unwrap();
    assert!(v.passed() && v.aligned_agrees);
    let ch = v.outcome.unwrap();
    assert_eq!(ch.dim(), 1);
    assert!(ch.pi().is_zero());

    let v = affine_lie_poisson_dirac(&g, &[e(3, 0), e(3, 1)], &[e(3, 2)], &e(3, 2)).unwrap();
    assert!(matches!(v.outcome, Err(AffineFailure::NotSubalgebra { .. })));
    assert!(v.aligned_agrees);

    let sl2 = sl_chevalley(2);
    let v = affine_lie_poisson_dirac(&sl2, &[e(3, 2)], &[e(3, 0), e(3, 1)], &e(3, 2)).unwrap();
    assert!(v.passed() && v.aligned_agrees);

    assert!(matches!(affine_lie_poisson_dirac(&g, &[e(3, 0)], &[e(3, 0), e(3, 1)], &e(3, 2)), Err(DiracError::NotABasis)));
}

#[test]
fn transverse_structures() {
    let g = so3();
    let t = transverse_from_reductive(&g, &[e(3, 2)], &[e(3, 0), e(3, 1)], &e(3, 2)).unwrap();
    assert_eq!(t.dim(), 1);
    assert!(t.pi().is_zero());
    assert_eq!(isotropy_algebra(&g, &e(3, 2)).len(), 1);

    let ab = abelian(3);
    let all = [e(3, 0), e(3, 1), e(3, 2)];
    let t = transverse_from_reductive(&ab, &all, &[], &[s(1), s(2), s(3)]).unwrap();
    assert_eq!(t.dim(), 3);
    assert!(t.pi().is_zero());

    let sl2 = sl_chevalley(2);
    let t = transverse_from_reductive(&sl2, &[e(3, 2)], &[e(3, 0), e(3, 1)], &e(3, 2)).unwrap();
    assert_eq!(t.dim(), 1);
    assert!(t.pi().is_zero());

    assert!(matches!(
        transverse_from_reductive(&g, &[e(3, 0)], &[e(3, 1), e(3, 2)], &e(3, 2)),
        Err(DiracError::NotIsotropic)
    ));
}

fn family(src: &str) -> PolyMultiVec {
    let n = common::names(&["x1", "x2", "t"]);
    let mut f = PolyMultiVec::zero_with_params(2, 3, 2);
    f.add_component(&[0, 1], parse_poly(src, &n).unwrap()).unwrap();
    f
}

#[test]
fn leaf_slices() {
    match leaf_slice_obstruction(&family("x1"), &[s(0)], 1).unwrap() {
        SliceVerdict::Solvable { witnesses } => assert!(witnesses[0].is_zero()),
        v => panic!("{:?}", v),
    }
    let fam = family("1 + t");
    match leaf_slice_obstruction(&fam, &[s(0)], 1).unwrap() {
        SliceVerdict::Solvable { witnesses } => {
            let x = &witnesses[0];
            let pi0 = e12(2);
            let dpi = PolyMultiVec::monomial(2, &[0, 1], Poly::one(2)).unwrap();
            assert!(dpi.add(&x.schouten(&pi0).unwrap()).unwrap().is_zero());
        }
        v => panic!("{:?}", v),
    }
    assert_eq!(
        leaf_slice_obstruction(&fam, &[s(0)], 0).unwrap(),
        SliceVerdict::UnsolvableUpTo { degree: 0, parameter: 0 }
    );
    assert!(leaf_slice_obstruction(&fam, &[], 1).is_err());
}
