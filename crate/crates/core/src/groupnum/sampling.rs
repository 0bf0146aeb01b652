//! Seeded sampling of group points; one RNG stream per sample index.

use super::{c, matrix_exp, CMat, GroupElement, GroupKind};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Standard deviation of the algebra entries before exponentiation.
pub const SAMPLE_SCALE: f64 = 0.5;

/// Independent stream for sample `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| SAMPLE_SCALE * rng.sample::<f64, _>(StandardNormal))
}

fn complexify(m: &DMatrix<f64>) -> CMat {
    m.map(c)
}

fn traceless(mut m: DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let t = m.trace() / n as f64;
    for i in 0..n {
        m[(i, i)] -= t;
    }
    m
}

fn symmetric_traceless(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    let a = gaussian(rng, n, n);
    traceless((&a + a.transpose()) * 0.5)
}

/// `exp(X)` with `X` real traceless.
pub fn sl_real_point(rng: &mut impl Rng, n: usize) -> GroupElement {
    let x = traceless(gaussian(rng, n, n));
    GroupElement::new(GroupKind::SlReal, vec![matrix_exp(&complexify(&x))]).expect("exp lands in SL(n,R)")
}

/// `exp(S)` with `S` symmetric traceless: a transpose-fixed point of SL(n,R).
pub fn symmetric_sl_point(rng: &mut impl Rng, n: usize) -> GroupElement {
    let s = symmetric_traceless(rng, n);
    GroupElement::new(GroupKind::SlReal, vec![matrix_exp(&complexify(&s))]).expect("exp lands in SL(n,R)")
}

/// `exp(iS)` with `S` symmetric traceless: a transpose-fixed point of SU(n).
pub fn su_symmetric_point(rng: &mut impl Rng, n: usize) -> GroupElement {
    let s = complexify(&symmetric_traceless(rng, n)) * num_complex::Complex64::i();
    GroupElement::new(GroupKind::SpecialUnitary, vec![matrix_exp(&s)]).expect("exp lands in SU(n)")
}

/// Unipotent upper-triangular `exp(N)`.
pub fn unipotent_upper(rng: &mut impl Rng, n: usize) -> CMat {
    let g = gaussian(rng, n, n);
    let nil = DMatrix::from_fn(n, n, |i, j| if i < j { g[(i, j)] } else { 0.0 });
    matrix_exp(&complexify(&nil))
}

/// `(B, B^T)` with `B` unipotent: a point of the fixed locus in `B+ * B-`.
pub fn stokes_point(rng: &mut impl Rng, n: usize) -> GroupElement {
    let b = unipotent_upper(rng, n);
    GroupElement::new(GroupKind::DualStar, vec![b.clone(), b.transpose()]).expect("fixed points lie in the dual group")
}

/// Generic point `(exp(D + N+), exp(-D + N-))` of `B+ * B-`.
pub fn dual_point(rng: &mut impl Rng, n: usize) -> GroupElement {
    let g = gaussian(rng, n, n);
    let h = gaussian(rng, n, n);
    let d = traceless(DMatrix::from_diagonal(&g.diagonal()));
    let up = DMatrix::from_fn(n, n, |i, j| if i < j { g[(i, j)] } else { 0.0 }) + &d;
    let low = DMatrix::from_fn(n, n, |i, j| if i > j { h[(i, j)] } else { 0.0 }) - &d;
    GroupElement::new(GroupKind::DualStar, vec![matrix_exp(&complexify(&up)), matrix_exp(&complexify(&low))])
        .expect("exp lands in the dual group")
}
