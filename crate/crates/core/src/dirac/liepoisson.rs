//! Affine subspaces `mu + m^perp` of Lie-Poisson spaces and transverse
//! structures from reductive decompositions `g = l + m`.

use super::{check_aligned_dirac, induced_poisson, AlignedSubmanifold, DiracError};
use crate::exactalg::{ExactMatrix, Poly, PolyMultiVec, Scalar};
use crate::liealg::{lie_poisson_chart, LieAlgebra};
use crate::poisson::PoissonChart;
use num::traits::Zero;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineFailure {
    /// `[l_i, l_j]` leaves `l`.
    NotSubalgebra { i: usize, j: usize },
    /// `[l_i, m_j]` leaves `m`.
    NotReductive { i: usize, j: usize },
    /// `<mu, [l_i, m_j]> != 0`.
    CoadjointCondition { i: usize, j: usize },
}

impl fmt::Display for AffineFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineFailure::NotSubalgebra { i, j } => write!(f, "l not a subalgebra: [l{}, l{}] not in l", i + 1, j + 1),
            AffineFailure::NotReductive { i, j } => write!(f, "[l{}, m{}] not in m", i + 1, j + 1),
            AffineFailure::CoadjointCondition { i, j } => write!(f, "<mu, [l{}, m{}]> != 0", i + 1, j + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AffineVerdict {
    /// Lie-Poisson chart of `l*` on pass.
    pub outcome: Result<PoissonChart, AffineFailure>,
    /// The aligned criterion in adapted coordinates reaches the same verdict
    /// (and, on pass, the same induced bivector).
    pub aligned_agrees: bool,
}

impl AffineVerdict {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

fn pair(mu: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b) in mu.iter().zip(v) {
        acc += &(a * b);
    }
    acc
}

fn in_span(basis: &[Vec<Scalar>], v: &[Scalar], n: usize) -> bool {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    ExactMatrix::from_columns(basis, n).solve(v).is_some()
}

fn algebraic_verdict(
    g: &LieAlgebra,
    l: &[Vec<Scalar>],
    m: &[Vec<Scalar>],
    mu: &[Scalar],
) -> Result<PoissonChart, AffineFailure> {
    let n = g.dim();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            if !in_span(l, &g.bracket(&l[i], &l[j]), n) {
                return Err(AffineFailure::NotSubalgebra { i, j });
            }
        }
    }
    for i in 0..l.len() {
        for j in 0..m.len() {
            if !in_span(m, &g.bracket(&l[i], &m[j]), n) {
                return Err(AffineFailure::NotReductive { i, j });
            }
        }
    }
    for i in 0..l.len() {
        for j in 0..m.len() {
            if !pair(mu, &g.bracket(&l[i], &m[j])).is_zero() {
                return Err(AffineFailure::CoadjointCondition { i, j });
            }
        }
    }
    let labels = (1..=l.len()).map(|i| format!("l{}", i)).collect();
    let sub = g.restrict(l, labels).expect("l closes");
    Ok(lie_poisson_chart(&sub))
}

/// Lie-Poisson chart of `g*` in coordinates `x_a = <xi, l_a>`,
/// `y_b = <xi - mu, m_b>`, aligned so that `{y = 0} = mu + m^perp`.
fn adapted_submanifold(
    g: &LieAlgebra,
    l: &[Vec<Scalar>],
    m: &[Vec<Scalar>],
    mu: &[Scalar],
) -> Result<AlignedSubmanifold, DiracError> {
    let n = g.dim();
    let k = l.len();
    let v: Vec<Vec<Scalar>> = l.iter().chain(m).cloned().collect();
    let vm = ExactMatrix::from_columns(&v, n);
    let z: Vec<Poly> = (0..n)
        .map(|c| {
            let p = Poly::var(n, c);
            if c < k {
                p
            } else {
                &p + &Poly::constant(n, pair(mu, &v[c]))
            }
        })
        .collect();
    let mut pi = PolyMultiVec::zero(n, 2);
    for a in 0..n {
        for b in a + 1..n {
            let coords = vm.solve(&g.bracket(&v[a], &v[b])).ok_or(DiracError::NotABasis)?;
            let mut c = Poly::zero(n);
            for (cc, s) in coords.iter().enumerate() {
                c.add_scaled(&z[cc], s);
            }
            pi.add_component(&[a, b], c)?;
        }
    }
    let names = (1..=k).map(|i| format!("l{}", i)).chain((1..=n - k).map(|i| format!("m{}", i))).collect();
    let chart = PoissonChart::new(names, pi, None)?;
    AlignedSubmanifold::new(chart, (0..k).collect(), (k..n).collect())
}

/// Decides whether `mu + m^perp` is a Dirac submanifold of `g*` through the
/// reductive conditions, cross-checked by the aligned criterion.
pub fn affine_lie_poisson_dirac(
    g: &LieAlgebra,
    l: &[Vec<Scalar>],
    m: &[Vec<Scalar>],
    mu: &[Scalar],
) -> Result<AffineVerdict, DiracError> {
    let n = g.dim();
    if l.len() + m.len() != n || mu.len() != n || l.iter().chain(m).any(|v| v.len() != n) {
        return Err(DiracError::NotABasis);
    }
    let all: Vec<Vec<Scalar>> = l.iter().chain(m).cloned().collect();
    if n > 0 && ExactMatrix::from_columns(&all, n).rank() != n {
        return Err(DiracError::NotABasis);
    }
    let outcome = algebraic_verdict(g, l, m, mu);
    let q = adapted_submanifold(g, l, m, mu)?;
    let aligned = check_aligned_dirac(&q)?;
    let aligned_agrees = match (&outcome, aligned.passed()) {
        (Ok(chart), true) => induced_poisson(&q)?.pi() == chart.pi(),
        (Err(_), false) => true,
        _ => false,
    };
    Ok(AffineVerdict { outcome, aligned_agrees })
}

/// Basis of `g_mu = {X : ad*_X mu = 0}`.
pub fn isotropy_algebra(g: &LieAlgebra, mu: &[Scalar]) -> Vec<Vec<Scalar>> {
    let n = g.dim();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|k| (0..n).map(|i| pair(mu, &g.bracket(&g.basis_vector(i), &g.basis_vector(k)))).collect())
        .collect();
    if n == 0 {
        return Vec::new();
    }
    ExactMatrix::from_rows(rows).nullspace()
}

/// Transverse Poisson structure at `mu`: the Lie-Poisson chart of `l*` for
/// `l` inside the isotropy algebra and `g = l + m` reductive.
pub fn transverse_from_reductive(
    g: &LieAlgebra,
    l: &[Vec<Scalar>],
    m: &[Vec<Scalar>],
    mu: &[Scalar],
) -> Result<PoissonChart, DiracError> {
    let n = g.dim();
    for li in l {
        for k in 0..n {
            if !pair(mu, &g.bracket(li, &g.basis_vector(k))).is_zero() {
                return Err(DiracError::NotIsotropic);
            }
        }
    }
    let v = affine_lie_poisson_dirac(g, l, m, mu)?;
    v.outcome.map_err(DiracError::AffineFails)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{abelian, sl_chevalley, so3};

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::from_int(1);
        v
    }

    #[test]
    fn so3_rotation_axis() {
        let g = so3();
        let mu = e(3, 2);
        let v = affine_lie_poisson_dirac(&g, &[e(3, 2)], &[e(3, 0), e(3, 1)], &mu).unwrap();
        assert!(v.passed() && v.aligned_agrees);
        assert!(v.outcome.unwrap().pi().is_zero());
        let bad = affine_lie_poisson_dirac(&g, &[e(3, 0), e(3, 1)], &[e(3, 2)], &mu).unwrap();
        assert_eq!(bad.outcome.unwrap_err(), AffineFailure::NotSubalgebra { i: 0, j: 1 });
        assert!(bad.aligned_agrees);
        assert_eq!(isotropy_algebra(&g, &mu).len(), 1);
    }

    #[test]
    fn sl2_cartan() {
        let g = sl_chevalley(2);
        let mu = e(3, 2);
        let v = affine_lie_poisson_dirac(&g, &[e(3, 2)], &[e(3, 0), e(3, 1)], &mu).unwrap();
        assert!(v.passed() && v.aligned_agrees);
        let t = transverse_from_reductive(&g, &[e(3, 2)], &[e(3, 0), e(3, 1)], &mu).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(matches!(
            transverse_from_reductive(&g, &[e(3, 0)], &[e(3, 1), e(3, 2)], &mu),
            Err(DiracError::NotIsotropic)
        ));
    }

    #[test]
    fn abelian_transverse_is_everything() {
        let g = abelian(2);
        let t = transverse_from_reductive(&g, &[e(2, 0), e(2, 1)], &[], &e(2, 0)).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.pi().is_zero());
    }
}
