//! Floating-point matrix groups: coboundary Poisson-Lie bivectors, Poisson
//! involutions, fixed-locus structures and the dual group inside the double.

pub mod dual;
pub mod involution;
pub mod numeric;
pub mod realize;
pub mod reports;
pub mod sampling;

pub use dual::{dual_group_bivector, DualGroup};
pub use involution::{
    invariance_residual, pi_k_formula, pi_q_formula, pi_q_projection, project_legs, verified_pi_q, xplus, ArrowBinding,
    InvolutionSpec, PiKVariant,
};
pub use numeric::{numeric_rank, rank_relation, span_residual, NumericRankRelation, RANK_TOL};
pub use realize::{cocycle_lambda, pl_bivector, MatrixRealization};
pub use reports::{bruhat_report, crosscheck_report, stokes_report, BruhatReport, CrosscheckReport, StokesReport};

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

pub type CMat = DMatrix<Complex64>;

/// Membership and invariance tolerance.
pub const MEMBER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("point is not in {kind}: residual {residual:e}")]
    NotMember { kind: GroupKind, residual: f64 },
    #[error("point is not fixed by the involution: residual {0:e}")]
    NotFixed(f64),
    #[error("bivector is not invariant under the involution: residual {0:e}")]
    NotInvariant(f64),
    #[error("bivector is not tangent to the subgroup: residual {0:e}")]
    NotTangent(f64),
    #[error("entry ({0}, {1}, {2}) out of range")]
    IndexOutOfRange(usize, usize, usize),
    #[error("shape mismatch")]
    Shape,
    #[error("{0}")]
    Unsupported(String),
    #[error("formula and projection disagree by {0:e}")]
    Disagreement(f64),
}

/// Which group a point is claimed to lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    SlComplex,
    SlReal,
    SpecialUnitary,
    /// `D = G x G`.
    Double,
    /// `G* = B+ * B-` inside the double.
    DualStar,
}

impl GroupKind {
    pub fn factors(self) -> usize {
        match self {
            GroupKind::Double | GroupKind::DualStar => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::SlComplex => "SL(n,C)",
            GroupKind::SlReal => "SL(n,R)",
            GroupKind::SpecialUnitary => "SU(n)",
            GroupKind::Double => "G x G",
            GroupKind::DualStar => "B+ * B-",
        })
    }
}

/// Matrix exponential (Pade scaling and squaring).
pub fn matrix_exp(x: &CMat) -> CMat {
    assert!(x.is_square(), "exponential of a non-square matrix");
    x.clone().exp()
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn max_entry(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn det_residual(m: &CMat) -> f64 {
    (m.determinant() - c(1.0)).norm()
}

/// Point of a matrix group, one matrix per factor.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    kind: GroupKind,
    blocks: Vec<CMat>,
}

impl GroupElement {
    pub fn new(kind: GroupKind, blocks: Vec<CMat>) -> Result<Self, GroupError> {
        let g = GroupElement::unchecked(kind, blocks)?;
        let residual = g.membership_residual();
        if residual > MEMBER_TOL {
            return Err(GroupError::NotMember { kind, residual });
        }
        Ok(g)
    }

    /// Shape checks only.
    pub fn unchecked(kind: GroupKind, blocks: Vec<CMat>) -> Result<Self, GroupError> {
        if blocks.len() != kind.factors() || blocks.is_empty() {
            return Err(GroupError::Shape);
        }
        let n = blocks[0].nrows();
        if blocks.iter().any(|b| b.nrows() != n || b.ncols() != n) {
            return Err(GroupError::Shape);
        }
        Ok(GroupElement { kind, blocks })
    }

    pub fn identity(kind: GroupKind, n: usize) -> Self {
        GroupElement { kind, blocks: vec![CMat::identity(n, n); kind.factors()] }
    }

    /// `exp` applied factorwise.
    pub fn exp(kind: GroupKind, xs: &[CMat]) -> Result<Self, GroupError> {
        GroupElement::new(kind, xs.iter().map(matrix_exp).collect())
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.blocks[0].nrows()
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &CMat {
        &self.blocks[k]
    }

    /// Length of the flattened coordinate vector.
    pub fn coord_len(&self) -> usize {
        self.blocks.len() * self.n() * self.n()
    }

    /// Largest violation of the defining equations of the tagged group.
    pub fn membership_residual(&self) -> f64 {
        let det = self.blocks.iter().map(det_residual).fold(0.0, f64::max);
        let n = self.n();
        match self.kind {
            GroupKind::SlComplex | GroupKind::Double => det,
            GroupKind::SlReal => det.max(self.blocks[0].iter().map(|z| z.im.abs()).fold(0.0, f64::max)),
            GroupKind::SpecialUnitary => {
                let g = &self.blocks[0];
                det.max(max_entry(&(g.adjoint() * g - CMat::identity(n, n))))
            }
            GroupKind::DualStar => {
                let (b, cm) = (&self.blocks[0], &self.blocks[1]);
                let mut r = det;
                for i in 0..n {
                    for j in 0..n {
                        if i > j {
                            r = r.max(b[(i, j)].norm());
                        }
                        if i < j {
                            r = r.max(cm[(i, j)].norm());
                        }
                    }
                    r = r.max((b[(i, i)] * cm[(i, i)] - c(1.0)).norm());
                }
                r
            }
        }
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        assert_eq!(self.blocks.len(), o.blocks.len(), "factor count mismatch");
        GroupElement { kind: self.kind, blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a * b).collect() }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            kind: self.kind,
            blocks: self.blocks.iter().map(|b| b.clone().try_inverse().expect("group element is invertible")).collect(),
        }
    }

    /// Largest entrywise distance.
    pub fn distance(&self, o: &GroupElement) -> f64 {
        self.blocks.iter().zip(&o.blocks).map(|(a, b)| max_entry(&(a - b))).fold(0.0, f64::max)
    }

    /// Violation of the linearised constraint by `v` at this point. Points of
    /// `B+ * B-` are checked against the ambient double.
    pub fn tangent_residual(&self, v: &Tangent) -> f64 {
        let inv = self.inverse();
        let mut r: f64 = 0.0;
        for (gi, vi) in inv.blocks.iter().zip(&v.0) {
            let x = gi * vi;
            r = r.max(x.trace().norm());
            match self.kind {
                GroupKind::SlReal => r = r.max(vi.iter().map(|z| z.im.abs()).fold(0.0, f64::max)),
                GroupKind::SpecialUnitary => r = r.max(max_entry(&(&x + x.adjoint()))),
                _ => {}
            }
        }
        r
    }
}

/// Tangent vector: one matrix per factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Tangent(pub Vec<CMat>);

impl Tangent {
    pub fn zero(factors: usize, n: usize) -> Self {
        Tangent(vec![CMat::zeros(n, n); factors])
    }

    pub fn single(m: CMat) -> Self {
        Tangent(vec![m])
    }

    pub fn add(&self, o: &Tangent) -> Tangent {
        Tangent(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Tangent) -> Tangent {
        Tangent(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: Complex64) -> Tangent {
        Tangent(self.0.iter().map(|a| a * s).collect())
    }

    /// `g v`.
    pub fn left_mul(&self, g: &GroupElement) -> Tangent {
        Tangent(g.blocks.iter().zip(&self.0).map(|(a, b)| a * b).collect())
    }

    /// `v g`.
    pub fn right_mul(&self, g: &GroupElement) -> Tangent {
        Tangent(self.0.iter().zip(&g.blocks).map(|(a, b)| a * b).collect())
    }

    /// `g v g^-1`.
    pub fn conjugate(&self, g: &GroupElement) -> Tangent {
        self.left_mul(g).right_mul(&g.inverse())
    }

    /// Row-major entries, factor by factor.
    pub fn flatten(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for b in &self.0 {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    out.push(b[(i, j)]);
                }
            }
        }
        out
    }

    pub fn unflatten(v: &[Complex64], factors: usize, n: usize) -> Tangent {
        assert_eq!(v.len(), factors * n * n, "length mismatch");
        Tangent((0..factors).map(|k| CMat::from_fn(n, n, |i, j| v[k * n * n + i * n + j])).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(max_entry).fold(0.0, f64::max)
    }

    /// Entry `(factor, i, j)`.
    pub fn entry(&self, idx: (usize, usize, usize)) -> Option<Complex64> {
        let (k, i, j) = idx;
        self.0.get(k).filter(|b| i < b.nrows() && j < b.ncols()).map(|b| b[(i, j)])
    }
}

/// `sum_a u_a ^ v_a` at a base point.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentBivector {
    base: GroupElement,
    legs: Vec<(Tangent, Tangent)>,
}

impl TangentBivector {
    /// Checks every leg against the linearised constraint.
    pub fn new(base: GroupElement, legs: Vec<(Tangent, Tangent)>) -> Result<Self, GroupError> {
        for (u, v) in &legs {
            for w in [u, v] {
                let r = base.tangent_residual(w);
                if r > MEMBER_TOL * w.max_abs().max(1.0) {
                    return Err(GroupError::NotTangent(r));
                }
            }
        }
        Ok(TangentBivector { base, legs })
    }

    pub(crate) fn unchecked(base: GroupElement, legs: Vec<(Tangent, Tangent)>) -> Self {
        TangentBivector { base, legs }
    }

    pub fn zero(base: GroupElement) -> Self {
        TangentBivector { base, legs: Vec::new() }
    }

    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn legs(&self) -> &[(Tangent, Tangent)] {
        &self.legs
    }

    /// `Pi[e][f] = sum_a u_a[e] v_a[f] - v_a[e] u_a[f]` on flattened entries.
    pub fn bracket_matrix(&self) -> CMat {
        let n = self.base.coord_len();
        let mut m = CMat::zeros(n, n);
        for (u, v) in &self.legs {
            let (fu, fv) = (u.flatten(), v.flatten());
            for e in 0..n {
                if fu[e].norm() == 0.0 && fv[e].norm() == 0.0 {
                    continue;
                }
                for f in 0..n {
                    m[(e, f)] += fu[e] * fv[f] - fv[e] * fu[f];
                }
            }
        }
        m
    }

    /// `{A_ij, A_kl}` with entries addressed as `(factor, row, col)`.
    pub fn entry_bracket(&self, a: (usize, usize, usize), b: (usize, usize, usize)) -> Result<Complex64, GroupError> {
        let mut s = c(0.0);
        let zero = Tangent::zero(self.base.blocks.len(), self.base.n());
        for idx in [a, b] {
            if zero.entry(idx).is_none() {
                return Err(GroupError::IndexOutOfRange(idx.0, idx.1, idx.2));
            }
        }
        for (u, v) in &self.legs {
            let (ua, ub) = (u.entry(a).unwrap(), u.entry(b).unwrap());
            let (va, vb) = (v.entry(a).unwrap(), v.entry(b).unwrap());
            s += ua * vb - ub * va;
        }
        Ok(s)
    }

    /// Pushes every leg through a linear map, landing at `target`.
    pub fn push(&self, target: GroupElement, f: impl Fn(&Tangent) -> Tangent) -> TangentBivector {
        TangentBivector { base: target, legs: self.legs.iter().map(|(u, v)| (f(u), f(v))).collect() }
    }

    pub fn scale(&self, s: Complex64) -> TangentBivector {
        TangentBivector { base: self.base.clone(), legs: self.legs.iter().map(|(u, v)| (u.scale(s), v.clone())).collect() }
    }

    /// Sum of two bivectors at the same point.
    pub fn add(&self, o: &TangentBivector) -> TangentBivector {
        let mut legs = self.legs.clone();
        legs.extend(o.legs.iter().cloned());
        TangentBivector { base: self.base.clone(), legs }
    }

    /// Largest entrywise bracket difference.
    pub fn max_diff(&self, o: &TangentBivector) -> f64 {
        max_entry(&(self.bracket_matrix() - o.bracket_matrix()))
    }

    pub fn max_abs(&self) -> f64 {
        max_entry(&self.bracket_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_zero_and_diagonal() {
        assert_eq!(matrix_exp(&CMat::zeros(3, 3)), CMat::identity(3, 3));
        let a = 1.3;
        let d = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(a), c(-a)]));
        let e = matrix_exp(&d);
        assert!((e[(0, 0)].re - a.exp()).abs() <= 1e-12 * a.exp());
        assert!((e[(1, 1)].re - (-a).exp()).abs() <= 1e-12);
        assert!(e[(0, 1)].norm() == 0.0);
    }

    #[test]
    fn membership_residuals() {
        let g = GroupElement::identity(GroupKind::DualStar, 3);
        assert_eq!(g.membership_residual(), 0.0);
        let mut b = CMat::identity(2, 2);
        b[(1, 0)] = c(0.5);
        let bad = GroupElement::new(GroupKind::DualStar, vec![b, CMat::identity(2, 2)]);
        assert!(matches!(bad, Err(GroupError::NotMember { .. })));
    }

    #[test]
    fn entry_bracket_bounds_and_sign() {
        let base = GroupElement::identity(GroupKind::SlComplex, 2);
        let mut u = CMat::zeros(2, 2);
        u[(0, 1)] = c(1.0);
        let mut v = CMat::zeros(2, 2);
        v[(1, 0)] = c(1.0);
        let pi = TangentBivector::new(base, vec![(Tangent::single(u), Tangent::single(v))]).unwrap();
        let ab = pi.entry_bracket((0, 0, 1), (0, 1, 0)).unwrap();
        let ba = pi.entry_bracket((0, 1, 0), (0, 0, 1)).unwrap();
        assert_eq!(ab, c(1.0));
        assert_eq!(ba, -ab);
        assert!(matches!(pi.entry_bracket((0, 2, 0), (0, 0, 0)), Err(GroupError::IndexOutOfRange(0, 2, 0))));
        let m = pi.bracket_matrix();
        assert_eq!(m[(1, 2)], ab);
    }
}
