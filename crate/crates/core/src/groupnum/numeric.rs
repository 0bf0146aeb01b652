//! Numerical rank, spans and the rank relation at fixed points.

use super::involution::{pi_q_projection, xplus, InvolutionSpec};
use super::{CMat, GroupError, Tangent, TangentBivector};
use num_complex::Complex64;

/// Relative singular-value threshold.
pub const RANK_TOL: f64 = 1e-8;

/// Thin SVD `m = U diag(s) V^*`.
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

pub fn svd(m: &CMat) -> Svd {
    let (r, c) = (m.nrows(), m.ncols());
    let k = r.min(c);
    if k == 0 {
        return Svd { u: CMat::zeros(r, 0), s: Vec::new(), v: CMat::zeros(c, 0) };
    }
    let f = faer::Mat::<Complex64>::from_fn(r, c, |i, j| m[(i, j)]);
    let d = f.thin_svd().expect("SVD converges");
    let (u, v, sv) = (d.U(), d.V(), d.S());
    Svd {
        u: CMat::from_fn(r, k, |i, j| u[(i, j)]),
        s: (0..k).map(|j| sv[j].re).collect(),
        v: CMat::from_fn(c, k, |i, j| v[(i, j)]),
    }
}

fn threshold(s: &[f64], tol: f64) -> f64 {
    tol * s.iter().copied().fold(0.0, f64::max).max(1.0)
}

/// Number of singular values above `tol * max(1, sigma_max)`.
pub fn numeric_rank(m: &CMat, tol: f64) -> usize {
    let s = svd(m).s;
    let t = threshold(&s, tol);
    s.iter().filter(|&&x| x > t).count()
}

/// Columns given by flattened tangents.
pub fn tangent_columns(vs: &[Tangent]) -> CMat {
    let cols: Vec<Vec<_>> = vs.iter().map(Tangent::flatten).collect();
    let rows = cols.first().map_or(0, Vec::len);
    CMat::from_fn(rows, cols.len(), |i, j| cols[j][i])
}

/// Orthonormal basis of the column space, thresholded as in [`numeric_rank`].
pub fn orthonormal_range(m: &CMat, tol: f64) -> CMat {
    let d = svd(m);
    let t = threshold(&d.s, tol);
    let keep: Vec<usize> = (0..d.s.len()).filter(|&k| d.s[k] > t).collect();
    CMat::from_fn(m.nrows(), keep.len(), |i, j| d.u[(i, keep[j])])
}

/// Moore-Penrose inverse with the same threshold.
pub fn pseudo_inverse(m: &CMat, tol: f64) -> CMat {
    let d = svd(m);
    let t = threshold(&d.s, tol);
    let mut out = CMat::zeros(m.ncols(), m.nrows());
    for k in (0..d.s.len()).filter(|&k| d.s[k] > t) {
        out += d.v.column(k) * d.u.column(k).adjoint() / Complex64::new(d.s[k], 0.0);
    }
    out
}

/// Largest component of the columns of `m` orthogonal to the span of `basis`.
pub fn span_residual(m: &CMat, basis: &CMat) -> f64 {
    let q = orthonormal_range(basis, RANK_TOL);
    let r = m - &q * (q.adjoint() * m);
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Ranks entering `pi_Q^#(T*Q) = pi^#(T*P) cap TQ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericRankRelation {
    pub induced_rank: usize,
    pub intersection_dim: usize,
    pub fixed_dim: usize,
}

impl NumericRankRelation {
    pub fn holds(&self) -> bool {
        self.induced_rank == self.intersection_dim
    }
}

/// Rank relation at a fixed point. `ambient` spans the tangent space of the
/// Poisson manifold containing the fixed locus.
pub fn rank_relation(
    spec: &InvolutionSpec,
    pi: &TangentBivector,
    ambient: &[Tangent],
) -> Result<NumericRankRelation, GroupError> {
    let g = pi.base();
    let fixed: Vec<Tangent> = ambient.iter().map(|v| xplus(spec, g, v)).collect::<Result<_, _>>()?;
    let tq = orthonormal_range(&tangent_columns(&fixed), RANK_TOL);
    let big = pi.bracket_matrix();
    let induced = numeric_rank(&pi_q_projection(spec, pi)?.bracket_matrix(), RANK_TOL);
    let joint = numeric_rank(&big, RANK_TOL);
    let stacked = {
        let mut m = CMat::zeros(big.nrows(), big.ncols() + tq.ncols());
        m.columns_mut(0, big.ncols()).copy_from(&big);
        m.columns_mut(big.ncols(), tq.ncols()).copy_from(&tq);
        m
    };
    let sum = numeric_rank(&stacked, RANK_TOL);
    Ok(NumericRankRelation { induced_rank: induced, intersection_dim: joint + tq.ncols() - sum, fixed_dim: tq.ncols() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupnum::c;

    #[test]
    fn rank_threshold() {
        let mut m = CMat::zeros(3, 3);
        m[(0, 0)] = c(5.0);
        m[(1, 1)] = c(1e-12);
        assert_eq!(numeric_rank(&m, RANK_TOL), 1);
        m[(2, 2)] = c(1e-3);
        assert_eq!(numeric_rank(&m, RANK_TOL), 2);
    }

    #[test]
    fn svd_recomposes_rank_deficient_input() {
        let rows = [[0.0, 0.0, 0.0, 0.0], [0.5, 0.0, 0.5, -0.44], [0.0, 0.5, 0.22, 0.5], [0.5, 0.5, 0.72, 0.06]];
        let m = CMat::from_fn(4, 4, |i, j| c(rows[i][j]));
        let d = svd(&m);
        let s = CMat::from_diagonal(&nalgebra::DVector::from_iterator(d.s.len(), d.s.iter().map(|&x| c(x))));
        let back = &d.u * s * d.v.adjoint();
        assert!((back - &m).iter().all(|z| z.norm() < 1e-14));
        assert_eq!(numeric_rank(&m, RANK_TOL), 2);
    }

    #[test]
    fn span_residual_detects_outside_vectors() {
        let basis = CMat::from_fn(3, 1, |i, _| c(if i == 0 { 1.0 } else { 0.0 }));
        let inside = CMat::from_fn(3, 1, |i, _| c(if i == 0 { 2.0 } else { 0.0 }));
        let outside = CMat::from_fn(3, 1, |i, _| c(if i == 1 { 1.0 } else { 0.0 }));
        assert!(span_residual(&inside, &basis) < 1e-15);
        assert!((span_residual(&outside, &basis) - 1.0).abs() < 1e-15);
    }
}
