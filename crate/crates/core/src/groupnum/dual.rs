//! The dual group `B+ * B-` inside the double `SL(n) x SL(n)`.

use super::numeric::{span_residual, tangent_columns};
use super::realize::{pl_bivector, MatrixRealization};
use super::{c, CMat, GroupElement, GroupError, GroupKind, Tangent, TangentBivector, MEMBER_TOL};
use crate::liealg::{sl_chevalley, AlgElement};
use num_complex::Complex64;

/// Tangency tolerance for the dual-group bivector.
pub const TANGENCY_TOL: f64 = 1e-8;

/// The double `sigma = g + g*` of `sl(n)` with its canonical r-matrix.
#[derive(Clone, Debug)]
pub struct DualGroup {
    n: usize,
    /// Basis `X_1..X_m` (diagonal copy of `g`) followed by `eta_1..eta_m` spanning `g*`.
    real: MatrixRealization,
    /// `xi^i = sum_j dual[i][j] eta_j`.
    dual: Vec<Vec<Complex64>>,
    r_sigma: AlgElement<Complex64>,
}

fn unit(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = c(1.0);
    m
}

/// `<(a, b), (c, d)> = tr(ac) - tr(bd)`.
pub fn pairing(u: &Tangent, v: &Tangent) -> Complex64 {
    (&u.0[0] * &v.0[0]).trace() - (&u.0[1] * &v.0[1]).trace()
}

impl DualGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "n >= 2");
        let g = sl_chevalley(n);
        let diag: Vec<Tangent> = g
            .matrices()
            .expect("sl(n) is a matrix algebra")
            .iter()
            .map(|m| {
                let a = CMat::from_fn(n, n, |i, j| m[(i, j)].to_complex());
                Tangent(vec![a.clone(), a])
            })
            .collect();
        let mut star = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                star.push(Tangent(vec![unit(n, i, j), CMat::zeros(n, n)]));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                star.push(Tangent(vec![CMat::zeros(n, n), unit(n, j, i)]));
            }
        }
        for k in 0..n - 1 {
            let h = unit(n, k, k) - unit(n, k + 1, k + 1);
            star.push(Tangent(vec![h.clone(), -h]));
        }
        let m = diag.len();
        assert_eq!(star.len(), m, "g* has the dimension of g");
        let p = CMat::from_fn(m, m, |k, j| pairing(&diag[k], &star[j]));
        let inv = p.transpose().try_inverse().expect("pairing is nondegenerate");
        let dual: Vec<Vec<Complex64>> = (0..m).map(|i| (0..m).map(|j| inv[(i, j)]).collect()).collect();
        let mut r_sigma = AlgElement::zero(2 * m, 2);
        for (i, row) in dual.iter().enumerate() {
            for (j, &cf) in row.iter().enumerate() {
                if cf.norm() != 0.0 {
                    r_sigma.add_term(&[i, m + j], cf);
                }
            }
        }
        let mut basis = diag;
        basis.extend(star);
        DualGroup { n, real: MatrixRealization::new(basis), dual, r_sigma }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim g`.
    pub fn m(&self) -> usize {
        self.dual.len()
    }

    pub fn realization(&self) -> &MatrixRealization {
        &self.real
    }

    pub fn r_sigma(&self) -> &AlgElement<Complex64> {
        &self.r_sigma
    }

    /// The dual basis `xi^i` of `g*`.
    pub fn dual_basis(&self) -> Vec<Tangent> {
        let m = self.m();
        self.dual
            .iter()
            .map(|row| {
                let mut coords = vec![c(0.0); 2 * m];
                coords[m..].copy_from_slice(row);
                self.real.element(&coords)
            })
            .collect()
    }

    /// `max |<xi^i, X_j> - delta_ij|`.
    pub fn dual_basis_residual(&self) -> f64 {
        let xs = &self.real.basis()[..self.m()];
        let mut r: f64 = 0.0;
        for (i, xi) in self.dual_basis().iter().enumerate() {
            for (j, x) in xs.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                r = r.max((pairing(xi, x) - c(target)).norm());
            }
        }
        r
    }

    /// `x eta_j`: a basis of the tangent space of `B+ * B-` at `x`.
    pub fn subgroup_tangent(&self, x: &GroupElement) -> Vec<Tangent> {
        self.real.basis()[self.m()..].iter().map(|v| v.left_mul(x)).collect()
    }

    /// Component of `pi^#` leaving the tangent space of the dual group.
    pub fn tangency_residual(&self, pi: &TangentBivector) -> f64 {
        let basis = tangent_columns(&self.subgroup_tangent(pi.base()));
        span_residual(&pi.bracket_matrix(), &basis)
    }

    /// Coboundary bivector of `r_sigma` on the double, evaluated at `x` in `B+ * B-`.
    pub fn bivector(&self, x: &GroupElement) -> Result<TangentBivector, GroupError> {
        let residual = x.membership_residual();
        if x.kind() != GroupKind::DualStar || residual > MEMBER_TOL {
            return Err(GroupError::NotMember { kind: GroupKind::DualStar, residual });
        }
        let pi = pl_bivector(&self.real, x, &self.r_sigma);
        let t = self.tangency_residual(&pi);
        if t > TANGENCY_TOL * pi.max_abs().max(1.0) {
            return Err(GroupError::NotTangent(t));
        }
        Ok(pi)
    }
}

/// `pi_D` at a point of `B+ * B-`.
pub fn dual_group_bivector(n: usize, x: &GroupElement) -> Result<TangentBivector, GroupError> {
    DualGroup::new(n).bivector(x)
}
