//! Matrix realisations of Lie algebras and the coboundary Poisson-Lie bivector.

use super::numeric::{pseudo_inverse, tangent_columns};
use super::{CMat, GroupElement, Tangent, TangentBivector};
use crate::liealg::{AlgElement, LieAlgebra};
use num_complex::Complex64;

/// Basis of tangent matrices at the identity with a coordinate readout.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    basis: Vec<Tangent>,
    /// Left inverse of the basis columns.
    coords: CMat,
}

impl MatrixRealization {
    pub fn new(basis: Vec<Tangent>) -> Self {
        assert!(!basis.is_empty(), "empty basis");
        let cols = tangent_columns(&basis);
        let coords = pseudo_inverse(&cols, 1e-12);
        MatrixRealization { basis, coords }
    }

    /// Uses the matrices the algebra was built from.
    pub fn from_algebra(g: &LieAlgebra) -> Option<Self> {
        let mats = g.matrices()?;
        let basis = mats
            .iter()
            .map(|m| Tangent::single(CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].to_complex())))
            .collect();
        Some(MatrixRealization::new(basis))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Tangent] {
        &self.basis
    }

    pub fn factors(&self) -> usize {
        self.basis[0].0.len()
    }

    pub fn n(&self) -> usize {
        self.basis[0].0[0].nrows()
    }

    /// `sum_i x_i b_i`.
    pub fn element(&self, x: &[Complex64]) -> Tangent {
        let mut out = Tangent::zero(self.factors(), self.n());
        for (b, &xi) in self.basis.iter().zip(x) {
            if xi.norm() != 0.0 {
                out = out.add(&b.scale(xi));
            }
        }
        out
    }

    /// Least-squares coordinates of an algebra element.
    pub fn coordinates(&self, v: &Tangent) -> Vec<Complex64> {
        let f = nalgebra::DVector::from_vec(v.flatten());
        (&self.coords * f).iter().copied().collect()
    }

    /// Matrix of `Ad_g`, indexed `[target][source]`.
    pub fn adjoint(&self, g: &GroupElement) -> Vec<Vec<Complex64>> {
        let images: Vec<Vec<Complex64>> = self.basis.iter().map(|b| self.coordinates(&b.conjugate(g))).collect();
        (0..self.dim()).map(|t| (0..self.dim()).map(|s| images[s][t]).collect()).collect()
    }
}

/// `lambda(g) = (Lambda^2 Ad_g) r - r`.
pub fn cocycle_lambda(real: &MatrixRealization, g: &GroupElement, r: &AlgElement<Complex64>) -> AlgElement<Complex64> {
    r.apply_linear(&real.adjoint(g)).sub(r)
}

/// `pi(g) = r_{g*} lambda(g)`: legs `X g`.
pub fn pl_bivector(real: &MatrixRealization, g: &GroupElement, r: &AlgElement<Complex64>) -> TangentBivector {
    let lam = cocycle_lambda(real, g, r);
    let legs = lam
        .terms()
        .map(|(idx, &cf)| (real.basis()[idx[0]].scale(cf).right_mul(g), real.basis()[idx[1]].right_mul(g)))
        .collect();
    TangentBivector::unchecked(g.clone(), legs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupnum::{c, GroupKind};
    use crate::liealg::{sl_chevalley, standard_r};

    fn sl2() -> (LieAlgebra, MatrixRealization, AlgElement<Complex64>) {
        let g = sl_chevalley(2);
        let real = MatrixRealization::from_algebra(&g).unwrap();
        let r = standard_r(&g).map(|s| s.to_complex());
        (g, real, r)
    }

    #[test]
    fn lambda_and_pi_vanish_at_identity() {
        let (_, real, r) = sl2();
        let e = GroupElement::identity(GroupKind::SlReal, 2);
        assert!(cocycle_lambda(&real, &e, &r).max_abs() < 1e-15);
        assert!(pl_bivector(&real, &e, &r).max_abs() < 1e-15);
    }

    #[test]
    fn coordinates_invert_element() {
        let (_, real, _) = sl2();
        let x = vec![c(0.3), c(-1.2), c(2.0)];
        let back = real.coordinates(&real.element(&x));
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}
