//! Linear maps between Lie algebras.

use super::element::{AlgElement, Coeff};
use super::{flatten, LieAlgebra, LieError};
use crate::exactalg::{ExactMatrix, Scalar};
use num::traits::Zero;

/// Linear map with matrix `M[target][source]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAlgMap {
    matrix: ExactMatrix,
}

impl LinearAlgMap {
    pub fn new(matrix: ExactMatrix) -> Self {
        LinearAlgMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearAlgMap { matrix: ExactMatrix::identity(n) }
    }

    /// The map induced by `A -> A^T` on a transpose-stable matrix algebra.
    pub fn transpose(g: &LieAlgebra) -> Result<Self, LieError> {
        let mats = g.matrices().ok_or(LieError::NotClosed)?;
        let cols: Vec<Vec<Scalar>> = mats.iter().map(flatten).collect();
        let basis = ExactMatrix::from_columns(&cols, cols[0].len());
        let images = mats
            .iter()
            .map(|m| basis.solve(&flatten(&m.transpose())).ok_or(LieError::NotClosed))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearAlgMap { matrix: ExactMatrix::from_columns(&images, g.dim()) })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn compose(&self, inner: &LinearAlgMap) -> LinearAlgMap {
        LinearAlgMap { matrix: &self.matrix * &inner.matrix }
    }

    pub fn is_involution(&self) -> bool {
        self.source_dim() == self.target_dim() && self.compose(self) == LinearAlgMap::identity(self.source_dim())
    }

    /// Rows of the matrix in another coefficient ring.
    pub fn rows_as<T: Coeff>(&self) -> Vec<Vec<T>> {
        (0..self.target_dim()).map(|i| self.matrix.row(i).iter().map(T::from_scalar).collect()).collect()
    }

    /// `Lambda^k` of the map.
    pub fn apply_wedge<T: Coeff>(&self, a: &AlgElement<T>) -> AlgElement<T> {
        a.apply_linear(&self.rows_as::<T>())
    }

    /// First basis pair violating `phi[x,y] = sign [phi x, phi y]`.
    fn bracket_violation(&self, g: &LieAlgebra, sign: i64) -> Option<(usize, usize)> {
        let n = g.dim();
        let s = Scalar::from_int(sign);
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| self.apply(&g.basis_vector(i))).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(&g.bracket(&g.basis_vector(i), &g.basis_vector(j)));
                let rhs = g.bracket(&images[i], &images[j]);
                if lhs.iter().zip(&rhs).any(|(a, b)| !(a - &(b * &s)).is_zero()) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn anti_morphism_violation(&self, g: &LieAlgebra) -> Option<(usize, usize)> {
        self.bracket_violation(g, -1)
    }

    pub fn morphism_violation(&self, g: &LieAlgebra) -> Option<(usize, usize)> {
        self.bracket_violation(g, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtins::sl_chevalley;
    use super::*;

    #[test]
    fn transpose_swaps_e_and_f() {
        let g = sl_chevalley(2);
        let s = LinearAlgMap::transpose(&g).unwrap();
        assert_eq!(s.apply(&g.basis_vector(0)), g.basis_vector::<Scalar>(1));
        assert_eq!(s.apply(&g.basis_vector(2)), g.basis_vector::<Scalar>(2));
        assert!(s.is_involution());
        assert!(s.anti_morphism_violation(&g).is_none());
        assert!(LinearAlgMap::identity(3).anti_morphism_violation(&g).is_some());
    }
}
