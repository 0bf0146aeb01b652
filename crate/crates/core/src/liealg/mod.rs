//! Exact Lie algebras: structure constants, root data, Lie-Poisson charts,
//! bialgebra checks and Drinfeld doubles.

pub mod bialgebra;
pub mod builtins;
pub mod element;
pub mod file;
pub mod map;

pub use bialgebra::{
    chi_check, coboundary_check, drinfeld_double, fixes_cartan, symmetric_bialgebra_check, CheckList, DrinfeldDouble,
};
pub use builtins::{abelian, builtin, so3, sl_chevalley, standard_r, su_compact, CompactForm};
pub use element::{alg_schouten, AlgElement, Coeff};
pub use file::{emit_lie_file, parse_lie_file};
pub use map::LinearAlgMap;

use crate::exactalg::{ExactMatrix, Poly, PolyMultiVec, Scalar};
use crate::poisson::PoissonChart;
use num::traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("unknown algebra '{0}'")]
    UnknownAlgebra(String),
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrices are not closed under commutator")]
    NotClosed,
    #[error("map does not preserve the Cartan subalgebra")]
    CartanNotPreserved,
}

/// Positive root with its Chevalley vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub label: String,
    pub e: usize,
    pub f: usize,
    /// Trace-form pairing `(e, f)`.
    pub d: Scalar,
    /// Coordinates of the coroot `h_alpha` in the Cartan basis.
    pub coroot: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    pub positive: Vec<PositiveRoot>,
    /// Basis indices of `h_1, ..., h_r`.
    pub cartan: Vec<usize>,
}

/// Finite-dimensional Lie algebra with exact structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// `table[i][j]` holds the nonzero `(k, c_ij^k)`.
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    roots: Option<RootData>,
    matrices: Option<Vec<ExactMatrix>>,
}

/// Result of [`validate_lie`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieVerdict {
    Valid,
    NotAntisymmetric { i: usize, j: usize },
    JacobiFails { i: usize, j: usize, k: usize },
}

impl LieVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, LieVerdict::Valid)
    }
}

impl fmt::Display for LieVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieVerdict::Valid => write!(f, "valid"),
            LieVerdict::NotAntisymmetric { i, j } => write!(f, "[e{},e{}] != -[e{},e{}]", i, j, j, i),
            LieVerdict::JacobiFails { i, j, k } => write!(f, "Jacobi fails on ({}, {}, {})", i, j, k),
        }
    }
}

impl LieAlgebra {
    /// Builds from raw constants `(i, j, k, c_ij^k)`; nothing is antisymmetrised.
    pub fn from_raw(labels: Vec<String>, constants: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Self {
        let n = labels.len();
        let mut dense = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, j, k, c) in constants {
            dense[i][j][k] += &c;
        }
        let table = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
                    .collect()
            })
            .collect();
        LieAlgebra { labels, table, roots: None, matrices: None }
    }

    /// Builds from brackets `[e_i, e_j]` for `i < j` (or any order), antisymmetrising.
    pub fn from_brackets(labels: Vec<String>, brackets: impl IntoIterator<Item = (usize, usize, Vec<Scalar>)>) -> Self {
        let mut raw = Vec::new();
        for (i, j, v) in brackets {
            for (k, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    raw.push((j, i, k, -&c));
                    raw.push((i, j, k, c));
                }
            }
        }
        LieAlgebra::from_raw(labels, raw)
    }

    /// Matrix Lie algebra spanned by `mats`, constants from exact commutators.
    pub fn from_matrices(labels: Vec<String>, mats: Vec<ExactMatrix>) -> Result<Self, LieError> {
        let n = mats.len();
        let flat = flatten_basis(&mats);
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = &(&mats[i] * &mats[j]) - &(&mats[j] * &mats[i]);
                let v = flat.solve(&flatten(&c)).ok_or(LieError::NotClosed)?;
                brackets.push((i, j, v));
            }
        }
        let mut g = LieAlgebra::from_brackets(labels, brackets);
        g.matrices = Some(mats);
        Ok(g)
    }

    pub fn with_roots(mut self, roots: RootData) -> Self {
        self.roots = Some(roots);
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn roots(&self) -> Option<&RootData> {
        self.roots.as_ref()
    }

    /// Exact matrix realisation of the basis, when known.
    pub fn matrices(&self) -> Option<&[ExactMatrix]> {
        self.matrices.as_deref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Nonzero `(k, c_ij^k)`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i][j].iter().find(|(kk, _)| *kk == k).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    /// Bracket of dense coordinate vectors.
    pub fn bracket<T: Coeff>(&self, u: &[T], v: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut out = vec![T::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui.clone() * vj.clone();
                for (k, s) in &self.table[i][j] {
                    out[*k] = out[*k].clone() + c.clone() * T::from_scalar(s);
                }
            }
        }
        out
    }

    pub fn basis_vector<T: Coeff>(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        v[i] = T::one();
        v
    }

    /// Matrix of `ad_x` (columns indexed by source basis).
    pub fn ad_matrix(&self, x: &[Scalar]) -> ExactMatrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.bracket(x, &self.basis_vector(j))).collect();
        ExactMatrix::from_columns(&cols, n)
    }

    /// Sub-algebra structure constants in a given basis, if it closes.
    pub fn restrict(&self, basis: &[Vec<Scalar>], labels: Vec<String>) -> Option<LieAlgebra> {
        let m = basis.len();
        let b = ExactMatrix::from_columns(basis, self.dim());
        let mut brackets = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let c = self.bracket(&basis[i], &basis[j]);
                brackets.push((i, j, b.solve(&c)?));
            }
        }
        Some(LieAlgebra::from_brackets(labels, brackets))
    }
}

pub(crate) fn flatten(m: &ExactMatrix) -> Vec<Scalar> {
    (0..m.nrows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn flatten_basis(mats: &[ExactMatrix]) -> ExactMatrix {
    let cols: Vec<Vec<Scalar>> = mats.iter().map(flatten).collect();
    let rows = cols.first().map(Vec::len).unwrap_or(0);
    ExactMatrix::from_columns(&cols, rows)
}

/// Checks antisymmetry and the Jacobi identity exactly.
pub fn validate_lie(g: &LieAlgebra) -> LieVerdict {
    let n = g.dim();
    for i in 0..n {
        for j in i..n {
            let a: Vec<Scalar> = g.bracket(&g.basis_vector(i), &g.basis_vector(j));
            let b: Vec<Scalar> = g.bracket(&g.basis_vector(j), &g.basis_vector(i));
            if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                return LieVerdict::NotAntisymmetric { i, j };
            }
        }
    }
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| g.basis_vector(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ij = g.bracket(&basis[i], &basis[j]);
            for k in j + 1..n {
                let jk = g.bracket(&basis[j], &basis[k]);
                let ki = g.bracket(&basis[k], &basis[i]);
                let t1 = g.bracket(&ij, &basis[k]);
                let t2 = g.bracket(&jk, &basis[i]);
                let t3 = g.bracket(&ki, &basis[j]);
                if (0..n).any(|m| !(&(&t1[m] + &t2[m]) + &t3[m]).is_zero()) {
                    return LieVerdict::JacobiFails { i, j, k };
                }
            }
        }
    }
    LieVerdict::Valid
}

/// Lie-Poisson chart `pi = 1/2 sum c_ij^k x_k d_i ^ d_j` with coordinates `x1..xn`.
pub fn lie_poisson_chart(g: &LieAlgebra) -> PoissonChart {
    lie_poisson_chart_named(g, crate::exactalg::poly::default_names(g.dim()))
}

pub fn lie_poisson_chart_named(g: &LieAlgebra, names: Vec<String>) -> PoissonChart {
    let n = g.dim();
    let mut pi = PolyMultiVec::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut c = Poly::zero(n);
            for (k, s) in g.bracket_basis(i, j) {
                c.add_scaled(&Poly::var(n, *k), s);
            }
            pi.add_component(&[i, j], c).expect("valid indices");
        }
    }
    PoissonChart::new(names, pi, None).expect("consistent chart")
}
