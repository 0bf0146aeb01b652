//! Dirac submanifolds in aligned charts `Q = {y = 0}`, induced Poisson
//! structures, and the worked example families.
//!
//! In an aligned chart the criterion reads: `{x_i, y_j}` vanishes on `Q` and
//! `d{x_i, x_j}/dy_l` vanishes on `Q`; then `pi_Q = {x_i, x_j}(x, 0)`.

mod involution;
mod liepoisson;
mod slice;

pub use involution::{fixed_locus_projection, fixed_locus_symbolic, FixedLocus, LinearInvolution};
pub use liepoisson::{affine_lie_poisson_dirac, isotropy_algebra, transverse_from_reductive, AffineFailure, AffineVerdict};
pub use slice::{leaf_slice_obstruction, SliceVerdict};

use crate::exactalg::{ExactMatrix, MultiVecError, Poly, Scalar};
use crate::poisson::{restriction_images, PoissonChart, PoissonError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiracError {
    #[error("chart is not Poisson: jacobiator component on {0:?} is nonzero")]
    NotPoisson(Vec<usize>),
    #[error("x and y indices do not partition 0..{0}")]
    BadSplit(usize),
    #[error("criterion fails: {0}")]
    CriterionFails(DiracWitness),
    #[error("involution invalid: {0}")]
    BadInvolution(String),
    #[error("map is not a Poisson involution: residual {residual} on ({i}, {j})")]
    NotPoissonInvolution { i: usize, j: usize, residual: String },
    #[error("given vectors do not form a basis of g")]
    NotABasis,
    #[error("l is not contained in the isotropy algebra of mu")]
    NotIsotropic,
    #[error("affine condition fails: {0}")]
    AffineFails(AffineFailure),
    #[error("volume density vanishes on the submanifold")]
    VolumeVanishes,
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    MultiVec(#[from] MultiVecError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

/// `Q = {y = 0}` inside a chart, with `V_Q` spanned by the `d/dy`.
#[derive(Clone, Debug)]
pub struct AlignedSubmanifold {
    chart: PoissonChart,
    x: Vec<usize>,
    y: Vec<usize>,
}

impl AlignedSubmanifold {
    pub fn new(chart: PoissonChart, x: Vec<usize>, y: Vec<usize>) -> Result<Self, DiracError> {
        let n = chart.dim();
        let mut all: Vec<usize> = x.iter().chain(&y).copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() {
            return Err(DiracError::BadSplit(n));
        }
        Ok(AlignedSubmanifold { chart, x, y })
    }

    /// Split from coordinate names spanning `Q`; the rest are `y`.
    pub fn from_names(chart: PoissonChart, x_names: &[String]) -> Result<Self, DiracError> {
        let mut x = Vec::new();
        for nm in x_names {
            x.push(chart.names().iter().position(|c| c == nm).ok_or(DiracError::BadSplit(chart.dim()))?);
        }
        let y = (0..chart.dim()).filter(|i| !x.contains(i)).collect();
        AlignedSubmanifold::new(chart, x, y)
    }

    pub fn chart(&self) -> &PoissonChart {
        &self.chart
    }

    pub fn x_indices(&self) -> &[usize] {
        &self.x
    }

    pub fn y_indices(&self) -> &[usize] {
        &self.y
    }

    pub fn x_names(&self) -> Vec<String> {
        self.x.iter().map(|&i| self.chart.names()[i].clone()).collect()
    }

    /// Restriction of an ambient function to `Q`, in the `x` variables.
    pub fn restrict(&self, f: &Poly) -> Poly {
        f.compose(&restriction_images(self.chart.dim(), &self.x))
    }
}

/// Which symbol of the criterion fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `{x_i, y_j}` does not vanish on `Q`.
    Lambda,
    /// `d{x_i, x_j}/dy_l` does not vanish on `Q`.
    PhiDerivative { y: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracWitness {
    pub kind: WitnessKind,
    pub left: String,
    pub right: String,
    /// Residual on `Q`, printed in the `x` variables.
    pub residual: String,
}

impl fmt::Display for DiracWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            WitnessKind::Lambda => write!(f, "{{{}, {}}} = {} on Q", self.left, self.right, self.residual),
            WitnessKind::PhiDerivative { y } => {
                write!(f, "d{{{}, {}}}/d{} = {} on Q", self.left, self.right, y, self.residual)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiracVerdict {
    Pass,
    Fail(DiracWitness),
}

impl DiracVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, DiracVerdict::Pass)
    }
}

fn ensure_poisson(chart: &PoissonChart) -> Result<(), DiracError> {
    let j = chart.jacobiator();
    let first = j.components().next().map(|(idx, _)| idx.clone());
    match first {
        None => Ok(()),
        Some(idx) => Err(DiracError::NotPoisson(idx)),
    }
}

/// Aligned Dirac criterion, with the first failing symbol as witness.
pub fn check_aligned_dirac(q: &AlignedSubmanifold) -> Result<DiracVerdict, DiracError> {
    let chart = &q.chart;
    ensure_poisson(chart)?;
    let names = chart.names();
    let xn = q.x_names();
    let m = chart.pi().bivector_matrix()?;
    for &i in &q.x {
        for &j in &q.y {
            let r = q.restrict(&m[i][j]);
            if !r.is_zero() {
                return Ok(DiracVerdict::Fail(DiracWitness {
                    kind: WitnessKind::Lambda,
                    left: names[i].clone(),
                    right: names[j].clone(),
                    residual: r.display_with(&xn),
                }));
            }
        }
    }
    for (a, &i) in q.x.iter().enumerate() {
        for &j in &q.x[a + 1..] {
            for &l in &q.y {
                let r = q.restrict(&m[i][j].diff(l));
                if !r.is_zero() {
                    return Ok(DiracVerdict::Fail(DiracWitness {
                        kind: WitnessKind::PhiDerivative { y: names[l].clone() },
                        left: names[i].clone(),
                        right: names[j].clone(),
                        residual: r.display_with(&xn),
                    }));
                }
            }
        }
    }
    Ok(DiracVerdict::Pass)
}

/// `pi_Q = {x_i, x_j}(x, 0)` with density `rho(x, 0)`.
pub fn induced_poisson(q: &AlignedSubmanifold) -> Result<PoissonChart, DiracError> {
    if let DiracVerdict::Fail(w) = check_aligned_dirac(q)? {
        return Err(DiracError::CriterionFails(w));
    }
    if q.y.is_empty() {
        return Ok(q.chart.clone());
    }
    let k = q.x.len();
    let m = q.chart.pi().bivector_matrix()?;
    let rows: Vec<Vec<Poly>> =
        q.x.iter().map(|&i| q.x.iter().map(|&j| q.restrict(&m[i][j])).collect()).collect();
    let pi = crate::exactalg::PolyMultiVec::from_bivector_matrix(&rows, k);
    let vol = q.restrict(q.chart.volume());
    if vol.is_zero() {
        return Err(DiracError::VolumeVanishes);
    }
    let out = PoissonChart::new(q.x_names(), pi, Some(vol))?;
    debug_assert!(out.is_poisson());
    Ok(out)
}

/// Exact rank data at one point of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRelation {
    pub induced_rank: usize,
    pub intersection_dim: usize,
    /// Columns of the induced sharp map lie in the ambient sharp image.
    pub contained: bool,
}

impl RankRelation {
    pub fn holds(&self) -> bool {
        self.contained && self.induced_rank == self.intersection_dim
    }
}

/// Compares `pi_Q^#(T*Q)` with `pi^#(T*P) cap TQ` at `x` on `Q`, exactly.
pub fn rank_relation(q: &AlignedSubmanifold, x: &[Scalar]) -> Result<RankRelation, DiracError> {
    let n = q.chart.dim();
    let k = q.x.len();
    let induced = induced_poisson(q)?;
    let mut p = vec![Scalar::from_int(0); n];
    for (a, &i) in q.x.iter().enumerate() {
        p[i] = x[a].clone();
    }
    let big = eval_matrix(&q.chart.pi().bivector_matrix()?, &p);
    let small = eval_matrix(&induced.pi().bivector_matrix()?, x);
    let mut emb = ExactMatrix::zeros(n, k);
    let mut ex = ExactMatrix::zeros(n, k);
    for (a, &i) in q.x.iter().enumerate() {
        ex[(i, a)] = Scalar::from_int(1);
        for b in 0..k {
            emb[(i, b)] = small[(a, b)].clone();
        }
    }
    let rank_pi = big.rank();
    let intersection_dim = rank_pi + k - big.hstack(&ex).rank();
    let contained = big.hstack(&emb).rank() == rank_pi;
    Ok(RankRelation { induced_rank: small.rank(), intersection_dim, contained })
}

fn eval_matrix(m: &[Vec<Poly>], p: &[Scalar]) -> ExactMatrix {
    ExactMatrix::from_rows(m.iter().map(|r| r.iter().map(|c| c.eval(p)).collect()).collect())
}
