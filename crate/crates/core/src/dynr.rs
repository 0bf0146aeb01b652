//! Classical dynamical r-matrices over a Cartan subalgebra and the CDYBE residual.
//!
//! Points `lambda` of `h*` are given by `lambda^i = lambda(h_i)`. For a positive
//! root the trigonometric argument is `<alpha, lambda> = -2 lambda(h_alpha)` and
//! the rational one is `(alpha, lambda) = -lambda(h_alpha)`. With these
//! normalisations `sum h_i ^ dr/dlambda^i - 1/2 [r, r]` is constant.

use crate::exactalg::Scalar;
use crate::groupnum::sampling::sample_rng;
use crate::liealg::{alg_schouten, AlgElement, LieAlgebra, LinearAlgMap};
use num::traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

/// Minimum distance of a root argument from its pole.
pub const SINGULAR_GUARD: f64 = 1e-3;
/// Step of the central difference in the gradient check.
pub const FD_STEP: f64 = 1e-5;
/// Sampled arguments keep at least this distance from the poles.
pub const SAMPLE_MARGIN: f64 = 0.5;
/// Sampled coordinates lie in `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynrError {
    #[error("algebra has no root data")]
    NoRoots,
    #[error("expected {expected} Cartan coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("lambda is within {distance:.3e} of the singular hyperplane of root {root}")]
    NearSingular { root: String, distance: f64 },
    #[error("map does not preserve the Cartan subalgebra")]
    NotCartanPreserving,
    #[error("map has size {got}, algebra has dimension {expected}")]
    MapSize { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `coth(<alpha, lambda>/2)`.
    Trig,
    /// `1/(alpha, lambda)`.
    Rational,
    /// `tanh` in place of `coth`; not a solution beyond rank one.
    TanhCorrupted,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Trig => "trig",
            FamilyKind::Rational => "rational",
            FamilyKind::TanhCorrupted => "tanh",
        })
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "trig" => Ok(FamilyKind::Trig),
            "rational" => Ok(FamilyKind::Rational),
            "tanh" => Ok(FamilyKind::TanhCorrupted),
            other => Err(format!("unknown family `{}` (trig | rational | tanh)", other)),
        }
    }
}

struct RootTerm {
    label: String,
    e: usize,
    f: usize,
    d: f64,
    coroot: Vec<f64>,
}

/// `r(lambda) = sum_alpha c_alpha F(p_alpha) e_alpha ^ f_alpha`.
pub struct DynamicalRFamily {
    g: LieAlgebra,
    kind: FamilyKind,
    roots: Vec<RootTerm>,
    cartan: Vec<usize>,
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

impl DynamicalRFamily {
    pub fn new(g: &LieAlgebra, kind: FamilyKind) -> Result<Self, DynrError> {
        let data = g.roots().ok_or(DynrError::NoRoots)?;
        let roots = data
            .positive
            .iter()
            .map(|a| RootTerm {
                label: a.label.clone(),
                e: a.e,
                f: a.f,
                d: a.d.to_f64(),
                coroot: a.coroot.iter().map(Scalar::to_f64).collect(),
            })
            .collect();
        Ok(DynamicalRFamily { g: g.clone(), kind, roots, cartan: data.cartan.clone() })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// Number of Cartan coordinates.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    fn slope(&self) -> f64 {
        match self.kind {
            FamilyKind::Rational => -1.0,
            _ => -2.0,
        }
    }

    fn weight(&self, t: &RootTerm) -> f64 {
        match self.kind {
            FamilyKind::Rational => 1.0,
            _ => t.d,
        }
    }

    /// Root argument `p_alpha(lambda)`.
    fn argument(&self, t: &RootTerm, lambda: &[f64]) -> f64 {
        self.slope() * t.coroot.iter().zip(lambda).map(|(a, l)| a * l).sum::<f64>()
    }

    /// `F(p)` and `F'(p)`.
    fn profile(&self, p: f64) -> (f64, f64) {
        match self.kind {
            FamilyKind::Trig => {
                let c = coth(p / 2.0);
                (c, 0.5 * (1.0 - c * c))
            }
            FamilyKind::TanhCorrupted => {
                let c = (p / 2.0).tanh();
                (c, 0.5 * (1.0 - c * c))
            }
            FamilyKind::Rational => (1.0 / p, -1.0 / (p * p)),
        }
    }

    fn arguments(&self, lambda: &[f64]) -> Result<Vec<f64>, DynrError> {
        if lambda.len() != self.rank() {
            return Err(DynrError::Dimension { expected: self.rank(), got: lambda.len() });
        }
        self.roots
            .iter()
            .map(|t| {
                let p = self.argument(t, lambda);
                if p.abs() < SINGULAR_GUARD {
                    Err(DynrError::NearSingular { root: t.label.clone(), distance: p.abs() })
                } else {
                    Ok(p)
                }
            })
            .collect()
    }

    pub fn eval_r(&self, lambda: &[f64]) -> Result<AlgElement<f64>, DynrError> {
        let ps = self.arguments(lambda)?;
        let mut r = AlgElement::zero(self.g.dim(), 2);
        for (t, &p) in self.roots.iter().zip(&ps) {
            r.add_term(&[t.e, t.f], self.weight(t) * self.profile(p).0);
        }
        Ok(r)
    }

    /// Analytic `dr/dlambda^i` for each Cartan coordinate.
    pub fn derivatives(&self, lambda: &[f64]) -> Result<Vec<AlgElement<f64>>, DynrError> {
        let ps = self.arguments(lambda)?;
        let k = self.slope();
        Ok((0..self.rank())
            .map(|i| {
                let mut d = AlgElement::zero(self.g.dim(), 2);
                for (t, &p) in self.roots.iter().zip(&ps) {
                    let c = self.weight(t) * self.profile(p).1 * k * t.coroot[i];
                    if c != 0.0 {
                        d.add_term(&[t.e, t.f], c);
                    }
                }
                d
            })
            .collect())
    }

    /// `sum_i h_i ^ dr/dlambda^i - 1/2 [r, r]` in `Lambda^3 g`.
    pub fn cdybe_residual(&self, lambda: &[f64]) -> Result<AlgElement<f64>, DynrError> {
        let r = self.eval_r(lambda)?;
        let mut out = alg_schouten(&self.g, &r, &r).scale(&-0.5);
        for (i, d) in self.derivatives(lambda)?.iter().enumerate() {
            let h = AlgElement::basis(self.g.dim(), &[self.cartan[i]]);
            out = out.add(&h.wedge(d));
        }
        Ok(out)
    }

    /// Largest `|[X_b, a]|` over basis vectors `X_b`.
    pub fn ad_defect(&self, a: &AlgElement<f64>) -> f64 {
        (0..self.g.dim())
            .map(|b| alg_schouten(&self.g, &AlgElement::basis(self.g.dim(), &[b]), a).max_abs())
            .fold(0.0, f64::max)
    }

    /// Max deviation between analytic and central-difference derivatives.
    pub fn gradient_error(&self, lambda: &[f64], step: f64) -> Result<f64, DynrError> {
        let analytic = self.derivatives(lambda)?;
        let mut worst = 0.0f64;
        for (i, d) in analytic.iter().enumerate() {
            let mut up = lambda.to_vec();
            let mut down = lambda.to_vec();
            up[i] += step;
            down[i] -= step;
            let fd = self.eval_r(&up)?.sub(&self.eval_r(&down)?).scale(&(0.5 / step));
            worst = worst.max(fd.sub(d).max_abs());
        }
        Ok(worst)
    }

    /// Seeded point with every root argument at least `SAMPLE_MARGIN` from its pole.
    pub fn sample_lambda(&self, seed: u64, index: u64) -> Vec<f64> {
        let mut rng = sample_rng(seed, index);
        loop {
            let l: Vec<f64> = (0..self.rank()).map(|_| rng.gen_range(-SAMPLE_RANGE..SAMPLE_RANGE)).collect();
            if self.roots.iter().all(|t| self.argument(t, &l).abs() >= SAMPLE_MARGIN) {
                return l;
            }
        }
    }

    /// Cartan action `(s* lambda)^i = lambda(s h_i)`, if `s` preserves `h`.
    pub fn cartan_dual(&self, s: &LinearAlgMap) -> Result<Vec<Vec<f64>>, DynrError> {
        let m = s.matrix();
        if m.nrows() != self.g.dim() || m.ncols() != self.g.dim() {
            return Err(DynrError::MapSize { expected: self.g.dim(), got: m.nrows() });
        }
        for &src in &self.cartan {
            if (0..self.g.dim()).any(|t| !self.cartan.contains(&t) && !m[(t, src)].is_zero()) {
                return Err(DynrError::NotCartanPreserving);
            }
        }
        Ok(self
            .cartan
            .iter()
            .map(|&hi| self.cartan.iter().map(|&hj| m[(hj, hi)].to_f64()).collect())
            .collect())
    }
}

/// Outcome of a seeded CDYBE scan.
#[derive(Clone, Debug, PartialEq)]
pub struct CdybeReport {
    pub family: FamilyKind,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Residual at the first sample.
    pub residual: AlgElement<f64>,
    /// Max pairwise componentwise difference of residuals.
    pub spread: f64,
    pub invariance_defect: f64,
    pub gradient_error: f64,
}

impl CdybeReport {
    pub fn passed(&self) -> bool {
        self.spread <= self.tol && self.invariance_defect <= self.tol && self.gradient_error <= self.tol
    }

    pub fn lines(&self) -> Vec<(String, String)> {
        vec![
            ("family".into(), self.family.to_string()),
            ("samples".into(), self.samples.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("residual_norm".into(), format!("{:.12e}", self.residual.max_abs())),
            ("spread".into(), format!("{:.3e}", self.spread)),
            ("invariance_defect".into(), format!("{:.3e}", self.invariance_defect)),
            ("gradient_error".into(), format!("{:.3e}", self.gradient_error)),
        ]
    }
}

/// Residual constancy, ad-invariance and gradient check over seeded samples.
pub fn residual_scan(family: &DynamicalRFamily, samples: usize, seed: u64, tol: f64) -> Result<CdybeReport, DynrError> {
    let samples = samples.max(1);
    let per: Vec<(AlgElement<f64>, f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let l = family.sample_lambda(seed, k as u64);
            let res = family.cdybe_residual(&l)?;
            let inv = family.ad_defect(&res);
            let grad = family.gradient_error(&l, FD_STEP)?;
            Ok((res, inv, grad))
        })
        .collect::<Result<_, DynrError>>()?;
    let mut spread = 0.0f64;
    for a in 0..per.len() {
        for b in a + 1..per.len() {
            spread = spread.max(per[a].0.sub(&per[b].0).max_abs());
        }
    }
    Ok(CdybeReport {
        family: family.kind(),
        samples,
        seed,
        tol,
        residual: per[0].0.clone(),
        spread,
        invariance_defect: per.iter().map(|p| p.1).fold(0.0, f64::max),
        gradient_error: per.iter().map(|p| p.2).fold(0.0, f64::max),
    })
}

/// Worst `|(Lambda^2 s) r(lambda) + r(s* lambda)|` over seeded samples.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivarianceReport {
    pub samples: usize,
    pub seed: u64,
    pub defect: f64,
}

impl EquivarianceReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.defect <= tol
    }
}

pub fn equivariance_check(
    family: &DynamicalRFamily,
    s: &LinearAlgMap,
    samples: usize,
    seed: u64,
) -> Result<EquivarianceReport, DynrError> {
    let dual = family.cartan_dual(s)?;
    let rows = s.rows_as::<f64>();
    let defects: Vec<f64> = (0..samples.max(1))
        .into_par_iter()
        .map(|k| {
            let l = family.sample_lambda(seed, k as u64);
            let moved: Vec<f64> = dual.iter().map(|row| row.iter().zip(&l).map(|(a, b)| a * b).sum()).collect();
            let lhs = family.eval_r(&l)?.apply_linear(&rows);
            Ok(lhs.add(&family.eval_r(&moved)?).max_abs())
        })
        .collect::<Result<_, DynrError>>()?;
    Ok(EquivarianceReport { samples: samples.max(1), seed, defect: defects.into_iter().fold(0.0, f64::max) })
}
