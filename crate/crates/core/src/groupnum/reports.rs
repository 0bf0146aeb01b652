//! Seeded sample-based reports: Stokes matrices, symmetric matrices, and the
//! compact fixed locus.

use super::dual::DualGroup;
use super::involution::{invariance_residual, pi_k_formula, pi_q_formula, pi_q_projection, ArrowBinding, InvolutionSpec, PiKVariant};
use super::numeric::{rank_relation, NumericRankRelation};
use super::realize::{pl_bivector, MatrixRealization};
use super::sampling::{dual_point, sample_rng, sl_real_point, stokes_point, su_symmetric_point, symmetric_sl_point};
use super::{c, GroupElement, GroupError, GroupKind, Tangent, TangentBivector, MEMBER_TOL};
use crate::liealg::{sl_chevalley, standard_r, su_compact, AlgElement, LinearAlgMap};
use num_complex::Complex64;
use rayon::prelude::*;

/// Tolerance on the Markoff directional derivatives.
pub const MARKOFF_TOL: f64 = 1e-7;

/// Modulus of `kappa` expected by the reference normalisation.
pub const KAPPA_TARGET: f64 = 2.0;

fn run_samples<T: Send>(
    samples: usize,
    f: impl Fn(usize) -> Result<T, GroupError> + Sync + Send,
) -> Result<Vec<T>, GroupError> {
    (0..samples).into_par_iter().map(f).collect()
}

fn fmax(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

fn rank_ok(r: &[NumericRankRelation]) -> usize {
    r.iter().filter(|x| !x.holds()).count()
}

/// Chart `x = B12, y = B13, z = B23` of the 3x3 Stokes matrices.
const CHART: [(usize, usize, usize); 3] = [(0, 0, 1), (0, 0, 2), (0, 1, 2)];

/// Brackets `{x,y}, {y,z}, {z,x}` and the Dubrovin right-hand sides at the base point.
#[derive(Clone, Copy, Debug)]
struct ChartReading {
    brackets: [f64; 3],
    dubrovin: [f64; 3],
    markoff: f64,
}

fn chart_reading(pi: &TangentBivector) -> Result<ChartReading, GroupError> {
    let b = pi.base().block(0);
    let (x, y, z) = (b[(0, 1)].re, b[(0, 2)].re, b[(1, 2)].re);
    let br = |i: usize, j: usize| pi.entry_bracket(CHART[i], CHART[j]).map(|v| v.re);
    let pairs = [(0, 1), (1, 2), (2, 0)];
    let mut brackets = [0.0; 3];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        brackets[k] = br(i, j)?;
    }
    let dubrovin = [x * y - 2.0 * z, y * z - 2.0 * x, z * x - 2.0 * y];
    let grad = [2.0 * x - y * z, 2.0 * y - x * z, 2.0 * z - x * y];
    let mut markoff: f64 = 0.0;
    for i in 0..3 {
        let d: f64 = (0..3).map(|j| br(i, j).unwrap_or(0.0) * grad[j]).sum();
        markoff = markoff.max(d.abs());
    }
    Ok(ChartReading { brackets, dubrovin, markoff })
}

/// Least-squares `kappa` with `brackets ~ kappa * dubrovin`, and the residual.
fn fit_kappa(readings: &[ChartReading]) -> (f64, f64) {
    let (mut num, mut den) = (0.0, 0.0);
    for r in readings {
        for k in 0..3 {
            num += r.brackets[k] * r.dubrovin[k];
            den += r.dubrovin[k] * r.dubrovin[k];
        }
    }
    let kappa = if den > 0.0 { num / den } else { 0.0 };
    let residual = fmax(readings.iter().flat_map(|r| (0..3).map(move |k| (r.brackets[k] - kappa * r.dubrovin[k]).abs())));
    (kappa, residual)
}

/// First usable single-point ratio.
fn calibrate(readings: &[ChartReading]) -> Option<f64> {
    readings.iter().flat_map(|r| (0..3).map(move |k| (r.brackets[k], r.dubrovin[k]))).find(|(_, d)| d.abs() > 1e-3).map(|(b, d)| b / d)
}

/// `df` for `f(B, C) = (B C^T, C B^T)`.
fn stokes_map_differential(p: &GroupElement, v: &Tangent) -> Tangent {
    let (b, cm) = (p.block(0), p.block(1));
    let (u1, u2) = (&v.0[0], &v.0[1]);
    Tangent(vec![u1 * cm.transpose() + b * u2.transpose(), u2 * b.transpose() + cm * u1.transpose()])
}

fn stokes_map(p: &GroupElement) -> Result<GroupElement, GroupError> {
    let (b, cm) = (p.block(0), p.block(1));
    GroupElement::new(GroupKind::DualStar, vec![b * cm.transpose(), cm * b.transpose()])
}

/// Stokes-matrix reproduction on the fixed locus of `(B, C) -> (C^T, B^T)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StokesReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Global fit of the induced brackets to the Dubrovin bracket (n = 3).
    pub kappa: Option<f64>,
    /// Ratio at the first calibration point.
    pub kappa_calibration: Option<f64>,
    pub dubrovin_residual: Option<f64>,
    /// Same fit for the pushforward along `(B, C) -> B C^T`.
    pub push_kappa: Option<f64>,
    /// `max |f_* pi - 2 pi_Q| / max(1, |pi_Q|)`.
    pub push_residual: f64,
    pub markoff_drift: Option<f64>,
    pub tangency: f64,
    pub rank_checked: usize,
    pub rank_failures: usize,
}

impl StokesReport {
    /// Single global `kappa`, `f_* pi = 2 pi_Q`, Markoff, tangency and rank.
    pub fn passed(&self) -> bool {
        let chart_ok = match (self.kappa, self.dubrovin_residual, self.push_kappa, self.markoff_drift) {
            (Some(k), Some(res), Some(pk), Some(m)) => {
                res <= self.tol && (pk - 2.0 * k).abs() <= self.tol * k.abs().max(1.0) && m <= MARKOFF_TOL
            }
            _ => true,
        };
        chart_ok && self.push_residual <= self.tol && self.tangency <= 1e-8 && self.rank_failures == 0
    }

    /// Whether the fitted `kappa` has modulus 2.
    pub fn kappa_is_two(&self) -> Option<bool> {
        self.kappa.map(|k| (k.abs() - KAPPA_TARGET).abs() <= self.tol)
    }

    pub fn lines(&self) -> Vec<(String, String)> {
        let opt = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{:.12e}", x));
        vec![
            ("n".into(), self.n.to_string()),
            ("samples".into(), self.samples.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("kappa".into(), opt(self.kappa)),
            ("kappa_calibration".into(), opt(self.kappa_calibration)),
            ("dubrovin_residual".into(), opt(self.dubrovin_residual)),
            ("push_kappa".into(), opt(self.push_kappa)),
            ("push_residual".into(), format!("{:.3e}", self.push_residual)),
            ("markoff_drift".into(), opt(self.markoff_drift)),
            ("tangency".into(), format!("{:.3e}", self.tangency)),
            ("rank_relation".into(), format!("{}/{}", self.rank_checked - self.rank_failures, self.rank_checked)),
            ("kappa_abs_is_2".into(), self.kappa_is_two().map_or("n/a".into(), |b| b.to_string())),
        ]
    }
}

struct StokesSample {
    chart: Option<ChartReading>,
    push_chart: Option<ChartReading>,
    push_residual: f64,
    tangency: f64,
    rank: [NumericRankRelation; 2],
}

pub fn stokes_report(n: usize, samples: usize, seed: u64, tol: f64) -> Result<StokesReport, GroupError> {
    if n < 2 {
        return Err(GroupError::Unsupported("n must be at least 2".into()));
    }
    let dual = DualGroup::new(n);
    let psi = InvolutionSpec::PairSwapTranspose;
    let rows = run_samples(samples, |i| {
        let mut rng = sample_rng(seed, i as u64);
        let x = stokes_point(&mut rng, n);
        let pi = dual.bivector(&x)?;
        let piq = pi_q_projection(&psi, &pi)?;
        let rank_x = rank_relation(&psi, &pi, &dual.subgroup_tangent(&x))?;
        let p = dual_point(&mut rng, n);
        let pi_p = dual.bivector(&p)?;
        let y = stokes_map(&p)?;
        let pushed = pi_p.push(y.clone(), |v| stokes_map_differential(&p, v));
        let pi_y = dual.bivector(&y)?;
        let target = pi_q_projection(&psi, &pi_y)?.scale(c(2.0));
        let rank_y = rank_relation(&psi, &pi_y, &dual.subgroup_tangent(&y))?;
        let tangency = fmax([&pi, &pi_p, &pi_y].iter().map(|b| dual.tangency_residual(b) / b.max_abs().max(1.0)));
        Ok(StokesSample {
            chart: if n == 3 { Some(chart_reading(&piq)?) } else { None },
            push_chart: if n == 3 { Some(chart_reading(&pushed)?) } else { None },
            push_residual: pushed.max_diff(&target) / target.max_abs().max(1.0),
            tangency,
            rank: [rank_x, rank_y],
        })
    })?;
    let charts: Vec<ChartReading> = rows.iter().filter_map(|r| r.chart).collect();
    let push_charts: Vec<ChartReading> = rows.iter().filter_map(|r| r.push_chart).collect();
    let (kappa, dubrovin_residual, push_kappa, markoff_drift, kappa_calibration) = if n == 3 && !charts.is_empty() {
        let (k, res) = fit_kappa(&charts);
        let (pk, _) = fit_kappa(&push_charts);
        (Some(k), Some(res), Some(pk), Some(fmax(charts.iter().map(|r| r.markoff))), calibrate(&charts))
    } else {
        (None, None, None, None, None)
    };
    let ranks: Vec<NumericRankRelation> = rows.iter().flat_map(|r| r.rank).collect();
    Ok(StokesReport {
        n,
        samples,
        seed,
        tol,
        kappa,
        kappa_calibration,
        dubrovin_residual,
        push_kappa,
        push_residual: fmax(rows.iter().map(|r| r.push_residual)),
        markoff_drift,
        tangency: fmax(rows.iter().map(|r| r.tangency)),
        rank_checked: ranks.len(),
        rank_failures: rank_ok(&ranks),
    })
}

/// Largest `|{A_ij, .} - {A_ji, .}|`: vanishes iff the bivector is tangent
/// to the symmetric matrices.
pub fn symmetric_tangency(pi: &TangentBivector) -> f64 {
    let n = pi.base().n();
    let m = pi.bracket_matrix();
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for col in 0..m.ncols() {
                r = r.max((m[(i * n + j, col)] - m[(j * n + i, col)]).norm());
            }
        }
    }
    r
}

fn ambient(real: &MatrixRealization, g: &GroupElement) -> Vec<Tangent> {
    real.basis().iter().map(|b| b.left_mul(g)).collect()
}

/// Symmetric fixed locus of `SL(n,R)` under transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct CrosscheckReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// `max |formula - projection|` with `X^L = gX`.
    pub formula_diff: f64,
    /// `min |formula - projection|` with the opposite binding.
    pub swapped_diff: f64,
    pub invariance: f64,
    pub tangency: f64,
    pub multiplicativity: f64,
    pub rank_checked: usize,
    pub rank_failures: usize,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.formula_diff <= self.tol
            && self.invariance <= MEMBER_TOL
            && self.tangency <= MEMBER_TOL
            && self.multiplicativity <= MEMBER_TOL
            && self.rank_failures == 0
    }

    /// The binding that matches the projection route.
    pub fn binding(&self) -> &'static str {
        if self.formula_diff <= self.tol && self.swapped_diff > self.tol {
            "left=gX"
        } else if self.swapped_diff <= self.tol {
            "left=Xg"
        } else {
            "none"
        }
    }

    pub fn lines(&self) -> Vec<(String, String)> {
        vec![
            ("n".into(), self.n.to_string()),
            ("samples".into(), self.samples.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("formula_diff".into(), format!("{:.3e}", self.formula_diff)),
            ("swapped_binding_diff".into(), format!("{:.3e}", self.swapped_diff)),
            ("binding".into(), self.binding().into()),
            ("invariance".into(), format!("{:.3e}", self.invariance)),
            ("tangency".into(), format!("{:.3e}", self.tangency)),
            ("multiplicativity".into(), format!("{:.3e}", self.multiplicativity)),
            ("rank_relation".into(), format!("{}/{}", self.rank_checked - self.rank_failures, self.rank_checked)),
        ]
    }
}

fn complex_r(r: &AlgElement<crate::exactalg::Scalar>) -> AlgElement<Complex64> {
    r.map(|s| s.to_complex())
}

/// `|pi(gh) - (R_h pi(g) + L_g pi(h))| / max(1, |pi(gh)|)`.
pub fn multiplicativity_residual(
    real: &MatrixRealization,
    r: &AlgElement<Complex64>,
    g: &GroupElement,
    h: &GroupElement,
) -> f64 {
    let gh = g.mul(h);
    let lhs = pl_bivector(real, &gh, r);
    let a = pl_bivector(real, g, r).push(gh.clone(), |v| v.right_mul(h));
    let b = pl_bivector(real, h, r).push(gh, |v| v.left_mul(g));
    lhs.max_diff(&a.add(&b)) / lhs.max_abs().max(1.0)
}

pub fn crosscheck_report(n: usize, samples: usize, seed: u64, tol: f64) -> Result<CrosscheckReport, GroupError> {
    let g_alg = sl_chevalley(n);
    let real = MatrixRealization::from_algebra(&g_alg).expect("matrix algebra");
    let r = complex_r(&standard_r(&g_alg));
    let phi = LinearAlgMap::transpose(&g_alg).expect("transpose-stable").rows_as::<Complex64>();
    let spec = InvolutionSpec::Transpose;
    let rows = run_samples(samples, |i| {
        let mut rng = sample_rng(seed, i as u64);
        let g = symmetric_sl_point(&mut rng, n);
        let pi = pl_bivector(&real, &g, &r);
        let inv = invariance_residual(&spec, &pi);
        let proj = pi_q_projection(&spec, &pi)?;
        let scale = proj.max_abs().max(1.0);
        let formula = pi_q_formula(&real, &g, &r, &phi, ArrowBinding::LeftIsGX);
        let swapped = pi_q_formula(&real, &g, &r, &phi, ArrowBinding::LeftIsXG);
        let rank = rank_relation(&spec, &pi, &ambient(&real, &g))?;
        let (a, b) = (sl_real_point(&mut rng, n), sl_real_point(&mut rng, n));
        Ok((
            formula.max_diff(&proj),
            swapped.max_diff(&proj),
            inv,
            symmetric_tangency(&proj) / scale,
            multiplicativity_residual(&real, &r, &a, &b),
            rank,
        ))
    })?;
    let ranks: Vec<NumericRankRelation> = rows.iter().map(|r| r.5).collect();
    Ok(CrosscheckReport {
        n,
        samples,
        seed,
        tol,
        formula_diff: fmax(rows.iter().map(|r| r.0)),
        swapped_diff: rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min),
        invariance: fmax(rows.iter().map(|r| r.2)),
        tangency: fmax(rows.iter().map(|r| r.3)),
        multiplicativity: fmax(rows.iter().map(|r| r.4)),
        rank_checked: ranks.len(),
        rank_failures: rank_ok(&ranks),
    })
}

/// Fixed locus of transpose in `SU(n)` with the compact r-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BruhatReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub formula_diff: f64,
    pub corrected_diff: f64,
    /// `min` over samples of the printed-sign variant against the projection.
    pub as_printed_diff: f64,
    pub swapped_diff: f64,
    pub invariance: f64,
    pub rank_checked: usize,
    pub rank_failures: usize,
}

impl BruhatReport {
    pub fn passed(&self) -> bool {
        self.formula_diff <= self.tol
            && self.corrected_diff <= self.tol
            && self.invariance <= MEMBER_TOL
            && self.rank_failures == 0
    }

    pub fn lines(&self) -> Vec<(String, String)> {
        vec![
            ("n".into(), self.n.to_string()),
            ("samples".into(), self.samples.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("formula_diff".into(), format!("{:.3e}", self.formula_diff)),
            ("compact_formula_diff".into(), format!("{:.3e}", self.corrected_diff)),
            ("compact_formula_as_printed_diff".into(), format!("{:.3e}", self.as_printed_diff)),
            ("swapped_binding_diff".into(), format!("{:.3e}", self.swapped_diff)),
            ("invariance".into(), format!("{:.3e}", self.invariance)),
            ("rank_relation".into(), format!("{}/{}", self.rank_checked - self.rank_failures, self.rank_checked)),
        ]
    }
}

pub fn bruhat_report(n: usize, samples: usize, seed: u64, tol: f64) -> Result<BruhatReport, GroupError> {
    let cf = su_compact(n);
    let real = MatrixRealization::from_algebra(&cf.algebra).expect("matrix algebra");
    let r = complex_r(&cf.r_hat);
    let phi = cf.phi_hat.rows_as::<Complex64>();
    let m = n * (n - 1) / 2;
    let spec = InvolutionSpec::Transpose;
    let rows = run_samples(samples, |i| {
        let mut rng = sample_rng(seed, i as u64);
        let g = su_symmetric_point(&mut rng, n);
        let pi = pl_bivector(&real, &g, &r);
        let proj = pi_q_projection(&spec, &pi)?;
        let formula = pi_q_formula(&real, &g, &r, &phi, ArrowBinding::LeftIsGX);
        let swapped = pi_q_formula(&real, &g, &r, &phi, ArrowBinding::LeftIsXG);
        let corrected = pi_k_formula(&real, m, &g, PiKVariant::Corrected);
        let printed = pi_k_formula(&real, m, &g, PiKVariant::AsPrinted);
        let rank = rank_relation(&spec, &pi, &ambient(&real, &g))?;
        Ok((
            formula.max_diff(&proj),
            corrected.max_diff(&proj),
            printed.max_diff(&proj),
            swapped.max_diff(&proj),
            invariance_residual(&spec, &pi),
            rank,
        ))
    })?;
    let ranks: Vec<NumericRankRelation> = rows.iter().map(|r| r.5).collect();
    Ok(BruhatReport {
        n,
        samples,
        seed,
        tol,
        formula_diff: fmax(rows.iter().map(|r| r.0)),
        corrected_diff: fmax(rows.iter().map(|r| r.1)),
        as_printed_diff: rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min),
        swapped_diff: rows.iter().map(|r| r.3).fold(f64::INFINITY, f64::min),
        invariance: fmax(rows.iter().map(|r| r.4)),
        rank_checked: ranks.len(),
        rank_failures: rank_ok(&ranks),
    })
}
