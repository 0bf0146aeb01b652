//! Fixed loci of linear Poisson involutions.

use super::{induced_poisson, AlignedSubmanifold, DiracError};
use crate::exactalg::{ExactMatrix, Poly, PolyMultiVec, Scalar};
use crate::poisson::PoissonChart;
use num::traits::Zero;

/// `S` with `S^2 = I`, acting on chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInvolution {
    s: ExactMatrix,
}

impl LinearInvolution {
    pub fn new(s: ExactMatrix) -> Result<Self, DiracError> {
        if s.nrows() != s.ncols() {
            return Err(DiracError::BadInvolution("matrix not square".into()));
        }
        if &s * &s != ExactMatrix::identity(s.nrows()) {
            return Err(DiracError::BadInvolution("S^2 != I".into()));
        }
        Ok(LinearInvolution { s })
    }

    pub fn diagonal(signs: &[i64]) -> Result<Self, DiracError> {
        let mut s = ExactMatrix::zeros(signs.len(), signs.len());
        for (i, &v) in signs.iter().enumerate() {
            s[(i, i)] = Scalar::from_int(v);
        }
        LinearInvolution::new(s)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.s
    }

    /// Columns: a basis of the +1 eigenspace followed by one of the -1 eigenspace.
    pub fn eigenbasis(&self) -> (ExactMatrix, usize) {
        let n = self.s.nrows();
        let id = ExactMatrix::identity(n);
        let plus = (&self.s - &id).nullspace();
        let minus = (&self.s + &id).nullspace();
        let k = plus.len();
        let cols: Vec<Vec<Scalar>> = plus.into_iter().chain(minus).collect();
        (ExactMatrix::from_columns(&cols, n), k)
    }
}

fn linear_images(m: &ExactMatrix, nvars: usize) -> Vec<Poly> {
    (0..m.nrows())
        .map(|i| {
            let mut p = Poly::zero(nvars);
            for j in 0..m.ncols() {
                p.add_scaled(&Poly::var(nvars, j), &m[(i, j)]);
            }
            p
        })
        .collect()
}

/// `M pi(T u) M^T` as a bivector in the `u` variables.
fn transform(pi: &[Vec<Poly>], m: &ExactMatrix, t: &ExactMatrix) -> Vec<Vec<Poly>> {
    let nv = t.ncols();
    let images = linear_images(t, nv);
    let sub: Vec<Vec<Poly>> = pi.iter().map(|r| r.iter().map(|c| c.compose(&images)).collect()).collect();
    let rows = m.nrows();
    let n = pi.len();
    let mut out = vec![vec![Poly::zero(nv); rows]; rows];
    for a in 0..rows {
        for b in a + 1..rows {
            let mut acc = Poly::zero(nv);
            for i in 0..n {
                if m[(a, i)].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if m[(b, j)].is_zero() || sub[i][j].is_zero() {
                        continue;
                    }
                    acc.add_scaled(&sub[i][j], &(&m[(a, i)] * &m[(b, j)]));
                }
            }
            out[b][a] = -&acc;
            out[a][b] = acc;
        }
    }
    out
}

/// Result of the eigen-chart route.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    /// Columns `B = [P+ | P-]`; new coordinates `u = B^-1 x`.
    pub basis: ExactMatrix,
    pub fixed_dim: usize,
    pub eigen_chart: PoissonChart,
    pub submanifold: AlignedSubmanifold,
    pub induced: PoissonChart,
}

fn u_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{}", i)).collect()
}

fn check_invariance(chart: &PoissonChart, s: &LinearInvolution) -> Result<Vec<Vec<Poly>>, DiracError> {
    let m = chart.pi().bivector_matrix()?;
    let sm = s.matrix();
    if sm.nrows() != chart.dim() {
        return Err(DiracError::BadInvolution("size differs from chart dimension".into()));
    }
    let pushed = transform(&m, sm, sm);
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let d = &pushed[i][j] - &m[i][j];
            if !d.is_zero() {
                return Err(DiracError::NotPoissonInvolution { i, j, residual: d.display_with(chart.names()) });
            }
        }
    }
    Ok(m)
}

/// Moves to the eigen-chart of `S` and induces on the +1 block.
pub fn fixed_locus_symbolic(chart: &PoissonChart, s: &LinearInvolution) -> Result<FixedLocus, DiracError> {
    let m = check_invariance(chart, s)?;
    let n = chart.dim();
    let (b, k) = s.eigenbasis();
    let binv = b.inverse().expect("eigenbasis is a basis");
    let pit = transform(&m, &binv, &b);
    let pi = PolyMultiVec::from_bivector_matrix(&pit, n);
    let vol = chart.volume().compose(&linear_images(&b, n));
    let eigen_chart = PoissonChart::new(u_names(n), pi, Some(vol))?;
    let submanifold = AlignedSubmanifold::new(eigen_chart.clone(), (0..k).collect(), (k..n).collect())?;
    let induced = induced_poisson(&submanifold)?;
    Ok(FixedLocus { basis: b, fixed_dim: k, eigen_chart, submanifold, induced })
}

/// Second route: `pi_Q = sum pi^ij (P e_i) ^ (P e_j)` with `P = (I + S)/2`,
/// read in the +1 eigencoordinates on `Q`.
pub fn fixed_locus_projection(chart: &PoissonChart, s: &LinearInvolution) -> Result<PoissonChart, DiracError> {
    let m = check_invariance(chart, s)?;
    let n = chart.dim();
    let (b, k) = s.eigenbasis();
    let binv = b.inverse().expect("eigenbasis is a basis");
    let half = Scalar::ratio(1, 2);
    let proj = (&ExactMatrix::identity(n) + s.matrix()).scale(&half);
    let full = &binv * &proj;
    let mut c = ExactMatrix::zeros(k, n);
    let mut bplus = ExactMatrix::zeros(n, k);
    for a in 0..k {
        for i in 0..n {
            c[(a, i)] = full[(a, i)].clone();
            bplus[(i, a)] = b[(i, a)].clone();
        }
    }
    let rows = transform(&m, &c, &bplus);
    let pi = PolyMultiVec::from_bivector_matrix(&rows, k);
    let vol = chart.volume().compose(&linear_images(&bplus, k));
    let vol = if vol.is_zero() { Poly::one(k) } else { vol };
    Ok(PoissonChart::new(u_names(k), pi, Some(vol))?)
}

