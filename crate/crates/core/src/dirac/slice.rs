//! Leaf-slice families: is `d pi_t/dt_i` at `t0` a Poisson coboundary
//! `-[X_i, pi_t0]` with polynomial `X_i` of bounded degree?

use super::DiracError;
use crate::exactalg::{ExactMatrix, Monomial, Poly, PolyMultiVec, Scalar};
use num::traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceVerdict {
    /// One vector field per parameter, each satisfying `d pi/dt_i + [X_i, pi_t0] = 0`.
    Solvable { witnesses: Vec<PolyMultiVec> },
    /// No solution with coefficients of degree at most `degree`; this is not a
    /// proof that none exists at higher degree.
    UnsolvableUpTo { degree: u32, parameter: usize },
}

fn monomials(nvars: usize, max_deg: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == nvars {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, max_deg, &mut Vec::new(), &mut out);
    out
}

fn flatten(m: &PolyMultiVec) -> BTreeMap<(Vec<usize>, Monomial), Scalar> {
    let mut out = BTreeMap::new();
    for (idx, p) in m.components() {
        for (mono, c) in p.terms() {
            out.insert((idx.clone(), mono.clone()), c.clone());
        }
    }
    out
}

/// Solves `d pi/dt_i |_{t0} = -[X_i, pi_{t0}]` over vector fields with
/// coefficients of total degree at most `degree`.
///
/// `family` lives on a chart of dimension `m`; its coefficients use `m + c`
/// variables, the last `c` being the parameters `t`.
pub fn leaf_slice_obstruction(family: &PolyMultiVec, t0: &[Scalar], degree: u32) -> Result<SliceVerdict, DiracError> {
    let m = family.dim();
    let c = family.nvars() - m;
    if t0.len() != c {
        return Err(DiracError::Unsupported(format!("expected {} parameter values, got {}", c, t0.len())));
    }
    let at_t0: Vec<Poly> = (0..m)
        .map(|i| Poly::var(m, i))
        .chain(t0.iter().map(|v| Poly::constant(m, v.clone())))
        .collect();
    let pi0 = family.compose(&at_t0);
    let jac = pi0.schouten(&pi0)?;
    if let Some((idx, _)) = jac.components().next() {
        return Err(DiracError::NotPoisson(idx.clone()));
    }
    let mut unknowns = Vec::new();
    for k in 0..m {
        for mono in monomials(m, degree) {
            let x = PolyMultiVec::monomial(m, &[k], Poly::monomial(mono, Scalar::from_int(1)))?;
            let col = x.schouten(&pi0)?.scale(&Scalar::from_int(-1));
            unknowns.push((x, flatten(&col)));
        }
    }
    let mut witnesses = Vec::with_capacity(c);
    for j in 0..c {
        let target = family.diff(m + j)?.compose(&at_t0);
        let rhs = flatten(&target);
        let mut keys: Vec<&(Vec<usize>, Monomial)> = rhs.keys().collect();
        for (_, col) in &unknowns {
            keys.extend(col.keys());
        }
        keys.sort();
        keys.dedup();
        let row_of: BTreeMap<&(Vec<usize>, Monomial), usize> = keys.iter().enumerate().map(|(r, k)| (*k, r)).collect();
        let mut a = ExactMatrix::zeros(keys.len(), unknowns.len());
        for (col, (_, entries)) in unknowns.iter().enumerate() {
            for (k, v) in entries {
                a[(row_of[k], col)] = v.clone();
            }
        }
        let mut b = vec![Scalar::zero(); keys.len()];
        for (k, v) in &rhs {
            b[row_of[k]] = v.clone();
        }
        let Some(sol) = (if keys.is_empty() { Some(vec![Scalar::zero(); unknowns.len()]) } else { a.solve(&b) }) else {
            return Ok(SliceVerdict::UnsolvableUpTo { degree, parameter: j });
        };
        let mut x = PolyMultiVec::zero(m, 1);
        for (coef, (basis, _)) in sol.iter().zip(&unknowns) {
            if !coef.is_zero() {
                x = x.add(&basis.scale(coef))?;
            }
        }
        debug_assert!(target.add(&x.schouten(&pi0)?)?.is_zero());
        witnesses.push(x);
    }
    Ok(SliceVerdict::Solvable { witnesses })
}
