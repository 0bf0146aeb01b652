//! Polynomial multivector fields on a coordinate chart.
//!
//! Components are stored on strictly increasing index tuples. Coefficient
//! polynomials may carry extra trailing variables beyond the chart
//! dimension; those act as parameters and are never differentiated by the
//! Schouten bracket.

use super::poly::Poly;
use super::scalar::Scalar;
use num::traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiVecError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointArity { expected: usize, got: usize },
}

/// Sorts `idx`, returning the permutation sign, or `None` on a repeated index.
pub fn sort_with_sign(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v))
    }
}

/// Sign and index tuple of `e_I ^ e_J` for sorted `I`, `J`; `None` if they overlap.
pub(crate) fn merge_sign(a: &[usize], b: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut inversions = 0usize;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((if inversions % 2 == 0 { 1 } else { -1 }, out))
}

/// Right derivative of `e_I` by `e_i`: sign and remaining indices.
fn right_deriv(idx: &[usize], i: usize) -> Option<(i64, Vec<usize>)> {
    let k = idx.iter().position(|&x| x == i)?;
    let passes = idx.len() - 1 - k;
    let mut rest = idx.to_vec();
    rest.remove(k);
    Some((if passes % 2 == 0 { 1 } else { -1 }, rest))
}

/// Multivector field `sum_I P_I d_I` of fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMultiVec {
    dim: usize,
    nvars: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
}

/// Numeric value of a multivector at a point.
pub type MultiVecValue = BTreeMap<Vec<usize>, Scalar>;

impl PolyMultiVec {
    pub fn zero(dim: usize, degree: usize) -> Self {
        PolyMultiVec::zero_with_params(dim, dim, degree)
    }

    pub fn zero_with_params(dim: usize, nvars: usize, degree: usize) -> Self {
        assert!(nvars >= dim, "coefficient ring must contain the chart coordinates");
        PolyMultiVec { dim, nvars, degree, comps: BTreeMap::new() }
    }

    /// Degree-0 multivector (a function).
    pub fn function(dim: usize, f: Poly) -> Self {
        let mut m = PolyMultiVec::zero_with_params(dim, f.nvars(), 0);
        m.add_component(&[], f).expect("valid");
        m
    }

    pub fn vector_field(dim: usize, comps: Vec<Poly>) -> Result<Self, MultiVecError> {
        if comps.len() != dim {
            return Err(MultiVecError::DimMismatch(comps.len(), dim));
        }
        let nvars = comps.first().map(Poly::nvars).unwrap_or(dim);
        let mut m = PolyMultiVec::zero_with_params(dim, nvars, 1);
        for (i, c) in comps.into_iter().enumerate() {
            m.add_component(&[i], c)?;
        }
        Ok(m)
    }

    /// Coefficient `f` times `d_idx` in any index order.
    pub fn monomial(dim: usize, idx: &[usize], f: Poly) -> Result<Self, MultiVecError> {
        let mut m = PolyMultiVec::zero_with_params(dim, f.nvars(), idx.len());
        m.add_component(idx, f)?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.comps.iter()
    }

    /// Adds `f d_idx`, normalising index order with the permutation sign.
    pub fn add_component(&mut self, idx: &[usize], f: Poly) -> Result<(), MultiVecError> {
        if idx.len() != self.degree {
            return Err(MultiVecError::WrongDegree { expected: self.degree, got: idx.len() });
        }
        if f.nvars() != self.nvars {
            return Err(MultiVecError::VarMismatch(f.nvars(), self.nvars));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(MultiVecError::IndexOutOfRange { index: bad, dim: self.dim });
        }
        if let Some((s, sorted)) = sort_with_sign(idx) {
            self.add_sorted(sorted, if s == 1 { f } else { -f });
        }
        Ok(())
    }

    fn add_sorted(&mut self, idx: Vec<usize>, f: Poly) {
        if f.is_zero() {
            return;
        }
        let e = self.comps.entry(idx);
        match e {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &f;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Component on `idx` in any order, with the permutation sign applied.
    pub fn component(&self, idx: &[usize]) -> Poly {
        match sort_with_sign(idx) {
            Some((s, sorted)) => match self.comps.get(&sorted) {
                Some(p) if s == 1 => p.clone(),
                Some(p) => -p,
                None => Poly::zero(self.nvars),
            },
            None => Poly::zero(self.nvars),
        }
    }

    fn check_compat(&self, o: &PolyMultiVec) -> Result<(), MultiVecError> {
        if self.dim != o.dim {
            return Err(MultiVecError::DimMismatch(self.dim, o.dim));
        }
        if self.nvars != o.nvars {
            return Err(MultiVecError::VarMismatch(self.nvars, o.nvars));
        }
        Ok(())
    }

    pub fn add(&self, o: &PolyMultiVec) -> Result<PolyMultiVec, MultiVecError> {
        self.check_compat(o)?;
        if self.degree != o.degree {
            return Err(MultiVecError::WrongDegree { expected: self.degree, got: o.degree });
        }
        let mut out = self.clone();
        for (k, v) in &o.comps {
            out.add_sorted(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &PolyMultiVec) -> Result<PolyMultiVec, MultiVecError> {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> PolyMultiVec {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Multiplies every component by the function `f`.
    pub fn mul_function(&self, f: &Poly) -> PolyMultiVec {
        self.map_coeffs(|p| p * f)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> PolyMultiVec {
        let mut out = PolyMultiVec::zero_with_params(self.dim, self.nvars, self.degree);
        for (k, v) in &self.comps {
            let p = f(v);
            out.nvars = p.nvars();
            out.add_sorted(k.clone(), p);
        }
        if self.comps.is_empty() {
            out.nvars = self.nvars;
        }
        out
    }

    pub fn wedge(&self, o: &PolyMultiVec) -> Result<PolyMultiVec, MultiVecError> {
        self.check_compat(o)?;
        let mut out = PolyMultiVec::zero_with_params(self.dim, self.nvars, self.degree + o.degree);
        for (i, p) in &self.comps {
            for (j, q) in &o.comps {
                if let Some((s, idx)) = merge_sign(i, j) {
                    let c = p * q;
                    out.add_sorted(idx, if s == 1 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// Schouten-Nijenhuis bracket.
    ///
    /// Superspace form with right derivatives in the odd variables:
    /// `[P,Q] = sum_i dP/dxi_i dQ/dx_i - (-1)^((p-1)(q-1)) dQ/dxi_i dP/dx_i`.
    /// For vector fields this is the Lie bracket and `[X, f] = X(f)`.
    pub fn schouten(&self, o: &PolyMultiVec) -> Result<PolyMultiVec, MultiVecError> {
        self.check_compat(o)?;
        let (p, q) = (self.degree as i64, o.degree as i64);
        if p + q == 0 {
            return Ok(PolyMultiVec::zero_with_params(self.dim, self.nvars, 0));
        }
        let eps: i64 = if ((p - 1) * (q - 1)).rem_euclid(2) == 0 { 1 } else { -1 };
        let mut out = PolyMultiVec::zero_with_params(self.dim, self.nvars, (p + q - 1) as usize);
        let dq: Vec<BTreeMap<&Vec<usize>, Poly>> =
            (0..self.dim).map(|i| o.comps.iter().map(|(k, v)| (k, v.diff(i))).collect()).collect();
        let dp: Vec<BTreeMap<&Vec<usize>, Poly>> =
            (0..self.dim).map(|i| self.comps.iter().map(|(k, v)| (k, v.diff(i))).collect()).collect();
        for i in 0..self.dim {
            for (ia, pa) in &self.comps {
                let Some((s1, ra)) = right_deriv(ia, i) else { continue };
                for (jb, dqb) in &dq[i] {
                    if dqb.is_zero() {
                        continue;
                    }
                    if let Some((s2, idx)) = merge_sign(&ra, jb) {
                        let c = pa * dqb;
                        out.add_sorted(idx, if s1 * s2 == 1 { c } else { -c });
                    }
                }
            }
            for (jb, qb) in &o.comps {
                let Some((s1, rb)) = right_deriv(jb, i) else { continue };
                for (ia, dpa) in &dp[i] {
                    if dpa.is_zero() {
                        continue;
                    }
                    if let Some((s2, idx)) = merge_sign(&rb, ia) {
                        let c = qb * dpa;
                        out.add_sorted(idx, if -eps * s1 * s2 == 1 { c } else { -c });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Componentwise partial derivative in coefficient variable `var`.
    pub fn diff(&self, var: usize) -> Result<PolyMultiVec, MultiVecError> {
        if var >= self.nvars {
            return Err(MultiVecError::IndexOutOfRange { index: var, dim: self.nvars });
        }
        Ok(self.map_coeffs(|p| p.diff(var)))
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<MultiVecValue, MultiVecError> {
        if point.len() != self.nvars {
            return Err(MultiVecError::PointArity { expected: self.nvars, got: point.len() });
        }
        let mut out = MultiVecValue::new();
        for (k, v) in &self.comps {
            let x = v.eval(point);
            if !x.is_zero() {
                out.insert(k.clone(), x);
            }
        }
        Ok(out)
    }

    /// Substitutes the coefficient variables by `images` (see [`Poly::compose`]).
    pub fn compose(&self, images: &[Poly]) -> PolyMultiVec {
        let nv = images.first().map(Poly::nvars).unwrap_or(0);
        let mut out = self.map_coeffs(|p| p.compose(images));
        out.nvars = nv;
        out
    }

    /// Contraction `P(df_1, ..., df_k)` with exact differentials, `k = degree`.
    pub fn contract(&self, fs: &[Poly]) -> Result<Poly, MultiVecError> {
        if fs.len() != self.degree {
            return Err(MultiVecError::WrongDegree { expected: self.degree, got: fs.len() });
        }
        for f in fs {
            if f.nvars() != self.nvars {
                return Err(MultiVecError::VarMismatch(f.nvars(), self.nvars));
            }
        }
        let grads: Vec<Vec<Poly>> = fs.iter().map(|f| (0..self.dim).map(|i| f.diff(i)).collect()).collect();
        let mut out = Poly::zero(self.nvars);
        for (idx, c) in &self.comps {
            let mut det = Poly::zero(self.nvars);
            for perm in permutations(idx.len()) {
                let (s, _) = sort_with_sign(&perm).unwrap();
                let mut t = Poly::one(self.nvars);
                for (a, &b) in perm.iter().enumerate() {
                    t = &t * &grads[b][idx[a]];
                    if t.is_zero() {
                        break;
                    }
                }
                det = if s == 1 { &det + &t } else { &det - &t };
            }
            out = &out + &(c * &det);
        }
        Ok(out)
    }

    /// Interior product with the one-form `sum_i alpha_i dx_i` in the first slot.
    pub fn interior(&self, alpha: &[Poly]) -> Result<PolyMultiVec, MultiVecError> {
        if alpha.len() != self.dim {
            return Err(MultiVecError::DimMismatch(alpha.len(), self.dim));
        }
        if self.degree == 0 {
            return Err(MultiVecError::WrongDegree { expected: 1, got: 0 });
        }
        let mut out = PolyMultiVec::zero_with_params(self.dim, self.nvars, self.degree - 1);
        for (idx, c) in &self.comps {
            for (k, &i) in idx.iter().enumerate() {
                let mut rest = idx.clone();
                rest.remove(k);
                let t = c * &alpha[i];
                out.add_sorted(rest, if k % 2 == 0 { t } else { -t });
            }
        }
        Ok(out)
    }

    /// Antisymmetric coefficient matrix of a bivector.
    pub fn bivector_matrix(&self) -> Result<Vec<Vec<Poly>>, MultiVecError> {
        if self.degree != 2 {
            return Err(MultiVecError::WrongDegree { expected: 2, got: self.degree });
        }
        let n = self.dim;
        let mut m = vec![vec![Poly::zero(self.nvars); n]; n];
        for (idx, c) in &self.comps {
            m[idx[0]][idx[1]] = c.clone();
            m[idx[1]][idx[0]] = -c;
        }
        Ok(m)
    }

    /// Bivector from an antisymmetric matrix (only the upper triangle is read).
    pub fn from_bivector_matrix(m: &[Vec<Poly>], nvars: usize) -> PolyMultiVec {
        let n = m.len();
        let mut out = PolyMultiVec::zero_with_params(n, nvars, 2);
        for i in 0..n {
            for j in i + 1..n {
                out.add_sorted(vec![i, j], m[i][j].clone());
            }
        }
        out
    }

    /// Re-embeds into a chart of dimension `dim` with index map `map`.
    pub fn reindex(&self, dim: usize, map: &[usize]) -> Result<PolyMultiVec, MultiVecError> {
        let mut out = PolyMultiVec::zero_with_params(dim, self.nvars, self.degree);
        for (idx, c) in &self.comps {
            let new: Vec<usize> = idx.iter().map(|&i| map[i]).collect();
            out.add_component(&new, c.clone())?;
        }
        Ok(out)
    }

    /// Replaces the coefficient ring arity (after [`compose`](Self::compose) to fewer variables).
    pub fn with_dim(&self, dim: usize) -> PolyMultiVec {
        let mut out = self.clone();
        out.dim = dim;
        out
    }

    /// Maximal total degree of the coefficients.
    pub fn coeff_degree(&self) -> Option<u32> {
        self.comps.values().filter_map(Poly::total_degree).max()
    }

    /// Exact test of `self == c * o`.
    pub fn is_multiple_of(&self, o: &PolyMultiVec, c: &Scalar) -> bool {
        self.sub(&o.scale(c)).map(|d| d.is_zero()).unwrap_or(false)
    }
}

/// All permutations of `0..n`.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

impl std::fmt::Display for PolyMultiVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = super::poly::default_names(self.nvars);
        f.write_str(&self.display_with(&names))
    }
}

impl PolyMultiVec {
    pub fn display_with(&self, names: &[String]) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(idx, c)| {
                let d: Vec<String> = idx.iter().map(|&i| format!("d/d{}", names[i])).collect();
                if idx.is_empty() {
                    format!("({})", c.display_with(names))
                } else if c == &Poly::one(self.nvars) {
                    d.join("^")
                } else {
                    format!("({}) {}", c.display_with(names), d.join("^"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn d(i: usize) -> PolyMultiVec {
        PolyMultiVec::monomial(3, &[i], Poly::one(3)).unwrap()
    }

    #[test]
    fn vector_field_bracket_is_lie_bracket() {
        let a = PolyMultiVec::monomial(3, &[0], x(1)).unwrap();
        let b = PolyMultiVec::monomial(3, &[1], x(0)).unwrap();
        let s = a.schouten(&b).unwrap();
        let expect = PolyMultiVec::monomial(3, &[1], x(1))
            .unwrap()
            .sub(&PolyMultiVec::monomial(3, &[0], x(0)).unwrap())
            .unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn vector_on_function() {
        let a = PolyMultiVec::monomial(3, &[0], x(1)).unwrap();
        let f = PolyMultiVec::function(3, &x(0) * &x(0));
        let s = a.schouten(&f).unwrap();
        assert_eq!(s, PolyMultiVec::function(3, (&x(0) * &x(1)).scale(&Scalar::from_int(2))));
    }

    #[test]
    fn wedge_signs() {
        let w = d(1).wedge(&d(0)).unwrap();
        assert_eq!(w.component(&[0, 1]), -Poly::one(3));
        assert!(d(0).wedge(&d(0)).unwrap().is_zero());
    }

    #[test]
    fn contraction_is_bracket() {
        let pi = PolyMultiVec::monomial(3, &[0, 1], x(2)).unwrap();
        assert_eq!(pi.contract(&[x(0), x(1)]).unwrap(), x(2));
        assert_eq!(pi.contract(&[x(1), x(0)]).unwrap(), -x(2));
    }

    #[test]
    fn interior_first_slot() {
        let pi = PolyMultiVec::monomial(3, &[0, 1], Poly::one(3)).unwrap();
        let one = Poly::one(3);
        let z = Poly::zero(3);
        let v = pi.interior(&[one.clone(), z.clone(), z]).unwrap();
        assert_eq!(v, d(1));
    }
}
