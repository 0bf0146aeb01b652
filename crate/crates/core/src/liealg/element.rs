//! Elements of the exterior algebra of a Lie algebra and the algebraic
//! Schouten bracket.

use super::LieAlgebra;
use crate::exactalg::multivec::sort_with_sign;
use crate::exactalg::Scalar;
use num::traits::{One, Zero};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring for exterior-algebra elements.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Embeds an exact scalar; `f64` keeps only the real part.
    fn from_scalar(s: &Scalar) -> Self;
    fn magnitude(&self) -> f64;
}

impl Coeff for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl Coeff for f64 {
    fn from_scalar(s: &Scalar) -> Self {
        s.to_f64()
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Coeff for Complex64 {
    fn from_scalar(s: &Scalar) -> Self {
        s.to_complex()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Element of `Lambda^k g` stored on strictly increasing index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElement<T> {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, T>,
}

impl<T: Coeff> AlgElement<T> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        AlgElement { dim, degree, coeffs: BTreeMap::new() }
    }

    /// `e_{i1} ^ ... ^ e_{ik}` in any index order.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut a = AlgElement::zero(dim, idx.len());
        a.add_term(idx, T::one());
        a
    }

    pub fn from_vector(v: &[T]) -> Self {
        let mut a = AlgElement::zero(v.len(), 1);
        for (i, c) in v.iter().enumerate() {
            a.add_term(&[i], c.clone());
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &T)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c e_idx`, normalising order and sign.
    pub fn add_term(&mut self, idx: &[usize], c: T) {
        assert_eq!(idx.len(), self.degree, "degree mismatch");
        assert!(idx.iter().all(|&i| i < self.dim), "basis index out of range");
        let Some((s, sorted)) = sort_with_sign(idx) else { return };
        let c = if s == 1 { c } else { -c };
        let e = self.coeffs.entry(sorted.clone()).or_insert_with(T::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.coeffs.remove(&sorted);
        }
    }

    /// Coefficient on `idx` in any order, sign applied.
    pub fn coeff(&self, idx: &[usize]) -> T {
        match sort_with_sign(idx) {
            Some((s, sorted)) => match self.coeffs.get(&sorted) {
                Some(c) if s == 1 => c.clone(),
                Some(c) => -c.clone(),
                None => T::zero(),
            },
            None => T::zero(),
        }
    }

    /// Degree-1 element as a dense vector.
    pub fn to_vector(&self) -> Vec<T> {
        assert_eq!(self.degree, 1, "not a vector");
        let mut v = vec![T::zero(); self.dim];
        for (k, c) in &self.coeffs {
            v[k[0]] = c.clone();
        }
        v
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (o.dim, o.degree), "shape mismatch");
        let mut out = self.clone();
        for (k, c) in &o.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = AlgElement::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            out.add_term(k, v.clone() * c.clone());
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut out = AlgElement::zero(self.dim, self.degree + o.degree);
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                let idx: Vec<usize> = i.iter().chain(j).copied().collect();
                out.add_term(&idx, a.clone() * b.clone());
            }
        }
        out
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(Coeff::magnitude).fold(0.0, f64::max)
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> AlgElement<U> {
        let mut out = AlgElement::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            out.add_term(k, f(v));
        }
        out
    }

    /// `Lambda^k M` for a linear map with columns `m[.][source]`.
    pub fn apply_linear(&self, m: &[Vec<T>]) -> Self {
        let target = m.len();
        let mut out = AlgElement::zero(target, self.degree);
        for (idx, c) in &self.coeffs {
            let mut partial: Vec<(Vec<usize>, T)> = vec![(Vec::new(), c.clone())];
            for &src in idx {
                let mut next = Vec::new();
                for (acc, v) in &partial {
                    for (t, row) in m.iter().enumerate() {
                        let a = &row[src];
                        if a.is_zero() || acc.contains(&t) {
                            continue;
                        }
                        let mut k = acc.clone();
                        k.push(t);
                        next.push((k, v.clone() * a.clone()));
                    }
                }
                partial = next;
            }
            for (k, v) in partial {
                out.add_term(&k, v);
            }
        }
        out
    }
}

impl AlgElement<Scalar> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Algebraic Schouten bracket on `Lambda g`, extending the Lie bracket.
///
/// On decomposables:
/// `[x1^..^xp, y1^..^yq] = sum (-1)^(i+j) [xi,yj] ^ x1..^xi..xp ^ y1..^yj..yq`.
pub fn alg_schouten<T: Coeff>(g: &LieAlgebra, a: &AlgElement<T>, b: &AlgElement<T>) -> AlgElement<T> {
    assert_eq!(a.dim, g.dim(), "element not in this algebra");
    assert_eq!(b.dim, g.dim(), "element not in this algebra");
    let (p, q) = (a.degree, b.degree);
    if p == 0 || q == 0 {
        return AlgElement::zero(g.dim(), (p + q).saturating_sub(1));
    }
    let mut out = AlgElement::zero(g.dim(), p + q - 1);
    for (ia, ca) in &a.coeffs {
        for (jb, cb) in &b.coeffs {
            let c = ca.clone() * cb.clone();
            for i in 0..p {
                for j in 0..q {
                    let br = g.bracket_basis(ia[i], jb[j]);
                    if br.is_empty() {
                        continue;
                    }
                    let sign_neg = (i + j) % 2 == 1;
                    let mut rest: Vec<usize> = Vec::with_capacity(p + q - 1);
                    rest.push(0);
                    rest.extend(ia.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &v)| v));
                    rest.extend(jb.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &v)| v));
                    for (k, s) in br {
                        if rest[1..].contains(k) {
                            continue;
                        }
                        rest[0] = *k;
                        let v = c.clone() * T::from_scalar(s);
                        out.add_term(&rest, if sign_neg { -v } else { v });
                    }
                }
            }
        }
    }
    out
}
