//! Independent brute-force Schouten brackets used to cross-check the fast
//! implementations.
//!
//! The chart oracle expands every monomial term into a wedge of vector
//! fields and applies the decomposable formula
//! `[X1^..^Xp, Y1^..^Yq] = sum (-1)^(i+j) [Xi,Yj] ^ X1..^Xi..Xp ^ Y1..^Yj..Yq`.
//! The Lie-algebra oracle peels one factor at a time with the graded
//! Leibniz rule `[A, y ^ B] = [A,y] ^ B + (-1)^(a-1) y ^ [A,B]`.

use crate::exactalg::{MultiVecError, Poly, PolyMultiVec, Scalar};
use crate::liealg::{AlgElement, LieAlgebra};
use num::traits::Zero;
use std::collections::BTreeMap;

type VectorField = Vec<Poly>;

fn lie_bracket(x: &VectorField, y: &VectorField, dim: usize) -> VectorField {
    (0..dim)
        .map(|k| {
            let mut acc = Poly::zero(x[0].nvars());
            for i in 0..dim {
                acc = &acc + &(&x[i] * &y[k].diff(i));
                acc = &acc - &(&y[i] * &x[k].diff(i));
            }
            acc
        })
        .collect()
}

fn apply(x: &VectorField, g: &Poly) -> Poly {
    let mut acc = Poly::zero(g.nvars());
    for (i, xi) in x.iter().enumerate() {
        acc = &acc + &(xi * &g.diff(i));
    }
    acc
}

/// Decomposable pieces of one coefficient term `c d_{i1} ^ ... ^ d_{ip}`.
fn factors(c: &Poly, idx: &[usize], dim: usize) -> Vec<VectorField> {
    idx.iter()
        .enumerate()
        .map(|(k, &i)| {
            let mut v = vec![Poly::zero(c.nvars()); dim];
            v[i] = if k == 0 { c.clone() } else { Poly::one(c.nvars()) };
            v
        })
        .collect()
}

fn parity_of(idx: &[usize]) -> Option<bool> {
    let mut inv = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] == idx[b] {
                return None;
            }
            if idx[a] > idx[b] {
                inv += 1;
            }
        }
    }
    Some(inv % 2 == 1)
}

/// Expands `coef * v1 ^ v2 ^ ... ^ vm` into the accumulator.
fn expand_wedge(acc: &mut BTreeMap<Vec<usize>, Poly>, coef: &Poly, fields: &[VectorField], negate: bool) {
    fn rec(
        acc: &mut BTreeMap<Vec<usize>, Poly>,
        coef: Poly,
        fields: &[VectorField],
        chosen: &mut Vec<usize>,
        negate: bool,
    ) {
        if coef.is_zero() {
            return;
        }
        if fields.is_empty() {
            let Some(odd) = parity_of(chosen) else { return };
            let mut key = chosen.clone();
            key.sort_unstable();
            let term = if odd ^ negate { -&coef } else { coef };
            let e = acc.entry(key).or_insert_with(|| Poly::zero(term.nvars()));
            *e = &*e + &term;
            return;
        }
        for (i, c) in fields[0].iter().enumerate() {
            if c.is_zero() || chosen.contains(&i) {
                continue;
            }
            chosen.push(i);
            rec(acc, &coef * c, &fields[1..], chosen, negate);
            chosen.pop();
        }
    }
    rec(acc, coef.clone(), fields, &mut Vec::new(), negate);
}

fn without(v: &[VectorField], k: usize) -> Vec<VectorField> {
    v.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x.clone()).collect()
}

/// Brute-force Schouten bracket on a chart.
pub fn chart_schouten(a: &PolyMultiVec, b: &PolyMultiVec) -> Result<PolyMultiVec, MultiVecError> {
    if a.dim() != b.dim() {
        return Err(MultiVecError::DimMismatch(a.dim(), b.dim()));
    }
    if a.nvars() != b.nvars() {
        return Err(MultiVecError::VarMismatch(a.nvars(), b.nvars()));
    }
    let (dim, nv) = (a.dim(), a.nvars());
    let (p, q) = (a.degree(), b.degree());
    if p + q == 0 {
        return Ok(PolyMultiVec::zero_with_params(dim, nv, 0));
    }
    if p == 0 {
        let r = chart_schouten(b, a)?;
        return Ok(if q % 2 == 0 { r } else { r.scale(&crate::exactalg::Scalar::from_int(-1)) });
    }
    let mut acc: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
    let one = Poly::one(nv);
    for (ia, ca) in a.components() {
        let xs = factors(ca, ia, dim);
        if q == 0 {
            let g = b.component(&[]);
            for i in 0..p {
                let xg = apply(&xs[i], &g);
                expand_wedge(&mut acc, &xg, &without(&xs, i), (p - 1 - i) % 2 == 1);
            }
            continue;
        }
        for (jb, cb) in b.components() {
            let ys = factors(cb, jb, dim);
            for i in 0..p {
                for j in 0..q {
                    let mut fields = vec![lie_bracket(&xs[i], &ys[j], dim)];
                    fields.extend(without(&xs, i));
                    fields.extend(without(&ys, j));
                    expand_wedge(&mut acc, &one, &fields, (i + j) % 2 == 1);
                }
            }
        }
    }
    let mut out = PolyMultiVec::zero_with_params(dim, nv, p + q - 1);
    for (k, v) in acc {
        out.add_component(&k, v)?;
    }
    Ok(out)
}

type Terms = BTreeMap<Vec<usize>, Scalar>;

fn push_term(acc: &mut Terms, idx: Vec<usize>, c: Scalar) {
    let Some(odd) = parity_of(&idx) else { return };
    let mut key = idx;
    key.sort_unstable();
    let e = acc.entry(key).or_insert_with(Scalar::zero);
    if odd {
        *e -= &c;
    } else {
        *e += &c;
    }
}

fn wedge_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (i, x) in a {
        for (j, y) in b {
            push_term(&mut out, i.iter().chain(j).copied().collect(), x * y);
        }
    }
    out
}

fn add_terms(acc: &mut Terms, t: Terms, negate: bool) {
    for (k, v) in t {
        push_term(acc, k, if negate { -v } else { v });
    }
}

/// Bracket of two basis monomials by Leibniz peeling.
fn mono_bracket(g: &LieAlgebra, a: &[usize], b: &[usize]) -> Terms {
    let (p, q) = (a.len(), b.len());
    if p == 0 || q == 0 {
        return Terms::new();
    }
    if p == 1 && q == 1 {
        let mut out = Terms::new();
        for (k, c) in g.bracket_basis(a[0], b[0]) {
            push_term(&mut out, vec![*k], c.clone());
        }
        return out;
    }
    if q == 1 {
        // [A, y] = -(-1)^((p-1)(q-1)) [y, A] = -[y, A]
        let mut out = Terms::new();
        add_terms(&mut out, mono_bracket(g, b, a), true);
        return out;
    }
    let head = Terms::from([(vec![b[0]], Scalar::from_int(1))]);
    let tail = Terms::from([(b[1..].to_vec(), Scalar::from_int(1))]);
    let mut out = Terms::new();
    add_terms(&mut out, wedge_terms(&mono_bracket(g, a, &b[..1]), &tail), false);
    add_terms(&mut out, wedge_terms(&head, &mono_bracket(g, a, &b[1..])), (p - 1) % 2 == 1);
    out
}

/// Brute-force algebraic Schouten bracket on `Lambda g`.
pub fn alg_schouten_oracle(g: &LieAlgebra, a: &AlgElement<Scalar>, b: &AlgElement<Scalar>) -> AlgElement<Scalar> {
    let deg = (a.degree() + b.degree()).saturating_sub(1);
    let mut acc = Terms::new();
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            let t = mono_bracket(g, i, j);
            for (k, v) in t {
                push_term(&mut acc, k, &v * &(x * y));
            }
        }
    }
    let mut out = AlgElement::zero(g.dim(), deg);
    for (k, v) in acc {
        if !v.is_zero() {
            out.add_term(&k, v);
        }
    }
    out
}
