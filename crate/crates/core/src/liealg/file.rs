//! Lie-algebra text files:
//!
//! ```text
//! # comment
//! basis e f h
//! bracket h e = 2*e
//! bracket h f = -2*f
//! bracket e f = h
//! ```
//!
//! Unlisted brackets are zero; `[b,a]` is implied by `[a,b]`.

use super::{LieAlgebra, LieError};
use crate::exactalg::{parse::parse_poly_at, Monomial, Poly, Scalar};
use num::traits::Zero;
use std::collections::BTreeSet;

fn err(line: usize, message: impl Into<String>) -> LieError {
    LieError::File { line, message: message.into() }
}

pub fn parse_lie_file(text: &str) -> Result<LieAlgebra, LieError> {
    let mut labels: Option<Vec<String>> = None;
    let mut seen = BTreeSet::new();
    let mut brackets = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("basis") => {
                if labels.is_some() {
                    return Err(err(line_no, "basis declared twice"));
                }
                let l: Vec<String> = words.map(str::to_string).collect();
                if l.is_empty() {
                    return Err(err(line_no, "empty basis"));
                }
                if l.iter().collect::<BTreeSet<_>>().len() != l.len() {
                    return Err(err(line_no, "repeated basis label"));
                }
                labels = Some(l);
            }
            Some("bracket") => {
                let labels = labels.as_ref().ok_or_else(|| err(line_no, "bracket before basis"))?;
                let (lhs, rhs) = line["bracket".len()..].split_once('=').ok_or_else(|| err(line_no, "expected '='"))?;
                let names: Vec<&str> = lhs.split_whitespace().collect();
                if names.len() != 2 {
                    return Err(err(line_no, "expected two basis labels"));
                }
                let idx = |s: &str| labels.iter().position(|l| l == s).ok_or_else(|| err(line_no, format!("unknown label '{}'", s)));
                let (i, j) = (idx(names[0])?, idx(names[1])?);
                if i == j {
                    return Err(err(line_no, "bracket of a label with itself"));
                }
                if !seen.insert((i.min(j), i.max(j))) {
                    return Err(err(line_no, format!("duplicate bracket [{}, {}]", names[0], names[1])));
                }
                let col0 = raw.find('=').map(|p| p + 1).unwrap_or(0);
                let p = parse_poly_at(rhs, labels, line_no, col0).map_err(|e| err(line_no, e.to_string()))?;
                let v = linear_coeffs(&p, labels.len()).ok_or_else(|| err(line_no, "bracket must be linear in the basis"))?;
                brackets.push((i, j, v));
            }
            Some(other) => return Err(err(line_no, format!("unknown directive '{}'", other))),
            None => {}
        }
    }
    let labels = labels.ok_or_else(|| err(0, "missing basis line"))?;
    Ok(LieAlgebra::from_brackets(labels, brackets))
}

fn linear_coeffs(p: &Poly, n: usize) -> Option<Vec<Scalar>> {
    let mut v = vec![Scalar::zero(); n];
    for (m, c) in p.terms() {
        if m.degree() != 1 {
            return None;
        }
        let k = m.0.iter().position(|&e| e == 1)?;
        v[k] = c.clone();
    }
    Some(v)
}

/// Canonical file text; parses back to an equal algebra (without root data).
pub fn emit_lie_file(g: &LieAlgebra) -> String {
    let n = g.dim();
    let mut s = format!("basis {}\n", g.labels().join(" "));
    for i in 0..n {
        for j in i + 1..n {
            let mut p = Poly::zero(n);
            for (k, c) in g.bracket_basis(i, j) {
                p.add_term(Monomial::var(n, *k), c.clone());
            }
            if !p.is_zero() {
                s.push_str(&format!("bracket {} {} = {}\n", g.labels()[i], g.labels()[j], p.display_with(g.labels())));
            }
        }
    }
    s
}
