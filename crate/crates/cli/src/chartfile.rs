//! Line-oriented chart files.
//!
//! ```text
//! # Dubrovin chart
//! dim 3
//! coords x y z
//! bracket x y = x*y - 2*z
//! bracket y z = y*z - 2*x
//! bracket z x = z*x - 2*y
//! volume = 1
//! submanifold x = x y
//! ```
//!
//! Brackets may name coordinates or use 1-based indices. An optional
//! `params t1 t2` line declares parameters that may appear in coefficients
//! but are not coordinates. Unlisted brackets are zero.

use dirac_core::dirac::AlignedSubmanifold;
use dirac_core::exactalg::parse::parse_poly_at;
use dirac_core::exactalg::{Poly, PolyMultiVec};
use dirac_core::poisson::PoissonChart;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ChartError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ChartError {
    ChartError { line, column, message: message.into() }
}

/// A parsed chart file.
#[derive(Clone, Debug)]
pub struct ChartFile {
    pub chart: PoissonChart,
    pub params: Vec<String>,
    /// Coordinate names spanning the submanifold, if declared.
    pub submanifold: Option<Vec<String>>,
}

impl ChartFile {
    pub fn aligned(&self) -> Option<Result<AlignedSubmanifold, dirac_core::dirac::DiracError>> {
        self.submanifold.as_ref().map(|x| AlignedSubmanifold::from_names(self.chart.clone(), x))
    }
}

/// Column (1-based) of the `k`-th whitespace-separated word of `raw`.
fn word_columns(raw: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in raw.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &raw[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &raw[s..]));
    }
    out.into_iter().map(|(s, w)| (raw[..s].chars().count() + 1, w)).collect()
}

fn resolve(name: &str, coords: &[String], line: usize, col: usize) -> Result<usize, ChartError> {
    if let Some(k) = coords.iter().position(|c| c == name) {
        return Ok(k);
    }
    match name.parse::<usize>() {
        Ok(k) if (1..=coords.len()).contains(&k) => Ok(k - 1),
        Ok(_) => Err(err(line, col, format!("index {} out of range 1..{}", name, coords.len()))),
        Err(_) => Err(err(line, col, format!("unknown coordinate `{}`", name))),
    }
}

/// Splits `head = rhs`, returning the head and the rhs with its column.
fn split_eq<'a>(raw: &'a str, line: usize) -> Result<(&'a str, &'a str, usize), ChartError> {
    let pos = raw.find('=').ok_or_else(|| err(line, raw.chars().count() + 1, "expected `=`"))?;
    let rhs = &raw[pos + 1..];
    let col0 = raw[..pos + 1].chars().count();
    Ok((&raw[..pos], rhs, col0))
}

/// Parses chart text without running the Jacobi check.
pub fn parse_chart(text: &str) -> Result<ChartFile, ChartError> {
    let mut dim: Option<(usize, usize)> = None;
    let mut coords: Option<Vec<String>> = None;
    let mut params: Vec<String> = Vec::new();
    let mut entries: BTreeMap<(usize, usize), (Poly, usize)> = BTreeMap::new();
    let mut volume: Option<Poly> = None;
    let mut sub: Option<Vec<String>> = None;
    let mut last_line = 0;
    for (ln, full) in text.lines().enumerate() {
        let line = ln + 1;
        last_line = line;
        let raw = full.split('#').next().unwrap_or("");
        let words = word_columns(raw);
        let Some(&(kcol, key)) = words.first() else { continue };
        let need_coords = |c: &Option<Vec<String>>| -> Result<(), ChartError> {
            if c.is_none() {
                Err(err(line, kcol, "`coords` must come first"))
            } else {
                Ok(())
            }
        };
        match key {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line, kcol, "`dim` declared twice"));
                }
                let (c, w) = words.get(1).copied().ok_or_else(|| err(line, kcol, "missing dimension"))?;
                let n = w.parse::<usize>().map_err(|_| err(line, c, format!("bad dimension `{}`", w)))?;
                if words.len() > 2 {
                    return Err(err(line, words[2].0, "trailing input"));
                }
                dim = Some((n, line));
            }
            "coords" => {
                if coords.is_some() {
                    return Err(err(line, kcol, "`coords` declared twice"));
                }
                let mut names: Vec<String> = Vec::new();
                for &(c, w) in &words[1..] {
                    check_ident(w, line, c)?;
                    if names.iter().any(|n| n == w) {
                        return Err(err(line, c, format!("coordinate `{}` repeated", w)));
                    }
                    names.push(w.to_string());
                }
                coords = Some(names);
            }
            "params" => {
                need_coords(&coords)?;
                if !params.is_empty() {
                    return Err(err(line, kcol, "`params` declared twice"));
                }
                if !entries.is_empty() || volume.is_some() {
                    return Err(err(line, kcol, "`params` must precede brackets and volume"));
                }
                for &(c, w) in &words[1..] {
                    check_ident(w, line, c)?;
                    if all_names(&coords, &params).iter().any(|n| n == w) {
                        return Err(err(line, c, format!("name `{}` already declared", w)));
                    }
                    params.push(w.to_string());
                }
            }
            "bracket" => {
                need_coords(&coords)?;
                let cs = coords.as_ref().expect("checked");
                let (head, rhs, col0) = split_eq(raw, line)?;
                let hw = word_columns(head);
                if hw.len() != 3 {
                    return Err(err(line, kcol, "expected `bracket i j = <poly>`"));
                }
                let i = resolve(hw[1].1, cs, line, hw[1].0)?;
                let j = resolve(hw[2].1, cs, line, hw[2].0)?;
                if i == j {
                    return Err(err(line, hw[2].0, "bracket of a coordinate with itself"));
                }
                let key = (i.min(j), i.max(j));
                if let Some((_, first)) = entries.get(&key) {
                    return Err(err(
                        line,
                        hw[1].0,
                        format!("duplicate bracket {{{}, {}}} (first given on line {})", cs[i], cs[j], first),
                    ));
                }
                let names = all_names(&coords, &params);
                let p = parse_poly_at(rhs, &names, line, col0).map_err(|e| err(e.line, e.column, e.message))?;
                let p = if i < j { p } else { -p };
                entries.insert(key, (p, line));
            }
            "volume" => {
                need_coords(&coords)?;
                if volume.is_some() {
                    return Err(err(line, kcol, "`volume` declared twice"));
                }
                let (head, rhs, col0) = split_eq(raw, line)?;
                if word_columns(head).len() != 1 {
                    return Err(err(line, kcol, "expected `volume = <poly>`"));
                }
                let p = parse_poly_at(rhs, &all_names(&coords, &params), line, col0).map_err(|e| err(e.line, e.column, e.message))?;
                if p.is_zero() {
                    return Err(err(line, col0 + 1, "volume density is identically zero"));
                }
                volume = Some(p);
            }
            "submanifold" => {
                need_coords(&coords)?;
                if sub.is_some() {
                    return Err(err(line, kcol, "`submanifold` declared twice"));
                }
                let (head, rhs, col0) = split_eq(raw, line)?;
                let hw = word_columns(head);
                if hw.len() != 2 || hw[1].1 != "x" {
                    return Err(err(line, kcol, "expected `submanifold x = <names>`"));
                }
                let cs = coords.as_ref().expect("checked");
                let mut names = Vec::new();
                for (c, w) in word_columns(rhs) {
                    let k = resolve(w, cs, line, col0 + c)?;
                    if names.contains(&cs[k]) {
                        return Err(err(line, col0 + c, format!("`{}` repeated", w)));
                    }
                    names.push(cs[k].clone());
                }
                sub = Some(names);
            }
            other => return Err(err(line, kcol, format!("unknown directive `{}`", other))),
        }
    }
    let coords = coords.ok_or_else(|| err(last_line.max(1), 1, "missing `coords`"))?;
    if let Some((n, line)) = dim {
        if n != coords.len() {
            return Err(err(line, 5, format!("dim {} but {} coordinates", n, coords.len())));
        }
    }
    let n = coords.len();
    let nvars = n + params.len();
    let mut pi = PolyMultiVec::zero_with_params(n, nvars, 2);
    for ((i, j), (p, line)) in entries {
        pi.add_component(&[i, j], p).map_err(|e| err(line, 1, e.to_string()))?;
    }
    let chart = PoissonChart::new(coords, pi, volume).map_err(|e| err(last_line.max(1), 1, e.to_string()))?;
    Ok(ChartFile { chart, params, submanifold: sub })
}

fn all_names(coords: &Option<Vec<String>>, params: &[String]) -> Vec<String> {
    coords.iter().flatten().chain(params).cloned().collect()
}

fn check_ident(w: &str, line: usize, col: usize) -> Result<(), ChartError> {
    let mut chars = w.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && w != "i";
    if ok {
        Ok(())
    } else {
        Err(err(line, col, format!("invalid name `{}`", w)))
    }
}

/// Emits a chart in canonical form; [`parse_chart`] reads it back unchanged.
pub fn emit_chart(chart: &PoissonChart, params: &[String], submanifold: Option<&[String]>) -> String {
    let names: Vec<String> = chart.names().iter().chain(params).cloned().collect();
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", chart.dim());
    let _ = writeln!(out, "coords {}", chart.names().join(" "));
    if !params.is_empty() {
        let _ = writeln!(out, "params {}", params.join(" "));
    }
    for (idx, p) in chart.pi().components() {
        let _ = writeln!(out, "bracket {} {} = {}", names[idx[0]], names[idx[1]], p.display_with(&names));
    }
    let vol = chart.volume();
    if *vol != Poly::one(vol.nvars()) {
        let _ = writeln!(out, "volume = {}", vol.display_with(&names));
    }
    if let Some(x) = submanifold {
        let _ = writeln!(out, "submanifold x = {}", x.join(" "));
    }
    out
}
