#![allow(dead_code)]

use dirac_core::exactalg::{parse_poly, Monomial, Poly, PolyMultiVec, Scalar};
use dirac_core::poisson::PoissonChart;
use proptest::prelude::*;

pub fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

pub fn chart(ns: &[&str], entries: &[(usize, usize, &str)]) -> PoissonChart {
    let names = names(ns);
    let mut pi = PolyMultiVec::zero(names.len(), 2);
    for &(i, j, s) in entries {
        pi.add_component(&[i, j], parse_poly(s, &names).unwrap()).unwrap();
    }
    PoissonChart::new(names, pi, None).unwrap()
}

pub fn dubrovin() -> PoissonChart {
    chart(&["x", "y", "z"], &[(0, 1, "x*y - 2*z"), (1, 2, "y*z - 2*x"), (2, 0, "z*x - 2*y")])
}

pub fn so3_chart() -> PoissonChart {
    chart(&["x1", "x2", "x3"], &[(0, 1, "x3"), (1, 2, "x1"), (2, 0, "x2")])
}

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        4 => (-3i64..=3).prop_map(Scalar::from_int),
        1 => (-3i64..=3, 1i64..=3).prop_map(|(a, b)| Scalar::ratio(a, b)),
        1 => (-2i64..=2, -2i64..=2).prop_map(|(a, b)| Scalar::from_int(a) + Scalar::from_int(b) * Scalar::i()),
    ]
}

/// Random polynomial in `nvars` variables of total degree at most `deg`.
pub fn poly(nvars: usize, deg: u32) -> impl Strategy<Value = Poly> {
    let term = (proptest::collection::vec(0..=deg, nvars), scalar());
    proptest::collection::vec(term, 0..4).prop_map(move |ts| {
        let mut p = Poly::zero(nvars);
        for (mut e, c) in ts {
            while e.iter().sum::<u32>() > deg {
                let k = e.iter().position(|&v| v > 0).unwrap();
                e[k] -= 1;
            }
            p.add_term(Monomial(e), c);
        }
        p
    })
}

fn tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, &mut Vec::new(), &mut out);
    out
}

/// Random multivector of the given degree with sparse polynomial components.
pub fn multivec(dim: usize, degree: usize, pdeg: u32) -> impl Strategy<Value = PolyMultiVec> {
    let ts = tuples(dim, degree);
    let n = ts.len();
    proptest::collection::vec(proptest::option::weighted(0.6, poly(dim, pdeg)), n).prop_map(move |cs| {
        let mut m = PolyMultiVec::zero(dim, degree);
        for (t, c) in ts.iter().zip(cs) {
            if let Some(p) = c {
                m.add_component(t, p).unwrap();
            }
        }
        m
    })
}

/// Multivector of random degree at most 2.
pub fn low_multivec(dim: usize, pdeg: u32) -> impl Strategy<Value = PolyMultiVec> {
    (0usize..=2).prop_flat_map(move |d| multivec(dim, d, pdeg))
}
