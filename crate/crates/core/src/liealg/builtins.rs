//! Built-in algebras: Chevalley bases of sl(n), compact forms su(n), so(3).

use super::element::AlgElement;
use super::map::LinearAlgMap;
use super::{LieAlgebra, LieError, PositiveRoot, RootData};
use crate::exactalg::{ExactMatrix, Scalar};
use num::traits::One;

fn unit(n: usize, i: usize, j: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    m[(i, j)] = Scalar::one();
    m
}

fn positive_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn cartan_matrix(n: usize, k: usize) -> ExactMatrix {
    let mut m = unit(n, k, k);
    m[(k + 1, k + 1)] = Scalar::from_int(-1);
    m
}

/// Chevalley basis `e_alpha, f_alpha, h_i` of sl(n) with `e_ij = E_ij`,
/// `f_ij = E_ji`, `h_i = E_ii - E_(i+1)(i+1)`; `d_alpha = tr(e f) = 1`.
pub fn sl_chevalley(n: usize) -> LieAlgebra {
    assert!(n >= 2, "sl(n) needs n >= 2");
    let pairs = positive_pairs(n);
    let tag = |p: char, (i, j): (usize, usize)| if n == 2 { p.to_string() } else { format!("{}{}{}", p, i + 1, j + 1) };
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for &p in &pairs {
        labels.push(tag('e', p));
        mats.push(unit(n, p.0, p.1));
    }
    for &p in &pairs {
        labels.push(tag('f', p));
        mats.push(unit(n, p.1, p.0));
    }
    for k in 0..n - 1 {
        labels.push(if n == 2 { "h".into() } else { format!("h{}", k + 1) });
        mats.push(cartan_matrix(n, k));
    }
    let m = pairs.len();
    let positive = pairs
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| PositiveRoot {
            label: format!("a{}{}", i + 1, j + 1),
            e: a,
            f: m + a,
            d: Scalar::one(),
            coroot: (0..n - 1).map(|k| if k >= i && k < j { Scalar::one() } else { Scalar::from_int(0) }).collect(),
        })
        .collect();
    let roots = RootData { positive, cartan: (2 * m..2 * m + n - 1).collect() };
    LieAlgebra::from_matrices(labels, mats).expect("sl(n) closes").with_roots(roots)
}

/// Standard r-matrix `sum_alpha d_alpha e_alpha ^ f_alpha`.
pub fn standard_r(g: &LieAlgebra) -> AlgElement<Scalar> {
    let roots = g.roots().expect("algebra carries root data");
    let mut r = AlgElement::zero(g.dim(), 2);
    for a in &roots.positive {
        r.add_term(&[a.e, a.f], a.d.clone());
    }
    r
}

/// Compact real form with its r-matrix and the anti-morphism induced by transpose.
#[derive(Clone, Debug)]
pub struct CompactForm {
    pub algebra: LieAlgebra,
    /// `r^ = sum_alpha 1/2 d_alpha X_alpha ^ Y_alpha`.
    pub r_hat: AlgElement<Scalar>,
    /// `X -> -X`, `Y -> Y`, `t -> t`.
    pub phi_hat: LinearAlgMap,
}

/// su(n) in the basis `X_alpha = e - f`, `Y_alpha = i(e + f)`, `t_k = i h_k`.
pub fn su_compact(n: usize) -> CompactForm {
    assert!(n >= 2, "su(n) needs n >= 2");
    let pairs = positive_pairs(n);
    let i_unit = Scalar::i();
    let tag = |p: char, (a, b): (usize, usize)| if n == 2 { p.to_string() } else { format!("{}{}{}", p, a + 1, b + 1) };
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for &p in &pairs {
        labels.push(tag('X', p));
        mats.push(&unit(n, p.0, p.1) - &unit(n, p.1, p.0));
    }
    for &p in &pairs {
        labels.push(tag('Y', p));
        mats.push((&unit(n, p.0, p.1) + &unit(n, p.1, p.0)).scale(&i_unit));
    }
    for k in 0..n - 1 {
        labels.push(if n == 2 { "t".into() } else { format!("t{}", k + 1) });
        mats.push(cartan_matrix(n, k).scale(&i_unit));
    }
    let algebra = LieAlgebra::from_matrices(labels, mats).expect("su(n) closes");
    let m = pairs.len();
    let mut r_hat = AlgElement::zero(algebra.dim(), 2);
    for a in 0..m {
        r_hat.add_term(&[a, m + a], Scalar::ratio(1, 2));
    }
    let phi_hat = LinearAlgMap::transpose(&algebra).expect("su(n) is transpose-stable");
    CompactForm { algebra, r_hat, phi_hat }
}

/// so(3) with `[e1,e2] = e3` cyclically.
pub fn so3() -> LieAlgebra {
    let l = |entries: &[(usize, usize, i64)]| {
        let mut m = ExactMatrix::zeros(3, 3);
        for &(i, j, v) in entries {
            m[(i, j)] = Scalar::from_int(v);
        }
        m
    };
    let mats = vec![l(&[(1, 2, -1), (2, 1, 1)]), l(&[(0, 2, 1), (2, 0, -1)]), l(&[(0, 1, -1), (1, 0, 1)])];
    LieAlgebra::from_matrices(vec!["e1".into(), "e2".into(), "e3".into()], mats).expect("so(3) closes")
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::from_raw((1..=n).map(|i| format!("e{}", i)).collect(), std::iter::empty())
}

/// Built-in algebra by name: `sl2..sl6`, `su2..su6`, `so3`.
pub fn builtin(name: &str) -> Result<LieAlgebra, LieError> {
    let parse_n = |s: &str| s.parse::<usize>().ok().filter(|n| (2..=6).contains(n));
    if name == "so3" {
        return Ok(so3());
    }
    if let Some(n) = name.strip_prefix("sl").and_then(parse_n) {
        return Ok(sl_chevalley(n));
    }
    if let Some(n) = name.strip_prefix("su").and_then(parse_n) {
        return Ok(su_compact(n).algebra);
    }
    Err(LieError::UnknownAlgebra(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::super::validate_lie;
    use super::*;

    #[test]
    fn sl2_relations() {
        let g = sl_chevalley(2);
        let (e, f, h) = (0, 1, 2);
        assert_eq!(g.constant(h, e, e), Scalar::from_int(2));
        assert_eq!(g.constant(h, f, f), Scalar::from_int(-2));
        assert_eq!(g.constant(e, f, h), Scalar::one());
        assert!(validate_lie(&g).is_valid());
    }

    #[test]
    fn sl3_counts() {
        let g = sl_chevalley(3);
        assert_eq!(g.dim(), 8);
        assert_eq!(g.roots().unwrap().positive.len(), 3);
        assert!(validate_lie(&g).is_valid());
        assert!(validate_lie(&sl_chevalley(4)).is_valid());
    }

    #[test]
    fn su_constants_are_real() {
        for n in 2..=3 {
            let c = su_compact(n);
            assert!(validate_lie(&c.algebra).is_valid());
            for i in 0..c.algebra.dim() {
                for j in 0..c.algebra.dim() {
                    assert!(c.algebra.bracket_basis(i, j).iter().all(|(_, s)| s.is_real()));
                }
            }
        }
        let c = su_compact(2);
        assert_eq!(c.r_hat.coeff(&[0, 1]), Scalar::ratio(1, 2));
        assert_eq!(c.r_hat.len(), 1);
    }

    #[test]
    fn so3_cyclic() {
        let g = so3();
        assert_eq!(g.constant(0, 1, 2), Scalar::one());
        assert_eq!(g.constant(1, 2, 0), Scalar::one());
        assert_eq!(g.constant(2, 0, 1), Scalar::one());
    }
}
