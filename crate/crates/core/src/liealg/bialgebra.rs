//! Coboundary and symmetric Lie bialgebras, the Drinfeld double and the
//! anti-morphism `chi(X + xi) = phi X - phi* xi`.

use super::element::{alg_schouten, AlgElement};
use super::map::LinearAlgMap;
use super::{validate_lie, LieAlgebra, LieVerdict};
use crate::exactalg::{ExactMatrix, Scalar};
use num::traits::Zero;
use std::fmt;
use thiserror::Error;

/// A named check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckList {
    pub items: Vec<CheckItem>,
}

impl CheckList {
    pub fn push(&mut self, name: &str, outcome: Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.items.push(CheckItem { name: name.to_string(), passed, detail });
    }

    pub fn extend(&mut self, prefix: &str, o: CheckList) {
        for mut it in o.items {
            it.name = format!("{}{}", prefix, it.name);
            self.items.push(it);
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }
}

impl fmt::Display for CheckList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.items {
            write!(f, "{:<28} {}", it.name, if it.passed { "pass" } else { "FAIL" })?;
            if !it.detail.is_empty() {
                write!(f, "  ({})", it.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn verdict(v: LieVerdict) -> Result<(), String> {
    if v.is_valid() {
        Ok(())
    } else {
        Err(v.to_string())
    }
}

/// `[X_b, [r, r]] = 0` for every basis element.
pub fn coboundary_check(g: &LieAlgebra, r: &AlgElement<Scalar>) -> CheckList {
    let rr = alg_schouten(g, r, r);
    let bad = (0..g.dim()).find(|&b| !alg_schouten(g, &AlgElement::basis(g.dim(), &[b]), &rr).is_zero());
    let mut out = CheckList::default();
    out.push(
        "[r,r] ad-invariant",
        match bad {
            None => Ok(()),
            Some(b) => Err(format!("[{}, [r,r]] != 0", g.labels()[b])),
        },
    );
    out
}

/// Symmetric bialgebra conditions: `phi^2 = id`, `phi` an anti-morphism,
/// `(Lambda^2 phi) r = -r`, on top of the coboundary condition.
pub fn symmetric_bialgebra_check(g: &LieAlgebra, r: &AlgElement<Scalar>, phi: &LinearAlgMap) -> CheckList {
    let mut out = coboundary_check(g, r);
    out.push("phi involutive", if phi.is_involution() { Ok(()) } else { Err("phi^2 != id".into()) });
    out.push(
        "phi anti-morphism",
        match phi.anti_morphism_violation(g) {
            None => Ok(()),
            Some((i, j)) => Err(format!("on ({}, {})", g.labels()[i], g.labels()[j])),
        },
    );
    let pr = phi.apply_wedge(r);
    out.push("phi r = -r", if pr.add(r).is_zero() { Ok(()) } else { Err(format!("phi r + r has {} terms", pr.add(r).len())) });
    out
}

/// True when `phi` fixes every Cartan basis vector.
pub fn fixes_cartan(g: &LieAlgebra, phi: &LinearAlgMap) -> bool {
    g.roots().map(|rd| rd.cartan.iter().all(|&h| phi.apply(&g.basis_vector(h)) == g.basis_vector::<Scalar>(h))).unwrap_or(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleError {
    #[error("double fails validation: {0}")]
    Invalid(String),
}

/// `sigma = g + g*` with basis `e_1..e_n, xi^1..xi^n`.
#[derive(Clone, Debug)]
pub struct DrinfeldDouble {
    pub algebra: LieAlgebra,
    pub n: usize,
    /// `r_sigma = sum_i e_i ^ xi^i`.
    pub r_sigma: AlgElement<Scalar>,
    /// `g*` with bracket dual to the cobracket.
    pub dual: LieAlgebra,
}

impl DrinfeldDouble {
    /// Canonical pairing `<X + xi, Y + eta> = xi(Y) + eta(X)`.
    pub fn pairing(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let n = self.n;
        let mut acc = Scalar::zero();
        for i in 0..n {
            acc += &(&u[i] * &v[n + i]);
            acc += &(&u[n + i] * &v[i]);
        }
        acc
    }

    /// First basis triple violating `<[a,b],c> + <b,[a,c]> = 0`.
    pub fn pairing_invariance_violation(&self) -> Option<(usize, usize, usize)> {
        let d = &self.algebra;
        let m = d.dim();
        let basis: Vec<Vec<Scalar>> = (0..m).map(|i| d.basis_vector(i)).collect();
        for a in 0..m {
            for b in 0..m {
                let ab = d.bracket(&basis[a], &basis[b]);
                for c in 0..m {
                    let ac = d.bracket(&basis[a], &basis[c]);
                    if !(self.pairing(&ab, &basis[c]) + self.pairing(&basis[b], &ac)).is_zero() {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Lie algebra, co-Jacobi, pairing invariance and `r_sigma` conditions.
    pub fn checks(&self) -> CheckList {
        let mut out = CheckList::default();
        out.push("double Jacobi", verdict(validate_lie(&self.algebra)));
        out.push("co-Jacobi on g*", verdict(validate_lie(&self.dual)));
        out.push(
            "pairing invariant",
            match self.pairing_invariance_violation() {
                None => Ok(()),
                Some(t) => Err(format!("triple {:?}", t)),
            },
        );
        out.extend("r_sigma: ", coboundary_check(&self.algebra, &self.r_sigma));
        out
    }
}

/// Drinfeld double of the coboundary bialgebra `(g, delta = [., r])`.
///
/// `g*` bracket: `<[xi^a, xi^b], e_c>` is the `e_a ^ e_b` coefficient of
/// `delta(e_c)`. Mixed bracket: `[X, xi] = ad*_X xi - ad*_xi X` with
/// `<ad*_X xi, Y> = -<xi, [X, Y]>`.
pub fn drinfeld_double(g: &LieAlgebra, r: &AlgElement<Scalar>) -> Result<DrinfeldDouble, DoubleError> {
    let n = g.dim();
    let deltas: Vec<AlgElement<Scalar>> = (0..n).map(|c| alg_schouten(g, &AlgElement::basis(n, &[c]), r)).collect();
    let dual_const = |a: usize, b: usize, c: usize| deltas[c].coeff(&[a, b]);
    let mut labels: Vec<String> = g.labels().to_vec();
    labels.extend(g.labels().iter().map(|l| format!("{}*", l)));
    let mut raw = Vec::new();
    let mut dual_raw = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for (k, c) in g.bracket_basis(a, b) {
                raw.push((a, b, *k, c.clone()));
            }
            for c in 0..n {
                let v = dual_const(a, b, c);
                if !v.is_zero() {
                    raw.push((n + a, n + b, n + c, v.clone()));
                    dual_raw.push((a, b, c, v));
                }
            }
            for c in 0..n {
                let v = -g.constant(a, c, b);
                if !v.is_zero() {
                    raw.push((a, n + b, n + c, v.clone()));
                    raw.push((n + b, a, n + c, -v));
                }
            }
            for d in 0..n {
                let v = dual_const(b, d, a);
                if !v.is_zero() {
                    raw.push((a, n + b, d, v.clone()));
                    raw.push((n + b, a, d, -v));
                }
            }
        }
    }
    let algebra = LieAlgebra::from_raw(labels, raw);
    let dual = LieAlgebra::from_raw(g.labels().iter().map(|l| format!("{}*", l)).collect(), dual_raw);
    let v = validate_lie(&algebra);
    if !v.is_valid() {
        return Err(DoubleError::Invalid(v.to_string()));
    }
    let mut r_sigma = AlgElement::zero(2 * n, 2);
    for i in 0..n {
        r_sigma.add_term(&[i, n + i], Scalar::from_int(1));
    }
    Ok(DrinfeldDouble { algebra, n, r_sigma, dual })
}

/// `chi = diag(phi, -phi^T)`: involutive, anti-morphism, anti-isometric.
pub fn chi_check(double: &DrinfeldDouble, phi: &LinearAlgMap) -> CheckList {
    let n = double.n;
    let m = phi.matrix();
    let mut chi = ExactMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            chi[(i, j)] = m[(i, j)].clone();
            chi[(n + i, n + j)] = -&m[(j, i)];
        }
    }
    let chi = LinearAlgMap::new(chi);
    let mut out = CheckList::default();
    out.push("chi involutive", if chi.is_involution() { Ok(()) } else { Err("chi^2 != id".into()) });
    out.push(
        "chi anti-morphism",
        match chi.anti_morphism_violation(&double.algebra) {
            None => Ok(()),
            Some((i, j)) => Err(format!("on basis ({}, {})", i, j)),
        },
    );
    let d = &double.algebra;
    let imgs: Vec<Vec<Scalar>> = (0..2 * n).map(|i| chi.apply(&d.basis_vector(i))).collect();
    let mut bad = None;
    'outer: for a in 0..2 * n {
        for b in 0..2 * n {
            let lhs = double.pairing(&imgs[a], &imgs[b]);
            let rhs = double.pairing(&d.basis_vector(a), &d.basis_vector(b));
            if !(lhs + rhs).is_zero() {
                bad = Some((a, b));
                break 'outer;
            }
        }
    }
    out.push(
        "chi anti-isometry",
        match bad {
            None => Ok(()),
            Some(p) => Err(format!("on basis {:?}", p)),
        },
    );
    out
}

#[cfg(test)]
mod tests {
    use super::super::builtins::{abelian, sl_chevalley, standard_r, su_compact};
    use super::*;

    #[test]
    fn sl2_suite() {
        let g = sl_chevalley(2);
        let r = standard_r(&g);
        let s = LinearAlgMap::transpose(&g).unwrap();
        assert!(symmetric_bialgebra_check(&g, &r, &s).passed());
        assert!(fixes_cartan(&g, &s));
        let d = drinfeld_double(&g, &r).unwrap();
        assert_eq!(d.algebra.dim(), 6);
        assert!(d.checks().passed(), "{}", d.checks());
        assert!(chi_check(&d, &s).passed(), "{}", chi_check(&d, &s));
    }

    #[test]
    fn identity_is_not_anti_morphism() {
        let g = sl_chevalley(2);
        let r = standard_r(&g);
        let c = symmetric_bialgebra_check(&g, &r, &LinearAlgMap::identity(3));
        assert!(!c.passed());
        assert_eq!(c.first_failure().unwrap().name, "phi anti-morphism");
    }

    #[test]
    fn abelian_double() {
        let g = abelian(2);
        let d = drinfeld_double(&g, &AlgElement::zero(2, 2)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(d.algebra.bracket_basis(i, j).is_empty());
            }
        }
        let minus = LinearAlgMap::new(ExactMatrix::identity(2).scale(&Scalar::from_int(-1)));
        let c = chi_check(&d, &minus);
        assert!(c.passed(), "{}", c);
    }

    #[test]
    fn su2_compact() {
        let c = su_compact(2);
        assert!(symmetric_bialgebra_check(&c.algebra, &c.r_hat, &c.phi_hat).passed());
        let d = drinfeld_double(&c.algebra, &c.r_hat).unwrap();
        assert!(d.checks().passed());
        assert!(chi_check(&d, &c.phi_hat).passed());
    }
}
