//! Poisson involutions on matrix groups and induced structures on fixed loci.

use super::realize::{pl_bivector, MatrixRealization};
use super::{c, CMat, GroupElement, GroupError, Tangent, TangentBivector, MEMBER_TOL};
use crate::liealg::AlgElement;
use num_complex::Complex64;

/// Entrywise-linear involution.
#[derive(Clone, Debug, PartialEq)]
pub enum InvolutionSpec {
    /// `A -> A^T`.
    Transpose,
    /// `(B, C) -> (C^T, B^T)`.
    PairSwapTranspose,
    /// Linear map on flattened coordinates.
    Custom(CMat),
}

impl InvolutionSpec {
    fn map_blocks(&self, blocks: &[CMat]) -> Vec<CMat> {
        match self {
            InvolutionSpec::Transpose => blocks.iter().map(|b| b.transpose()).collect(),
            InvolutionSpec::PairSwapTranspose => {
                assert_eq!(blocks.len(), 2, "pair swap needs two factors");
                vec![blocks[1].transpose(), blocks[0].transpose()]
            }
            InvolutionSpec::Custom(m) => {
                let t = Tangent(blocks.to_vec());
                let v = m * nalgebra::DVector::from_vec(t.flatten());
                Tangent::unflatten(v.as_slice(), blocks.len(), blocks[0].nrows()).0
            }
        }
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        GroupElement::unchecked(g.kind(), self.map_blocks(g.blocks())).expect("shape preserved")
    }

    /// Differential; the maps are linear so this is the map itself.
    pub fn pushforward(&self, v: &Tangent) -> Tangent {
        Tangent(self.map_blocks(&v.0))
    }

    /// `|Phi(g) - g|`.
    pub fn fixed_residual(&self, g: &GroupElement) -> f64 {
        self.apply(g).distance(g)
    }

    /// `|Phi(Phi(g)) - g|`.
    pub fn involution_residual(&self, g: &GroupElement) -> f64 {
        self.apply(&self.apply(g)).distance(g)
    }
}

fn ensure_fixed(spec: &InvolutionSpec, g: &GroupElement) -> Result<(), GroupError> {
    let r = spec.fixed_residual(g);
    if r > MEMBER_TOL {
        return Err(GroupError::NotFixed(r));
    }
    Ok(())
}

/// `v+ = (v + Phi_* v) / 2` at a fixed point.
pub fn xplus(spec: &InvolutionSpec, g: &GroupElement, v: &Tangent) -> Result<Tangent, GroupError> {
    ensure_fixed(spec, g)?;
    Ok(v.add(&spec.pushforward(v)).scale(c(0.5)))
}

/// Largest entry of `Phi_* pi - pi` at a fixed point, relative to `max(1, |pi|)`.
pub fn invariance_residual(spec: &InvolutionSpec, pi: &TangentBivector) -> f64 {
    let pushed = pi.push(pi.base().clone(), |v| spec.pushforward(v));
    pushed.max_diff(pi) / pi.max_abs().max(1.0)
}

/// `pi_Q = sum X_i+ ^ Y_i+`.
pub fn pi_q_projection(spec: &InvolutionSpec, pi: &TangentBivector) -> Result<TangentBivector, GroupError> {
    let g = pi.base();
    ensure_fixed(spec, g)?;
    let r = invariance_residual(spec, pi);
    if r > MEMBER_TOL {
        return Err(GroupError::NotInvariant(r));
    }
    project_legs(spec, pi)
}

/// Applies `xplus` to every leg without the invariance check.
pub fn project_legs(spec: &InvolutionSpec, pi: &TangentBivector) -> Result<TangentBivector, GroupError> {
    let g = pi.base();
    let legs = pi
        .legs()
        .iter()
        .map(|(u, v)| Ok((xplus(spec, g, u)?, xplus(spec, g, v)?)))
        .collect::<Result<_, GroupError>>()?;
    Ok(TangentBivector::unchecked(g.clone(), legs))
}

/// Assignment of the two translations to the arrow notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowBinding {
    /// Left-invariant `X(g) = gX`, right-invariant `X(g) = Xg`.
    LeftIsGX,
    /// The opposite assignment.
    LeftIsXG,
}

impl ArrowBinding {
    fn left(self, g: &GroupElement, x: &Tangent) -> Tangent {
        match self {
            ArrowBinding::LeftIsGX => x.left_mul(g),
            ArrowBinding::LeftIsXG => x.right_mul(g),
        }
    }

    fn right(self, g: &GroupElement, x: &Tangent) -> Tangent {
        match self {
            ArrowBinding::LeftIsGX => x.right_mul(g),
            ArrowBinding::LeftIsXG => x.left_mul(g),
        }
    }
}

/// Closed formula for the induced tensor of a coboundary symmetric group:
/// `1/4 sum (e^L + (phi e)^R) ^ (f^L + (phi f)^R) - 1/4 sum (e^R + (phi e)^L) ^ (f^R + (phi f)^L)`.
/// `phi` is indexed `[target][source]`.
pub fn pi_q_formula(
    real: &MatrixRealization,
    g: &GroupElement,
    r: &AlgElement<Complex64>,
    phi: &[Vec<Complex64>],
    binding: ArrowBinding,
) -> TangentBivector {
    let apply_phi = |i: usize, s: Complex64| {
        let coords: Vec<Complex64> = phi.iter().map(|row| row[i] * s).collect();
        real.element(&coords)
    };
    let mut legs = Vec::new();
    for (idx, &cf) in r.terms() {
        let e = real.basis()[idx[0]].scale(cf);
        let f = real.basis()[idx[1]].clone();
        let (pe, pf) = (apply_phi(idx[0], cf), apply_phi(idx[1], c(1.0)));
        let first = (
            binding.left(g, &e).add(&binding.right(g, &pe)),
            binding.left(g, &f).add(&binding.right(g, &pf)),
        );
        let second = (
            binding.right(g, &e).add(&binding.left(g, &pe)),
            binding.right(g, &f).add(&binding.left(g, &pf)),
        );
        legs.push((first.0.scale(c(0.25)), first.1));
        legs.push((second.0.scale(c(-0.25)), second.1));
    }
    TangentBivector::unchecked(g.clone(), legs)
}

/// Formula route checked against the projection of the coboundary bivector.
pub fn verified_pi_q(
    spec: &InvolutionSpec,
    real: &MatrixRealization,
    g: &GroupElement,
    r: &AlgElement<Complex64>,
    phi: &[Vec<Complex64>],
    tol: f64,
) -> Result<TangentBivector, GroupError> {
    ensure_fixed(spec, g)?;
    let formula = pi_q_formula(real, g, r, phi, ArrowBinding::LeftIsGX);
    let projected = pi_q_projection(spec, &pl_bivector(real, g, r))?;
    let d = formula.max_diff(&projected);
    if d > tol {
        return Err(GroupError::Disagreement(d));
    }
    Ok(formula)
}

/// Sign variants of the compact-form specialisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiKVariant {
    /// `1/4 sum (X^R - X^L) ^ (Y^L + Y^R)`.
    AsPrinted,
    /// `1/4 sum (X^L - X^R) ^ (Y^L + Y^R)`, what the general formula yields.
    Corrected,
}

/// Induced tensor on `K cap Q` for the compact form with `r = 1/2 sum X_a ^ Y_a`.
/// The realisation basis must list `X_1..X_m, Y_1..Y_m, ...`.
pub fn pi_k_formula(real: &MatrixRealization, m: usize, g: &GroupElement, variant: PiKVariant) -> TangentBivector {
    let sign = match variant {
        PiKVariant::AsPrinted => -0.25,
        PiKVariant::Corrected => 0.25,
    };
    let legs = (0..m)
        .map(|a| {
            let (x, y) = (&real.basis()[a], &real.basis()[m + a]);
            (x.left_mul(g).sub(&x.right_mul(g)).scale(c(sign)), y.left_mul(g).add(&y.right_mul(g)))
        })
        .collect();
    TangentBivector::unchecked(g.clone(), legs)
}
