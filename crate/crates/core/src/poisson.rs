//! Poisson structures on polynomial coordinate charts.

use crate::dirac::{check_aligned_dirac, induced_poisson, AlignedSubmanifold, DiracError, DiracVerdict};
use crate::exactalg::{MultiVecError, Poly, PolyMultiVec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PoissonError {
    #[error("bivector has degree {0}, expected 2")]
    NotBivector(usize),
    #[error("chart has {names} coordinate names but bivector dimension {dim}")]
    NameCount { names: usize, dim: usize },
    #[error("volume density is identically zero")]
    ZeroVolume,
    #[error("divergence not polynomial: density does not divide the flux")]
    UnsupportedDensity,
    #[error("submanifold is not Dirac: {0}")]
    NotDirac(String),
    #[error(transparent)]
    MultiVec(#[from] MultiVecError),
    #[error(transparent)]
    Dirac(#[from] Box<DiracError>),
}

/// A bivector on a named chart together with a volume density `rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonChart {
    names: Vec<String>,
    pi: PolyMultiVec,
    volume: Poly,
}

/// Outcome of a Casimir test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CasimirVerdict {
    Casimir,
    /// First nonzero component of the Hamiltonian vector field.
    NotCasimir { index: usize, component: Poly },
}

impl CasimirVerdict {
    pub fn is_casimir(&self) -> bool {
        matches!(self, CasimirVerdict::Casimir)
    }
}

impl PoissonChart {
    pub fn new(names: Vec<String>, pi: PolyMultiVec, volume: Option<Poly>) -> Result<Self, PoissonError> {
        if pi.degree() != 2 {
            return Err(PoissonError::NotBivector(pi.degree()));
        }
        if names.len() != pi.dim() {
            return Err(PoissonError::NameCount { names: names.len(), dim: pi.dim() });
        }
        let volume = volume.unwrap_or_else(|| Poly::one(pi.nvars()));
        if volume.is_zero() {
            return Err(PoissonError::ZeroVolume);
        }
        if volume.nvars() != pi.nvars() {
            return Err(MultiVecError::VarMismatch(volume.nvars(), pi.nvars()).into());
        }
        Ok(PoissonChart { names, pi, volume })
    }

    /// Chart with the zero bivector.
    pub fn zero(names: Vec<String>) -> Self {
        let n = names.len();
        PoissonChart { names, pi: PolyMultiVec::zero(n, 2), volume: Poly::one(n) }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pi(&self) -> &PolyMultiVec {
        &self.pi
    }

    pub fn volume(&self) -> &Poly {
        &self.volume
    }

    pub fn with_volume(&self, volume: Poly) -> Result<Self, PoissonError> {
        PoissonChart::new(self.names.clone(), self.pi.clone(), Some(volume))
    }

    /// Coordinate function `x_i`.
    pub fn coord(&self, i: usize) -> Poly {
        Poly::var(self.pi.nvars(), i)
    }

    /// `[pi, pi]`; zero exactly when the bracket satisfies Jacobi.
    pub fn jacobiator(&self) -> PolyMultiVec {
        self.pi.schouten(&self.pi).expect("same chart")
    }

    pub fn is_poisson(&self) -> bool {
        self.jacobiator().is_zero()
    }

    /// `{f, g} = pi(df, dg)`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, PoissonError> {
        Ok(self.pi.contract(&[f.clone(), g.clone()])?)
    }

    /// `X_f` with `X_f(g) = {f, g}`.
    pub fn hamiltonian_vf(&self, f: &Poly) -> Result<PolyMultiVec, PoissonError> {
        if f.nvars() != self.pi.nvars() {
            return Err(MultiVecError::VarMismatch(f.nvars(), self.pi.nvars()).into());
        }
        let df: Vec<Poly> = (0..self.dim()).map(|i| f.diff(i)).collect();
        Ok(self.pi.interior(&df)?)
    }

    pub fn is_casimir(&self, f: &Poly) -> Result<CasimirVerdict, PoissonError> {
        let x = self.hamiltonian_vf(f)?;
        let first = x.components().next().map(|(idx, c)| (idx[0], c.clone()));
        Ok(match first {
            None => CasimirVerdict::Casimir,
            Some((index, component)) => CasimirVerdict::NotCasimir { index, component },
        })
    }

    /// `div X = (1/rho) sum_i d(rho X^i)/dx_i`, exact.
    pub fn divergence(&self, x: &PolyMultiVec) -> Result<Poly, PoissonError> {
        if x.degree() != 1 {
            return Err(MultiVecError::WrongDegree { expected: 1, got: x.degree() }.into());
        }
        let mut flux = Poly::zero(self.pi.nvars());
        for i in 0..self.dim() {
            flux = &flux + &(&self.volume * &x.component(&[i])).diff(i);
        }
        flux.div_exact(&self.volume).ok_or(PoissonError::UnsupportedDensity)
    }

    /// Modular vector field: `nu(f) = div X_f`, read off on coordinates.
    pub fn modular_vf(&self) -> Result<PolyMultiVec, PoissonError> {
        let mut comps = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            comps.push(self.divergence(&self.hamiltonian_vf(&self.coord(j))?)?);
        }
        if comps.is_empty() {
            return Ok(PolyMultiVec::zero(0, 1));
        }
        Ok(PolyMultiVec::vector_field(self.dim(), comps)?)
    }
}

/// The three vector fields of the relative modular identity on `Q`.
#[derive(Clone, Debug)]
pub struct RelativeModular {
    pub nu_r: PolyMultiVec,
    pub pr_nu_p: PolyMultiVec,
    pub nu_q: PolyMultiVec,
    pub relation_holds: bool,
}

/// Restriction map `y = 0`, re-indexed onto the `x` coordinates.
pub(crate) fn restriction_images(nvars: usize, x: &[usize]) -> Vec<Poly> {
    let m = x.len();
    (0..nvars)
        .map(|v| match x.iter().position(|&k| k == v) {
            Some(a) => Poly::var(m, a),
            None => Poly::zero(m),
        })
        .collect()
}

/// `nu_r(f) = sum_l d(X_f~)^{y_l}/dy_l` at `y = 0` for an extension `f~` of a
/// function on `Q` with `df~|_Q` annihilating `V_Q`.
pub fn relative_modular_value(q: &AlignedSubmanifold, f_ext: &Poly) -> Result<Poly, PoissonError> {
    let chart = q.chart();
    let res = restriction_images(chart.dim(), q.x_indices());
    for &l in q.y_indices() {
        if !f_ext.diff(l).compose(&res).is_zero() {
            return Err(PoissonError::NotDirac(format!(
                "extension has nonzero d/d{} on the submanifold",
                chart.names()[l]
            )));
        }
    }
    let xf = chart.hamiltonian_vf(f_ext)?;
    let mut acc = Poly::zero(chart.dim());
    for &l in q.y_indices() {
        acc = &acc + &xf.component(&[l]).diff(l);
    }
    Ok(acc.compose(&res))
}

/// Computes `nu_r` from its definition and checks `nu_r = pr_* nu_P - nu_Q`.
///
/// The volume on `P` is `rho dx ^ dy`, on `Q` it is `rho(x,0) dx`, and the
/// transverse form is `dy`.
pub fn relative_modular(q: &AlignedSubmanifold) -> Result<RelativeModular, PoissonError> {
    match check_aligned_dirac(q).map_err(Box::new)? {
        DiracVerdict::Pass => {}
        DiracVerdict::Fail(w) => return Err(PoissonError::NotDirac(w.to_string())),
    }
    let chart = q.chart();
    let xs = q.x_indices();
    let m = xs.len();
    let res = restriction_images(chart.dim(), xs);
    let mut nu_r = Vec::with_capacity(m);
    for &k in xs {
        nu_r.push(relative_modular_value(q, &chart.coord(k))?);
    }
    let nu_p = chart.modular_vf()?;
    let pr: Vec<Poly> = xs.iter().map(|&k| nu_p.component(&[k]).compose(&res)).collect();
    let induced = induced_poisson(q).map_err(Box::new)?;
    let nu_q = induced.modular_vf()?;
    let build = |c: Vec<Poly>| -> Result<PolyMultiVec, PoissonError> {
        if c.is_empty() {
            Ok(PolyMultiVec::zero(0, 1))
        } else {
            Ok(PolyMultiVec::vector_field(m, c)?)
        }
    };
    let nu_r = build(nu_r)?;
    let pr_nu_p = build(pr)?;
    let relation_holds = pr_nu_p.sub(&nu_q)? == nu_r;
    Ok(RelativeModular { nu_r, pr_nu_p, nu_q, relation_holds })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, Scalar};

    fn chart(names: &[&str], entries: &[(usize, usize, &str)]) -> PoissonChart {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut pi = PolyMultiVec::zero(names.len(), 2);
        for &(i, j, s) in entries {
            pi.add_component(&[i, j], parse_poly(s, &names).unwrap()).unwrap();
        }
        PoissonChart::new(names, pi, None).unwrap()
    }

    fn p(c: &PoissonChart, s: &str) -> Poly {
        parse_poly(s, c.names()).unwrap()
    }

    fn dubrovin() -> PoissonChart {
        chart(&["x", "y", "z"], &[(0, 1, "x*y - 2*z"), (1, 2, "y*z - 2*x"), (2, 0, "z*x - 2*y")])
    }

    #[test]
    fn dubrovin_bracket() {
        let c = dubrovin();
        assert!(c.jacobiator().is_zero());
        assert_eq!(c.bracket(&p(&c, "x"), &p(&c, "y")).unwrap(), p(&c, "x*y - 2*z"));
        assert!(c.is_casimir(&p(&c, "x^2 + y^2 + z^2 - x*y*z")).unwrap().is_casimir());
        assert!(!c.is_casimir(&p(&c, "x")).unwrap().is_casimir());
        assert!(c.hamiltonian_vf(&p(&c, "x^2 + y^2 + z^2 - x*y*z")).unwrap().is_zero());
    }

    #[test]
    fn hamiltonian_fields() {
        let c = chart(&["x1", "x2"], &[(0, 1, "1")]);
        assert_eq!(c.hamiltonian_vf(&p(&c, "x1")).unwrap(), PolyMultiVec::monomial(2, &[1], Poly::one(2)).unwrap());
        let c = chart(&["x1", "x2"], &[(0, 1, "x1")]);
        let expect = PolyMultiVec::monomial(2, &[0], p(&c, "-x1")).unwrap();
        assert_eq!(c.hamiltonian_vf(&p(&c, "x2")).unwrap(), expect);
    }

    #[test]
    fn modular_fields() {
        let c = chart(&["x1", "x2"], &[(0, 1, "x1")]);
        let nu = c.modular_vf().unwrap();
        assert_eq!(nu, PolyMultiVec::monomial(2, &[1], Poly::constant(2, Scalar::from_int(-1))).unwrap());
        assert!(nu.schouten(c.pi()).unwrap().is_zero());
        let scaled = c.with_volume(Poly::constant(2, Scalar::from_int(7))).unwrap();
        assert_eq!(scaled.modular_vf().unwrap(), nu);
        let so3 = chart(&["x1", "x2", "x3"], &[(0, 1, "x3"), (1, 2, "x1"), (2, 0, "x2")]);
        assert!(so3.modular_vf().unwrap().is_zero());
        assert!(chart(&["a", "b"], &[(0, 1, "1")]).modular_vf().unwrap().is_zero());
    }

    #[test]
    fn density_must_divide() {
        let c = chart(&["x1", "x2"], &[(0, 1, "x1")]);
        let c = c.with_volume(p(&c, "1 + x2")).unwrap();
        assert!(matches!(c.modular_vf(), Err(PoissonError::UnsupportedDensity)));
    }

    #[test]
    fn relative_modular_plane() {
        let c = chart(&["x", "y"], &[(0, 1, "y")]);
        let q = AlignedSubmanifold::new(c.clone(), vec![0], vec![1]).unwrap();
        let r = relative_modular(&q).unwrap();
        let dx = PolyMultiVec::monomial(1, &[0], Poly::one(1)).unwrap();
        assert_eq!(r.nu_r, dx);
        assert_eq!(r.pr_nu_p, dx);
        assert!(r.nu_q.is_zero());
        assert!(r.relation_holds);
        assert!(r.nu_r.schouten(&PolyMultiVec::zero(1, 2)).unwrap().is_zero());
        let alt = relative_modular_value(&q, &p(&c, "x + x*y^2")).unwrap();
        assert_eq!(alt, Poly::one(1));
        assert!(relative_modular_value(&q, &p(&c, "x + y")).is_err());
    }

    #[test]
    fn relative_modular_four() {
        let c = chart(&["x1", "x2", "y1", "y2"], &[(0, 1, "1"), (2, 3, "y1*y2")]);
        let q = AlignedSubmanifold::new(c, vec![0, 1], vec![2, 3]).unwrap();
        let r = relative_modular(&q).unwrap();
        assert!(r.nu_r.is_zero() && r.pr_nu_p.is_zero() && r.nu_q.is_zero());
        assert!(r.relation_holds);
    }
}
