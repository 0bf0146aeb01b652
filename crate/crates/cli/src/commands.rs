//! Subcommand tree and dispatch.

use crate::chartfile::{parse_chart, ChartFile};
use crate::fixtures;
use crate::report::{Report, Status};
use clap::{Args, Parser, Subcommand};
use dirac_core::dirac::{
    affine_lie_poisson_dirac, check_aligned_dirac, fixed_locus_projection, fixed_locus_symbolic, induced_poisson,
    leaf_slice_obstruction, rank_relation, transverse_from_reductive, AlignedSubmanifold, DiracVerdict,
    LinearInvolution, SliceVerdict,
};
use dirac_core::dynr::{equivariance_check, residual_scan, DynamicalRFamily, FamilyKind};
use dirac_core::exactalg::{parse_poly, parse_scalar, ExactMatrix, Monomial, Poly, PolyMultiVec, Scalar};
use dirac_core::groupnum::reports::{bruhat_report, crosscheck_report, stokes_report};
use dirac_core::liealg::{
    alg_schouten, builtin, chi_check, drinfeld_double, parse_lie_file, sl_chevalley, standard_r, su_compact,
    symmetric_bialgebra_check, validate_lie, AlgElement, LieAlgebra, LinearAlgMap,
};
use dirac_core::oracle::{alg_schouten_oracle, chart_schouten};
use dirac_core::poisson::{relative_modular, CasimirVerdict, PoissonChart};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    /// A chart loaded for another command is not Poisson.
    #[error("chart is not Poisson")]
    NotPoisson { witness: String },
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

type CliResult = Result<Report, CliError>;

#[derive(Parser, Debug)]
#[command(name = "dirac", version, about = "Checks Poisson, Dirac and Poisson-Lie structures")]
struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Numerical tolerance (exact checks ignore it).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Number of sample points or random pairs.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Emit `key=value` lines.
    #[arg(long, global = true)]
    porcelain: bool,
    /// Do not check the Jacobi identity when loading a chart.
    #[arg(long, global = true)]
    skip_jacobi: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Checks on a single chart.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Dirac submanifolds and induced structures.
    #[command(subcommand)]
    Dirac(DiracCmd),
    /// Modular vector field, and the relative identity when the chart declares a submanifold.
    Modular { file: String },
    /// Lie algebras and symmetric bialgebras.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Numerical checks on Poisson-Lie groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Dynamical r-matrices.
    #[command(subcommand)]
    Dynr(DynrCmd),
    /// Main implementation against brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Jacobiator `[pi, pi]` computed exactly.
    Jacobi { file: String },
    /// Whether `f` Poisson-commutes with every coordinate.
    Casimir {
        file: String,
        #[arg(long)]
        f: String,
    },
    /// The bracket `{f, g}`.
    Bracket {
        file: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
}

#[derive(Subcommand, Debug)]
enum DiracCmd {
    /// Aligned criterion for `Q = {y = 0}`.
    Aligned {
        file: String,
        /// Coordinates spanning `Q`, overriding the file.
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        x: Option<Vec<String>>,
    },
    /// Fixed locus of a linear Poisson involution, by two routes.
    FixedLocus {
        file: String,
        /// Matrix rows separated by `;`, entries by spaces or commas.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// `mu + m^perp` in a Lie-Poisson space.
    AffineLie { setup: String },
    /// Transverse structure from a reductive splitting.
    Transverse { setup: String },
    /// Leaf-slice family: is the variation a Poisson coboundary?
    Slice {
        file: String,
        /// Parameter values, space or comma separated.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
}

#[derive(Subcommand, Debug)]
enum LieCmd {
    /// Antisymmetry and Jacobi of the structure constants.
    Validate { algebra: String },
    /// Symmetric bialgebra, double and chi checks.
    Check { algebra: String },
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Induced bracket on the Stokes fixed locus against the Dubrovin bracket.
    Stokes(GroupArgs),
    /// Two routes on the symmetric fixed locus of `SL(n, R)`.
    Crosscheck(GroupArgs),
    /// Two routes on the transpose-fixed locus of `SU(n)`.
    Bruhat(GroupArgs),
}

#[derive(Subcommand, Debug)]
enum DynrCmd {
    /// Residual constancy, ad-invariance and gradients.
    Cdybe {
        #[arg(long, default_value = "sl2")]
        algebra: String,
        #[arg(long, default_value = "trig")]
        family: String,
    },
    /// `(Lambda^2 s) r(lambda) = -r(s* lambda)`.
    Equivariance {
        #[arg(long, default_value = "sl2")]
        algebra: String,
        #[arg(long, default_value = "trig")]
        family: String,
        /// `transpose` or `identity`.
        #[arg(long, default_value = "transpose")]
        map: String,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Chart Schouten bracket in dimension 3, degrees up to 2.
    Schouten {
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Algebraic Schouten bracket on `Lambda g`.
    Lie {
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value = "sl2")]
        algebra: String,
    },
}

struct Globals {
    seed: Option<u64>,
    tol: Option<f64>,
    samples: Option<usize>,
    skip_jacobi: bool,
}

impl Globals {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }
}

/// Runs one command; returns the exit code and the report.
pub fn run_command<I, T>(argv: I) -> (i32, Report)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (r, _) = dispatch(argv);
    (r.exit_code(), r)
}

/// Runs one command; returns the exit code and the rendered output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (r, porcelain) = dispatch(argv);
    (r.exit_code(), r.render(porcelain))
}

fn dispatch<I, T>(argv: I) -> (Report, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            let mut r = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Report::new("help"),
                _ => Report::error("usage", text.trim_end()),
            };
            r.text = Some(text);
            return (r, false);
        }
    };
    let g = Globals { seed: cli.seed, tol: cli.tol, samples: cli.samples, skip_jacobi: cli.skip_jacobi };
    let echo = echo(&cli.cmd);
    let out = match &cli.cmd {
        Cmd::Check(c) => check(c, &g),
        Cmd::Dirac(c) => dirac(c, &g),
        Cmd::Modular { file } => modular(file, &g),
        Cmd::Lie(c) => lie(c),
        Cmd::Group(c) => group(c, &g),
        Cmd::Dynr(c) => dynr(c, &g),
        Cmd::Oracle(c) => oracle(c, &g),
    };
    let mut report = match out {
        Ok(r) => r,
        Err(CliError::Input(m)) => Report::error("", m),
        Err(CliError::NotPoisson { witness }) => {
            let mut r = Report::new("");
            r.status = Status::Fail;
            r.field("jacobiator", "nonzero").witness(witness);
            r.error = Some("chart is not Poisson (use --skip-jacobi to load it anyway)".into());
            r
        }
    };
    report.command = echo;
    (report, cli.porcelain)
}

fn echo(cmd: &Cmd) -> String {
    match cmd {
        Cmd::Check(CheckCmd::Jacobi { file }) => format!("check jacobi {}", file),
        Cmd::Check(CheckCmd::Casimir { file, .. }) => format!("check casimir {}", file),
        Cmd::Check(CheckCmd::Bracket { file, .. }) => format!("check bracket {}", file),
        Cmd::Dirac(DiracCmd::Aligned { file, .. }) => format!("dirac aligned {}", file),
        Cmd::Dirac(DiracCmd::FixedLocus { file, .. }) => format!("dirac fixed-locus {}", file),
        Cmd::Dirac(DiracCmd::AffineLie { setup }) => format!("dirac affine-lie {}", setup),
        Cmd::Dirac(DiracCmd::Transverse { setup }) => format!("dirac transverse {}", setup),
        Cmd::Dirac(DiracCmd::Slice { file, .. }) => format!("dirac slice {}", file),
        Cmd::Modular { file } => format!("modular {}", file),
        Cmd::Lie(LieCmd::Validate { algebra }) => format!("lie validate {}", algebra),
        Cmd::Lie(LieCmd::Check { algebra }) => format!("lie check {}", algebra),
        Cmd::Group(GroupCmd::Stokes(a)) => format!("group stokes --n {}", a.n),
        Cmd::Group(GroupCmd::Crosscheck(a)) => format!("group crosscheck --n {}", a.n),
        Cmd::Group(GroupCmd::Bruhat(a)) => format!("group bruhat --n {}", a.n),
        Cmd::Dynr(DynrCmd::Cdybe { algebra, family }) => format!("dynr cdybe --algebra {} --family {}", algebra, family),
        Cmd::Dynr(DynrCmd::Equivariance { algebra, family, map }) => {
            format!("dynr equivariance --algebra {} --family {} --map {}", algebra, family, map)
        }
        Cmd::Oracle(OracleCmd::Schouten { pairs }) => format!("oracle schouten --pairs {}", pairs),
        Cmd::Oracle(OracleCmd::Lie { pairs, algebra }) => format!("oracle lie --pairs {} --algebra {}", pairs, algebra),
    }
}

fn jacobi_witness(chart: &PoissonChart) -> Option<String> {
    let j = chart.jacobiator();
    let (idx, p) = j.components().next()?;
    let legs: Vec<&str> = idx.iter().map(|&i| chart.names()[i].as_str()).collect();
    Some(format!("[pi,pi]^({}) = {}", legs.join(","), p.display_with(chart.names())))
}

fn load_chart(path: &str, g: &Globals) -> Result<ChartFile, CliError> {
    let text = fixtures::load(path).map_err(CliError::Input)?;
    let file = parse_chart(&text).map_err(|e| input(format!("{}:{}", path, e)))?;
    if !g.skip_jacobi {
        if let Some(witness) = jacobi_witness(&file.chart) {
            return Err(CliError::NotPoisson { witness });
        }
    }
    Ok(file)
}

fn all_names(file: &ChartFile) -> Vec<String> {
    file.chart.names().iter().chain(&file.params).cloned().collect()
}

fn check(c: &CheckCmd, g: &Globals) -> CliResult {
    let mut r = Report::new("");
    match c {
        CheckCmd::Jacobi { file } => {
            let text = fixtures::load(file).map_err(CliError::Input)?;
            let f = parse_chart(&text).map_err(|e| input(format!("{}:{}", file, e)))?;
            let j = f.chart.jacobiator();
            r.field("dim", f.chart.dim());
            r.field("jacobiator_terms", j.components().count());
            r.field("jacobiator", if j.is_zero() { "0".to_string() } else { "nonzero".to_string() });
            if let Some(w) = jacobi_witness(&f.chart) {
                r.witness(w);
            }
            r.require(j.is_zero());
        }
        CheckCmd::Casimir { file, f } => {
            let cf = load_chart(file, g)?;
            let names = all_names(&cf);
            let p = parse_poly(f, &names).map_err(|e| input(format!("--f: {}", e)))?;
            let x = cf.chart.hamiltonian_vf(&p).map_err(input)?;
            r.field("f", p.display_with(&names));
            r.field("hamiltonian_vf", x.display_with(&names));
            match cf.chart.is_casimir(&p).map_err(input)? {
                CasimirVerdict::Casimir => {}
                CasimirVerdict::NotCasimir { index, component } => {
                    r.witness(format!("X_f^{} = {}", names[index], component.display_with(&names)));
                    r.require(false);
                }
            }
        }
        CheckCmd::Bracket { file, f, g: gs } => {
            let cf = load_chart(file, g)?;
            let names = all_names(&cf);
            let a = parse_poly(f, &names).map_err(|e| input(format!("--f: {}", e)))?;
            let b = parse_poly(gs, &names).map_err(|e| input(format!("--g: {}", e)))?;
            let v = cf.chart.bracket(&a, &b).map_err(input)?;
            r.field("bracket", v.display_with(&names));
        }
    }
    Ok(r)
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    if rng.gen_bool(0.8) {
        Scalar::from_int(rng.gen_range(-3..=3))
    } else {
        Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
    }
}

fn aligned_submanifold(cf: &ChartFile, x: &Option<Vec<String>>) -> Result<AlignedSubmanifold, CliError> {
    let names = x
        .clone()
        .or_else(|| cf.submanifold.clone())
        .ok_or_else(|| input("no submanifold: add `submanifold x = ...` to the file or pass --x"))?;
    let names: Vec<String> = names.iter().flat_map(|n| n.split_whitespace().map(str::to_string)).collect();
    AlignedSubmanifold::from_names(cf.chart.clone(), &names).map_err(input)
}

fn dirac(c: &DiracCmd, g: &Globals) -> CliResult {
    let mut r = Report::new("");
    match c {
        DiracCmd::Aligned { file, x } => {
            let cf = load_chart(file, g)?;
            let q = aligned_submanifold(&cf, x)?;
            r.field("x", q.x_names().join(" "));
            match check_aligned_dirac(&q).map_err(input)? {
                DiracVerdict::Fail(w) => {
                    r.field("criterion", "fail");
                    r.witness(w.to_string());
                    r.require(false);
                }
                DiracVerdict::Pass => {
                    r.field("criterion", "pass");
                    let induced = induced_poisson(&q).map_err(input)?;
                    r.field("induced", induced.pi().display_with(induced.names()));
                    let samples = g.samples.unwrap_or(10);
                    r.seed = Some(g.seed());
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed());
                    let mut held = 0;
                    for _ in 0..samples {
                        let pt: Vec<Scalar> = (0..q.x_indices().len()).map(|_| random_scalar(&mut rng)).collect();
                        let rel = rank_relation(&q, &pt).map_err(input)?;
                        if rel.holds() {
                            held += 1;
                        } else {
                            let p: Vec<String> = pt.iter().map(|s| s.to_string()).collect();
                            r.witness(format!(
                                "rank relation fails at ({}): induced {} vs {}",
                                p.join(", "),
                                rel.induced_rank,
                                rel.intersection_dim
                            ));
                        }
                    }
                    r.field("rank_relation", format!("{}/{}", held, samples));
                    r.require(held == samples);
                }
            }
        }
        DiracCmd::FixedLocus { file, s } => {
            let cf = load_chart(file, g)?;
            let rows = s
                .split(';')
                .map(|row| {
                    row.split(|ch: char| ch.is_whitespace() || ch == ',')
                        .filter(|t| !t.is_empty())
                        .map(|t| parse_scalar(t).map_err(|e| input(format!("--s: {}", e))))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let n = cf.chart.dim();
            if rows.len() != n || rows.iter().any(|row| row.len() != n) {
                return Err(input(format!("--s must be a {}x{} matrix", n, n)));
            }
            let inv = LinearInvolution::new(ExactMatrix::from_rows(rows)).map_err(input)?;
            let sym = fixed_locus_symbolic(&cf.chart, &inv).map_err(input)?;
            let proj = fixed_locus_projection(&cf.chart, &inv).map_err(input)?;
            let agree = sym.induced.pi() == proj.pi();
            r.field("fixed_dim", sym.fixed_dim);
            r.field("induced_eigen_chart", sym.induced.pi().display_with(sym.induced.names()));
            r.field("induced_projection", proj.pi().display_with(proj.names()));
            r.field("routes_agree", agree);
            r.require(agree);
        }
        DiracCmd::AffineLie { setup } => {
            let (alg, l, m, mu) = load_setup(setup)?;
            let v = affine_lie_poisson_dirac(&alg, &l, &m, &mu).map_err(input)?;
            match &v.outcome {
                Ok(chart) => {
                    r.field("criterion", "pass");
                    r.field("induced", chart.pi().display_with(chart.names()));
                }
                Err(f) => {
                    r.field("criterion", "fail");
                    r.witness(f.to_string());
                }
            }
            r.field("aligned_agrees", v.aligned_agrees);
            r.require(v.passed() && v.aligned_agrees);
        }
        DiracCmd::Transverse { setup } => {
            let (alg, l, m, mu) = load_setup(setup)?;
            let chart = transverse_from_reductive(&alg, &l, &m, &mu).map_err(input)?;
            r.field("dim", chart.dim());
            r.field("transverse", chart.pi().display_with(chart.names()));
        }
        DiracCmd::Slice { file, at, degree } => {
            let cf = load_chart(file, g)?;
            let t0 = at
                .split(|ch: char| ch.is_whitespace() || ch == ',')
                .filter(|t| !t.is_empty())
                .map(|t| parse_scalar(t).map_err(|e| input(format!("--at: {}", e))))
                .collect::<Result<Vec<_>, _>>()?;
            r.field("parameters", cf.params.join(" "));
            r.field("degree", degree);
            match leaf_slice_obstruction(cf.chart.pi(), &t0, *degree).map_err(input)? {
                SliceVerdict::Solvable { witnesses } => {
                    r.field("coboundary", "yes");
                    for (p, w) in cf.params.iter().zip(&witnesses) {
                        r.witness(format!("X_{} = {}", p, w.display_with(cf.chart.names())));
                    }
                }
                SliceVerdict::UnsolvableUpTo { degree, parameter } => {
                    r.field("coboundary", format!("no solution up to degree {}", degree));
                    r.witness(format!("parameter {}", cf.params[parameter]));
                    r.require(false);
                }
            }
        }
    }
    Ok(r)
}

/// Algebra by built-in name, or from a `.lie` file.
fn load_algebra(name: &str) -> Result<LieAlgebra, CliError> {
    if let Ok(g) = builtin(name) {
        return Ok(g);
    }
    let text = fixtures::load(name).map_err(|_| input(format!("unknown algebra `{}`", name)))?;
    parse_lie_file(&text).map_err(|e| input(format!("{}: {}", name, e)))
}

type Setup = (LieAlgebra, Vec<Vec<Scalar>>, Vec<Vec<Scalar>>, Vec<Scalar>);

/// Reads `algebra NAME`, `l LABELS`, `m LABELS`, `mu VALUES`.
fn load_setup(path: &str) -> Result<Setup, CliError> {
    let text = fixtures::load(path).map_err(CliError::Input)?;
    let (mut alg, mut l, mut m, mut mu) = (None, None, None, None);
    for (ln, full) in text.lines().enumerate() {
        let at = |msg: String| input(format!("{}:{}: {}", path, ln + 1, msg));
        let mut words = full.split('#').next().unwrap_or("").split_whitespace();
        let Some(key) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        match key {
            "algebra" => {
                let [name] = rest[..] else { return Err(at("expected `algebra NAME`".into())) };
                alg = Some(load_algebra(name)?);
            }
            "l" | "m" => {
                let g = alg.as_ref().ok_or_else(|| at("`algebra` must come first".into()))?;
                let vs = rest
                    .iter()
                    .map(|w| g.index_of(w).map(|i| g.basis_vector(i)).ok_or_else(|| at(format!("unknown label `{}`", w))))
                    .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
                if key == "l" {
                    l = Some(vs)
                } else {
                    m = Some(vs)
                }
            }
            "mu" => {
                mu = Some(rest.iter().map(|w| parse_scalar(w).map_err(|e| at(e.to_string()))).collect::<Result<Vec<_>, _>>()?);
            }
            other => return Err(at(format!("unknown directive `{}`", other))),
        }
    }
    let missing = |k: &str| input(format!("{}: missing `{}`", path, k));
    Ok((alg.ok_or_else(|| missing("algebra"))?, l.unwrap_or_default(), m.unwrap_or_default(), mu.ok_or_else(|| missing("mu"))?))
}

fn modular(file: &str, g: &Globals) -> CliResult {
    let cf = load_chart(file, g)?;
    let mut r = Report::new("");
    let names = all_names(&cf);
    let nu = cf.chart.modular_vf().map_err(input)?;
    r.field("modular", nu.display_with(&names));
    if let Some(q) = cf.aligned() {
        let q = q.map_err(input)?;
        let rel = relative_modular(&q).map_err(input)?;
        let xn = q.x_names();
        r.field("nu_r", rel.nu_r.display_with(&xn));
        r.field("pr_nu_p", rel.pr_nu_p.display_with(&xn));
        r.field("nu_q", rel.nu_q.display_with(&xn));
        r.field("relation", if rel.relation_holds { "nu_r = pr_nu_p - nu_q" } else { "violated" });
        r.require(rel.relation_holds);
    }
    Ok(r)
}

fn lie(c: &LieCmd) -> CliResult {
    let mut r = Report::new("");
    match c {
        LieCmd::Validate { algebra } => {
            let g = load_algebra(algebra)?;
            let v = validate_lie(&g);
            r.field("dim", g.dim());
            r.field("verdict", &v);
            r.require(v.is_valid());
        }
        LieCmd::Check { algebra } => {
            let n: usize = algebra
                .get(2..)
                .and_then(|s| s.parse().ok())
                .filter(|n| (2..=6).contains(n))
                .ok_or_else(|| input(format!("`lie check` needs sl2..sl6 or su2..su6, got `{}`", algebra)))?;
            let (g, rm, phi) = match &algebra[..2] {
                "sl" => {
                    let g = sl_chevalley(n);
                    let phi = LinearAlgMap::transpose(&g).map_err(input)?;
                    let rm = standard_r(&g);
                    (g, rm, phi)
                }
                "su" => {
                    let c = su_compact(n);
                    (c.algebra, c.r_hat, c.phi_hat)
                }
                _ => return Err(input(format!("`lie check` needs sl2..sl6 or su2..su6, got `{}`", algebra))),
            };
            let mut checks = symmetric_bialgebra_check(&g, &rm, &phi);
            let d = drinfeld_double(&g, &rm).map_err(input)?;
            checks.extend("double: ", d.checks());
            checks.extend("", chi_check(&d, &phi));
            for it in &checks.items {
                r.field(&slug(&it.name), if it.passed { "pass" } else { "fail" });
                if !it.passed {
                    r.witness(format!("{}: {}", it.name, it.detail));
                }
            }
            r.require(checks.passed());
        }
    }
    Ok(r)
}

/// `"phi r = -r"` becomes `phi_r_eq_minus_r`.
fn slug(name: &str) -> String {
    let spaced = name.replace("= -", " eq minus ").replace('=', " eq ");
    let words: Vec<String> = spaced
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_ascii_lowercase)
        .collect();
    words.join("_")
}

fn group(c: &GroupCmd, g: &Globals) -> CliResult {
    let tol = g.tol.unwrap_or(1e-8);
    let seed = g.seed();
    let mut r = Report::new("");
    r.seed = Some(seed);
    match c {
        GroupCmd::Stokes(a) => {
            let rep = stokes_report(a.n, g.samples.unwrap_or(20), seed, tol).map_err(input)?;
            r.fields(rep.lines());
            r.require(rep.passed());
        }
        GroupCmd::Crosscheck(a) => {
            let rep = crosscheck_report(a.n, g.samples.unwrap_or(10), seed, tol).map_err(input)?;
            r.fields(rep.lines());
            r.require(rep.passed());
        }
        GroupCmd::Bruhat(a) => {
            let rep = bruhat_report(a.n, g.samples.unwrap_or(10), seed, tol).map_err(input)?;
            r.fields(rep.lines());
            r.require(rep.passed());
        }
    }
    r.fields.retain(|(k, _)| k != "seed");
    Ok(r)
}

fn family(algebra: &str, fam: &str) -> Result<DynamicalRFamily, CliError> {
    let kind: FamilyKind = fam.parse().map_err(input)?;
    DynamicalRFamily::new(&load_algebra(algebra)?, kind).map_err(input)
}

fn dynr(c: &DynrCmd, g: &Globals) -> CliResult {
    let tol = g.tol.unwrap_or(1e-7);
    let samples = g.samples.unwrap_or(10);
    let mut r = Report::new("");
    r.seed = Some(g.seed());
    match c {
        DynrCmd::Cdybe { algebra, family: fam } => {
            let f = family(algebra, fam)?;
            let rep = residual_scan(&f, samples, g.seed(), tol).map_err(input)?;
            r.fields(rep.lines());
            r.fields.retain(|(k, _)| k != "seed");
            r.require(rep.passed());
        }
        DynrCmd::Equivariance { algebra, family: fam, map } => {
            let f = family(algebra, fam)?;
            let s = match map.as_str() {
                "transpose" => LinearAlgMap::transpose(f.algebra()).map_err(input)?,
                "identity" => LinearAlgMap::identity(f.algebra().dim()),
                other => return Err(input(format!("unknown map `{}` (transpose | identity)", other))),
            };
            let rep = equivariance_check(&f, &s, samples, g.seed()).map_err(input)?;
            r.field("samples", rep.samples);
            r.field("defect", format!("{:.3e}", rep.defect));
            r.require(rep.passed(tol));
        }
    }
    Ok(r)
}

/// Random polynomial of total degree at most `deg`, up to three terms.
fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..rng.gen_range(0..=3) {
        let mut e = vec![0u32; nvars];
        for _ in 0..rng.gen_range(0..=deg) {
            e[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(Monomial(e), random_scalar(rng));
    }
    p
}

fn subsets(dim: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << dim)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..dim).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn random_multivec(rng: &mut ChaCha8Rng, dim: usize, degree: usize, pdeg: u32) -> PolyMultiVec {
    let mut m = PolyMultiVec::zero(dim, degree);
    for idx in subsets(dim, degree) {
        if rng.gen_bool(0.6) {
            m.add_component(&idx, random_poly(rng, dim, pdeg)).expect("valid index");
        }
    }
    m
}

fn random_alg(rng: &mut ChaCha8Rng, dim: usize, degree: usize) -> AlgElement<Scalar> {
    let mut a = AlgElement::zero(dim, degree);
    for idx in subsets(dim, degree) {
        if rng.gen_bool(0.4) {
            a.add_term(&idx, random_scalar(rng));
        }
    }
    a
}

fn oracle(c: &OracleCmd, g: &Globals) -> CliResult {
    let seed = g.seed();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new("");
    r.seed = Some(seed);
    let mut mismatches = 0;
    let total;
    match c {
        OracleCmd::Schouten { pairs } => {
            total = *pairs;
            let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
            for k in 0..*pairs {
                let (da, db) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                let a = random_multivec(&mut rng, 3, da, 2);
                let b = random_multivec(&mut rng, 3, db, 2);
                let main = a.schouten(&b).map_err(input)?;
                let brute = chart_schouten(&a, &b).map_err(input)?;
                if main != brute {
                    mismatches += 1;
                    if mismatches <= 3 {
                        r.witness(format!("pair {}: [{}, {}]", k, a.display_with(&names), b.display_with(&names)));
                    }
                }
            }
        }
        OracleCmd::Lie { pairs, algebra } => {
            total = *pairs;
            let alg = load_algebra(algebra)?;
            let n = alg.dim();
            for k in 0..*pairs {
                let (da, db) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
                let a = random_alg(&mut rng, n, da);
                let b = random_alg(&mut rng, n, db);
                if alg_schouten(&alg, &a, &b) != alg_schouten_oracle(&alg, &a, &b) {
                    mismatches += 1;
                    if mismatches <= 3 {
                        r.witness(format!("pair {} (degrees {}, {})", k, da, db));
                    }
                }
            }
        }
    }
    r.field("pairs", total);
    r.field("mismatches", mismatches);
    r.require(mismatches == 0);
    Ok(r)
}
