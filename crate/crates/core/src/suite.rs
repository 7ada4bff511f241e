//! Named verification suites over the model catalog, each producing one
//! report with the configuration echoed and the pre-filter tally attached.

use std::path::PathBuf;
use std::time::Instant;

use crate::cohom::{classical_lie, co_jacobi_check, sigma_from_hopf, solve_coboundary};
use crate::dsl::{eval_in, print_presentation};
use crate::duality::{rotation_power_identities, poisson_verify_all, quantization_crosscheck, MatrixModel, SigmaTable};
use crate::error::{Error, Result};
use crate::hopf::{classical_limit, cocommutator, verify_bialgebra, verify_bicross, verify_casimir, verify_comodule, CheckOpts, Mode};
use crate::models::{shipped_source, Catalog};
use crate::ncalg::{confluence_check, Ctx, Element};
use crate::projrep::{Galilei2d, COMPOSE_CAP};
use crate::report::{Check, Prefilter, Report, Status};
use crate::scalars::{Poly, Sym};

/// Suites in the order `all` runs them.
pub const SUITES: &[&str] =
    &["algebra", "group", "casimirs", "bicross", "cocommutator", "rmatrix", "duality", "spacetime", "projrep"];

pub const ORDER_CAP: u32 = 6;
pub const DEGREE_CAP: u32 = 8;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    /// Truncation order in `h` for series evaluation and the multiplier.
    pub order: u32,
    /// Degree bound for the monomial sweeps of the duality suite.
    pub degree: u32,
    pub mode: Mode,
    /// Model files `(file name, text)` replacing or extending the shipped ones.
    pub models: Vec<(String, String)>,
    pub json: Option<PathBuf>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { suite: "all".into(), order: 4, degree: 6, mode: Mode::Both, models: Vec::new(), json: None, seed: 0 }
    }
}

impl SuiteConfig {
    pub fn new(suite: impl Into<String>) -> SuiteConfig {
        SuiteConfig { suite: suite.into(), ..SuiteConfig::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.suite != "all" && !SUITES.contains(&self.suite.as_str()) {
            return Err(Error::Argument(format!("unknown suite `{}`; expected one of {} or all", self.suite, SUITES.join(", "))));
        }
        if self.order > ORDER_CAP {
            return Err(Error::Cap(format!("order {} exceeds {ORDER_CAP}", self.order)));
        }
        if self.degree > DEGREE_CAP {
            return Err(Error::Cap(format!("degree {} exceeds {DEGREE_CAP}", self.degree)));
        }
        Ok(())
    }
}

pub fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Formal => "formal",
        Mode::Series => "series",
        Mode::Both => "both",
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "formal" => Ok(Mode::Formal),
        "series" => Ok(Mode::Series),
        "both" => Ok(Mode::Both),
        _ => Err(Error::Argument(format!("unknown mode `{s}`; expected formal, series or both"))),
    }
}

/// Runs the configured suite. The report is deterministic for a fixed
/// configuration; wall times appear in the text rendering only.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let cat = Catalog::with_overrides(&config.models)?;
    let mut pf = Prefilter::new(config.seed);
    let mut report = Report::new(config.suite.clone());
    if config.suite == "all" {
        for name in SUITES {
            report.absorb(name, run_one(name, config, &cat, &mut pf)?);
        }
    } else {
        report.absorb("", run_one(&config.suite, config, &cat, &mut pf)?);
    }
    report.add_tally(&pf);
    let echo = &mut report.config;
    echo.insert("suite".into(), config.suite.clone());
    echo.insert("order".into(), config.order.to_string());
    echo.insert("degree".into(), config.degree.to_string());
    echo.insert("mode".into(), mode_name(config.mode).into());
    echo.insert("seed".into(), config.seed.to_string());
    let files: Vec<&str> = config.models.iter().map(|(n, _)| n.as_str()).collect();
    echo.insert("models".into(), if files.is_empty() { "shipped".into() } else { format!("shipped + {}", files.join(", ")) });
    Ok(report)
}

fn run_one(name: &str, config: &SuiteConfig, cat: &Catalog, pf: &mut Prefilter) -> Result<Report> {
    let opts = CheckOpts { mode: config.mode, order: config.order, ortho: false };
    match name {
        "algebra" => algebra(cat, opts, pf),
        "group" => group(cat, pf),
        "casimirs" => casimirs(cat, opts, pf),
        "bicross" => bicross(cat, config, opts, pf),
        "cocommutator" => cocommutator_table(cat, pf),
        "rmatrix" => rmatrix(cat),
        "duality" => duality(cat, config),
        "spacetime" => verify_comodule(cat.comodule("spacetime_coaction")?, pf),
        "projrep" => projrep(cat, config, pf),
        _ => Err(Error::Argument(format!("unknown suite `{name}`"))),
    }
}

fn algebra(cat: &Catalog, opts: CheckOpts, pf: &mut Prefilter) -> Result<Report> {
    let p = cat.presentation("galilei_algebra_kappa")?;
    let mut report = Report::new("algebra");
    report.absorb("confluence", confluence_check(&p, false, pf)?);
    report.absorb("hopf", verify_bialgebra(&p, opts, pf)?);
    let t0 = Instant::now();
    let lim = classical_limit(&p, "galilei_algebra_classical")?;
    let shipped = cat.presentation("galilei_algebra_classical")?;
    let (a, b) = (print_presentation(&lim), print_presentation(&shipped));
    report.push(
        Check::pass_if("classical-limit", "h -> 0 limit is the Galilei algebra", a == b, if a == b { "0".into() } else { a })
            .took(t0),
    );
    Ok(report)
}

/// The group with and without the orthogonality of `R` among its relations.
fn group(cat: &Catalog, pf: &mut Prefilter) -> Result<Report> {
    let g = cat.presentation("galilei_group_kappa")?;
    let mut report = Report::new("group");
    for (prefix, ortho) in [("plain", false), ("ortho", true)] {
        report.absorb(&format!("{prefix}/confluence"), confluence_check(&g, ortho, pf)?);
        let opts = CheckOpts { mode: Mode::Formal, order: 0, ortho };
        report.absorb(&format!("{prefix}/hopf"), verify_bialgebra(&g, opts, pf)?);
    }
    Ok(report)
}

fn casimirs(cat: &Catalog, opts: CheckOpts, pf: &mut Prefilter) -> Result<Report> {
    let set = cat.element_set("casimirs")?;
    let mut report = Report::new("casimirs");
    for (name, c) in &set.items {
        report.absorb("", verify_casimir(name, c, &set.over, opts, pf)?);
    }
    Ok(report)
}

const TILDE_FILE: &str = "tilde_bicross.hopf";
const REAL_COACTION: &str = "- h*eps(i,j,k)*Mt[j] (x) Pt[k]";
const IMAGINARY_COACTION: &str = "- I*h*eps(i,j,k)*Mt[j] (x) Pt[k]";

fn bicross(cat: &Catalog, config: &SuiteConfig, opts: CheckOpts, pf: &mut Prefilter) -> Result<Report> {
    let mut report = Report::new("bicross");
    report.absorb("algebra", verify_bicross(cat.bicross_spec("tilde_bicross")?, opts, pf)?);
    let group_opts = CheckOpts { mode: Mode::Formal, order: 0, ortho: true };
    report.absorb("group", verify_bicross(cat.bicross_spec("group_bicross")?, group_opts, pf)?);
    report.push(imaginary_coaction_variant(config, opts, pf)?);
    Ok(report)
}

/// The boost coaction with an extra factor `i`, as a finding: it is run
/// through the same checks and its failures are summarised.
fn imaginary_coaction_variant(config: &SuiteConfig, opts: CheckOpts, pf: &mut Prefilter) -> Result<Check> {
    let id = "variant/imaginary-boost-coaction";
    let anchor = "boost coaction with coefficient i*h";
    let t0 = Instant::now();
    let source = match config.models.iter().find(|(n, _)| n == TILDE_FILE) {
        Some((_, text)) => text.clone(),
        None => shipped_source(TILDE_FILE).unwrap_or_default().to_string(),
    };
    if !source.contains(REAL_COACTION) {
        return Ok(Check::info(id, anchor, "not applicable").detail("the loaded boost coaction differs from the shipped one"));
    }
    let mut files = config.models.clone();
    files.retain(|(n, _)| n != TILDE_FILE);
    files.push((TILDE_FILE.into(), source.replace(REAL_COACTION, IMAGINARY_COACTION)));
    let variant = Catalog::with_overrides(&files)?;
    let r = verify_bicross(variant.bicross_spec("tilde_bicross")?, opts, pf)?;
    let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
    let residual = match r.failures().next() {
        None => "0".to_string(),
        Some(c) => format!("{}: {}", c.id, c.residual),
    };
    Ok(Check::info(id, anchor, residual)
        .order(opts.order)
        .detail(format!("{} of {} checks fail with the variant", failed.len(), r.checks.len()))
        .took(t0))
}

/// The cocommutator of every generator against the table written out by
/// generator, then the cocycle condition on the extracted table.
fn cocommutator_table(cat: &Catalog, pf: &mut Prefilter) -> Result<Report> {
    let p = cat.presentation("galilei_algebra_kappa")?;
    let two = [p.clone(), p.clone()];
    let ctx2 = Ctx::tensor_power(&p, 2);
    let wedge = |a: &str, b: &str| format!("({a} (x) {b} - {b} (x) {a})");
    let mut expected: Vec<(String, String)> = Vec::new();
    for i in 1..=3 {
        expected.push((format!("M[{i}]"), "0".into()));
    }
    for i in 1..=3 {
        let (j, k) = (i % 3 + 1, (i + 1) % 3 + 1);
        let text = format!(
            "-{} - {} + {}",
            wedge(&format!("L[{i}]"), "P0"),
            wedge(&format!("M[{j}]"), &format!("P[{k}]")),
            wedge(&format!("M[{k}]"), &format!("P[{j}]"))
        );
        expected.push((format!("L[{i}]"), text));
    }
    for i in 1..=3 {
        expected.push((format!("P[{i}]"), format!("-{}", wedge(&format!("P[{i}]"), "P0"))));
    }
    expected.push(("P0".into(), "0".into()));
    let mut report = Report::new("cocommutator");
    for (name, text) in &expected {
        let t0 = Instant::now();
        let g = p.gen_by_name(name).ok_or_else(|| Error::PresentationMismatch(name.clone(), p.name.clone()))?;
        let want = ctx2.normal_order(&eval_in(text, &two)?)?;
        let got = cocommutator(&p, g)?.elem;
        let diff: Element = got.sub(&want);
        report.push(
            Check::pass_if(format!("sigma/{name}"), "cocommutator of the generators", pf.zero(&diff), ctx2.render(&diff)).took(t0),
        );
    }
    let lie = classical_lie(&p)?;
    report.absorb("", co_jacobi_check(&lie, &sigma_from_hopf(&p, &lie)?));
    Ok(report)
}

fn rmatrix(cat: &Catalog) -> Result<Report> {
    let p = cat.presentation("galilei_algebra_kappa")?;
    let t0 = Instant::now();
    let lie = classical_lie(&p)?;
    let cert = solve_coboundary(&lie, &sigma_from_hopf(&p, &lie)?)?;
    let ok = !cert.is_feasible() && cert.rank_a < cert.rank_ab && cert.revalidate();
    let detail = if ok {
        "coboundary system infeasible, rank data attached"
    } else if cert.is_feasible() {
        "coboundary system solvable: the cocommutator has a classical r-matrix"
    } else {
        "infeasibility certificate does not re-validate"
    };
    let mut report = Report::new("rmatrix");
    report.push(Check::pass_if("rmatrix/coboundary", "no classical r-matrix", ok, cert.summary()).detail(detail).took(t0));
    Ok(report)
}

fn duality(cat: &Catalog, config: &SuiteConfig) -> Result<Report> {
    let model = MatrixModel::galilei(cat)?;
    let deformed_algebra = cat.presentation("galilei_algebra_kappa")?;
    let sigma = SigmaTable::from_hopf(&deformed_algebra, &model.algebra)?;
    let mut report = Report::new("duality");
    report.absorb("", model.pairing_table()?);
    report.absorb("", model.bracket_consistency()?);
    // {R^m_n, a^r} = -h (v^m R^r_n - delta_mr v^p R^p_n)
    let mut brackets = Vec::new();
    let names: Vec<(String, String)> =
        (1..=3).flat_map(|m| (1..=3).flat_map(move |n| (1..=3).map(move |r| (m, n, r)))).map(|(m, n, r)| {
            (format!("R[{m},{n}]"), format!("a[{r}]"))
        }).collect();
    for (f, g) in &names {
        let (m, n, r) = (&f[2..3], &f[4..5], &g[2..3]);
        let mut text = format!("-h*(v[{m}]*R[{r},{n}]");
        if m == r {
            text += &format!(" - v[1]*R[1,{n}] - v[2]*R[2,{n}] - v[3]*R[3,{n}]");
        }
        text += ")";
        brackets.push((f.as_str(), g.as_str(), eval_in(&text, std::slice::from_ref(&model.group))?));
    }
    report.absorb("rotation-translation", poisson_verify_all(&model, &sigma, &brackets, config.degree as usize)?);
    let group = cat.presentation("galilei_group_kappa")?;
    report.absorb("quantization", quantization_crosscheck(&model, &sigma, &group, None)?);
    report.absorb("", rotation_power_identities(&model, 3)?);
    Ok(report)
}

/// Multiplier and representation of the two-dimensional group, with a
/// symbolic mass `m`.
fn projrep(cat: &Catalog, config: &SuiteConfig, pf: &mut Prefilter) -> Result<Report> {
    if config.order > COMPOSE_CAP {
        return Err(Error::Cap(format!("projective representation checks run through order {COMPOSE_CAP}, not {}", config.order)));
    }
    let g = Galilei2d::new(cat, Poly::var(Sym::new("m")))?;
    g.verify(config.order, 3, pf)
}

/// Process exit status for a finished report: 0 when nothing failed.
pub fn exit_status(report: &Report) -> i32 {
    if report.checks.iter().any(|c| c.status == Status::Fail) {
        1
    } else {
        0
    }
}
