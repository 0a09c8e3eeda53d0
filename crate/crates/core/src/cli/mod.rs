//! Command surface: parse an algebra file, run one stage or the whole
//! pipeline, print a report.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the report
//! is still printed), 2 on input errors and unmet preconditions.

pub mod file;
pub mod report;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::comod::{check_triangles, Ambient, Bicomodule};
use crate::cqbialg::{chi_s, CoquasiBialgebra};
use crate::error::{Error, Result};
use crate::hopfmod::{check_tau_monoidal, free_hopf_module, fundamental_check};
use crate::linalg::Field;
use crate::radford::{
    cointegrals, dual_module_action, frobenius, frobenius_formula, hopf_specialize, modular_element, monoidal_test_pair,
    Radford, SigmaSource,
};
use crate::report::{matrix_check, Checks};
use crate::zoo;

pub use file::{emit_algebra, parse_algebra, parse_algebra_str, parse_field};
pub use report::{sha256_hex, Report};

pub const DEFAULT_MAX_DIM: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "coquasi", version, about = "Exact checks for finite-dimensional coquasi Hopf algebras")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to this path: the algebra file for `zoo`, the JSON
    /// report otherwise.
    #[arg(long, global = true)]
    pub emit: Option<PathBuf>,
    /// List passing checks too.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coalgebra and coquasi bialgebra axioms.
    Check { file: PathBuf },
    /// Antipode axioms.
    Antipode { file: PathBuf },
    /// The cointegral space W.
    Cointegrals { file: PathBuf },
    /// The modular element a.
    Modular { file: PathBuf },
    /// The Frobenius isomorphism ₀W⊗H → *H.
    Frobenius { file: PathBuf },
    /// The monoidal structure χ^S of the antipode.
    ChiS { file: PathBuf },
    /// The fundamental theorem on a free Hopf module and on *H.
    Fundamental { file: PathBuf },
    /// σ from μ and Radford's formula.
    Radford { file: PathBuf },
    /// Monoidality of μ and τ on a pair of small comodules.
    MuMonoidal { file: PathBuf },
    /// The classical reductions on an ordinary Hopf algebra.
    HopfCase { file: PathBuf },
    /// Build a standard example; `zoo list` shows the names.
    Zoo {
        name: String,
        /// Group order or Taft parameter.
        #[arg(long)]
        n: Option<usize>,
        /// Shorthand for --field GF(p).
        #[arg(long)]
        p: Option<u64>,
        /// Q or GF(p).
        #[arg(long)]
        field: Option<String>,
        /// root=<int>: the root of unity q or ζ.
        #[arg(long)]
        param: Vec<String>,
    },
    /// The whole pipeline as one report.
    Report { file: PathBuf },
}

/// Output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn max_dim() -> usize {
    std::env::var("COQUASI_MAX_DIM").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_DIM)
}

fn load(path: &Path) -> Result<(Ambient, report::Input)> {
    let (h, bytes) = parse_algebra(path)?;
    if h.dim() > max_dim() {
        return Err(Error::TooLarge(h.dim(), max_dim()));
    }
    let input = report::Input { path: Some(path.display().to_string()), sha256: sha256_hex(&bytes) };
    Ok((Arc::new(h), input))
}

/// Axioms and antipode; later stages only run when these pass.
fn preliminaries(h: &CoquasiBialgebra, r: &mut Report) -> bool {
    r.add("axioms", h.check());
    r.add("antipode", h.check_antipode());
    r.all_pass()
}

fn stage_chi_s(h: &CoquasiBialgebra, r: &mut Report) -> Result<()> {
    let c = chi_s(h)?;
    r.add("chi_s", c.checks.clone());
    r.put("chi_s_source", json!(format!("{:?}", c.source)));
    r.put("chi_s_solver_dim", json!(c.solver_dim));
    for d in &c.discrepancies {
        let w = d.witness.as_ref().map(|w| format!(" at {}: {} vs {}", w.at, w.lhs, w.rhs)).unwrap_or_default();
        r.notes.push(format!("chi_s candidate rejected: {}{}", d.name, w));
    }
    Ok(())
}

fn stage_triangles(h: &Ambient, r: &mut Report) -> Result<()> {
    r.add("triangles", check_triangles(&Bicomodule::regular(h.clone()))?);
    Ok(())
}

fn stage_fundamental(h: &Ambient, r: &mut Report) -> Result<()> {
    let free = free_hopf_module(&Bicomodule::regular(h.clone()))?;
    let fr = fundamental_check(&free)?;
    r.add("fundamental.free", fr.checks);
    let star = dual_module_action(h)?;
    r.add("fundamental.dual_action", star.checks.clone());
    let fs = fundamental_check(&star.module)?;
    r.put("coinvariants_of_dual", json!(fs.coinvariants.module.dim()));
    r.add("fundamental.dual", fs.checks);
    Ok(())
}

fn stage_tau_monoidal(h: &Ambient, r: &mut Report, chi: &crate::coalg::Functional) -> Result<()> {
    let (m, n) = monoidal_test_pair(h)?;
    r.put("monoidal_pair_dims", json!([m.dim(), n.dim()]));
    r.add("tau_monoidal", check_tau_monoidal(&m, &n, chi)?);
    Ok(())
}

fn stage_cointegrals(h: &Ambient, r: &mut Report) -> Result<()> {
    let d = dual_module_action(h)?;
    r.add("dual_action", d.checks.clone());
    let w = cointegrals(h, &d.module)?;
    r.add("cointegrals", w.checks.clone());
    r.put("W", report::functional(h, &w.phi));
    r.put("W_dim", json!(1));
    Ok(())
}

fn stage_modular(h: &Ambient, r: &mut Report) -> Result<()> {
    let d = dual_module_action(h)?;
    let w = cointegrals(h, &d.module)?;
    let m = modular_element(h, &w)?;
    r.add("modular", m.checks.clone());
    r.put("a", report::element(h, &m.a));
    r.put("a_inv", report::element(h, &m.a_inv));
    Ok(())
}

fn stage_frobenius(h: &Ambient, r: &mut Report) -> Result<()> {
    let d = dual_module_action(h)?;
    let w = cointegrals(h, &d.module)?;
    let m = modular_element(h, &w)?;
    let fr = frobenius(&d.module, &w)?;
    r.add("frobenius", fr.checks.clone());
    let names = h.names().to_vec();
    let c = matrix_check(
        "formula",
        &fr.matrix,
        &frobenius_formula(h, &w, &m)?,
        &|i| names[i].clone(),
        &|i| format!("δ_{}", names[i]),
    );
    r.add("frobenius", Checks(vec![c]));
    Ok(())
}

fn stage_radford(h: &Ambient, r: &mut Report) -> Result<Radford> {
    let rad = Radford::new(h)?;
    let cert = rad.certificate()?;
    r.add("radford", cert.checks.clone());
    r.put("W", report::functional(h, &rad.cointegrals.phi));
    r.put("a", report::element(h, &cert.a));
    r.put("sigma", report::functional(h, &cert.sigma));
    r.put("sigma_inv", report::functional(h, &cert.sigma_inv));
    r.put(
        "sigma_source",
        json!(match cert.sigma_source {
            SigmaSource::MuChain => "MuChain",
            SigmaSource::DirectSolve => "DirectSolve",
        }),
    );
    r.put("sigma_direct_dim", json!(cert.direct_dim));
    r.put("sigma_direct_invertible", json!(cert.direct_invertible));
    if let Some(hc) = &cert.hopf {
        put_hopf(h, r, hc);
    }
    Ok(rad)
}

fn put_hopf(h: &Ambient, r: &mut Report, hc: &crate::radford::HopfCase) {
    r.put("integral", report::element(h, &hc.integral));
    r.put("omega", report::functional(h, &hc.omega));
    r.put("omega_inv", report::functional(h, &hc.omega_inv));
    r.put("s4_is_identity", json!(hc.s4_is_identity));
}

fn stage_mu_monoidal(h: &Ambient, r: &mut Report) -> Result<()> {
    let rad = Radford::new(h)?;
    r.add("pipeline", rad.checks.clone());
    let (m, n) = monoidal_test_pair(h)?;
    r.put("monoidal_pair_dims", json!([m.dim(), n.dim()]));
    r.add("mu_monoidal", rad.check_mu_monoidal(&m, &n)?);
    r.add("tau_monoidal", check_tau_monoidal(&m, &n, &rad.chi_s)?);
    Ok(())
}

fn stage_hopf(h: &Ambient, r: &mut Report) -> Result<()> {
    if !h.is_hopf() {
        return Err(Error::NotAHopfAlgebra(h.name().to_string()));
    }
    let rad = Radford::new(h)?;
    let sg = rad.sigma()?;
    let hc = hopf_specialize(&rad, &sg)?;
    r.add("hopf", hc.checks.clone());
    r.put("sigma", report::functional(h, &sg.sigma));
    put_hopf(h, r, &hc);
    Ok(())
}

fn run_on_file(name: &str, path: &Path, f: impl FnOnce(&Ambient, &mut Report) -> Result<()>) -> Result<Report> {
    let (h, input) = load(path)?;
    let mut r = Report::new(name, &h, input);
    if name == "check" {
        r.add("axioms", h.check());
        return Ok(r);
    }
    if name == "antipode" {
        r.add("antipode", h.check_antipode());
        return Ok(r);
    }
    if !preliminaries(&h, &mut r) {
        r.notes.push("axioms failed; later stages skipped".into());
        return Ok(r);
    }
    f(&h, &mut r)?;
    Ok(r)
}

fn zoo_field(p: Option<u64>, field: &Option<String>) -> Result<Option<Field>> {
    match (p, field) {
        (Some(p), _) => Ok(Some(Field::prime(p)?)),
        (None, Some(s)) => Ok(Some(parse_field(s)?)),
        (None, None) => Ok(None),
    }
}

fn zoo_root(params: &[String]) -> Result<Option<i64>> {
    let mut root = None;
    for p in params {
        let v = p.strip_prefix("root=").unwrap_or(p);
        root = Some(v.parse().map_err(|_| Error::Parse(format!("bad --param {p:?}; expected root=<int>")))?);
    }
    Ok(root)
}

fn run_zoo(cli: &Cli, name: &str, n: Option<usize>, p: Option<u64>, field: &Option<String>, param: &[String]) -> Result<Outcome> {
    if name == "list" {
        return Ok(Outcome { code: 0, stdout: zoo::STANDARD_NAMES.join("\n") + "\n", stderr: String::new() });
    }
    let h = zoo::by_name(name, n, zoo_field(p, field)?, zoo_root(param)?)?;
    let text = emit_algebra(&h);
    let mut checks = h.check();
    checks.extend(h.check_antipode());
    let code = if checks.all_pass() { 0 } else { 1 };
    let mut stderr = String::new();
    for c in checks.failures() {
        stderr.push_str(&format!("FAIL {}\n", c.name));
    }
    match &cli.emit {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(Outcome { code, stdout: format!("wrote {} ({}, dim {})\n", path.display(), h.name(), h.dim()), stderr })
        }
        None => Ok(Outcome { code, stdout: text, stderr }),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let r = match &cli.command {
        Command::Zoo { name, n, p, field, param } => return run_zoo(cli, name, *n, *p, field, param),
        Command::Check { file } => run_on_file("check", file, |_, _| Ok(()))?,
        Command::Antipode { file } => run_on_file("antipode", file, |_, _| Ok(()))?,
        Command::Cointegrals { file } => run_on_file("cointegrals", file, stage_cointegrals)?,
        Command::Modular { file } => run_on_file("modular", file, stage_modular)?,
        Command::Frobenius { file } => run_on_file("frobenius", file, stage_frobenius)?,
        Command::ChiS { file } => run_on_file("chi-s", file, |h, r| stage_chi_s(h, r))?,
        Command::Fundamental { file } => run_on_file("fundamental", file, stage_fundamental)?,
        Command::Radford { file } => run_on_file("radford", file, |h, r| stage_radford(h, r).map(|_| ()))?,
        Command::MuMonoidal { file } => run_on_file("mu-monoidal", file, stage_mu_monoidal)?,
        Command::HopfCase { file } => run_on_file("hopf-case", file, stage_hopf)?,
        Command::Report { file } => run_on_file("report", file, |h, r| {
            stage_triangles(h, r)?;
            stage_chi_s(h, r)?;
            stage_fundamental(h, r)?;
            let rad = stage_radford(h, r)?;
            stage_tau_monoidal(h, r, &rad.chi_s)
        })?,
    };
    let code = if r.all_pass() { 0 } else { 1 };
    if let Some(path) = &cli.emit {
        std::fs::write(path, r.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let stdout = if cli.json { r.to_json() } else { r.to_text(cli.verbose) };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

/// Runs one invocation without touching the process streams.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Entry point for the binary: returns the exit code.
pub fn run() -> i32 {
    let o = run_args(std::env::args_os());
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    o.code
}
