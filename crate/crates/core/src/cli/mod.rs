//! The `qps` command set: argument handling, evaluation of parsed
//! expressions in a presentation, text and JSON output.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage or parse
//! errors.

pub mod parse;
pub mod print;

use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::calculus::{VectorField, COORDINATES, DERIVATIVES};
use crate::field::Scalar;
use crate::hopf::{Bundle, Comodule};
use crate::ncpoly::{Element, NcError, Presentation};
use crate::report::{SuiteReport, DEFAULT_SEED};
use crate::spaces::{spaces_report, SpaceCatalog};
use crate::symplectic::{covariance_report, Symplectic, SymplecticError};
pub use parse::{parse, Expr, ParseError};

/// Suites run by `check all`, in order.
pub const SUITES: [&str; 9] =
    ["spaces", "hopf", "action", "coaction", "galois", "cotensor", "calculus", "covariance", "symplectic"];

const ALGEBRAS: [&str; 6] = ["M", "Q", "OmegaM", "OmegaQ", "F", "MF"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("symbol `{symbol}` is not a generator of {presentation}")]
    NotInPresentation { symbol: String, presentation: String },
    #[error("unknown algebra `{0}` (expected one of M, Q, OmegaM, OmegaQ, F, MF)")]
    UnknownAlgebra(String),
    #[error("no supported algebra contains all of: {0}")]
    NoAlgebra(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] NcError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qps", version, about = "Exact algebra on the reduced quantum phase space at a cube root of unity")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression in the given algebra.
    Normalize { alg: String, expr: String },
    /// Exterior derivative of a function or form.
    D { expr: String },
    /// Partial derivative with respect to x, y, px or py.
    Partial { var: String, expr: String },
    /// Poisson bracket {f, g}.
    Bracket { f: String, g: String },
    /// Hamiltonian vector field of df.
    Xfield { f: String },
    /// Pairing of a 1-form with a vector field such as `x*Dpx`.
    Pair { form: String, field: String },
    /// Left action of an element of F.
    Act {
        h: String,
        m: String,
        /// Algebra of the second argument (default: inferred).
        #[arg(long)]
        alg: Option<String>,
    },
    /// Left coaction of F on M, Q, OmegaM or OmegaQ.
    Coact { alg: String, expr: String },
    /// Time derivative of f under the Hamiltonian h.
    Evolve { f: String, h: String },
    /// Graded dimensions of an algebra.
    Dims { alg: String },
    /// Run a check suite, or all of them.
    Check {
        suite: String,
        /// Exhaustive variants of the sampled checks.
        #[arg(long)]
        full: bool,
    },
    /// The r-form on two elements of F.
    Rform { f: String, h: String },
    /// The symplectic form on two vector fields.
    OmegaEval { x: String, y: String },
}

/// Seed for sampled checks; `QPS_SEED` overrides the default.
pub fn seed_from_env() -> u64 {
    std::env::var("QPS_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// Shared state, built on first use.
#[derive(Default)]
pub struct Session {
    bundle: Option<Arc<Bundle>>,
    symplectic: Option<Arc<Symplectic>>,
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    pub fn bundle(&mut self) -> Result<Arc<Bundle>, CliError> {
        if self.bundle.is_none() {
            self.bundle = Some(Arc::new(Bundle::build()?));
        }
        Ok(self.bundle.clone().expect("built"))
    }

    pub fn spaces(&mut self) -> Result<SpaceCatalog, CliError> {
        Ok(self.bundle()?.spaces.clone())
    }

    pub fn symplectic(&mut self) -> Result<Arc<Symplectic>, CliError> {
        if self.symplectic.is_none() {
            let spaces = self.spaces()?;
            self.symplectic = Some(Arc::new(Symplectic::build(&spaces)?));
        }
        Ok(self.symplectic.clone().expect("built"))
    }
}

/// Evaluate a parsed expression in `p`, keeping the order of products.
pub fn eval(p: &Presentation, e: &Expr) -> Result<Element, CliError> {
    Ok(match e {
        Expr::Num(r) => Element::constant(Scalar::from_rational(r.clone())),
        Expr::Q => Element::constant(Scalar::q()),
        Expr::Sym(s) => p
            .gen_by_name(s)
            .map_err(|_| CliError::NotInPresentation { symbol: s.clone(), presentation: p.name().into() })?,
        Expr::Neg(a) => -eval(p, a)?,
        Expr::Add(a, b) => eval(p, a)? + eval(p, b)?,
        Expr::Sub(a, b) => eval(p, a)? - eval(p, b)?,
        Expr::Mul(a, b) => p.mul(&eval(p, a)?, &eval(p, b)?),
        Expr::Pow(a, n) => p.pow(&eval(p, a)?, *n),
    })
}

pub fn parse_in(p: &Presentation, src: &str) -> Result<Element, CliError> {
    eval(p, &parse(src)?)
}

/// A function plus a vector field, used while reading field expressions.
struct Linear {
    f: Element,
    v: VectorField,
}

fn eval_linear(q: &Presentation, e: &Expr) -> Result<Linear, CliError> {
    let pure = |f: Element| Linear { f, v: VectorField::zero() };
    Ok(match e {
        Expr::Sym(s) if DERIVATIVES.contains(&s.as_str()) => {
            let i = DERIVATIVES.iter().position(|d| d == s).expect("derivative");
            Linear { f: Element::zero(), v: VectorField::basis(i, Scalar::one()) }
        }
        Expr::Num(_) | Expr::Q | Expr::Sym(_) => pure(eval(q, e)?),
        Expr::Neg(a) => {
            let a = eval_linear(q, a)?;
            Linear { f: -a.f, v: a.v.scale(&-Scalar::one()) }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (a, mut b) = (eval_linear(q, a)?, eval_linear(q, b)?);
            if matches!(e, Expr::Sub(..)) {
                b = Linear { f: -b.f, v: b.v.scale(&-Scalar::one()) };
            }
            Linear { f: a.f + b.f, v: a.v.add(&b.v) }
        }
        Expr::Mul(a, b) => {
            let (a, b) = (eval_linear(q, a)?, eval_linear(q, b)?);
            if a.v.is_zero() {
                let v = VectorField { coeffs: std::array::from_fn(|i| q.mul(&a.f, &b.v.coeffs[i])) };
                Linear { f: q.mul(&a.f, &b.f), v }
            } else if b.v.is_zero() {
                let Some(c) = b.f.as_scalar() else {
                    return Err(CliError::Invalid("vector field coefficients must stand on the left".into()));
                };
                Linear { f: a.f.scale(&c), v: a.v.scale(&c) }
            } else {
                return Err(CliError::Invalid("product of two derivations is not a vector field".into()));
            }
        }
        Expr::Pow(a, n) => {
            let a = eval_linear(q, a)?;
            if !a.v.is_zero() && *n != 1 {
                return Err(CliError::Invalid("powers of derivations are not vector fields".into()));
            }
            if *n == 1 {
                a
            } else {
                pure(q.pow(&a.f, *n))
            }
        }
    })
}

/// Parse `Σ f_i * D_i` with coefficients in `Q`.
pub fn parse_field(q: &Presentation, src: &str) -> Result<VectorField, CliError> {
    let lin = eval_linear(q, &parse(src)?)?;
    if !lin.f.is_zero() {
        return Err(CliError::Invalid(format!(
            "`{src}` has a function part; write a field as a sum of coefficient*D terms"
        )));
    }
    Ok(lin.v)
}

/// The largest of `candidates` (listed smallest first) containing every
/// symbol of the expression.
pub fn infer_algebra<'a>(
    spaces: &'a SpaceCatalog,
    candidates: &[&str],
    e: &Expr,
) -> Result<&'a Arc<Presentation>, CliError> {
    let symbols = e.symbols();
    candidates
        .iter()
        .rev()
        .map(|n| spaces.get(n).expect("known algebra"))
        .find(|p| symbols.iter().all(|s| p.index_of(s).is_some()))
        .ok_or_else(|| CliError::NoAlgebra(symbols.join(", ")))
}

fn algebra<'a>(spaces: &'a SpaceCatalog, name: &str) -> Result<&'a Arc<Presentation>, CliError> {
    spaces.get(name).ok_or_else(|| CliError::UnknownAlgebra(name.into()))
}

/// Result of one command: its text, its JSON value, the presentation used
/// and whether it counts as success.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub presentation: Option<String>,
    pub ok: bool,
}

impl Outcome {
    fn element(p: &Presentation, e: &Element) -> Self {
        Outcome {
            text: print::element(p, e),
            json: print::element_json(p, e),
            presentation: Some(p.name().into()),
            ok: true,
        }
    }
}

fn coordinate_index(var: &str) -> Result<usize, CliError> {
    let v = var.strip_prefix('D').unwrap_or(var);
    COORDINATES
        .iter()
        .position(|c| *c == v)
        .ok_or_else(|| CliError::Invalid(format!("`{var}` is not one of x, y, px, py")))
}

fn run_check(session: &mut Session, suite: &str, full: bool, seed: u64) -> Result<Vec<SuiteReport>, CliError> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(CliError::Invalid(format!("unknown suite `{suite}` (expected all or one of {})", SUITES.join(", "))));
    };
    let bundle = session.bundle()?;
    let mut out = Vec::new();
    for name in names {
        let report = match name {
            "spaces" => spaces_report(&bundle.spaces, full, seed),
            "hopf" => bundle.hopf_report(),
            "action" => bundle.action_report(seed),
            "coaction" => bundle.coaction_report(full),
            "galois" => bundle.galois_report(),
            "cotensor" => bundle.cotensor_report(),
            "calculus" => session.symplectic()?.calculus.report(&bundle, full),
            "covariance" => covariance_report(&bundle.spaces),
            "symplectic" => session.symplectic()?.report(seed, full),
            _ => unreachable!("suite list"),
        };
        out.push(report);
    }
    Ok(out)
}

/// Execute one parsed command.
pub fn execute(session: &mut Session, command: &Command) -> Result<Outcome, CliError> {
    let seed = seed_from_env();
    Ok(match command {
        Command::Normalize { alg, expr } => {
            let spaces = session.spaces()?;
            let p = algebra(&spaces, alg)?;
            Outcome::element(p, &parse_in(p, expr)?)
        }
        Command::D { expr } => {
            let s = session.symplectic()?;
            let e = parse_in(&s.calculus.omega, expr)?;
            Outcome::element(&s.calculus.omega, &s.calculus.differential(&e))
        }
        Command::Partial { var, expr } => {
            let i = coordinate_index(var)?;
            let s = session.symplectic()?;
            let f = parse_in(&s.calculus.q, expr)?;
            Outcome::element(&s.calculus.q, &s.calculus.partial(i, &f))
        }
        Command::Bracket { f, g } => {
            let s = session.symplectic()?;
            let (f, g) = (parse_in(&s.calculus.q, f)?, parse_in(&s.calculus.q, g)?);
            Outcome::element(&s.calculus.q, &s.poisson(&f, &g))
        }
        Command::Evolve { f, h } => {
            let s = session.symplectic()?;
            let (f, h) = (parse_in(&s.calculus.q, f)?, parse_in(&s.calculus.q, h)?);
            Outcome::element(&s.calculus.q, &s.time_derivative(&f, &h))
        }
        Command::Xfield { f } => {
            let s = session.symplectic()?;
            let q = &s.calculus.q;
            let v = s.hamiltonian_vf(&parse_in(q, f)?);
            Outcome { text: print::field(q, &v), json: print::field_json(q, &v), presentation: Some("Q".into()), ok: true }
        }
        Command::Pair { form, field } => {
            let s = session.symplectic()?;
            let w = parse_in(&s.calculus.omega, form)?;
            if w.terms().any(|(m, _)| s.calculus.omega.grade(m) != 1) {
                return Err(CliError::Invalid(format!("`{form}` is not a 1-form")));
            }
            let v = parse_field(&s.calculus.q, field)?;
            let res = s.calculus.pair(&s.calculus.left_expand(&w), &v);
            Outcome::element(&s.calculus.q, &res)
        }
        Command::OmegaEval { x, y } => {
            let s = session.symplectic()?;
            let (x, y) = (parse_field(&s.calculus.q, x)?, parse_field(&s.calculus.q, y)?);
            Outcome::element(&s.calculus.q, &s.eval_omega(&x, &y))
        }
        Command::Act { h, m, alg } => {
            let bundle = session.bundle()?;
            let f = bundle.f();
            let h = parse_in(f, h)?;
            let expr = parse(m)?;
            let p = match alg {
                Some(a) => algebra(&bundle.spaces, a)?,
                None => infer_algebra(&bundle.spaces, &["M", "OmegaM", "Q", "OmegaQ"], &expr)?,
            };
            let c = Comodule::from_name(p.name())
                .ok_or_else(|| CliError::Invalid(format!("F does not act on {}", p.name())))?;
            let e = eval(p, &expr)?;
            Outcome::element(p, &bundle.act(c, &h, &e))
        }
        Command::Coact { alg, expr } => {
            let bundle = session.bundle()?;
            let p = algebra(&bundle.spaces, alg)?;
            let c = Comodule::from_name(p.name())
                .ok_or_else(|| CliError::Invalid(format!("F does not coact on {}", p.name())))?;
            let t = bundle.coact(c, &parse_in(p, expr)?);
            Outcome {
                text: print::tensor(bundle.f(), p, &t),
                json: print::tensor_json(bundle.f(), p, &t),
                presentation: Some(p.name().into()),
                ok: true,
            }
        }
        Command::Rform { f, h } => {
            let bundle = session.bundle()?;
            let fp = bundle.f();
            let v = bundle.hopf.rform(&parse_in(fp, f)?, &parse_in(fp, h)?);
            Outcome { text: v.to_string(), json: json!(v), presentation: Some("F".into()), ok: true }
        }
        Command::Dims { alg } => {
            if !ALGEBRAS.contains(&alg.as_str()) {
                return Err(CliError::UnknownAlgebra(alg.clone()));
            }
            let spaces = session.spaces()?;
            let p = algebra(&spaces, alg)?;
            let dims = p.graded_dims()?;
            let total: usize = dims.iter().sum();
            let text = format!(
                "{} (total {total})",
                dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            );
            Outcome { text, json: json!({ "graded": dims, "total": total }), presentation: Some(alg.clone()), ok: true }
        }
        Command::Check { suite, full } => {
            let reports = run_check(session, suite, *full, seed)?;
            let ok = reports.iter().all(SuiteReport::passed);
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.to_string());
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            text.push_str(&format!("{passed}/{} suites passed (seed {seed})", reports.len()));
            Outcome { text, json: json!({ "seed": seed, "passed": ok, "suites": reports }), presentation: None, ok }
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Normalize { .. } => "normalize",
        Command::D { .. } => "d",
        Command::Partial { .. } => "partial",
        Command::Bracket { .. } => "bracket",
        Command::Xfield { .. } => "xfield",
        Command::Pair { .. } => "pair",
        Command::Act { .. } => "act",
        Command::Coact { .. } => "coact",
        Command::Evolve { .. } => "evolve",
        Command::Dims { .. } => "dims",
        Command::Check { .. } => "check",
        Command::Rform { .. } => "rform",
        Command::OmegaEval { .. } => "omega-eval",
    }
}

fn command_inputs(c: &Command) -> Vec<&str> {
    match c {
        Command::Normalize { alg, expr } => vec![alg, expr],
        Command::D { expr } | Command::Xfield { f: expr } => vec![expr],
        Command::Partial { var, expr } => vec![var, expr],
        Command::Bracket { f, g } => vec![f, g],
        Command::Pair { form, field } => vec![form, field],
        Command::Act { h, m, .. } => vec![h, m],
        Command::Coact { alg, expr } => vec![alg, expr],
        Command::Evolve { f, h } | Command::Rform { f, h } => vec![f, h],
        Command::Dims { alg } => vec![alg],
        Command::Check { suite, .. } => vec![suite],
        Command::OmegaEval { x, y } => vec![x, y],
    }
}

/// Run the program on `args` (including the program name), writing to the
/// given streams. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(if code == 0 { out as &mut dyn Write } else { err as &mut dyn Write }, "{e}");
            return code;
        }
    };
    let mut session = Session::new();
    let name = command_name(&cli.command);
    let input = command_inputs(&cli.command);
    match execute(&mut session, &cli.command) {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => writeln!(out, "{}", o.text),
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "command": name, "input": input, "result": o.json, "presentation": o.presentation })
                ),
            };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.format == Format::Json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({ "command": name, "input": input, "result": null, "presentation": null, "error": e.to_string() })
                );
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qps"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bracket_x_px() {
        let (code, out, _) = run_text(&["bracket", "x", "px"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "-q");
    }

    #[test]
    fn normalize_exchange() {
        let (code, out, _) = run_text(&["normalize", "Q", "px*y"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(-2 - q)*x*py + q*y*px");
    }

    #[test]
    fn parse_error_exit_code() {
        let (code, _, err) = run_text(&["normalize", "Q", "x**"]);
        assert_eq!(code, 2);
        assert!(err.contains("column 3"), "{err}");
    }

    #[test]
    fn unknown_symbol_names_presentation() {
        let (code, _, err) = run_text(&["normalize", "M", "px"]);
        assert_eq!(code, 2);
        assert!(err.contains("M"), "{err}");
    }

    #[test]
    fn json_schema() {
        let mut out = Vec::new();
        let code = run(["qps", "--format", "json", "bracket", "px", "x"], &mut out, &mut Vec::new());
        assert_eq!(code, 0);
        let v: Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["command"], "bracket");
        assert_eq!(v["input"], json!(["px", "x"]));
        assert_eq!(v["presentation"], "Q");
        assert_eq!(v["result"]["terms"][0]["coefficient"], json!({ "r0": "-1", "r1": "-1" }));
    }

    #[test]
    fn field_parsing_and_printing() {
        let spaces = SpaceCatalog::build().unwrap();
        let v = parse_field(&spaces.q, "x*Dpx - q*Dy + Dx*2").unwrap();
        let printed = print::field(&spaces.q, &v);
        assert_eq!(parse_field(&spaces.q, &printed).unwrap(), v);
        assert!(parse_field(&spaces.q, "Dx*x").is_err());
        assert!(parse_field(&spaces.q, "x + Dx").is_err());
    }

    #[test]
    fn round_trip_on_phase_space_basis() {
        let spaces = SpaceCatalog::build().unwrap();
        for m in spaces.q.basis(None).unwrap() {
            let e = Element::monomial(m).scale(&Scalar::from_ints(-2, 1));
            let printed = print::element(&spaces.q, &e);
            let back = parse_in(&spaces.q, &printed).unwrap();
            assert_eq!(print::element(&spaces.q, &back), printed);
        }
    }

    #[test]
    fn xfield_of_x() {
        let (code, out, _) = run_text(&["xfield", "dx"]);
        assert_eq!(code, 2, "{out}");
        let (code, out, _) = run_text(&["xfield", "px"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "-q*Dx");
    }
}
