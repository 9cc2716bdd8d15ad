//! The `gop` command line: parsing, dispatch and canonical reports.

pub mod parse;
pub mod report;
pub mod series_input;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gop_core::kovacic::{Case, Certificate, Gauge, Outcome};
use gop_core::local::Violation;
use gop_core::nga::{SplitComponent, DEFAULT_MARGIN};
use gop_core::order1::PowerProduct;
use gop_core::{
    classify_order1_op, classify_theorem2, companion, denominator_sequence, divisibility_chain,
    fmt_rat, fuchs_relation_check, g_growth_diagnostic, guess_ode, holonomy_split, is_fuchsian,
    residue_exponent_identity, singular_places, solve_inhomogeneous, DiffOp, FuchsReport,
    IndicialData, Rat,
};

/// Default series truncation when neither `--trunc` nor `GOP_TRUNC_DEFAULT`
/// is given.
pub const TRUNC_DEFAULT: usize = 64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Domain(gop_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) | CliError::Domain(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<gop_core::Error> for CliError {
    fn from(e: gop_core::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<parse::ParseError> for CliError {
    fn from(e: parse::ParseError) -> Self {
        CliError::Input(format!("parse error {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gop",
    version,
    about = "Exact analysis of linear differential operators over Q(z)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit canonical JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Singular places, fuchsian test, exponents, Fuchs relation.
    Analyze { operator: String },
    /// Denominators D_1..D_k of the companion system.
    Galochkin {
        operator: String,
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
    /// Classify a first-order operator and give its closed-form solution.
    Order1 { operator: String },
    /// Structure of f' = a f + b.
    Inhom { a: String, b: String },
    /// Kovacic cases and the primitive-form / algebraic-basis dichotomy.
    Kovacic { operator: String },
    /// Split an expression sum z^alpha log(z)^j S into its components.
    NgaSplit {
        terms: PathBuf,
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Guess an annihilating operator for a series.
    Guess {
        series: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_order: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: usize,
        #[arg(long)]
        trunc: Option<usize>,
    },
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I, trunc_env: Option<&str>) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            return if code == 0 {
                Run {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Run {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json = cli.json;
    match run(cli.command, trunc_env) {
        Ok(rep) => Run {
            code: 0,
            stdout: if json {
                report::to_json(&rep)
            } else {
                report::to_text(&rep)
            },
            stderr: String::new(),
        },
        Err(e) => Run {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn trunc_default(env: Option<&str>) -> Result<usize, CliError> {
    match env {
        None => Ok(TRUNC_DEFAULT),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("GOP_TRUNC_DEFAULT is not an integer: {s}"))),
    }
}

fn s<T: ToString>(x: T) -> Value {
    Value::String(x.to_string())
}

fn q(x: &Rat) -> Value {
    Value::String(fmt_rat(x))
}

fn place_json(d: &IndicialData) -> Value {
    json!({
        "place": s(&d.place),
        "degree": d.place.degree(),
        "indicial": d.indicial.as_ref().map(|p| p.fmt_var("rho")),
        "exponents": d.exponents.as_ref().filter(|e| e.all_rational).map(|e| e.flat().iter().map(q).collect::<Vec<_>>()),
        "rational_exponents": d.rational(),
    })
}

fn violation_json(v: &Violation) -> Value {
    json!({
        "place": s(&v.place),
        "coefficient_index": v.index,
        "pole_order": v.pole_order,
        "bound": v.bound,
    })
}

fn fuchs_json(rep: &FuchsReport) -> Value {
    json!({
        "fuchsian": rep.is_fuchsian,
        "places": rep.places.iter().map(place_json).collect::<Vec<_>>(),
        "offending": rep.offending.iter().map(violation_json).collect::<Vec<_>>(),
    })
}

/// Rational power products print as rational functions.
fn pp_text(p: &PowerProduct) -> String {
    let plain = PowerProduct {
        tag: Default::default(),
        ..p.clone()
    };
    match plain.to_ratfunc() {
        Some(r) => r.to_string(),
        None => plain.body(),
    }
}

fn pp_json(p: &PowerProduct) -> Value {
    json!({
        "value": pp_text(p),
        "constant": if p.tag.is_empty() { Value::Null } else { s(p.tag_string()) },
    })
}

fn op_input(src: &str) -> Result<(DiffOp, Value), CliError> {
    let l = parse::parse_diffop(src)?;
    let v = json!({ "source": src, "parsed": l.to_string() });
    Ok((l, v))
}

pub struct Report {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub diagnostics: Value,
    pub warnings: Vec<String>,
}

fn component_json(c: &SplitComponent) -> Value {
    match c.factor() {
        Some((k, ser)) => json!({
            "alpha": q(&c.alpha),
            "j": c.j,
            "coefficient": s(&k),
            "offset": c.offset,
            "series": ser.coeffs.iter().map(q).collect::<Vec<_>>(),
        }),
        None => json!({
            "alpha": q(&c.alpha),
            "j": c.j,
            "coefficient": Value::Null,
            "offset": c.offset,
            "series": c.coeffs.iter().map(s).collect::<Vec<_>>(),
        }),
    }
}

pub fn run(cmd: Command, trunc_env: Option<&str>) -> Result<Report, CliError> {
    match cmd {
        Command::Analyze { operator } => {
            let (l, input) = op_input(&operator)?;
            let rep = is_fuchsian(&l)?;
            let fuchs = if rep.is_fuchsian {
                fuchs_relation_check(&l).ok()
            } else {
                None
            };
            let rei = if l.order() == 2 && rep.is_fuchsian {
                residue_exponent_identity(&l).ok()
            } else {
                None
            };
            let mut result = fuchs_json(&rep);
            result["order"] = json!(l.order());
            result["fuchs_relation"] = json!(fuchs);
            result["residue_exponent_identity"] = json!(rei);
            let mut warnings = Vec::new();
            if rep.is_fuchsian && !rep.places.iter().all(|d| d.rational()) {
                warnings.push("some exponents are not rational: not a G-operator".to_string());
            }
            Ok(Report {
                command: "analyze",
                input,
                diagnostics: json!({ "singular_places": singular_places(&l).iter().map(s).collect::<Vec<_>>() }),
                result,
                warnings,
            })
        }
        Command::Galochkin { operator, k } => {
            let (l, mut input) = op_input(&operator)?;
            input["k"] = json!(k);
            let sys = companion(&l)?;
            let rep = denominator_sequence(&sys, k)?;
            Ok(Report {
                command: "galochkin",
                input,
                result: json!({
                    "d": rep.d.iter().map(s).collect::<Vec<_>>(),
                    "t": s(&rep.t),
                    "slope_tail_log2": q(&rep.slope_tail),
                }),
                diagnostics: json!({ "divisibility_chain": divisibility_chain(&rep.d) }),
                warnings: vec![
                    "finitely many D_k are consistent with, but never certify, geometric growth"
                        .into(),
                ],
            })
        }
        Command::Order1 { operator } => {
            let (l, input) = op_input(&operator)?;
            let v = classify_order1_op(&l)?;
            let a = -&l.monic().coeff(0);
            Ok(Report {
                command: "order1",
                input,
                result: json!({
                    "a": s(&a),
                    "g_operator": v.is_g_operator,
                    "solution": v.solution.as_ref().map(s),
                    "failure": v.failure.as_ref().map(fuchs_json),
                }),
                diagnostics: json!({}),
                warnings: Vec::new(),
            })
        }
        Command::Inhom { a, b } => {
            let ar = parse::parse_ratfunc(&a)?;
            let br = parse::parse_ratfunc(&b)?;
            let r = solve_inhomogeneous(&ar, &br)?;
            Ok(Report {
                command: "inhom",
                input: json!({ "a": s(&ar), "b": s(&br) }),
                result: json!({
                    "annihilator": s(&r.l2),
                    "g": pp_json(&r.g),
                    "integrand": pp_json(&r.integrand),
                    "rationality_flag": r.rationality_flag,
                    "rational_solution": r.rational_solution.as_ref().map(s),
                }),
                diagnostics: json!({}),
                warnings: Vec::new(),
            })
        }
        Command::Kovacic { operator } => {
            let (l, input) = op_input(&operator)?;
            let v = classify_theorem2(&l)?;
            let outcomes: Vec<Value> = v.outcomes.iter().map(outcome_json).collect();
            let case = match v.case {
                Case::One => json!(1),
                Case::Two => json!(2),
                Case::Three => json!(3),
                Case::None => Value::Null,
            };
            let gauge = match &v.normal_form.gauge {
                Gauge::PowerProduct(p) => json!({ "power_product": pp_text(p) }),
                Gauge::Raw(ell) => json!({ "log_derivative": s(ell) }),
            };
            let mut warnings = Vec::new();
            if v.incomplete {
                warnings.push(
                    "some poles were not searched over Q; the verdict may be incomplete".into(),
                );
            }
            if !v.fuchsian_rational {
                warnings.push("not fuchsian with rational exponents: not a G-operator".into());
            }
            Ok(Report {
                command: "kovacic",
                input,
                result: json!({
                    "case": case,
                    "feasible_cases": v.feasible,
                    "r": s(&v.normal_form.r),
                    "gauge": gauge,
                    "outcomes": outcomes,
                }),
                diagnostics: json!({
                    "fuchsian_rational_exponents": v.fuchsian_rational,
                    "case1_certificate": v.case1.as_ref().map(|c| json!({ "omega": s(&c.omega), "p": s(&c.p) })),
                }),
                warnings,
            })
        }
        Command::NgaSplit { terms, trunc } => {
            let trunc = match trunc {
                Some(t) => t,
                None => trunc_default(trunc_env)?,
            };
            let e = series_input::read_terms(&terms, trunc)?;
            let parts = holonomy_split(&e)?;
            Ok(Report {
                command: "nga-split",
                input: json!({ "terms": terms.display().to_string(), "truncation": e.truncation() }),
                result: json!({ "components": parts.iter().map(component_json).collect::<Vec<_>>() }),
                diagnostics: json!({
                    "exponent_classes": parts.iter().map(|c| &c.alpha).collect::<std::collections::BTreeSet<_>>().len(),
                }),
                warnings: Vec::new(),
            })
        }
        Command::Guess {
            series,
            max_order,
            max_degree,
            margin,
            trunc,
        } => {
            let trunc = match trunc {
                Some(t) => t,
                None => trunc_default(trunc_env)?,
            };
            let ser = series_input::read_series(&series, trunc)?;
            let g = guess_ode(&ser, max_order, max_degree, margin)?;
            let growth = g_growth_diagnostic(&ser);
            let summary = if growth.superlinear {
                "denominator growth is superlinear: not consistent with a G-function"
            } else {
                "denominator growth is consistent with a geometric bound"
            };
            Ok(Report {
                command: "guess",
                input: json!({
                    "series": series.display().to_string(),
                    "truncation": ser.truncation(),
                    "max_order": max_order,
                    "max_degree": max_degree,
                    "margin": margin,
                }),
                result: json!({
                    "found": g.found,
                    "operator": g.operator.as_ref().map(s),
                    "overdetermination": g.overdetermination,
                }),
                diagnostics: json!({
                    "growth": {
                        "d_last": growth.d.last().map(s),
                        "slope_log2_d": q(&growth.slope_log_d),
                        "slope_log2_d_early": q(&growth.slope_log_d_early),
                        "slope_log2_d_late": q(&growth.slope_log_d_late),
                        "slope_log2_height": q(&growth.slope_log_height),
                        "superlinear": growth.superlinear,
                        "summary": summary,
                    }
                }),
                warnings: vec![
                    "a found operator is certified through the available truncation only".into(),
                ],
            })
        }
    }
}

fn outcome_json(o: &Outcome) -> Value {
    match o {
        Outcome::PrimitiveForm {
            g,
            h,
            right_factor,
            left_factor,
        } => json!({
            "kind": "primitive_form",
            "g": pp_json(g),
            "h": pp_json(h),
            "right_factor": s(right_factor),
            "left_factor": s(left_factor),
        }),
        Outcome::AlgebraicBasis(Certificate::PowerProducts(b)) => json!({
            "kind": "algebraic_basis",
            "basis": b.iter().map(pp_text).collect::<Vec<_>>(),
        }),
        Outcome::AlgebraicBasis(Certificate::Case2(c)) => json!({
            "kind": "algebraic_basis",
            "case2": { "theta": s(&c.theta), "p": s(&c.p), "phi": s(&c.phi) },
        }),
        Outcome::Case3Candidate(r) => json!({
            "kind": "case3_candidate",
            "conditions_hold": r.conditions_hold,
            "admissible": r.admissible.iter().map(|(n, d)| json!({ "n": n, "d": d })).collect::<Vec<_>>(),
            "moot": r.moot,
        }),
        Outcome::ReducibleNonG {
            right_factor,
            left_factor,
        } => json!({
            "kind": "reducible_non_g",
            "right_factor": s(right_factor),
            "left_factor": s(left_factor),
        }),
        Outcome::IrreducibleFullGroup => json!({ "kind": "irreducible_full_group" }),
    }
}
