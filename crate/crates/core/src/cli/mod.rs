//! Command-line front end: expression parsing, suite orchestration and reports.

pub mod config;
pub mod expr;
pub mod report;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::coeff::MultiPoly;
use crate::invariants::{
    degree_warning, parity_check, stability_table, witness_min_rank, witness_point, Invariant, InvariantError,
};
use crate::lie::{AlgebraSpec, Family};
use crate::pbw::hc::{hc_omega, highest_weight_eigenvalue};
use crate::pbw::Pbw;
use crate::relations::all_pass;
use crate::symfun::{eigenvalue_bridge, generator, wprime_invariance_check, GenKind, ShiftedSymFn, WeightSeq};

pub use config::{CMode, ConfigError, OutputFormat, Suite, SuiteConfig, JOBS_ENV};
pub use expr::{parse_expr, parse_expr_for, Expr, ParseError, ParseErrorKind};
pub use report::{emit_report, envelope, report_json, REPORT_VERSION};
pub use suite::{default_config, run_suite, SuiteError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "centralizer", version, about = "Exact checks of centralizer constructions in U(gl), U(o), U(sp)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Algebra: gl:N, o:N, sp:N, or a family name (gl, o-odd, sp, o-even) together with --n.
    #[arg(long)]
    spec: Option<String>,
    /// Rank n.
    #[arg(long)]
    n: Option<usize>,
    /// Centralizer parameter m (m < n).
    #[arg(long)]
    m: Option<usize>,
    /// Truncation order K.
    #[arg(long, short = 'K')]
    order: Option<usize>,
    /// The parameter c: `sym` or a rational p/q.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Suite: ternary, twisted, tensor, commutator, centralizer, projection, qdet, reference.
    #[arg(long)]
    suite: Option<String>,
    /// Output format: json or text.
    #[arg(long)]
    format: Option<String>,
    /// Worker threads.
    #[arg(long, env = JOBS_ENV)]
    jobs: Option<usize>,
    /// Inject a known defect so that the checks must fail.
    #[arg(long)]
    perturb: bool,
    /// File with key = value lines mirroring the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Yangian or twisted Yangian relations for the evaluation images.
    CheckRelations(Common),
    /// Coherence of the images under the projections π_{n,c}.
    CheckProjection(Common),
    /// Centrality of the quantum determinant coefficients.
    Qdet(Common),
    /// Harish-Chandra image of a weight-zero element.
    HcImage {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        expr: String,
    },
    /// Highest-weight eigenvalue of an element, compared with its Harish-Chandra image.
    Eigenvalue {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        expr: String,
        /// Weight as `c=<rational|sym>; dev=[k:value,...]`.
        #[arg(long)]
        weight: String,
    },
    /// Shifted symmetric generators p, e, h.
    Symfun {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "p")]
        kind: String,
        /// Index of the generator.
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Witness point and Jacobian rank for the trace and corner invariants.
    Invariants(Common),
    /// PBW normal form of an expression.
    NormalForm {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        expr: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{0}")]
    Other(String),
}

fn other(e: impl std::fmt::Display) -> CliError {
    CliError::Other(e.to_string())
}

fn build_config(common: &Common, default_suite: Option<Suite>) -> Result<SuiteConfig, CliError> {
    let file = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| other(format!("{}: {e}", path.display())))?;
            config::parse_config_file(&text)?
        }
        None => Default::default(),
    };
    let pick = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());
    let n = match (common.n, file.get("n")) {
        (Some(n), _) => Some(n),
        (None, Some(v)) => Some(config::parse_value("n", v)?),
        (None, None) => None,
    };
    let spec_text = pick(&common.spec, "spec").ok_or(ConfigError::Missing("--spec"))?;
    let spec = config::resolve_spec(&spec_text, n)?;
    let m = match (common.m, file.get("m")) {
        (Some(m), _) => m,
        (None, Some(v)) => config::parse_value("m", v)?,
        (None, None) => 0,
    };
    let order = match (common.order, file.get("order")) {
        (Some(k), _) => k,
        (None, Some(v)) => config::parse_value("order", v)?,
        (None, None) => 3,
    };
    let c = pick(&common.c, "c").map(|s| s.parse()).transpose()?.unwrap_or(CMode::Symbolic);
    let suite = match pick(&common.suite, "suite") {
        Some(s) => s.parse()?,
        None => default_suite.unwrap_or_else(|| Suite::default_for(spec.family)),
    };
    let format = pick(&common.format, "format").map(|s| s.parse()).transpose()?.unwrap_or_default();
    let jobs = match (common.jobs, file.get("jobs")) {
        (Some(j), _) => j,
        (None, Some(v)) => config::parse_value("jobs", v)?,
        (None, None) => 1,
    };
    let perturb = common.perturb || file.get("perturb").map(|v| v == "true").unwrap_or(false);
    Ok(SuiteConfig { spec, m, order, c, suite, format, jobs, perturb })
}

fn write_value(out: &mut dyn Write, value: &Value) -> std::io::Result<()> {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    out.write_all(s.as_bytes())
}

fn result_document(config: &SuiteConfig, result: Value) -> Value {
    let mut obj = envelope(config);
    obj.insert("result".into(), result);
    Value::Object(obj)
}

fn emit_result(out: &mut dyn Write, config: &SuiteConfig, result: Value, text: String) -> Result<(), CliError> {
    match config.format {
        OutputFormat::Json => write_value(out, &result_document(config, result)).map_err(other),
        OutputFormat::Text => out.write_all(text.as_bytes()).map_err(other),
    }
}

fn run_checks(out: &mut dyn Write, common: &Common, suite: Option<Suite>) -> Result<i32, CliError> {
    let config = build_config(common, suite)?;
    let reports = run_suite(&config)?;
    out.write_all(&emit_report(Some(envelope(&config)), &reports, config.format)).map_err(other)?;
    Ok(if all_pass(&reports) { EXIT_PASS } else { EXIT_FAIL })
}

fn element_for(config: &SuiteConfig, src: &str) -> Result<crate::pbw::UeaElement<MultiPoly>, CliError> {
    let e = parse_expr_for(src, config.spec)?;
    let alg = Pbw::<MultiPoly>::hc(config.spec);
    e.to_element(&alg, &config.c.as_poly()).map_err(other)
}

fn hc_image(out: &mut dyn Write, common: &Common, src: &str) -> Result<i32, CliError> {
    let config = build_config(common, None)?;
    let a = element_for(&config, src)?;
    let image = hc_omega(&a).map_err(other)?;
    let symmetric = wprime_invariance_check(&image, config.spec);
    let result = json!({ "expr": src, "image": image.to_string(), "shifted_symmetric": symmetric });
    emit_result(out, &config, result, format!("{image}\nshifted symmetric: {symmetric}\n"))?;
    Ok(EXIT_PASS)
}

fn eigenvalue(out: &mut dyn Write, common: &Common, src: &str, weight: &str) -> Result<i32, CliError> {
    let config = build_config(common, None)?;
    let a = element_for(&config, src)?;
    let w: WeightSeq = weight.parse().map_err(other)?;
    let at = w.at_rank(config.spec.family, config.spec.rank);
    let value = highest_weight_eigenvalue(&a, &at).map_err(other)?;
    let agrees = eigenvalue_bridge(&a, &at).map_err(other)?;
    let result = json!({ "expr": src, "weight": weight, "eigenvalue": value.to_string(), "agrees": agrees });
    emit_result(out, &config, result, format!("{value}\nagrees with the Verma action: {agrees}\n"))?;
    Ok(if agrees { EXIT_PASS } else { EXIT_FAIL })
}

fn symfun(out: &mut dyn Write, common: &Common, kind: &str, degree: usize, weight: Option<&str>) -> Result<i32, CliError> {
    let config = build_config(common, None)?;
    let kind: GenKind = kind.parse().map_err(other)?;
    let c = config.c.as_poly();
    let spec = config.spec;
    let f = generator(spec, kind, degree, &c).map_err(other)?;
    let seq = ShiftedSymFn::from_generator(spec.family, kind, degree, &c, 1..=spec.rank.max(1)).map_err(other)?;
    let coherent = seq.is_coherent();
    let symmetric = wprime_invariance_check(&f, spec);
    let mut result = json!({
        "generator": format!("{kind}{degree}"),
        "value": f.to_string(),
        "coherent": coherent,
        "shifted_symmetric": symmetric,
    });
    let mut text = format!("{f}\ncoherent: {coherent}\nshifted symmetric: {symmetric}\n");
    if let Some(wtext) = weight {
        let w: WeightSeq = wtext.parse().map_err(other)?;
        let v = w.evaluate(&f, spec.family, spec.rank);
        result["at_weight"] = Value::String(v.to_string());
        text.push_str(&format!("at weight: {v}\n"));
    }
    emit_result(out, &config, result, text)?;
    Ok(if coherent && symmetric { EXIT_PASS } else { EXIT_FAIL })
}

fn invariants(out: &mut dyn Write, common: &Common) -> Result<i32, CliError> {
    let mut config = build_config(common, None)?;
    if common.order.is_none() && !config_has(common, "order") {
        config.order = 2;
    }
    let spec = config.spec;
    let k = config.order as u32;
    let w = witness_point(spec, config.m, k)?;
    let rank = w.family_rank();
    let triangular = w.is_triangular();
    let antisymmetric = w.is_antisymmetric();
    let stability = if spec.rank >= 2 { stability_table(spec, k)? } else { Vec::new() };
    let unstable: Vec<String> = stability.iter().filter(|(_, ok)| !ok).map(|(inv, _)| inv.to_string()).collect();
    let mut parity_failures = Vec::new();
    if spec.family != Family::A {
        let labels = crate::lie::index_labels(spec.family, config.m);
        for power in 1..=k {
            for &i in &labels {
                for &j in &labels {
                    let inv = Invariant::Corner { i, j, power };
                    if !parity_check(spec, inv)? {
                        parity_failures.push(inv.to_string());
                    }
                }
            }
        }
    }
    let warnings: Vec<String> = degree_warning(spec, config.m, k).into_iter().collect();
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    let evaluations: Vec<Value> = w
        .evaluations()
        .into_iter()
        .map(|(inv, f)| json!({ "invariant": inv.to_string(), "at_witness": f.to_string() }))
        .collect();
    let blocks: Map<String, Value> = w.blocks.iter().map(|(inv, omega)| (inv.to_string(), json!(omega))).collect();
    let ok = rank == w.invariants.len() && triangular && antisymmetric && unstable.is_empty() && parity_failures.is_empty();
    let result = json!({
        "min_rank": witness_min_rank(spec, config.m, k),
        "blocks": blocks,
        "parameters": w.parameters.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "evaluations": evaluations,
        "jacobian_rank": rank,
        "expected_rank": w.invariants.len(),
        "triangular": triangular,
        "antisymmetric": antisymmetric,
        "stability_checked": stability.len(),
        "unstable": unstable,
        "parity_failures": parity_failures,
        "warnings": warnings,
    });
    let text = format!(
        "jacobian rank {rank} of {}\ntriangular: {triangular}\nstability: {} checked, {} failed\nparity failures: {}\n",
        w.invariants.len(),
        stability.len(),
        unstable.len(),
        parity_failures.len()
    );
    emit_result(out, &config, result, text)?;
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn config_has(common: &Common, key: &str) -> bool {
    common
        .config
        .as_ref()
        .and_then(|p| std::fs::read_to_string(p).ok())
        .and_then(|t| config::parse_config_file(&t).ok())
        .map(|m| m.contains_key(key))
        .unwrap_or(false)
}

fn normal_form(out: &mut dyn Write, common: &Common, src: &str) -> Result<i32, CliError> {
    let config = build_config(common, None)?;
    let e = parse_expr_for(src, config.spec)?;
    let a = element_for(&config, src)?;
    let result = json!({ "expr": e.to_string(), "normal_form": a.to_string(), "terms": a.num_terms() });
    emit_result(out, &config, result, format!("{a}\n"))?;
    Ok(EXIT_PASS)
}

/// Entry point shared by the binary and the tests. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::CheckRelations(c) => run_checks(out, c, None),
        Command::CheckProjection(c) => run_checks(out, c, Some(Suite::Projection)),
        Command::Qdet(c) => run_checks(out, c, Some(Suite::Qdet)),
        Command::HcImage { common, expr } => hc_image(out, common, expr),
        Command::Eigenvalue { common, expr, weight } => eigenvalue(out, common, expr, weight),
        Command::Symfun { common, kind, degree, weight } => symfun(out, common, kind, *degree, weight.as_deref()),
        Command::Invariants(c) => invariants(out, c),
        Command::NormalForm { common, expr } => normal_form(out, common, expr),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// The parameter set used for golden files.
pub fn reference_spec() -> AlgebraSpec {
    AlgebraSpec::gl(2)
}
