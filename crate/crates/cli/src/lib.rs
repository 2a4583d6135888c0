//! Front end for `motivic`. [`run`] takes the argument list and two sinks
//! and returns the process exit code, so tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 disagreement (or no polynomial fit under
//! `--expect-polynomial`), 2 usage or parse error, 3 budget refusal.

pub mod args;
pub mod cache;
pub mod output;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::Parser;
use motivic_core::analysis::{self, AnalysisError, AnalysisOptions, PolyStatus, VerifyReport};
use motivic_core::catalog::{self, CatalogError};
use motivic_core::enumerate::{Budget, CountMethod, EnumError, Parallelism};
use motivic_core::routes::{self, RouteError};
use motivic_core::space::SpaceError;
use motivic_core::{parse_space, SpaceExpr};
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use args::{Cli, FitArgs, Verb};
use cache::Cache;
use output::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Spaces checked by `report`.
pub const REPORT_CORPUS: &[&str] = &[
    "GL(2)", "GL(3)", "SL(2)", "Sp(4)", "GSp(2)", "Gm", "A(2)", "P(2)", "MatRank(3,1)", "Det(2)", "Det(3)",
    "AltRank(4,1)", "Pf(4)", "XSp(1,2)", "LSp(2)", "B(2)", "B(4)", "PAlt(4)", "SLrep(2;1)", "GL(2)/Gm",
    "GLmodO(2,+)", "GLmodO(2,-)", "GLmodO(3)", "Inc(3)", "Y(3)", "Sbar(3,1)", "Sphere(2)", "Sphere(3)",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{err}")]
    Parse { input: String, err: SpaceError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Budget(_) => "budget",
            CliError::Failed(_) => "failed",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Failed(_) | CliError::Io(_) => EXIT_DISAGREE,
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::BudgetExceeded { .. } => CliError::Budget(format!("{e}; raise it with --budget")),
            EnumError::InvalidParameter(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::InvalidParameter(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Catalog(c) => c.into(),
            AnalysisError::Enumeration(c) => c.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<RouteError> for CliError {
    fn from(e: RouteError) -> Self {
        match e {
            RouteError::Enumeration(c) => c.into(),
            RouteError::Catalog(c) => c.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
}

fn report_error(e: &CliError, json: bool, err: &mut dyn Write) {
    let column = match e {
        CliError::Parse { err, .. } => Some(err.column()),
        _ => None,
    };
    let _ = if json {
        let doc = ErrorJson { error: e.code(), message: e.to_string(), exit_code: e.exit_code(), column };
        writeln!(err, "{}", serde_json::to_string(&doc).unwrap_or_default())
    } else {
        let mut text = format!("error[{}]: {e}", e.code());
        if let CliError::Parse { input, err: pe } = e {
            text.push_str(&format!("\n  {input}\n  {}^", " ".repeat(pe.column().saturating_sub(1))));
        }
        writeln!(err, "{text}")
    };
}

fn parse(text: &str) -> Result<SpaceExpr, CliError> {
    parse_space(text).map_err(|err| CliError::Parse { input: text.to_string(), err })
}

fn emit<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(doc).map_err(|e| CliError::Failed(e.to_string()))?)?;
    Ok(())
}

/// Entry point. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            report_error(&e, cli.json, err);
            e.exit_code()
        }
    }
}

fn options(budget: Budget, fit: &FitArgs) -> AnalysisOptions {
    AnalysisOptions { budget, parallelism: Parallelism::Parallel, max_degree: fit.max_degree }
}

fn poly_exit(expect: bool, status: Option<PolyStatus>) -> i32 {
    if expect && !matches!(status, Some(PolyStatus::IntegerPolynomial | PolyStatus::RationalPolynomial)) {
        EXIT_DISAGREE
    } else {
        EXIT_OK
    }
}

/// Budget refusals with no other value at that prime are fatal for `verify`.
fn starved_prime(report: &VerifyReport) -> Option<String> {
    report.records.iter().find_map(|r| {
        let empty = r.symbolic.is_none() && r.formula.is_none() && r.enumeration.is_none();
        if empty {
            r.enumeration_note.as_ref().map(|n| format!("q={}: {n}", r.q))
        } else {
            None
        }
    })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let budget = cli.budget.0;
    match &cli.verb {
        Verb::Class { space } => {
            let expr = parse(space)?;
            let (class, note) = match catalog::symbolic_class(&expr) {
                Ok(c) => (Some(c), None),
                Err(e @ (CatalogError::NoSymbolicClass(_) | CatalogError::Class(_))) => (None, Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            let doc = ClassJson::new(expr.render(), class.as_ref(), catalog::expected_dimension(&expr), note);
            if cli.json {
                emit(out, &doc)?;
            } else {
                doc.write_table(out)?;
            }
            Ok(EXIT_OK)
        }
        Verb::Count { space, q } => {
            let expr = parse(space)?;
            let doc = cached_count(&expr, *q, &budget, &cli.cache)?;
            if cli.json {
                emit(out, &doc)?;
            } else {
                doc.write_table(out)?;
            }
            Ok(EXIT_OK)
        }
        Verb::Verify { space, fit } => {
            let expr = parse(space)?;
            let report = analysis::verify_space(&expr, &fit.primes, &options(budget, fit))?;
            if let Some(msg) = starved_prime(&report) {
                return Err(CliError::Budget(msg));
            }
            if cli.json {
                emit(out, &VerifyJson::from(&report))?;
            } else {
                write_verify_table(&report, out)?;
            }
            if !report.agrees() {
                return Ok(EXIT_DISAGREE);
            }
            Ok(poly_exit(fit.expect_polynomial, report.poly.verdict.map(|v| v.status)))
        }
        Verb::Detect { space, fit } => {
            let expr = parse(space)?;
            let report = analysis::detect_polynomial(&expr, &fit.primes, &options(budget, fit))?;
            if cli.json {
                emit(out, &DetectJson::from(&report))?;
            } else {
                write_detect_table(&report, out)?;
            }
            Ok(poly_exit(fit.expect_polynomial, report.verdict.map(|v| v.status)))
        }
        Verb::Semismall { n } => {
            let report = analysis::check_semismall(*n)?;
            if cli.json {
                emit(out, &report)?;
            } else {
                write_semismall_table(&report, out)?;
            }
            Ok(if report.all_pass { EXIT_OK } else { EXIT_DISAGREE })
        }
        Verb::Decomp { n, primes } => {
            let report = analysis::check_decomposition(*n, primes, &budget, Parallelism::Parallel)?;
            if cli.json {
                emit(out, &DecompJson::from(&report))?;
            } else {
                write_decomp_table(&report, out)?;
            }
            Ok(if report.holds() { EXIT_OK } else { EXIT_DISAGREE })
        }
        Verb::Report { primes } => {
            let opts = AnalysisOptions { budget, ..AnalysisOptions::default() };
            let reports = REPORT_CORPUS
                .iter()
                .map(|text| analysis::verify_space(&parse(text)?, primes, &opts).map_err(CliError::from))
                .collect::<Result<Vec<_>, _>>()?;
            let all_agree = reports.iter().all(VerifyReport::agrees);
            if cli.json {
                emit(out, &ReportJson { primes: primes.clone(), all_agree, spaces: reports.iter().map(VerifyJson::from).collect() })?;
            } else {
                write_report_table(&reports, out)?;
            }
            Ok(if all_agree { EXIT_OK } else { EXIT_DISAGREE })
        }
    }
}

/// The method `count_record` will settle on, decided without running it.
fn planned_method(expr: &SpaceExpr, q: u32, budget: &Budget) -> Result<CountMethod, CliError> {
    if let Some(size) = routes::search_space(expr, q) {
        if budget.admits(size.to_u128()) {
            return Ok(CountMethod::Enumeration);
        }
    }
    match routes::formula_value(expr, q)? {
        Some(v) if v.is_integer() => Ok(CountMethod::Formula),
        _ => Ok(CountMethod::Symbolic),
    }
}

pub fn cached_count(expr: &SpaceExpr, q: u32, budget: &Budget, path: &std::path::Path) -> Result<CountJson, CliError> {
    let mut cache = Cache::open(path)?;
    let space = expr.render();
    let method = planned_method(expr, q, budget)?;
    if let Some(hit) = cache.get(&space, q, method) {
        return Ok(CountJson { record: hit.clone(), cached: true });
    }
    let record = routes::count_record(expr, q, budget, Parallelism::Parallel)?;
    cache.insert(record.clone())?;
    Ok(CountJson { record, cached: false })
}
