//! The `decomp` command: read a tensor, decompose it at the requested level
//! and report part norms and shares, or run the oracle suite.
//!
//! Exit codes: 0 success, 1 self-check failure or internal error, 2 usage or
//! input-format error, 3 symmetry or variance precondition violated.

mod report;
mod symmetry;

pub use report::{
    build_report, render_text, DecompositionReport, InputSummary, PartEntry, Quantity,
};
pub use symmetry::{classify_symmetry, SymmetryClass, CLASSIFY_TOL};

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::constitutive::{HallTensor, PiezoTensor};
use crate::error::Error;
use crate::format;
use crate::gl3::Family;
use crate::oracle::{self, SuiteReport};
use crate::tensor::{Metric, Tensor3};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_FORMAT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Tensors per operator in the self-check agreement pass.
pub const SELF_CHECK_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Gl3,
    O3,
    Sl3,
    So3,
}

impl Level {
    pub fn group(self) -> &'static str {
        match self {
            Level::Gl3 => "GL(3)",
            Level::O3 => "O(3)",
            Level::Sl3 => "SL(3)",
            Level::So3 => "SO(3)",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(
            self.to_possible_value()
                .expect("no skipped variants")
                .get_name(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Generic,
    Piezo,
    Hall,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(
            self.to_possible_value()
                .expect("no skipped variants")
                .get_name(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Plain,
    Tilde,
    Hat,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Plain => Family::Plain,
            FamilyArg::Tilde => Family::Tilde,
            FamilyArg::Hat => Family::Hat,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "decomp",
    version,
    about = "Invariant decomposition of third-order tensors in three dimensions"
)]
pub struct Args {
    /// Tensor JSON file.
    #[arg(long, value_name = "PATH", conflicts_with = "voigt", required_unless_present_any = ["voigt", "self_check", "formula_notes"])]
    pub input: Option<PathBuf>,

    /// Voigt-table JSON file (piezo mode).
    #[arg(long, value_name = "PATH")]
    pub voigt: Option<PathBuf>,

    /// Symmetry group of the decomposition.
    #[arg(long, value_enum, default_value_t = Level::So3)]
    pub level: Level,

    /// Isotopic family for the split of the mixed part; required at gl3.
    #[arg(long, value_enum, required_if_eq("level", "gl3"))]
    pub family: Option<FamilyArg>,

    /// Input class: generic, pair-symmetric (piezo) or pair-antisymmetric (Hall).
    #[arg(long, value_enum, default_value_t = Mode::Generic)]
    pub mode: Mode,

    /// Metric JSON file; Euclidean when absent.
    #[arg(long, value_name = "PATH")]
    pub metric: Option<PathBuf>,

    /// Write the JSON report here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Parts with norm at most this are reported as zero.
    #[arg(long, default_value_t = crate::DEFAULT_TOL)]
    pub tol: f64,

    /// Seed for the self-check sample tensors.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Run the oracle suite and print the rank ledger.
    #[arg(long)]
    pub self_check: bool,

    /// Regenerate the coefficient notes into PATH.
    #[arg(long, value_name = "PATH")]
    pub formula_notes: Option<PathBuf>,
}

/// Input after reading and, for the constitutive modes, ingestion.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Generic(Tensor3),
    Piezo { tensor: PiezoTensor, defect: f64 },
    Hall { tensor: HallTensor, defect: f64 },
}

impl Input {
    pub fn tensor(&self) -> &Tensor3 {
        match self {
            Input::Generic(t) => t,
            Input::Piezo { tensor, .. } => tensor.tensor(),
            Input::Hall { tensor, .. } => tensor.tensor(),
        }
    }

    pub fn defect(&self) -> f64 {
        match self {
            Input::Generic(_) => 0.0,
            Input::Piezo { defect, .. } | Input::Hall { defect, .. } => *defect,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_precondition() {
        EXIT_PRECONDITION
    } else {
        match e {
            Error::RankDeficient { .. } => EXIT_FAILURE,
            _ => EXIT_FORMAT,
        }
    }
}

pub fn load_input(args: &Args) -> crate::Result<Input> {
    match (args.mode, &args.input, &args.voigt) {
        (Mode::Piezo, None, Some(path)) => Ok(Input::Piezo {
            tensor: format::read_voigt(path)?,
            defect: 0.0,
        }),
        (_, None, Some(_)) => Err(usage("--voigt requires --mode piezo")),
        (mode, Some(path), None) => {
            let t = format::read_tensor(path)?;
            match mode {
                Mode::Generic => Ok(Input::Generic(t)),
                Mode::Piezo => {
                    let ing = PiezoTensor::ingest(t)?;
                    Ok(Input::Piezo {
                        tensor: ing.tensor,
                        defect: ing.defect,
                    })
                }
                Mode::Hall => {
                    let ing = HallTensor::ingest(t)?;
                    Ok(Input::Hall {
                        tensor: ing.tensor,
                        defect: ing.defect,
                    })
                }
            }
        }
        _ => Err(usage("exactly one of --input or --voigt is required")),
    }
}

pub fn load_metric(path: Option<&Path>) -> crate::Result<Metric> {
    path.map_or_else(|| Ok(Metric::euclidean()), format::read_metric)
}

fn write_json(path: &Path, json: &str, out: &mut dyn Write) -> crate::Result<()> {
    if path.as_os_str() == "-" {
        writeln!(out, "{json}")?;
    } else {
        std::fs::write(path, format!("{json}\n"))?;
    }
    Ok(())
}

fn run_decomposition(args: &Args, out: &mut dyn Write) -> crate::Result<i32> {
    if args.family.is_some() && args.level != Level::Gl3 {
        return Err(usage("--family only applies at --level gl3"));
    }
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(usage("--tol must be a non-negative number"));
    }
    let metric = load_metric(args.metric.as_deref())?;
    let input = load_input(args)?;
    let report = build_report(
        &input,
        args.level,
        args.family.map(Family::from),
        &metric,
        args.metric.is_some(),
        args.tol,
    )?;
    let value = serde_json::to_value(&report)?;
    let json = serde_json::to_string_pretty(&value)?;
    match &args.json {
        Some(path) if path.as_os_str() == "-" => write_json(path, &json, out)?,
        Some(path) => {
            write_json(path, &json, out)?;
            write!(out, "{}", render_text(&value))?;
        }
        None => write!(out, "{}", render_text(&value))?,
    }
    Ok(EXIT_OK)
}

/// `SuiteReport` with schema tag for the self-check JSON.
#[derive(Serialize)]
struct SelfCheckJson<'a> {
    schema: u32,
    #[serde(flatten)]
    suite: &'a SuiteReport,
}

pub fn render_suite(rep: &SuiteReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let mark = |ok: bool| if ok { "ok  " } else { "FAIL" };
    let _ = writeln!(s, "rank ledger (tolerance {:e})", oracle::RANK_TOL);
    for l in &rep.ledger {
        let names: Vec<String> = l.parts.iter().map(|p| p.operator.clone()).collect();
        let _ = writeln!(
            s,
            "  [{}] {:<16} {:<26} {} -> {}",
            mark(l.ok),
            l.equation,
            l.context,
            l.whole.operator,
            names.join(" + ")
        );
        for e in std::iter::once(&l.whole).chain(&l.parts) {
            if e.rank != e.expected {
                let _ = writeln!(
                    s,
                    "         {}: rank {} expected {}",
                    e.operator, e.rank, e.expected
                );
            }
        }
    }
    let _ = writeln!(s, "projector resolutions");
    for r in &rep.resolutions {
        let _ = writeln!(
            s,
            "  [{}] {:<22} idempotence {:.1e}  cross {:.1e}  sum {:.1e}",
            mark(r.ok),
            r.name,
            r.idempotence_defect,
            r.cross_defect,
            r.sum_defect
        );
    }
    let worst = rep.agreement.iter().map(|a| a.max_diff).fold(0.0, f64::max);
    let failing: Vec<&str> = rep
        .agreement
        .iter()
        .filter(|a| !a.ok)
        .map(|a| a.operator.as_str())
        .collect();
    let _ = writeln!(
        s,
        "oracle agreement: {} operators x {} tensors (seed {}), worst {:.1e}",
        rep.agreement.len(),
        rep.samples,
        rep.seed,
        worst
    );
    if !failing.is_empty() {
        let _ = writeln!(s, "  FAIL: {}", failing.join(", "));
    }
    let _ = writeln!(s, "coefficients");
    for c in &rep.coefficients {
        let fmt = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{:+.6}", (x * 1e6).round() / 1e6 + 0.0))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(
            s,
            "  [{}] {:<20} solved ({})  shipped ({})",
            mark(c.ok),
            c.system,
            fmt(&c.solved),
            fmt(&c.shipped)
        );
    }
    let _ = writeln!(s, "self-check {}", if rep.ok { "passed" } else { "FAILED" });
    s
}

fn run_self_check(args: &Args, out: &mut dyn Write) -> crate::Result<i32> {
    let metric = load_metric(args.metric.as_deref())?;
    let rep = oracle::run_suite(args.seed, SELF_CHECK_SAMPLES, &metric);
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&SelfCheckJson {
            schema: 1,
            suite: &rep,
        })?;
        write_json(path, &json, out)?;
    }
    if args.json.as_deref().is_none_or(|p| p.as_os_str() != "-") {
        write!(out, "{}", render_suite(&rep))?;
    }
    Ok(if rep.ok { EXIT_OK } else { EXIT_FAILURE })
}

/// Runs parsed arguments, writing reports to `out` and errors to `err`.
pub fn run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| {
        let mut code = EXIT_OK;
        if let Some(path) = &args.formula_notes {
            std::fs::write(path, oracle::formula_notes())?;
            writeln!(out, "wrote {}", path.display())?;
        }
        if args.self_check {
            code = code.max(run_self_check(args, out)?);
        }
        if args.input.is_some() || args.voigt.is_some() {
            code = code.max(run_decomposition(args, out)?);
        }
        Ok(code)
    })();
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "decomp: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `argv` and runs; clap usage errors exit 2.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Args::try_parse_from(argv) {
        Ok(args) => run(&args, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FORMAT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            code
        }
    }
}
