//! Command-line front end. `run` parses arguments, performs the computation
//! and returns the text to print together with the exit status, so the binary
//! stays a thin wrapper and the behaviour is testable in-process.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::assembler::{self, FiltrationTable};
use crate::engine::render::{self as page_render, PageDoc};
use crate::engine::{PageIndex, Sseq, Window};
use crate::motivic::BaseModel;
use crate::slices::Theory;
use crate::zeta;

/// Environment variable naming the default fixture directory for `verify`.
pub const FIXTURES_ENV: &str = "SLICESS_FIXTURES";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("{path}: {why}")]
    Io { path: PathBuf, why: String },
}


macro_rules! compute {
    ($e:expr) => {
        $e.map_err(|e| CliError::Compute(e.to_string()))
    };
}

#[derive(Debug, Parser)]
#[command(name = "slicess", version, about = "Slice spectral sequences of KGL, KQ and KW with mod 2^n coefficients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a page E^r of a slice spectral sequence.
    Page(PageArgs),
    /// Print the filtration quotients of the abutment in a range of degrees.
    Groups(GroupsArgs),
    /// Witt group data read off the KW columns.
    Witt(WittArgs),
    /// 2-adic valuations of zeta special values, compared across routes.
    Zeta(ZetaArgs),
    /// Recompute golden fixtures and report the first mismatch.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SseqArgs {
    #[arg(long, value_parser = parse_theory)]
    pub theory: Theory,
    /// Coefficient modulus 2^n, given as the power of two itself.
    #[arg(long = "mod", default_value = "2", value_parser = parse_modulus)]
    pub modulus: u32,
    /// R, Qbar, Q2, Fl:<1|3|prime>, Ql:<1|3|prime>, Q or numberring:r1=..,r2=..,s=..,t=..,tplus=..
    #[arg(long, value_parser = parse_base)]
    pub base: BaseModel,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub weight: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PageFormat {
    Json,
    Csv,
    Ascii,
    Tikz,
}

#[derive(Debug, Args)]
pub struct PageArgs {
    #[command(flatten)]
    pub sseq: SseqArgs,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub p: RangeInclusive<i64>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub q: RangeInclusive<i64>,
    /// 1, 2 or inf.
    #[arg(long, default_value = "2")]
    pub r: PageIndex,
    #[arg(long, value_enum, default_value = "ascii")]
    pub format: PageFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupsFormat {
    Json,
    Ascii,
    Text,
    Latex,
}

#[derive(Debug, Args)]
pub struct GroupsArgs {
    #[command(flatten)]
    pub sseq: SseqArgs,
    /// Degrees p of the abutment π_{p,w}.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub n: RangeInclusive<i64>,
    #[arg(long, value_enum, default_value = "ascii")]
    pub format: GroupsFormat,
    /// Shorthand for --format latex.
    #[arg(long)]
    pub latex: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct WittArgs {
    #[arg(long, value_parser = parse_base)]
    pub base: BaseModel,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Only Q is supported.
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long, value_parser = parse_range, default_value = "0..5")]
    pub k: RangeInclusive<i64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Fixture files or directories; defaults to $SLICESS_FIXTURES.
    pub paths: Vec<PathBuf>,
    /// Ignore cells on the window boundary, where truncation can change E^r.
    #[arg(long)]
    pub skip_boundary: bool,
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_base(s: &str) -> Result<BaseModel, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_modulus(s: &str) -> Result<u32, String> {
    let m: u64 = s.parse().map_err(|_| format!("`{s}` is not a power of two ≥ 2"))?;
    if m < 2 || !m.is_power_of_two() {
        return Err(format!("`{s}` is not a power of two ≥ 2"));
    }
    Ok(m.trailing_zeros())
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = || format!("`{s}` is not a range a..b");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(format!("`{s}` is empty"));
    }
    Ok(a..=b)
}

/// What the binary prints, and the status it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

/// Run the command line `args`, including the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.command) {
        Ok(o) => o,
        // Requests the library cannot answer are usage errors; only a
        // fixture mismatch exits with 1.
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn execute(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Page(a) => page(&a).map(Outcome::ok),
        Command::Groups(a) => groups(&a).map(Outcome::ok),
        Command::Witt(a) => witt(&a).map(Outcome::ok),
        Command::Zeta(a) => zeta_cmd(&a).map(Outcome::ok),
        Command::Verify(a) => verify(&a),
    }
}

fn sseq(a: &SseqArgs) -> Result<Sseq, CliError> {
    Sseq::new(a.base, a.theory, a.modulus, a.weight).map_err(|e| CliError::Usage(e.to_string()))
}

fn page(a: &PageArgs) -> Result<String, CliError> {
    let s = sseq(&a.sseq)?;
    let window = Window::new((*a.p.start(), *a.p.end()), (*a.q.start(), *a.q.end()));
    let page = s.page(a.r, window).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(match a.format {
        PageFormat::Json => page_render::to_json(&page) + "\n",
        PageFormat::Csv => page_render::to_csv(&page),
        PageFormat::Ascii => page_render::to_ascii(&page),
        PageFormat::Tikz => page_render::to_tikz(&page),
    })
}

fn group_tables(a: &GroupsArgs) -> Result<Vec<FiltrationTable>, CliError> {
    let s = &a.sseq;
    compute!(assembler::filtrations(&s.base, s.theory, s.modulus, a.n.clone(), s.weight))
}

fn groups(a: &GroupsArgs) -> Result<String, CliError> {
    let tables = group_tables(a)?;
    let format = if a.latex { GroupsFormat::Latex } else { a.format };
    Ok(match format {
        GroupsFormat::Json => serde_json::to_string_pretty(&tables).expect("tables serialize") + "\n",
        GroupsFormat::Ascii | GroupsFormat::Text => assembler::to_text(&tables),
        GroupsFormat::Latex => assembler::to_latex(&tables),
    })
}

#[derive(Debug, Serialize)]
struct WittReport {
    base: String,
    /// log₂|W/2|.
    quotient: String,
    /// log₂|₂W|.
    torsion: String,
    /// dim I^q/I^{q+1}, q = 0..8.
    graded: Vec<u32>,
}

fn witt(a: &WittArgs) -> Result<String, CliError> {
    if let BaseModel::NumberRing(_) = a.base {
        let tables: Vec<FiltrationTable> = compute!((0..8).map(|p| assembler::kw_integral(&a.base, p, 0)).collect::<Result<Vec<_>, _>>())?;
        return Ok(match a.format {
            ReportFormat::Json => serde_json::to_string_pretty(&tables).expect("tables serialize") + "\n",
            ReportFormat::Text => assembler::to_text(&tables),
        });
    }
    let (quot, tors) = compute!(assembler::witt_mod2_logs(&a.base))?;
    let report = WittReport {
        base: a.base.tag(),
        quotient: quot.to_string(),
        torsion: tors.to_string(),
        graded: assembler::witt_grading(&a.base, 8).dims,
    };
    Ok(match a.format {
        ReportFormat::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        ReportFormat::Text => {
            let graded: Vec<String> = report.graded.iter().map(u32::to_string).collect();
            format!(
                "base {}\nlog2 |W/2| = {}\nlog2 |2W| = {}\ndim I^q/I^(q+1), q = 0..8: {}\n",
                report.base,
                report.quotient,
                report.torsion,
                graded.join(" ")
            )
        }
    })
}

fn zeta_cmd(a: &ZetaArgs) -> Result<String, CliError> {
    if !matches!(a.field.as_str(), "Q" | "q") {
        return Err(CliError::Usage(format!("field `{}` is not supported; only Q has a Bernoulli oracle", a.field)));
    }
    if *a.k.start() < 0 {
        return Err(CliError::Usage("k must be nonnegative".into()));
    }
    let reports = compute!(zeta::reports_q(a.k.clone()))?;
    Ok(match a.format {
        ReportFormat::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        ReportFormat::Text => zeta::to_text(&reports),
    })
}

/// A golden fixture: either a page document, compared cell by cell, or a
/// command line with its expected output, compared line by line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Fixture {
    Page(PageDoc),
    Command { args: Vec<String>, expected: String },
}

/// Recompute the page a document describes.
pub fn recompute_page(doc: &PageDoc) -> Result<PageDoc, CliError> {
    let m = &doc.meta;
    let theory = parse_theory(&m.theory).map_err(CliError::Compute)?;
    let base = parse_base(&m.base).map_err(CliError::Compute)?;
    if !m.modulus.is_power_of_two() || m.modulus < 2 {
        return Err(CliError::Compute(format!("bad modulus {}", m.modulus)));
    }
    let r: PageIndex = m.page.parse().map_err(CliError::Compute)?;
    let s = compute!(Sseq::new(base, theory, m.modulus.trailing_zeros(), m.weight))?;
    let page = compute!(s.page(r, m.window))?;
    Ok(page_render::to_doc(&page))
}

/// The first difference between a fixture and a fresh computation.
pub fn check_fixture(fixture: &Fixture, skip_boundary: bool) -> Result<Option<String>, CliError> {
    match fixture {
        Fixture::Page(doc) => Ok(recompute_page(doc)?.first_mismatch(doc, skip_boundary)),
        Fixture::Command { args, expected } => {
            let out = run(std::iter::once("slicess".to_string()).chain(args.iter().cloned()));
            if out.code != EXIT_OK {
                return Ok(Some(format!("exit {}: {}", out.code, out.stderr.trim_end())));
            }
            Ok(first_line_mismatch(&out.stdout, expected))
        }
    }
}

fn first_line_mismatch(got: &str, want: &str) -> Option<String> {
    let (g, w): (Vec<&str>, Vec<&str>) = (got.lines().collect(), want.lines().collect());
    for i in 0..g.len().max(w.len()) {
        let (a, b) = (g.get(i).copied(), w.get(i).copied());
        if a != b {
            return Some(format!("line {}: got {:?}, expected {:?}", i + 1, a.unwrap_or("<eof>"), b.unwrap_or("<eof>")));
        }
    }
    None
}

fn fixture_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let io = |p: &Path, e: std::io::Error| CliError::Io { path: p.to_path_buf(), why: e.to_string() };
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            for entry in fs::read_dir(p).map_err(|e| io(p, e))? {
                let path = entry.map_err(|e| io(p, e))?.path();
                if path.extension().is_some_and(|x| x == "json") {
                    out.push(path);
                }
            }
        } else {
            out.push(p.clone());
        }
    }
    out.sort();
    Ok(out)
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let paths = if a.paths.is_empty() {
        match std::env::var_os(FIXTURES_ENV) {
            Some(dir) => vec![PathBuf::from(dir)],
            None => return Err(CliError::Usage(format!("no fixtures given and ${FIXTURES_ENV} is unset"))),
        }
    } else {
        a.paths.clone()
    };
    let files = fixture_files(&paths)?;
    if files.is_empty() {
        return Err(CliError::Usage("no fixture files found".into()));
    }
    let mut stdout = String::new();
    for path in &files {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.clone(), why: e.to_string() })?;
        let fixture: Fixture =
            serde_json::from_str(&text).map_err(|e| CliError::Io { path: path.clone(), why: e.to_string() })?;
        let diff = check_fixture(&fixture, a.skip_boundary).unwrap_or_else(|e| Some(format!("cannot recompute: {e}")));
        if let Some(diff) = diff {
            stdout.push_str(&format!("FAIL {}: {diff}\n", path.display()));
            return Ok(Outcome { code: EXIT_MISMATCH, stdout, stderr: String::new() });
        }
        stdout.push_str(&format!("ok   {}\n", path.display()));
    }
    Ok(Outcome::ok(stdout))
}
