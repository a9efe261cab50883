//! The `asphere` command line: argument parsing, configuration and output.
//!
//! [`run`] does everything except touching the process, so tests can drive
//! it with argument vectors and inspect the output and exit code.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use crate::cases::{classify_with, enumerate_cases, tables, open_cases, CaseSpec, CaseVerdict, ExceptionItem};
use crate::star_graph::StarGraph;
use crate::theory::{ClosedTheory, CoefficientTheory, Relation};
use crate::weight::{check_weight_test, parse_rational, search_weight_function, FamilyKind, WeightFunction, WeightReport};
use crate::word::{Alphabet, MixedWord};
use crate::{format_rational, Rational};

pub const CONFIG_ENV: &str = "ASPHERE_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_cycle_len: usize,
    pub weight_grid: Vec<Rational>,
    pub output_format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_cycle_len: 4,
            weight_grid: vec![Rational::from_integer(0), Rational::new(1, 2), Rational::from_integer(1)],
            output_format: Format::Text,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad config {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("max_cycle_len must be at least 2, got {0}")]
    CycleLen(usize),
    #[error("weight grid is empty")]
    EmptyGrid,
    #[error("bad grid value: {0}")]
    Grid(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    max_cycle_len: Option<usize>,
    weight_grid: Option<Vec<toml::Value>>,
    output_format: Option<Format>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Config::from_toml(&text).map_err(|e| match e {
            ConfigError::Parse { message, .. } => ConfigError::Parse {
                path: path.to_path_buf(),
                message,
            },
            other => other,
        })
    }

    pub fn from_toml(text: &str) -> Result<Config, ConfigError> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: PathBuf::new(),
            message: e.to_string(),
        })?;
        let mut cfg = Config::default();
        if let Some(n) = file.max_cycle_len {
            cfg.max_cycle_len = n;
        }
        if let Some(grid) = file.weight_grid {
            cfg.weight_grid = grid
                .iter()
                .map(|v| match v {
                    toml::Value::String(s) => parse_rational(s).map_err(|e| ConfigError::Grid(e.to_string())),
                    toml::Value::Integer(i) => Ok(Rational::from_integer(*i)),
                    other => Err(ConfigError::Grid(other.to_string())),
                })
                .collect::<Result<_, _>>()?;
        }
        if let Some(f) = file.output_format {
            cfg.output_format = f;
        }
        cfg.validate()
    }

    pub fn validate(self) -> Result<Config, ConfigError> {
        if self.max_cycle_len < 2 {
            return Err(ConfigError::CycleLen(self.max_cycle_len));
        }
        if self.weight_grid.is_empty() {
            return Err(ConfigError::EmptyGrid);
        }
        Ok(self)
    }
}

pub fn parse_grid(s: &str) -> Result<Vec<Rational>, ConfigError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_rational(t).map_err(|e| ConfigError::Grid(e.to_string())))
        .collect()
}

#[derive(Parser, Debug)]
#[command(name = "asphere", version, about = "Asphericity checks for the length-nine relator")]
struct Cli {
    /// TOML config file; falls back to $ASPHERE_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    max_cycle_len: Option<usize>,
    /// Comma separated weights, e.g. `0,1/2,1`.
    #[arg(long, global = true)]
    grid: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct TheoryArgs {
    /// Extra relations, e.g. `a=d^-1, d=g`.
    #[arg(long, default_value = "")]
    relations: String,
    /// Drop the standing assumptions on the coefficients.
    #[arg(long)]
    free: bool,
}

impl TheoryArgs {
    fn theory(&self) -> Result<ClosedTheory, String> {
        let rels = self
            .relations
            .split([',', ';'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(Relation::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let base = if self.free {
            CoefficientTheory::free('a'..='z')
        } else {
            CoefficientTheory::base()
        };
        Ok(base.with_relations(rels).close())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the reduced form of a word.
    Parse {
        word: String,
        /// Stable letters.
        #[arg(long, default_value = "t,x,u")]
        stable: String,
        /// Treat as a cyclic word and print its least rotation.
        #[arg(long)]
        cyclic: bool,
    },
    /// Build the star graph of one or more relators.
    Stargraph {
        #[arg(required = true)]
        relators: Vec<String>,
        #[arg(long, default_value = "t,x,u")]
        stable: String,
        #[arg(long)]
        dot: bool,
    },
    /// Run the weight test with weights read from a JSON file.
    Weightcheck {
        #[arg(required = true)]
        relators: Vec<String>,
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, default_value = "t,x,u")]
        stable: String,
        #[command(flatten)]
        theory: TheoryArgs,
    },
    /// Look for a passing weight function on the grid.
    Weightsearch {
        #[arg(required = true)]
        relators: Vec<String>,
        #[arg(long, default_value = "t,x,u")]
        stable: String,
        #[command(flatten)]
        theory: TheoryArgs,
    },
    /// Classify canonical cases, or one given case.
    Classify {
        /// A count `3` or range `0..3` / `0-3` of admitted labels.
        #[arg(long = "N", short = 'N')]
        n: Option<String>,
        /// A single case as labels or relations, e.g. `ad, ag^-1`.
        #[arg(long)]
        case: Option<String>,
    },
    /// List the open cases.
    Exceptions,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 2,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let config = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => return Outcome::input_error(e),
    };
    match dispatch(&cli.command, &config) {
        Ok(o) => o,
        Err(msg) => Outcome::input_error(msg),
    }
}

fn resolve_config(cli: &Cli) -> Result<Config, ConfigError> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let mut cfg = match path {
        Some(p) => Config::load(&p)?,
        None => Config::default(),
    };
    if let Some(n) = cli.max_cycle_len {
        cfg.max_cycle_len = n;
    }
    if let Some(g) = &cli.grid {
        cfg.weight_grid = parse_grid(g)?;
    }
    if let Some(f) = cli.format {
        cfg.output_format = f;
    }
    cfg.validate()
}

fn alphabet(stable: &str) -> Alphabet {
    let letters: Vec<char> = stable.chars().filter(|c| c.is_alphabetic()).collect();
    Alphabet::with_stable(&letters)
}

fn parse_relators(texts: &[String], stable: &str) -> Result<Vec<MixedWord>, String> {
    let ab = alphabet(stable);
    texts
        .iter()
        .map(|t| {
            ab.parse(t)
                .map(|w| w.into_cyclic().reduce())
                .map_err(|e| format!("relator `{t}`: {e}"))
        })
        .collect()
}

fn json_line(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("report serializes")
}

fn json_pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn dispatch(cmd: &Command, cfg: &Config) -> Result<Outcome, String> {
    match cmd {
        Command::Parse { word, stable, cyclic } => cmd_parse(word, stable, *cyclic, cfg),
        Command::Stargraph { relators, stable, dot } => {
            let rs = parse_relators(relators, stable)?;
            let g = StarGraph::build(&rs).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(cmd_stargraph(&g, *dot, cfg)))
        }
        Command::Weightcheck { relators, theta, stable, theory } => {
            let rs = parse_relators(relators, stable)?;
            let g = StarGraph::build(&rs).map_err(|e| e.to_string())?;
            let text = std::fs::read_to_string(theta).map_err(|e| format!("{}: {e}", theta.display()))?;
            let th = theory.theory()?;
            let w = WeightFunction::from_json(&g, &text).map_err(|e| e.to_string())?;
            let report = check_weight_test(&g, &w, &th, cfg.max_cycle_len).map_err(|e| e.to_string())?;
            let code = if report.passes() { 0 } else { 1 };
            let stdout = match cfg.output_format {
                Format::Json => json_pretty(&report),
                _ => weight_report_text(&report),
            };
            Ok(Outcome { stdout, stderr: String::new(), code })
        }
        Command::Weightsearch { relators, stable, theory } => {
            let rs = parse_relators(relators, stable)?;
            let g = StarGraph::build(&rs).map_err(|e| e.to_string())?;
            let th = theory.theory()?;
            let found = search_weight_function(&g, &th, &cfg.weight_grid, cfg.max_cycle_len).map_err(|e| e.to_string())?;
            Ok(match found {
                Some(w) => Outcome::ok(match cfg.output_format {
                    Format::Json => json_pretty(&w.to_json(&g)),
                    _ => format!("{}\n", w.display(&g)),
                }),
                None => Outcome {
                    stdout: match cfg.output_format {
                        Format::Json => "null\n".into(),
                        _ => "no passing weight function on the grid\n".into(),
                    },
                    stderr: String::new(),
                    code: 1,
                },
            })
        }
        Command::Classify { n, case } => cmd_classify(n.as_deref(), case.as_deref(), cfg),
        Command::Exceptions => Ok(Outcome::ok(cmd_exceptions(cfg))),
    }
}

fn cmd_parse(word: &str, stable: &str, cyclic: bool, cfg: &Config) -> Result<Outcome, String> {
    let w = alphabet(stable).parse(word).map_err(|e| e.to_string())?;
    let w = if cyclic {
        w.into_cyclic().reduce().canonical_rotation()
    } else {
        w.reduce()
    };
    Ok(Outcome::ok(match cfg.output_format {
        Format::Json => json_pretty(&serde_json::json!({
            "word": w.to_string(),
            "letters": w,
            "cyclic": w.is_cyclic(),
            "length": w.equation_length(),
            "exponent_sum": w.exponent_sum(),
        })),
        _ if w.is_empty() => "1\n".into(),
        _ => format!("{w}\n"),
    }))
}

pub fn cmd_stargraph(g: &StarGraph, dot: bool, cfg: &Config) -> String {
    if dot || cfg.output_format == Format::Dot {
        return g.to_dot();
    }
    if cfg.output_format == Format::Json {
        return json_pretty(g);
    }
    let mut out = String::new();
    let vs: Vec<String> = g.vertices().iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "vertices: {}", vs.join(", "));
    for e in g.edges() {
        let _ = writeln!(out, "{}: {} -> {}  {}", e.name, vs[e.from], vs[e.to], e.label);
    }
    out
}

pub fn weight_report_text(r: &WeightReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", r.verdict);
    for c in &r.condition1 {
        let _ = writeln!(
            out,
            "relator {}: Σ(1-θ) = {} {}",
            c.relator + 1,
            format_rational(c.sum),
            if c.ok { "ok" } else { "too small" }
        );
    }
    for f in &r.families {
        match &f.kind {
            FamilyKind::Powers { path, label, class } => {
                let _ = writeln!(out, "zero cycle {path} on {{{}}}: label {label}, {class}", f.component.join(", "));
            }
            FamilyKind::Unclassified { reason } => {
                let _ = writeln!(out, "unclassified on {{{}}}: {reason}", f.component.join(", "));
            }
        }
    }
    for c in &r.low_cycles {
        let _ = writeln!(out, "cycle {} weight {}: label {}, {}", c.path, format_rational(c.weight), c.label, c.class);
    }
    for reason in &r.reasons {
        let _ = writeln!(out, "reason: {reason}");
    }
    out
}

/// `3`, `0..3`, `0..=3` or `0-3`, all inclusive.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("bad range `{s}`");
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let n = num(s)?;
        (n, n)
    };
    if lo > hi || hi > 15 {
        return Err(bad());
    }
    Ok((lo, hi))
}

const VERDICTS: [CaseVerdict; 4] = [
    CaseVerdict::AsphericalWeightTest,
    CaseVerdict::AsphericalCurvature,
    CaseVerdict::Exceptional,
    CaseVerdict::DistributionNeeded,
];

fn cmd_classify(n: Option<&str>, case: Option<&str>, cfg: &Config) -> Result<Outcome, String> {
    let cases: Vec<CaseSpec> = match (n, case) {
        (_, Some(c)) => vec![CaseSpec::parse_list(c)?],
        (Some(r), None) => {
            let (lo, hi) = parse_range(r)?;
            (lo..=hi).flat_map(enumerate_cases).collect()
        }
        (None, None) => (0..=15).flat_map(enumerate_cases).collect(),
    };
    let mut out = String::new();
    let mut by_n: BTreeMap<usize, BTreeMap<CaseVerdict, usize>> = BTreeMap::new();
    let mut by_table: BTreeMap<String, BTreeMap<CaseVerdict, usize>> = BTreeMap::new();
    for c in &cases {
        let r = classify_with(c, cfg.max_cycle_len).map_err(|e| e.to_string())?;
        *by_n.entry(r.n).or_default().entry(r.verdict).or_default() += 1;
        let mut cited: Vec<&str> = r.citations.iter().map(|c| c.split('(').next().unwrap_or(c)).collect();
        cited.dedup();
        if cited.is_empty() {
            cited.push("uncited");
        }
        for t in cited {
            *by_table.entry(t.to_string()).or_default().entry(r.verdict).or_default() += 1;
        }
        let _ = writeln!(out, "{}", json_line(&r));
    }
    if cfg.output_format == Format::Text {
        out.push('\n');
        out.push_str(&summary_table(&by_n, &by_table));
    }
    Ok(Outcome::ok(out))
}

fn summary_table(
    by_n: &BTreeMap<usize, BTreeMap<CaseVerdict, usize>>,
    by_table: &BTreeMap<String, BTreeMap<CaseVerdict, usize>>,
) -> String {
    let mut out = String::new();
    let header = ["weight", "curvature", "exceptional", "distribution", "total"];
    let row = |out: &mut String, name: &str, counts: &BTreeMap<CaseVerdict, usize>| {
        let _ = write!(out, "{name:<10}");
        let mut total = 0;
        for v in VERDICTS {
            let k = counts.get(&v).copied().unwrap_or(0);
            total += k;
            let _ = write!(out, " {k:>12}");
        }
        let _ = writeln!(out, " {total:>12}");
    };
    let head = |out: &mut String, first: &str| {
        let _ = write!(out, "{first:<10}");
        for h in header {
            let _ = write!(out, " {h:>12}");
        }
        out.push('\n');
    };
    head(&mut out, "N");
    let mut all = BTreeMap::new();
    for (n, counts) in by_n {
        row(&mut out, &n.to_string(), counts);
        for (v, k) in counts {
            *all.entry(*v).or_insert(0) += k;
        }
    }
    row(&mut out, "all", &all);
    out.push('\n');
    head(&mut out, "cited");
    let order: Vec<String> = tables()
        .iter()
        .map(|t| t.table.clone())
        .chain(std::iter::once("uncited".to_string()))
        .fold(Vec::new(), |mut acc, t| {
            if !acc.contains(&t) {
                acc.push(t);
            }
            acc
        });
    for t in order {
        if let Some(counts) = by_table.get(&t) {
            row(&mut out, &t, counts);
        }
    }
    out
}

/// The relations of one open case, with its options if it has any.
pub fn exception_statement(e: &ExceptionItem) -> &str {
    &e.text
}

pub fn cmd_exceptions(cfg: &Config) -> String {
    let items = open_cases();
    match cfg.output_format {
        Format::Json => {
            let v: Vec<serde_json::Value> = items
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "item": e.item,
                        "statement": exception_statement(e),
                        "cases": e.cases,
                    })
                })
                .collect();
            json_pretty(&v)
        }
        _ => items
            .iter()
            .map(|e| format!("{:>2}. {}\n", e.item, exception_statement(e)))
            .collect(),
    }
}
