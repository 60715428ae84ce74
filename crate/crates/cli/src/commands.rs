//! Subcommand dispatch and reports.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use presym_core::gs::{self, CompletionStatus, CompositionKind, CompositionReport};
use presym_core::lie::{self, Violation, ViolationKind};
use presym_core::poly::Multiplier;
use presym_core::{oracle, terms, Alphabet, Error, Poly, Presentation};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::file::{InputError, Loaded, PresentationFile};
use crate::parse::{parse_expression_with, parse_word, scan_names, ParseError};

#[derive(Debug, Parser)]
#[command(name = "presym", version, about = "Gröbner–Shirshov bases for right-symmetric algebras")]
pub struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of words any enumeration may produce.
    #[arg(long, global = true, default_value_t = presym_core::DEFAULT_CAP)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GeneratorArg {
    /// Comma-separated generators, least first. Defaults to the names used,
    /// sorted.
    #[arg(long, value_delimiter = ',')]
    pub generators: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand an expression in the good-word basis.
    Normalize {
        expr: String,
        #[command(flatten)]
        generators: GeneratorArg,
    },
    /// Compare two words in the deg-lex order.
    Compare {
        w1: String,
        w2: String,
        #[command(flatten)]
        generators: GeneratorArg,
    },
    /// Check whether the relations form a Gröbner–Shirshov basis.
    CheckGs { file: PathBuf },
    /// Complete the relations up to a degree bound.
    Complete {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
        /// Write the completed presentation here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List irreducible good words.
    Irr {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Check a Lie table and verify its enveloping relations.
    Envelope { file: PathBuf },
    /// Decide equality of two expressions in the quotient.
    Equal {
        file: PathBuf,
        expr1: String,
        expr2: String,
    },
    /// Quotient dimensions by linear algebra.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Compare { .. } => "compare",
            Command::CheckGs { .. } => "check-gs",
            Command::Complete { .. } => "complete",
            Command::Irr { .. } => "irr",
            Command::Envelope { .. } => "envelope",
            Command::Equal { .. } => "equal",
            Command::Oracle { .. } => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    False,
    InputError,
    ResourceBound,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::False => 1,
            Status::InputError => 2,
            Status::ResourceBound => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{what}: {source}")]
    Parse {
        what: String,
        #[source]
        source: ParseError,
    },
    #[error("{context}: {source}")]
    Engine {
        context: String,
        #[source]
        source: Error,
    },
}

impl CliError {
    fn engine(context: impl Into<String>) -> impl FnOnce(Error) -> CliError {
        let context = context.into();
        move |source| CliError::Engine { context, source }
    }

    pub fn status(&self) -> Status {
        match self {
            CliError::Engine {
                source: Error::ResourceBound { .. },
                ..
            } => Status::ResourceBound,
            _ => Status::InputError,
        }
    }
}

/// Outcome of one command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub input_digest: String,
    pub status: Status,
    pub result: Value,
    pub tables: Map<String, Value>,
    pub text: String,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "exit_code": self.status.code(),
            "result": self.result,
            "tables": self.tables,
        })
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.to_json()).expect("json values serialize") + "\n"
        } else {
            self.text.clone()
        }
    }
}

struct Outcome {
    status: Status,
    result: Value,
    tables: Map<String, Value>,
    text: String,
}

impl Outcome {
    fn new(status: Status, result: Value, text: String) -> Self {
        Outcome {
            status,
            result,
            tables: Map::new(),
            text,
        }
    }

    fn table(mut self, name: &str, per_degree: &[usize]) -> Self {
        self.tables.insert(name.to_string(), json!(per_degree));
        self
    }
}

/// SHA-256 over the command name, its arguments and the contents of any
/// input file, each field terminated by a NUL byte.
fn digest(cli: &Cli) -> String {
    let mut h = Sha256::new();
    let mut field = |bytes: &[u8]| {
        h.update(bytes);
        h.update([0u8]);
    };
    field(cli.command.name().as_bytes());
    field(cli.cap.to_string().as_bytes());
    let file_field = |path: &Path| std::fs::read(path).unwrap_or_default();
    match &cli.command {
        Command::Normalize { expr, generators } => {
            field(expr.as_bytes());
            field(generators.generators.iter().flatten().cloned().collect::<Vec<_>>().join(",").as_bytes());
        }
        Command::Compare { w1, w2, generators } => {
            field(w1.as_bytes());
            field(w2.as_bytes());
            field(generators.generators.iter().flatten().cloned().collect::<Vec<_>>().join(",").as_bytes());
        }
        Command::CheckGs { file } | Command::Envelope { file } => field(&file_field(file)),
        Command::Complete { file, max_degree, .. }
        | Command::Irr { file, max_degree }
        | Command::Oracle { file, max_degree } => {
            field(&file_field(file));
            field(max_degree.to_string().as_bytes());
        }
        Command::Equal { file, expr1, expr2 } => {
            field(&file_field(file));
            field(expr1.as_bytes());
            field(expr2.as_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// Runs a parsed command line. Errors become reports with exit code 2 or 3.
pub fn run(cli: &Cli) -> Report {
    let input_digest = digest(cli);
    let outcome = dispatch(cli).unwrap_or_else(|e| {
        let message = e.to_string();
        Outcome::new(e.status(), json!({ "error": message }), format!("error: {message}\n"))
    });
    Report {
        command: cli.command.name(),
        input_digest,
        status: outcome.status,
        result: outcome.result,
        tables: outcome.tables,
        text: outcome.text,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let cap = cli.cap;
    match &cli.command {
        Command::Normalize { expr, generators } => normalize(expr, generators),
        Command::Compare { w1, w2, generators } => compare(w1, w2, generators),
        Command::CheckGs { file } => check_gs(&load(file)?.1, cap),
        Command::Complete {
            file,
            max_degree,
            output,
        } => complete(&load(file)?.1, *max_degree, output.as_deref(), cap),
        Command::Irr { file, max_degree } => irr(&load(file)?.1, *max_degree, cap),
        Command::Envelope { file } => envelope(file, cap),
        Command::Equal { file, expr1, expr2 } => equal(&load(file)?.1, expr1, expr2, cap),
        Command::Oracle { file, max_degree } => oracle_dims(&load(file)?.1, *max_degree, cap),
    }
}

fn load_file(path: &Path) -> Result<Loaded, CliError> {
    let (file, text) = PresentationFile::read(path)?;
    Ok(file.load(&path.display().to_string(), &text)?)
}

/// Loads a file as relations; Lie tables are turned into their enveloping
/// relations.
fn load(path: &Path) -> Result<(Alphabet, Presentation), CliError> {
    let presentation = match load_file(path)? {
        Loaded::Relations(p) => p,
        Loaded::Lie(algebra) => lie::enveloping_presentation(&algebra)
            .map_err(|e| InputError::new(path.display().to_string(), describe_lie_error(&e)))?,
    };
    Ok((presentation.alphabet().clone(), presentation))
}

fn alphabet_for(arg: &GeneratorArg, texts: &[&str]) -> Result<Alphabet, CliError> {
    let names = match &arg.generators {
        Some(names) => names.clone(),
        None => scan_names(texts.iter().copied()),
    };
    Alphabet::new(names).map_err(|e| InputError::new("--generators", e.to_string()).into())
}

fn parse_in(what: &str, text: &str, alphabet: &Alphabet, mul: &mut Multiplier) -> Result<Poly, CliError> {
    parse_expression_with(text, alphabet, mul).map_err(|source| CliError::Parse {
        what: what.to_string(),
        source,
    })
}

fn poly_json(p: &Poly, alphabet: &Alphabet) -> Value {
    json!({
        "text": p.display(alphabet).to_string(),
        "terms": p
            .terms()
            .map(|(w, c)| json!({ "word": w.display(alphabet).to_string(), "coefficient": c.to_string() }))
            .collect::<Vec<_>>(),
    })
}

fn normalize(expr: &str, generators: &GeneratorArg) -> Result<Outcome, CliError> {
    let alphabet = alphabet_for(generators, &[expr])?;
    let p = parse_in("expression", expr, &alphabet, &mut Multiplier::new())?;
    let text = format!("{}\n", p.display(&alphabet));
    Ok(Outcome::new(
        Status::Success,
        json!({ "generators": alphabet.names(), "normal_form": poly_json(&p, &alphabet) }),
        text,
    ))
}

fn compare(w1: &str, w2: &str, generators: &GeneratorArg) -> Result<Outcome, CliError> {
    let alphabet = alphabet_for(generators, &[w1, w2])?;
    let word = |what: &str, text: &str| {
        parse_word(text, &alphabet).map_err(|source| CliError::Parse {
            what: what.to_string(),
            source,
        })
    };
    let (u, v) = (word("first word", w1)?, word("second word", w2)?);
    let verdict = match terms::compare(&u, &v) {
        Ordering::Less => "LT",
        Ordering::Equal => "EQ",
        Ordering::Greater => "GT",
    };
    Ok(Outcome::new(
        Status::Success,
        json!({ "generators": alphabet.names(), "verdict": verdict }),
        format!("{verdict}\n"),
    ))
}

fn kind_name(kind: CompositionKind) -> &'static str {
    match kind {
        CompositionKind::Inclusion => "inclusion",
        CompositionKind::RightMultiplication => "right-multiplication",
    }
}

fn composition_json(r: &CompositionReport, alphabet: &Alphabet) -> Value {
    json!({
        "kind": kind_name(r.kind),
        "sources": r.sources,
        "ambiguity": r.ambiguity.display(alphabet).to_string(),
        "multiplier": r.multiplier.as_ref().map(|w| w.display(alphabet).to_string()),
        "normal_form": r.normal_form.display(alphabet).to_string(),
        "steps": r.certificate.len(),
        "trivial": r.trivial,
    })
}

fn describe_composition(r: &CompositionReport, alphabet: &Alphabet) -> String {
    let sources: Vec<String> = r.sources.iter().map(|s| format!("s{}", s + 1)).collect();
    let what = match (&r.kind, &r.multiplier) {
        (CompositionKind::RightMultiplication, Some(w)) => {
            format!("{} · {}", sources.join(", "), w.display(alphabet))
        }
        _ => format!("({}) in {}", sources.join(", "), r.ambiguity.display(alphabet)),
    };
    format!("{} {what} -> {}", kind_name(r.kind), r.normal_form.display(alphabet))
}

fn relations_text(presentation: &Presentation) -> String {
    let mut out = String::new();
    for (k, r) in presentation.relations().iter().enumerate() {
        let _ = writeln!(out, "  s{} = {}", k + 1, r.display(presentation.alphabet()));
    }
    out
}

fn check_gs(presentation: &Presentation, cap: usize) -> Result<Outcome, CliError> {
    let alphabet = presentation.alphabet();
    let check = gs::is_gs(presentation, cap).map_err(CliError::engine("check-gs"))?;
    let failing: Vec<&CompositionReport> = check.reports.iter().filter(|r| !r.trivial).collect();
    let mut text = format!(
        "GS basis: {}; compositions checked: {}, nontrivial: {}\n",
        if check.is_gs { "yes" } else { "no" },
        check.reports.len(),
        failing.len()
    );
    for r in &failing {
        let _ = writeln!(text, "  {}", describe_composition(r, alphabet));
    }
    let result = json!({
        "is_gs": check.is_gs,
        "relations": presentation.relations().iter().map(|r| r.display(alphabet).to_string()).collect::<Vec<_>>(),
        "compositions_checked": check.reports.len(),
        "nontrivial": failing.iter().map(|r| composition_json(r, alphabet)).collect::<Vec<_>>(),
    });
    let status = if check.is_gs { Status::Success } else { Status::False };
    Ok(Outcome::new(status, result, text))
}

fn complete(
    presentation: &Presentation,
    max_degree: usize,
    output: Option<&Path>,
    cap: usize,
) -> Result<Outcome, CliError> {
    let completion = gs::complete(presentation, max_degree, cap).map_err(CliError::engine("complete"))?;
    let file = PresentationFile::from_presentation(&completion.presentation);
    let file_json = file.to_json();
    if let Some(path) = output {
        std::fs::write(path, format!("{file_json}\n"))
            .map_err(|e| InputError::new(path.display().to_string(), format!("cannot write output: {e}")))?;
    }
    let (status, label) = match completion.status {
        CompletionStatus::Complete => (Status::Success, "Complete"),
        CompletionStatus::BoundReached => (Status::False, "BoundReached"),
    };
    let mut text = format!(
        "status: {label}; rounds: {}; relations: {}\n",
        completion.rounds,
        completion.presentation.relations().len()
    );
    text += &relations_text(&completion.presentation);
    if !completion.over_bound.is_empty() {
        let mut degrees = completion.over_bound.clone();
        degrees.sort_unstable();
        degrees.dedup();
        let _ = writeln!(text, "discarded compositions of degree {degrees:?}");
    }
    if output.is_none() {
        text += &file_json;
        text.push('\n');
    }
    let result = json!({
        "status": label,
        "rounds": completion.rounds,
        "over_bound_degrees": completion.over_bound,
        "presentation": serde_json::to_value(&file).expect("plain data"),
        "output": output.map(|p| p.display().to_string()),
    });
    Ok(Outcome::new(status, result, text))
}

fn irr(presentation: &Presentation, max_degree: usize, cap: usize) -> Result<Outcome, CliError> {
    let alphabet = presentation.alphabet();
    let words = gs::irr(presentation, max_degree, cap).map_err(CliError::engine("irr"))?;
    let counts = gs::counts_by_degree(&words, max_degree);
    let listed: Vec<String> = words.iter().map(|w| w.display(alphabet).to_string()).collect();
    let mut text = String::new();
    for d in 1..=max_degree {
        let at: Vec<&str> = words
            .iter()
            .zip(&listed)
            .filter(|(w, _)| w.len() == d)
            .map(|(_, s)| s.as_str())
            .collect();
        let _ = writeln!(text, "degree {d}: {}", at.len());
        for s in at {
            let _ = writeln!(text, "  {s}");
        }
    }
    let _ = writeln!(text, "counts: {}", join(&counts));
    Ok(Outcome::new(Status::Success, json!({ "words": listed }), text).table("irr", &counts))
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn describe_violation(v: &Violation) -> String {
    let kind = match v.kind {
        ViolationKind::Antisymmetry => "antisymmetry",
        ViolationKind::Jacobi => "Jacobi identity",
    };
    let defect: Vec<String> = v.defect.iter().map(|c| c.to_string()).collect();
    format!("{kind} fails for {:?}, defect ({})", v.indices, defect.join(", "))
}

fn describe_lie_error(e: &Error) -> String {
    match e {
        Error::InvalidLie(violations) => {
            let details: Vec<String> = violations.iter().map(describe_violation).collect();
            format!("{e}: {}", details.join("; "))
        }
        _ => e.to_string(),
    }
}

fn envelope(path: &Path, cap: usize) -> Result<Outcome, CliError> {
    let source = path.display().to_string();
    let algebra = match load_file(path)? {
        Loaded::Lie(algebra) => algebra,
        Loaded::Relations(_) => {
            return Err(InputError::new(source, "envelope needs a file with a `lie` section").into())
        }
    };
    let report = lie::verify_theorem(&algebra, cap)
        .map_err(|e| InputError::new(&source, describe_lie_error(&e)))?;
    let alphabet = report.presentation.alphabet();
    let failing: Vec<&CompositionReport> = report.compositions.iter().filter(|r| !r.trivial).collect();
    let mut text = if report.passes {
        "GS basis: yes; compositions checked: all f_ij·e_k → 0\n".to_string()
    } else {
        format!("GS basis: no; nontrivial compositions: {}\n", failing.len())
    };
    let _ = writeln!(text, "compositions: {}", report.compositions.len());
    text += &relations_text(&report.presentation);
    for r in &failing {
        let _ = writeln!(text, "  {}", describe_composition(r, alphabet));
    }
    let result = json!({
        "is_gs": report.passes,
        "relations": report.presentation.relations().iter().map(|r| r.display(alphabet).to_string()).collect::<Vec<_>>(),
        "compositions_checked": report.compositions.len(),
        "nontrivial": failing.iter().map(|r| composition_json(r, alphabet)).collect::<Vec<_>>(),
    });
    let status = if report.passes { Status::Success } else { Status::False };
    Ok(Outcome::new(status, result, text))
}

fn equal(presentation: &Presentation, e1: &str, e2: &str, cap: usize) -> Result<Outcome, CliError> {
    let alphabet = presentation.alphabet();
    let mut mul = Multiplier::new();
    let f = parse_in("first expression", e1, alphabet, &mut mul)?;
    let g = parse_in("second expression", e2, alphabet, &mut mul)?;
    let same = gs::nf_equal(&f, &g, presentation, cap).map_err(CliError::engine("equal"))?;
    let difference = gs::reduce(&(&f - &g), presentation).normal_form;
    let text = format!(
        "{}\nNF(lhs - rhs) = {}\n",
        if same { "equal" } else { "not equal" },
        difference.display(alphabet)
    );
    let result = json!({
        "equal": same,
        "lhs": poly_json(&f, alphabet),
        "rhs": poly_json(&g, alphabet),
        "difference_normal_form": poly_json(&difference, alphabet),
    });
    let status = if same { Status::Success } else { Status::False };
    Ok(Outcome::new(status, result, text))
}

fn oracle_dims(presentation: &Presentation, max_degree: usize, cap: usize) -> Result<Outcome, CliError> {
    let dims = oracle::quotient_dims(presentation, max_degree, cap).map_err(CliError::engine("oracle"))?;
    let text = format!("quotient dimensions: {}\n", join(dims.as_slice()));
    Ok(Outcome::new(Status::Success, json!({ "max_degree": max_degree }), text).table("quotient_dims", dims.as_slice()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Report {
        let cli = Cli::try_parse_from(std::iter::once("presym").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn compare_verdicts() {
        let r = run_args(&["compare", "(x (x x))", "((x x) x)"]);
        assert_eq!(r.text, "LT\n");
        assert_eq!(r.status, Status::Success);
        let r = run_args(&["compare", "b", "a"]);
        assert_eq!(r.text, "GT\n");
        let r = run_args(&["compare", "--generators", "b,a", "b", "a"]);
        assert_eq!(r.text, "LT\n");
    }

    #[test]
    fn normalize_expands() {
        let r = run_args(&["normalize", "((a b) a)"]);
        assert_eq!(r.text, "((a a) b) + (a (b a)) - (a (a b))\n");
        let r = run_args(&["normalize", "(a"]);
        assert_eq!(r.status, Status::InputError);
        assert!(r.text.contains("offset 2"), "{}", r.text);
    }

    #[test]
    fn json_report_shape() {
        let r = run_args(&["--json", "compare", "a", "a"]);
        let v = r.to_json();
        for key in ["command", "input_digest", "result", "tables"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["command"], "compare");
        assert_eq!(v["result"]["verdict"], "EQ");
        assert_eq!(r.input_digest.len(), 64);
        assert_eq!(r.input_digest, run_args(&["compare", "a", "a"]).input_digest);
        assert_ne!(r.input_digest, run_args(&["compare", "a", "b"]).input_digest);
    }

    #[test]
    fn missing_file_is_input_error() {
        let r = run_args(&["check-gs", "/nonexistent/presym.json"]);
        assert_eq!(r.status, Status::InputError);
        assert!(r.text.contains("/nonexistent/presym.json"));
    }
}
