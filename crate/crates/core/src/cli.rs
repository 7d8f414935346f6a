//! The `amalgam` command-line tool.
//!
//! Every subcommand prints one JSON document on stdout, or a short human
//! rendering with `--pretty`. Exit codes: 0 success, 1 domain or validation
//! failure, 2 resource bound exceeded, 3 usage or input format error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value as Json};

use crate::amalgam::glue;
use crate::decomposition::{
    branch_width_of, converted_width_bound, from_branch_decomposition, AmalgamDecomposition, BranchDecomposition,
};
use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, DEFAULT_BRUTE_FORCE_BOUND, DEFAULT_FLAT_BUDGET};
use crate::mso::{self, Assignment, Compiled, Verdict, DEFAULT_BUDGET};
use crate::tutte::{tutte_bruteforce, tutte_decomposition_with_tables, TuttePolynomial};

/// Environment variable overriding the size bound of brute-force steps.
pub const MAX_ELEMENTS_VAR: &str = "AMALGAM_MAX_ELEMENTS";

#[derive(Parser, Debug)]
#[command(name = "amalgam", version, about = "Amalgam decompositions of matroids")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, loops, coloops, circuits and flats of a matroid file.
    Info { matroid: PathBuf },
    /// Check a decomposition file and report every violated condition.
    Validate { decomposition: PathBuf },
    /// Amalgam width of a decomposition, or branch width with `--branch`.
    Width {
        file: PathBuf,
        #[arg(long)]
        branch: Option<PathBuf>,
    },
    /// Write an equivalent nice decomposition.
    Nice {
        decomposition: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a branch decomposition of a linear matroid into an amalgam decomposition.
    Convert {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        branch: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tutte polynomial of a matroid or decomposition file.
    Tutte {
        file: PathBuf,
        /// Sum over all subsets of the realized matroid.
        #[arg(long)]
        brute: bool,
        /// Dynamic program over the decomposition.
        #[arg(long)]
        dp: bool,
        /// Evaluate at a rational point, e.g. `--eval 2 1/2`.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
        eval: Option<Vec<String>>,
        /// Include every node's count table.
        #[arg(long)]
        dump_types: bool,
    },
    /// Decide an MSO formula.
    Mso {
        /// Formula text, or a file containing it.
        #[arg(long)]
        formula: String,
        #[arg(long, conflicts_with = "decomposition", required_unless_present = "decomposition")]
        matroid: Option<PathBuf>,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Values of free variables as JSON, inline or in a file.
        #[arg(long)]
        assign: Option<String>,
        #[arg(long, value_enum)]
        engine: Option<Engine>,
        /// Include the formula's state at every node.
        #[arg(long)]
        trace: bool,
    },
    /// Glue two matroids along a glue matroid K and delete elements of K.
    Glue {
        k: PathBuf,
        m1: PathBuf,
        m2: PathBuf,
        /// Comma-separated labels to delete.
        #[arg(long, value_delimiter = ',')]
        delete: Vec<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Naive,
    Dp,
    Both,
}

/// Runs the tool on `args` (including the program name), writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 3;
        }
    };
    match execute(&cli, &limits) {
        Ok(report) => {
            let _ = if cli.pretty { writeln!(out, "{}", report.text) } else { writeln!(out, "{}", report.json) };
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the tool on the process arguments.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

struct Limits {
    max_elements: usize,
}

impl Limits {
    fn from_env() -> Result<Self> {
        let max_elements = match std::env::var(MAX_ELEMENTS_VAR) {
            Ok(v) => v.trim().parse().map_err(|_| Error::Format(format!("{MAX_ELEMENTS_VAR} must be a number, got `{v}`")))?,
            Err(_) => DEFAULT_BRUTE_FORCE_BOUND,
        };
        Ok(Limits { max_elements })
    }

    fn check(&self, m: &Matroid, what: &str) -> Result<()> {
        if m.len() > self.max_elements {
            return Err(Error::resource(format!(
                "{what} on {} elements exceeds the bound of {} (set {MAX_ELEMENTS_VAR} to change it)",
                m.len(),
                self.max_elements
            )));
        }
        Ok(())
    }

    fn realize(&self, t: &AmalgamDecomposition) -> Result<Matroid> {
        t.realize_with_bound(t.root(), self.max_elements)
    }
}

struct Report {
    json: Json,
    text: String,
    code: i32,
}

fn ok(json: Json, text: impl Into<String>) -> Result<Report> {
    Ok(Report { json, text: text.into(), code: 0 })
}

fn read_json(path: &Path) -> Result<Json> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

enum Input {
    Matroid(Matroid),
    Decomposition(AmalgamDecomposition),
}

fn load_any(path: &Path) -> Result<Input> {
    let value = read_json(path)?;
    if value.get("nodes").is_some() {
        Ok(Input::Decomposition(AmalgamDecomposition::from_json_str(&value.to_string())?))
    } else {
        Ok(Input::Matroid(Matroid::from_json_str(&value.to_string())?))
    }
}

fn load_matroid(path: &Path) -> Result<Matroid> {
    match load_any(path)? {
        Input::Matroid(m) => Ok(m),
        Input::Decomposition(_) => Err(Error::Format(format!("{} is a decomposition, expected a matroid", path.display()))),
    }
}

fn load_decomposition(path: &Path) -> Result<AmalgamDecomposition> {
    match load_any(path)? {
        Input::Decomposition(t) => Ok(t),
        Input::Matroid(_) => Err(Error::Format(format!("{} is a matroid, expected a decomposition", path.display()))),
    }
}

fn ids(set: &ElementSet) -> Vec<u32> {
    set.iter().map(|e| e.0).collect()
}

fn braces(set: &ElementSet) -> String {
    format!("{{{}}}", set.iter().map(|e| e.0.to_string()).collect::<Vec<_>>().join(","))
}

fn emit(json: &Json, output: Option<&PathBuf>) -> Result<Option<String>> {
    match output {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(json)? + "\n")?;
            Ok(Some(path.display().to_string()))
        }
        None => Ok(None),
    }
}

fn execute(cli: &Cli, limits: &Limits) -> Result<Report> {
    match &cli.command {
        Command::Info { matroid } => info(&load_matroid(matroid)?, limits),
        Command::Validate { decomposition } => validate(&load_decomposition(decomposition)?),
        Command::Width { file, branch } => width(file, branch.as_deref()),
        Command::Nice { decomposition, output } => {
            let t = load_decomposition(decomposition)?;
            let nice = t.to_nice()?;
            let doc = nice.to_json()?;
            let written = emit(&doc, output.as_ref())?;
            let text = format!("nice decomposition with {} nodes, width {} (was {})", nice.len(), nice.width(), t.width());
            let json = match written {
                Some(path) => json!({"nodes": nice.len(), "width": nice.width(), "output": path}),
                None => doc,
            };
            ok(json, text)
        }
        Command::Convert { matroid, branch, output } => {
            let m = load_matroid(matroid)?;
            let b = BranchDecomposition::load(branch)?;
            let k = branch_width_of(&m, &b)?;
            let t = from_branch_decomposition(&m, &b)?;
            let field = m.linear_representation().map(|(p, _)| p).expect("conversion requires a linear matroid");
            let bound = converted_width_bound(field, k);
            let doc = t.to_json()?;
            let text = format!("branch width {k}, amalgam width {} (bound {bound}), {} nodes", t.width(), t.len());
            let json = match emit(&doc, output.as_ref())? {
                Some(path) => json!({"branch_width": k, "width": t.width(), "bound": bound, "nodes": t.len(), "output": path}),
                None => doc,
            };
            ok(json, text)
        }
        Command::Tutte { file, brute, dp, eval, dump_types } => tutte(file, *brute, *dp, eval.as_deref(), *dump_types, limits),
        Command::Mso { formula, matroid, decomposition, assign, engine, trace } => mso_command(
            formula,
            matroid.as_deref(),
            decomposition.as_deref(),
            assign.as_deref(),
            *engine,
            *trace,
            limits,
        ),
        Command::Glue { k, m1, m2, delete, output } => {
            let (k, m1, m2) = (load_matroid(k)?, load_matroid(m1)?, load_matroid(m2)?);
            let d: ElementSet = delete.iter().map(|&e| ElementId(e)).collect();
            let m = glue(&m1, &m2, &k, &d)?;
            let doc = m.to_json()?;
            let text = format!("glued matroid on {} elements, rank {}", m.len(), m.full_rank());
            let json = match emit(&doc, output.as_ref())? {
                Some(path) => json!({"elements": m.len(), "rank": m.full_rank(), "output": path}),
                None => doc,
            };
            ok(json, text)
        }
    }
}

fn info(m: &Matroid, limits: &Limits) -> Result<Report> {
    limits.check(m, "circuit enumeration")?;
    let circuits = m.circuits_with_bound(limits.max_elements)?;
    let flats = m.flat_masks(DEFAULT_FLAT_BUDGET)?.len();
    let loops: ElementSet = m.elements().iter().copied().filter(|&e| m.is_loop(e)).collect();
    let coloops: ElementSet = m.elements().iter().copied().filter(|&e| m.is_coloop(e)).collect();
    let ground = m.ground_set();
    let json = json!({
        "elements": ids(&ground),
        "rank": m.full_rank(),
        "loops": ids(&loops),
        "coloops": ids(&coloops),
        "circuits": circuits.iter().map(ids).collect::<Vec<_>>(),
        "flats": flats,
    });
    let text = format!(
        "{} elements, rank {}\nloops: {}\ncoloops: {}\ncircuits ({}): {}\nflats: {flats}",
        m.len(),
        m.full_rank(),
        braces(&loops),
        braces(&coloops),
        circuits.len(),
        circuits.iter().map(braces).collect::<Vec<_>>().join(" "),
    );
    ok(json, text)
}

fn validate(t: &AmalgamDecomposition) -> Result<Report> {
    let report = t.validate();
    let json = json!({
        "valid": report.is_valid(),
        "width": t.width(),
        "nice": t.is_nice(),
        "nodes": t.len(),
        "violations": report.violations,
    });
    if report.is_valid() {
        ok(json, format!("valid, width {}", t.width()))
    } else {
        Ok(Report { json, text: format!("invalid: {report}"), code: 1 })
    }
}

fn width(file: &Path, branch: Option<&Path>) -> Result<Report> {
    match (load_any(file)?, branch) {
        (Input::Decomposition(t), None) => {
            let report = t.validate();
            if !report.is_valid() {
                return Err(Error::Invalid(report));
            }
            ok(json!({"kind": "amalgam", "width": t.width()}), format!("amalgam width {}", t.width()))
        }
        (Input::Matroid(m), Some(b)) => {
            let k = branch_width_of(&m, &BranchDecomposition::load(b)?)?;
            ok(json!({"kind": "branch", "width": k}), format!("branch width {k}"))
        }
        (Input::Decomposition(_), Some(_)) => Err(Error::Format("--branch needs a matroid file, not a decomposition".into())),
        (Input::Matroid(_), None) => Err(Error::Format("a matroid file needs --branch to report a width".into())),
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Format(format!("`{s}` is not a rational number")))
}

fn tutte(file: &Path, brute: bool, dp: bool, eval: Option<&[String]>, dump: bool, limits: &Limits) -> Result<Report> {
    let input = load_any(file)?;
    let is_decomposition = matches!(input, Input::Decomposition(_));
    let (brute, dp) = match (brute, dp) {
        (false, false) => (!is_decomposition, is_decomposition),
        flags => flags,
    };
    if dp && !is_decomposition {
        return Err(Error::Format("--dp needs a decomposition file".into()));
    }
    let mut results: Vec<(&str, TuttePolynomial)> = Vec::new();
    let mut tables = None;
    if let Input::Decomposition(t) = &input {
        if dp {
            let run = tutte_decomposition_with_tables(t)?;
            if dump {
                tables = Some(serde_json::to_value(&run.tables)?);
            }
            results.push(("dp", run.polynomial));
        }
    }
    if brute {
        let m = match &input {
            Input::Matroid(m) => m.clone(),
            Input::Decomposition(t) => limits.realize(t)?,
        };
        limits.check(&m, "brute-force Tutte polynomial")?;
        results.push(("brute", tutte_bruteforce(&m)?));
    }
    let (_, poly) = &results[0];
    if let Some((name, other)) = results.iter().find(|(_, p)| p != poly) {
        return Err(Error::domain(format!("engines disagree: {} = {poly}, {name} = {other}", results[0].0)));
    }
    let mut json = poly.to_json();
    json["engines"] = json!(results.iter().map(|(n, _)| *n).collect::<Vec<_>>());
    let mut text = poly.to_string();
    if let Some([x, y]) = eval {
        let (xv, yv) = (parse_rational(x)?, parse_rational(y)?);
        let value = poly.evaluate(&xv, &yv);
        json["eval"] = json!({"x": xv.to_string(), "y": yv.to_string(), "value": value.to_string()});
        text.push_str(&format!("\nT({xv}, {yv}) = {value}"));
    }
    if let Some(tables) = tables {
        json["types"] = tables;
    }
    ok(json, text)
}

fn read_inline_or_file(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

fn mso_command(
    formula: &str,
    matroid: Option<&Path>,
    decomposition: Option<&Path>,
    assign: Option<&str>,
    engine: Option<Engine>,
    trace: bool,
    limits: &Limits,
) -> Result<Report> {
    let phi = mso::parse(read_inline_or_file(formula)?.trim())?;
    let q: Assignment = match assign {
        Some(a) => mso::parse_assignment(&read_inline_or_file(a)?)?,
        None => Assignment::new(),
    };
    let t = decomposition.map(load_decomposition).transpose()?;
    let engine = engine.unwrap_or(if t.is_some() { Engine::Dp } else { Engine::Naive });
    if t.is_none() && engine != Engine::Naive {
        return Err(Error::Format("the dp engine needs --decomposition".into()));
    }
    let mut verdicts: Vec<(&str, bool)> = Vec::new();
    let mut states = None;
    if let (Some(t), Engine::Dp | Engine::Both) = (&t, engine) {
        let compiled = Compiled::new(&phi)?;
        let (accepted, trace_states) = compiled.trace(t, &q, DEFAULT_BUDGET)?;
        if trace {
            states = Some(trace_states.iter().map(|(v, s)| json!({"node": v, "state": s.to_string()})).collect::<Vec<_>>());
        }
        verdicts.push(("dp", accepted));
    }
    if matches!(engine, Engine::Naive | Engine::Both) {
        let m = match (&t, matroid) {
            (Some(t), _) => limits.realize(t)?,
            (None, Some(path)) => load_matroid(path)?,
            (None, None) => unreachable!("clap requires one input"),
        };
        limits.check(&m, "naive MSO evaluation")?;
        verdicts.push(("naive", mso::eval_naive(&m, &phi, &q)?));
    }
    let answer = verdicts[0].1;
    if verdicts.iter().any(|(_, v)| *v != answer) {
        return Err(Error::domain(format!(
            "engines disagree on `{phi}`: {}",
            verdicts.iter().map(|(n, v)| format!("{n} says {}", Verdict::from(*v))).collect::<Vec<_>>().join(", ")
        )));
    }
    let verdict = Verdict::from(answer);
    let mut json = json!({
        "verdict": verdict.to_string(),
        "engines": verdicts.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
        "formula": phi.to_string(),
    });
    if let Some(states) = states {
        json["trace"] = Json::Array(states);
    }
    ok(json, verdict.to_string())
}
