//! Command implementations for the `simcond` binary.
//!
//! Every command produces a [`Report`]: the text to print and an exit code
//! (0 positive, 1 negative, 2 error).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::canonical::probe_count;
use crate::check::{evidence, fast_check_literal, Checker, Model};
use crate::corpus::Corpus;
use crate::decision::{brute_force_sat_small, in_fragment, min_fragment_c, sat, within_oracle_bounds, SatResult};
use crate::formula::{parse_formula, Formula, InterventionSpec};
use crate::interp::execute;
use crate::normal_form::to_normal_form;
use crate::pl::{parse_program, program_metrics, Dialect, PLProgram};
use crate::tape::{clamp_of, Tape};

/// Largest outcome count the `--oracle` cross-check enumerates.
const ORACLE_OUTPUTS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(name = "json", alias = "json-like")]
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "simcond", version, about = "Conditionals over intervened simulation programs")]
pub struct Cli {
    /// Program class: full, det, halting or det-halting.
    #[arg(long, global = true, default_value = "full")]
    pub dialect: Dialect,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Cross-check sat/valid answers against the brute-force table oracle.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Branch constant for fragment membership (default: smallest sufficient).
    #[arg(long = "fragment-C", global = true)]
    pub fragment_c: Option<usize>,
    /// Seed for the corpus generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a program and list its halting outputs.
    Run {
        /// Program file, or program text if no such file exists.
        program: String,
        /// Input tape, e.g. `X1=1,X3=1` (default: the file's `# tape:` line, else all zero).
        #[arg(long)]
        tape: Option<String>,
        /// Intervention, e.g. `X1 & !X2` (default: none).
        #[arg(long, default_value = "")]
        intervention: String,
    },
    /// Model-check a formula on a program and tape.
    Check {
        program: String,
        formula: String,
        #[arg(long)]
        tape: Option<String>,
        /// Evaluate conditional literals with the structured fragment evaluator.
        #[arg(long)]
        fast: bool,
    },
    /// Print the disjunctive normal form.
    Nf { formula: String },
    /// Decide satisfiability.
    Sat {
        formula: String,
        /// Write the witness program (with its tape) to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Decide validity.
    Valid {
        formula: String,
        /// Write the countermodel program (with its tape) to this file.
        #[arg(long, alias = "witness")]
        countermodel: Option<PathBuf>,
    },
    /// Synthesize the canonical model of a satisfiable formula.
    Synth {
        formula: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print random formulas or programs.
    Corpus {
        #[arg(value_enum)]
        kind: CorpusKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        atoms: u32,
        /// Connectives per formula, or nesting depth per program.
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusKind {
    Formulas,
    Programs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub code: i32,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn report(&self) -> Report {
        Report { output: format!("error: {self}\n"), code: 2 }
    }
}

fn formula_arg(s: &str) -> Result<Formula, CliError> {
    parse_formula(s).map_err(|e| CliError::Parse(format!("formula: {e}")))
}

fn intervention_arg(s: &str) -> Result<InterventionSpec, CliError> {
    s.parse().map_err(|e| CliError::Parse(format!("intervention: {e}")))
}

fn tape_arg(s: &str) -> Result<Tape, CliError> {
    s.parse().map_err(|e| CliError::Parse(format!("tape: {e}")))
}

/// Program text from a file or the argument itself, plus the tape named on a
/// `# tape:` comment line.
fn program_arg(arg: &str) -> Result<(PLProgram, Option<Tape>), CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: arg.to_string(), source })?
    } else {
        arg.to_string()
    };
    let program = parse_program(&text).map_err(|e| CliError::Parse(format!("program: {e}")))?;
    let tape = text.lines().find_map(|l| l.trim().strip_prefix("# tape:")).map(|t| tape_arg(t.trim())).transpose()?;
    Ok((program, tape))
}

fn model_arg(program: &str, tape: Option<&str>) -> Result<Model, CliError> {
    let (program, header) = program_arg(program)?;
    let tape = match tape {
        Some(t) => tape_arg(t)?,
        None => header.unwrap_or_default(),
    };
    Ok(Model::new(program, tape))
}

/// File contents for a model: a tape comment followed by the program.
pub fn model_file(m: &Model) -> String {
    format!("# tape: {}\n{}\n", m.tape, m.program)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn show_tape(t: &Tape) -> String {
    format!("({t})")
}

fn render(format: Format, text: String, value: serde_json::Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => format!("{value}\n"),
    }
}

#[derive(Serialize)]
struct RunReport {
    outputs: Vec<String>,
    diverges: bool,
    paths_explored: usize,
}

#[derive(Serialize)]
struct ModelJson {
    tape: String,
    program: String,
    n: u32,
    length: usize,
    max_index: u32,
}

fn model_json(m: &Model, n: u32) -> ModelJson {
    let metrics = program_metrics(&m.program);
    ModelJson {
        tape: m.tape.to_string(),
        program: m.program.to_string(),
        n,
        length: metrics.length,
        max_index: metrics.max_index,
    }
}

fn model_text(out: &mut String, m: &Model, n: u32) {
    let metrics = program_metrics(&m.program);
    let _ = writeln!(out, "N: {n}");
    let _ = writeln!(out, "tape: {}", show_tape(&m.tape));
    let _ = writeln!(out, "program: {}", m.program);
    let _ = writeln!(out, "length: {} tokens, max index X{}", metrics.length, metrics.max_index);
}

/// Oracle verdict for `formula`, or `None` when outside its exact range.
fn oracle_verdict(formula: &Formula, dialect: Dialect) -> Result<Option<bool>, CliError> {
    let n = formula.max_index();
    if !within_oracle_bounds(formula, n, ORACLE_OUTPUTS) {
        return Ok(None);
    }
    brute_force_sat_small(formula, dialect, n, ORACLE_OUTPUTS).map(Some).map_err(|e| CliError::Internal(e.to_string()))
}

fn oracle_status(answer: bool, verdict: Option<bool>) -> Result<&'static str, CliError> {
    match verdict {
        None => Ok("skipped (formula outside oracle bounds)"),
        Some(v) if v == answer => Ok("agrees"),
        Some(v) => Err(CliError::Internal(format!(
            "oracle disagreement: decision procedure says {answer}, table oracle says {v}"
        ))),
    }
}

pub fn execute_cli(cli: &Cli) -> Report {
    match dispatch(cli) {
        Ok(r) => r,
        Err(e) => e.report(),
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let fmt = cli.format;
    let dialect = cli.dialect;
    match &cli.command {
        Command::Run { program, tape, intervention } => {
            let m = model_arg(program, tape.as_deref())?;
            let a = intervention_arg(intervention)?;
            let s = execute(&m.program, &m.tape, &clamp_of(&a));
            let report = RunReport {
                outputs: s.halting_outputs.iter().map(Tape::to_string).collect(),
                diverges: s.diverges,
                paths_explored: s.paths,
            };
            let outs: Vec<String> = s.halting_outputs.iter().map(show_tape).collect();
            let text =
                format!("outputs: [{}]\ndiverges: {}\npaths explored: {}\n", outs.join(", "), s.diverges, s.paths);
            Ok(Report { output: render(fmt, text, json!(report)), code: 0 })
        }
        Command::Check { program, formula, tape, fast } => {
            let m = model_arg(program, tape.as_deref())?;
            let phi = formula_arg(formula)?;
            let mut checker = Checker::new(&m);
            let mut literals = Vec::new();
            let mut text = String::new();
            let mut atoms = phi.cond_atoms();
            atoms.dedup();
            for c in atoms {
                let holds = if *fast {
                    fast_check_literal(&m, c).map_err(|e| CliError::Parse(format!("--fast: {e}")))?
                } else {
                    checker.check_cond(c)
                };
                let ev = evidence(&m, c);
                let _ = write!(text, "{c}: {holds}");
                if let Some(ev) = &ev {
                    let _ = write!(text, " (path {:?} -> {})", ev.choices, show_tape(&ev.output));
                }
                text.push('\n');
                literals.push(json!({
                    "literal": c.to_string(),
                    "holds": holds,
                    "evidence": ev.map(|e| json!({"choices": e.choices, "output": e.output.to_string()})),
                }));
            }
            let holds = checker.check(&phi);
            let _ = writeln!(text, "{phi}: {holds}");
            let value = json!({"formula": phi.to_string(), "holds": holds, "literals": literals});
            Ok(Report { output: render(fmt, text, value), code: if holds { 0 } else { 1 } })
        }
        Command::Nf { formula } => {
            let phi = formula_arg(formula)?;
            let clauses = to_normal_form(&phi);
            let lines: Vec<String> = clauses.iter().map(ToString::to_string).collect();
            let mut text = String::new();
            if lines.is_empty() {
                text.push_str("F\n");
            }
            for l in &lines {
                let _ = writeln!(text, "{l}");
            }
            Ok(Report { output: render(fmt, text, json!({"formula": phi.to_string(), "clauses": lines})), code: 0 })
        }
        Command::Sat { formula, witness } => {
            let phi = formula_arg(formula)?;
            let result = sat(&phi, dialect).map_err(|e| CliError::Internal(e.to_string()))?;
            let oracle =
                if cli.oracle { Some(oracle_status(result.is_sat(), oracle_verdict(&phi, dialect)?)?) } else { None };
            let mut text = String::new();
            let value = match &result {
                SatResult::Satisfiable { witness: w, clause } => {
                    let m = w.model();
                    if let Some(path) = witness {
                        write_file(path, &model_file(&m))?;
                    }
                    let _ = writeln!(text, "satisfiable ({dialect})");
                    let _ = writeln!(text, "clause: {clause}");
                    model_text(&mut text, &m, w.n);
                    json!({"formula": phi.to_string(), "dialect": dialect.name(), "satisfiable": true,
                           "clause": clause.to_string(), "witness": model_json(&m, w.n), "oracle": oracle})
                }
                SatResult::Unsatisfiable { reasons } => {
                    let _ = writeln!(text, "unsatisfiable ({dialect})");
                    for (c, r) in reasons {
                        let _ = writeln!(text, "  {c}: {r}");
                    }
                    let rs: Vec<_> = reasons
                        .iter()
                        .map(|(c, r)| json!({"clause": c.to_string(), "reason": r.to_string()}))
                        .collect();
                    json!({"formula": phi.to_string(), "dialect": dialect.name(), "satisfiable": false,
                           "reasons": rs, "oracle": oracle})
                }
            };
            if let Some(o) = oracle {
                let _ = writeln!(text, "oracle: {o}");
            }
            Ok(Report { output: render(fmt, text, value), code: if result.is_sat() { 0 } else { 1 } })
        }
        Command::Valid { formula, countermodel } => {
            let phi = formula_arg(formula)?;
            let negation = phi.clone().not();
            let result = sat(&negation, dialect).map_err(|e| CliError::Internal(e.to_string()))?;
            let is_valid = !result.is_sat();
            let oracle = if cli.oracle {
                Some(oracle_status(result.is_sat(), oracle_verdict(&negation, dialect)?)?)
            } else {
                None
            };
            let mut text = String::new();
            let value = match result.witness() {
                None => {
                    let _ = writeln!(text, "valid ({dialect})");
                    json!({"formula": phi.to_string(), "dialect": dialect.name(), "valid": true, "oracle": oracle})
                }
                Some(w) => {
                    let m = w.model();
                    if let Some(path) = countermodel {
                        write_file(path, &model_file(&m))?;
                    }
                    let _ = writeln!(text, "invalid ({dialect}); countermodel:");
                    model_text(&mut text, &m, w.n);
                    json!({"formula": phi.to_string(), "dialect": dialect.name(), "valid": false,
                           "countermodel": model_json(&m, w.n), "oracle": oracle})
                }
            };
            if let Some(o) = oracle {
                let _ = writeln!(text, "oracle: {o}");
            }
            Ok(Report { output: render(fmt, text, value), code: if is_valid { 0 } else { 1 } })
        }
        Command::Synth { formula, out } => {
            let phi = formula_arg(formula)?;
            let result = sat(&phi, dialect).map_err(|e| CliError::Internal(e.to_string()))?;
            let Some(w) = result.witness() else {
                let text = format!("unsatisfiable ({dialect}): nothing to synthesize\n");
                let value = json!({"formula": phi.to_string(), "dialect": dialect.name(), "satisfiable": false});
                return Ok(Report { output: render(fmt, text, value), code: 1 });
            };
            let m = w.model();
            if let Some(path) = out {
                write_file(path, &model_file(&m))?;
            }
            let needed = min_fragment_c(&m.program, &phi).unwrap_or(1);
            let c = cli.fragment_c.unwrap_or(needed);
            let member = in_fragment(&m.program, &phi, c);
            let mut text = String::new();
            model_text(&mut text, &m, w.n);
            let _ = writeln!(text, "|phi|: {}", phi.size());
            let _ = writeln!(text, "fragment C = {c}: {}", if member { "member" } else { "not a member" });
            let value = json!({"formula": phi.to_string(), "dialect": dialect.name(), "satisfiable": true,
                               "model": model_json(&m, probe_count(phi.max_index())), "size": phi.size(),
                               "fragment_c": c, "in_fragment": member});
            Ok(Report { output: render(fmt, text, value), code: if member { 0 } else { 1 } })
        }
        Command::Corpus { kind, count, atoms, size } => {
            if *atoms == 0 {
                return Err(CliError::Parse("--atoms must be at least 1".into()));
            }
            let mut corpus = Corpus::new(cli.seed);
            let items: Vec<String> = (0..*count)
                .map(|_| match kind {
                    CorpusKind::Formulas => corpus.formula(*atoms, *size).to_string(),
                    CorpusKind::Programs => corpus.program(*atoms, *size, dialect).to_string(),
                })
                .collect();
            let text: String = items.iter().map(|l| format!("{l}\n")).collect();
            Ok(Report { output: render(fmt, text, json!({"seed": cli.seed, "items": items})), code: 0 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Report {
        let cli = Cli::try_parse_from(std::iter::once("simcond").chain(args.iter().copied())).unwrap();
        execute_cli(&cli)
    }

    #[test]
    fn run_clamped_write() {
        let r = run(&["run", "X1 := 1", "--intervention", "!X1"]);
        assert_eq!(r.output, "outputs: [()]\ndiverges: false\npaths explored: 1\n");
        let r = run(&["run", "loop"]);
        assert!(r.output.starts_with("outputs: []\ndiverges: true"));
    }

    #[test]
    fn sat_det_merge_reason() {
        let r = run(&["sat", "<X1>X2 & <X1>!X2", "--dialect", "det"]);
        assert_eq!(r.code, 1);
        assert!(r.output.contains("deterministic merge"), "{}", r.output);
    }

    #[test]
    fn parse_errors_exit_two() {
        assert_eq!(run(&["sat", "[X1 | X2]X3"]).code, 2);
        assert_eq!(run(&["run", "X1 := 2"]).code, 2);
        assert_eq!(run(&["run", "X1 := 1", "--tape", "X1=2"]).code, 2);
    }

    #[test]
    fn json_mode() {
        let r = run(&["--format", "json", "valid", "[X1]X1"]);
        let v: serde_json::Value = serde_json::from_str(&r.output).unwrap();
        assert_eq!(v["valid"], true);
        assert_eq!(r.code, 0);
        let r = run(&["--format", "json-like", "run", "X1 := 1"]);
        let v: serde_json::Value = serde_json::from_str(&r.output).unwrap();
        assert_eq!(v["outputs"][0], "X1=1");
    }
}
