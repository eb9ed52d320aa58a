//! The simulation language: assignments, conditionals, nondeterministic
//! choice and an unconditional `loop`, over bit variables `X1, X2, ...`.
//!
//! Concrete syntax:
//!
//! ```text
//! prog   ::= ""  | "skip" | assign | prog ";" prog | "loop"
//!          | "if" cond "then" prog "else" prog "end"
//!          | "choose" prog ("or" prog)* "end"
//! assign ::= Xi ":=" (0 | 1 | Xj | "!" Xj)
//! cond   ::= Xi "=" (0 | 1 | Xj) | Xi "!=" Xj | cond "&" cond
//! ```
//!
//! Sequences and condition conjunctions are stored flat, which is what makes
//! printing and parsing inverse to each other without grouping syntax.

mod parse;

use std::fmt;
use std::str::FromStr;

use crate::formula::Atom;

pub use parse::{parse_program, ProgramError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Const(bool),
    Var(Atom),
    NegVar(Atom),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    VarEqConst(Atom, bool),
    VarEqVar(Atom, Atom),
    VarNeqVar(Atom, Atom),
    /// At least two conjuncts, none of them a `Conj`.
    Conj(Vec<Condition>),
}

impl Condition {
    /// Flattening conjunction.
    pub fn all(parts: impl IntoIterator<Item = Condition>) -> Option<Condition> {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Condition::Conj(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => None,
            1 => flat.pop(),
            _ => Some(Condition::Conj(flat)),
        }
    }

    pub fn eval(&self, read: &impl Fn(Atom) -> bool) -> bool {
        match self {
            Condition::VarEqConst(a, b) => read(*a) == *b,
            Condition::VarEqVar(a, b) => read(*a) == read(*b),
            Condition::VarNeqVar(a, b) => read(*a) != read(*b),
            Condition::Conj(parts) => parts.iter().all(|c| c.eval(read)),
        }
    }

    pub fn max_index(&self) -> u32 {
        match self {
            Condition::VarEqConst(a, _) => a.index(),
            Condition::VarEqVar(a, b) | Condition::VarNeqVar(a, b) => a.index().max(b.index()),
            Condition::Conj(parts) => parts.iter().map(Condition::max_index).max().unwrap_or(0),
        }
    }

    fn tokens(&self, out: &mut Vec<String>) {
        match self {
            Condition::VarEqConst(a, b) => {
                out.extend([a.to_string(), "=".into(), bit(*b).into()]);
            }
            Condition::VarEqVar(a, b) => out.extend([a.to_string(), "=".into(), b.to_string()]),
            Condition::VarNeqVar(a, b) => out.extend([a.to_string(), "!=".into(), b.to_string()]),
            Condition::Conj(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        out.push("&".into());
                    }
                    p.tokens(out);
                }
            }
        }
    }
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statement {
    Empty,
    Assign {
        target: Atom,
        source: Source,
    },
    /// At least two items, none of them a `Seq`.
    Seq(Vec<Statement>),
    /// Unconditional infinite loop.
    Loop,
    If {
        cond: Condition,
        then_branch: Box<Statement>,
        else_branch: Box<Statement>,
    },
    /// At least two branches.
    Choose(Vec<Statement>),
}

impl Statement {
    pub fn assign(target: u32, source: Source) -> Statement {
        Statement::Assign { target: Atom::new(target), source }
    }

    pub fn set(target: u32, value: bool) -> Statement {
        Statement::assign(target, Source::Const(value))
    }

    pub fn copy(target: u32, from: u32) -> Statement {
        Statement::assign(target, Source::Var(Atom::new(from)))
    }

    pub fn negate(target: u32, from: u32) -> Statement {
        Statement::assign(target, Source::NegVar(Atom::new(from)))
    }

    pub fn if_else(cond: Condition, then_branch: Statement, else_branch: Statement) -> Statement {
        Statement::If { cond, then_branch: Box::new(then_branch), else_branch: Box::new(else_branch) }
    }

    /// Flattening sequence; drops `Empty` items and collapses short sequences.
    pub fn seq(items: impl IntoIterator<Item = Statement>) -> Statement {
        let mut flat = Vec::new();
        for s in items {
            match s {
                Statement::Seq(inner) => flat.extend(inner.into_iter().filter(|s| *s != Statement::Empty)),
                Statement::Empty => {}
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Statement::Empty,
            1 => flat.pop().unwrap(),
            _ => Statement::Seq(flat),
        }
    }

    /// A choice; a single branch is the branch itself.
    pub fn choose(mut branches: Vec<Statement>) -> Statement {
        match branches.len() {
            0 => Statement::Empty,
            1 => branches.pop().unwrap(),
            _ => Statement::Choose(branches),
        }
    }

    /// Items of a sequence, or the statement itself as a one-item sequence.
    pub fn items(&self) -> &[Statement] {
        match self {
            Statement::Seq(items) => items,
            Statement::Empty => &[],
            other => std::slice::from_ref(other),
        }
    }

    pub fn max_index(&self) -> u32 {
        match self {
            Statement::Empty | Statement::Loop => 0,
            Statement::Assign { target, source } => target.index().max(match source {
                Source::Const(_) => 0,
                Source::Var(a) | Source::NegVar(a) => a.index(),
            }),
            Statement::Seq(items) | Statement::Choose(items) => {
                items.iter().map(Statement::max_index).max().unwrap_or(0)
            }
            Statement::If { cond, then_branch, else_branch } => {
                cond.max_index().max(then_branch.max_index()).max(else_branch.max_index())
            }
        }
    }

    /// Largest index written by any assignment.
    pub fn max_assigned_index(&self) -> u32 {
        match self {
            Statement::Empty | Statement::Loop => 0,
            Statement::Assign { target, .. } => target.index(),
            Statement::Seq(items) | Statement::Choose(items) => {
                items.iter().map(Statement::max_assigned_index).max().unwrap_or(0)
            }
            Statement::If { then_branch, else_branch, .. } => {
                then_branch.max_assigned_index().max(else_branch.max_assigned_index())
            }
        }
    }

    pub fn tokens(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.push_tokens(&mut out);
        out
    }

    fn push_tokens(&self, out: &mut Vec<String>) {
        match self {
            Statement::Empty => {}
            Statement::Assign { target, source } => {
                out.push(target.to_string());
                out.push(":=".into());
                match source {
                    Source::Const(b) => out.push(bit(*b).into()),
                    Source::Var(a) => out.push(a.to_string()),
                    Source::NegVar(a) => {
                        out.push("!".into());
                        out.push(a.to_string());
                    }
                }
            }
            Statement::Seq(items) => {
                for (i, s) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(";".into());
                    }
                    s.push_tokens(out);
                }
            }
            Statement::Loop => out.push("loop".into()),
            Statement::If { cond, then_branch, else_branch } => {
                out.push("if".into());
                cond.tokens(out);
                out.push("then".into());
                then_branch.push_tokens(out);
                out.push("else".into());
                else_branch.push_tokens(out);
                out.push("end".into());
            }
            Statement::Choose(branches) => {
                out.push("choose".into());
                for (i, b) in branches.iter().enumerate() {
                    if i > 0 {
                        out.push("or".into());
                    }
                    b.push_tokens(out);
                }
                out.push("end".into());
            }
        }
    }
}

fn render(tokens: &[String]) -> String {
    let mut s = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 && tokens[i - 1] != "!" {
            s.push(' ');
        }
        s.push_str(t);
    }
    s
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.tokens()))
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut toks = Vec::new();
        self.tokens(&mut toks);
        f.write_str(&render(&toks))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PLProgram {
    pub body: Statement,
}

impl PLProgram {
    pub fn new(body: Statement) -> PLProgram {
        PLProgram { body }
    }

    pub fn max_index(&self) -> u32 {
        self.body.max_index()
    }
}

impl fmt::Display for PLProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

impl FromStr for PLProgram {
    type Err = ProgramError;

    fn from_str(s: &str) -> Result<PLProgram, ProgramError> {
        parse_program(s)
    }
}

/// Canonical concrete syntax; [`parse_program`] inverts it.
pub fn print_program(p: &PLProgram) -> String {
    p.to_string()
}

/// The four program classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dialect {
    /// All programs.
    Full,
    /// No `choose`.
    Det,
    /// No `loop`.
    Halting,
    /// Neither.
    DetHalting,
}

impl Dialect {
    pub const ALL: [Dialect; 4] = [Dialect::Full, Dialect::Det, Dialect::Halting, Dialect::DetHalting];

    pub fn is_deterministic(self) -> bool {
        matches!(self, Dialect::Det | Dialect::DetHalting)
    }

    pub fn is_halting(self) -> bool {
        matches!(self, Dialect::Halting | Dialect::DetHalting)
    }

    pub fn name(self) -> &'static str {
        match self {
            Dialect::Full => "full",
            Dialect::Det => "det",
            Dialect::Halting => "halting",
            Dialect::DetHalting => "det-halting",
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown dialect {0:?} (expected full, det, halting or det-halting)")]
pub struct UnknownDialect(pub String);

impl FromStr for Dialect {
    type Err = UnknownDialect;

    fn from_str(s: &str) -> Result<Dialect, UnknownDialect> {
        Dialect::ALL.into_iter().find(|d| d.name() == s).ok_or_else(|| UnknownDialect(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStep {
    Item(usize),
    Then,
    Else,
    Branch(usize),
}

/// Location of a node, as steps from the program root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodePath(pub Vec<PathStep>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for step in &self.0 {
            match step {
                PathStep::Item(i) => write!(f, "/{i}")?,
                PathStep::Then => f.write_str("/then")?,
                PathStep::Else => f.write_str("/else")?,
                PathStep::Branch(i) => write!(f, "/or{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Choose,
    Loop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: NodePath,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::Choose => write!(f, "`choose` at {} in a deterministic dialect", self.path),
            ViolationKind::Loop => write!(f, "`loop` at {} in a halting dialect", self.path),
        }
    }
}

/// Every `choose` (for deterministic dialects) and `loop` (for halting
/// dialects) in the program, in pre-order.
pub fn validate_dialect(p: &PLProgram, dialect: Dialect) -> Result<(), Vec<Violation>> {
    fn walk(s: &Statement, d: Dialect, path: &mut Vec<PathStep>, out: &mut Vec<Violation>) {
        match s {
            Statement::Empty | Statement::Assign { .. } => {}
            Statement::Loop => {
                if d.is_halting() {
                    out.push(Violation { path: NodePath(path.clone()), kind: ViolationKind::Loop });
                }
            }
            Statement::Seq(items) => {
                for (i, item) in items.iter().enumerate() {
                    path.push(PathStep::Item(i));
                    walk(item, d, path, out);
                    path.pop();
                }
            }
            Statement::If { then_branch, else_branch, .. } => {
                path.push(PathStep::Then);
                walk(then_branch, d, path, out);
                path.pop();
                path.push(PathStep::Else);
                walk(else_branch, d, path, out);
                path.pop();
            }
            Statement::Choose(branches) => {
                if d.is_deterministic() {
                    out.push(Violation { path: NodePath(path.clone()), kind: ViolationKind::Choose });
                }
                for (i, b) in branches.iter().enumerate() {
                    path.push(PathStep::Branch(i));
                    walk(b, d, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(&p.body, dialect, &mut Vec::new(), &mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProgramMetrics {
    /// Token count of the canonical printed form.
    pub length: usize,
    /// Largest atom index occurring anywhere, 0 if none.
    pub max_index: u32,
}

pub fn program_metrics(p: &PLProgram) -> ProgramMetrics {
    ProgramMetrics { length: p.body.tokens().len(), max_index: p.max_index() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prog(s: &str) -> PLProgram {
        parse_program(s).unwrap()
    }

    #[test]
    fn dialect_violations() {
        let violations = validate_dialect(&prog("loop"), Dialect::Halting).unwrap_err();
        assert_eq!(violations, vec![Violation { path: NodePath::default(), kind: ViolationKind::Loop }]);
        assert_eq!(violations[0].path.to_string(), "root");

        let v = validate_dialect(&prog("choose X1 := 1 or X1 := 0 end"), Dialect::Det).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::Choose);

        for d in Dialect::ALL {
            assert_eq!(validate_dialect(&prog("X1 := !X2"), d), Ok(()));
        }
    }

    #[test]
    fn violation_paths_point_at_nodes() {
        let p = prog("X1 := 1 ; if X1 = 1 then choose loop or skip end else loop end");
        let v = validate_dialect(&p, Dialect::DetHalting).unwrap_err();
        let rendered: Vec<String> = v.iter().map(|v| v.path.to_string()).collect();
        assert_eq!(rendered, vec!["root/1/then", "root/1/then/or0", "root/1/else"]);
        assert!(validate_dialect(&p, Dialect::Full).is_ok());
    }

    #[test]
    fn metrics() {
        assert_eq!(program_metrics(&prog("X1 := 1")), ProgramMetrics { length: 3, max_index: 1 });
        assert_eq!(program_metrics(&PLProgram::new(Statement::Empty)), ProgramMetrics { length: 0, max_index: 0 });
        assert_eq!(program_metrics(&prog("X2 := X5 ; X2 := X5")), ProgramMetrics { length: 7, max_index: 5 });
        // `!` is its own token
        assert_eq!(program_metrics(&prog("X1 := !X9")).length, 4);
    }

    #[test]
    fn seq_constructor_flattens() {
        let s = Statement::seq([
            Statement::set(1, true),
            Statement::Empty,
            Statement::seq([Statement::set(2, false), Statement::Loop]),
        ]);
        assert_eq!(s, Statement::Seq(vec![Statement::set(1, true), Statement::set(2, false), Statement::Loop]));
        assert_eq!(Statement::seq([Statement::Empty]), Statement::Empty);
        assert_eq!(Statement::seq([Statement::Loop]), Statement::Loop);
    }

    #[test]
    fn condition_constructor_flattens() {
        let a = Condition::VarEqConst(Atom::new(1), true);
        let b = Condition::VarEqVar(Atom::new(1), Atom::new(2));
        let c = Condition::VarNeqVar(Atom::new(2), Atom::new(3));
        let ab = Condition::all([a.clone(), b.clone()]).unwrap();
        assert_eq!(Condition::all([ab, c.clone()]).unwrap(), Condition::Conj(vec![a.clone(), b, c]));
        assert_eq!(Condition::all([a.clone()]).unwrap(), a);
        assert_eq!(Condition::all([]), None);
    }

    #[test]
    fn dialect_names_round_trip() {
        for d in Dialect::ALL {
            assert_eq!(d.name().parse::<Dialect>().unwrap(), d);
        }
        assert!("nondet".parse::<Dialect>().is_err());
    }
}
