//! Simulation conditionals: a logic of interventionist conditionals
//! interpreted over simple nondeterministic programs.
//!
//! Formulas are built over atoms `X1, X2, ...` with conditional atoms
//! `[a]b` (every halting run under the intervention `a` ends in a state
//! satisfying `b`) and `<a>b` (some halting run does). Models pair a program
//! with an input tape.

pub mod canonical;
pub mod check;
pub mod cli;
pub mod corpus;
pub mod decision;
pub mod formula;
pub mod fragment;
pub mod interp;
pub mod normal_form;
pub mod pl;
pub mod tape;

pub use canonical::{build_selection, synthesize, ClauseInconsistent, SelectionFunction, SynthesisOutput};
pub use check::{check, evidence, fast_check_literal, Model};
pub use formula::{parse_formula, CondAtom, Formula, InterventionSpec, Literal, PropFormula};
pub use interp::{execute, trace_execute, ExecutionSummary};
pub use normal_form::{normal_form_clauses, to_normal_form, NormalClause};
pub use pl::{parse_program, Dialect, PLProgram};
pub use tape::{ClampSet, Tape};
