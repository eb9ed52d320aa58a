//! Canonical model synthesis.
//!
//! A clause is turned into a selection function (for every antecedent, the
//! set of outcomes the program must be able to produce under that
//! intervention) and then into a program of the following shape, where `N`
//! bounds the atom indices of the clause:
//!
//! 1. for each `i` in `1..=N`, a probe that tries to toggle `Xi` and records
//!    in `X(i+N)` whether the toggle was blocked by a clamp, using `X(i+2N)`
//!    as scratch;
//! 2. for each antecedent `a`, an `if` whose condition holds exactly when the
//!    run is under the intervention `a` (values match, and the recorded marks
//!    are set for the variables of `a` and clear for all others) and whose
//!    body produces the selected outcomes: a `choose` of assignment blocks, a
//!    single block, or `loop` when there are none.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::check::Model;
use crate::formula::{Atom, InterventionSpec};
use crate::normal_form::NormalClause;
use crate::pl::{validate_dialect, Condition, Dialect, PLProgram, Statement};
use crate::tape::Tape;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelectionFunction {
    pub entries: BTreeMap<InterventionSpec, BTreeSet<InterventionSpec>>,
}

impl SelectionFunction {
    pub fn get(&self, antecedent: &InterventionSpec) -> Option<&BTreeSet<InterventionSpec>> {
        self.entries.get(antecedent)
    }

    /// Largest outcome set.
    pub fn max_width(&self) -> usize {
        self.entries.values().map(BTreeSet::len).max().unwrap_or(0)
    }
}

impl fmt::Display for SelectionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, outs)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{a} -> {{")?;
            for (j, o) in outs.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{o}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Why a clause admits no model in the requested dialect.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClauseInconsistent {
    #[error("<{antecedent}>F: diamond with an unsatisfiable consequent")]
    DiamondBottom { antecedent: InterventionSpec },
    #[error("<{antecedent}>{consequent}: consequent contradicts the antecedent")]
    DiamondContradictsAntecedent { antecedent: InterventionSpec, consequent: InterventionSpec },
    #[error("<{antecedent}>{consequent} conflicts with the boxes on {antecedent}: no disjunct choice is consistent")]
    BoxConflict { antecedent: InterventionSpec, consequent: InterventionSpec },
    #[error("deterministic merge of the diamonds on {antecedent} is inconsistent")]
    DetMerge { antecedent: InterventionSpec },
    #[error("halting dialect needs an outcome under {antecedent}, but its boxes admit none")]
    NoHaltingOutcome { antecedent: InterventionSpec },
}

/// Extends `base` by one disjunct from every set so that the result stays
/// consistent, trying disjuncts in order and backtracking.
fn extend_through(base: &InterventionSpec, sets: &[Vec<InterventionSpec>]) -> Option<InterventionSpec> {
    match sets.split_first() {
        None => Some(base.clone()),
        Some((first, rest)) => {
            first.iter().filter_map(|d| base.conjoin(d)).find_map(|joined| extend_through(&joined, rest))
        }
    }
}

pub fn build_selection(c: &NormalClause, dialect: Dialect) -> Result<SelectionFunction, ClauseInconsistent> {
    if let Some(a) = c.poisoned.first() {
        return Err(ClauseInconsistent::DiamondBottom { antecedent: a.clone() });
    }
    let mut entries = BTreeMap::new();
    for alpha in c.antecedents() {
        let boxes = c.boxes_at(&alpha);
        let mut bases = Vec::new();
        for beta in c.diamonds_at(&alpha) {
            let base = alpha.conjoin(beta).ok_or_else(|| ClauseInconsistent::DiamondContradictsAntecedent {
                antecedent: alpha.clone(),
                consequent: beta.clone(),
            })?;
            bases.push((beta.clone(), base));
        }
        if dialect.is_deterministic() && bases.len() > 1 {
            let mut merged = alpha.clone();
            for (_, base) in &bases {
                merged =
                    merged.conjoin(base).ok_or_else(|| ClauseInconsistent::DetMerge { antecedent: alpha.clone() })?;
            }
            bases = vec![(merged.clone(), merged)];
        }
        let mut outcomes = BTreeSet::new();
        for (beta, base) in &bases {
            let out = extend_through(base, boxes).ok_or_else(|| ClauseInconsistent::BoxConflict {
                antecedent: alpha.clone(),
                consequent: beta.clone(),
            })?;
            outcomes.insert(out);
        }
        if outcomes.is_empty() && dialect.is_halting() {
            let out = extend_through(&alpha, boxes)
                .ok_or_else(|| ClauseInconsistent::NoHaltingOutcome { antecedent: alpha.clone() })?;
            outcomes.insert(out);
        }
        entries.insert(alpha, outcomes);
    }
    Ok(SelectionFunction { entries })
}

/// Probe for `Xi`: leaves `Xi` unchanged and sets `X(i+N)` to 1 iff `Xi` is clamped.
pub fn emit_is_intervened(i: u32, n: u32) -> Statement {
    assert!(1 <= i && i <= n, "probe index {i} outside 1..={n}");
    let (mark, scratch) = (i + n, i + 2 * n);
    Statement::seq([
        Statement::copy(mark, i),
        Statement::negate(i, i),
        Statement::copy(scratch, i),
        Statement::if_else(
            Condition::VarEqVar(Atom::new(scratch), Atom::new(mark)),
            Statement::set(mark, true),
            Statement::set(mark, false),
        ),
        Statement::negate(i, i),
    ])
}

/// Holds iff the clamped values match `alpha` and the marks left by the
/// probes are set for exactly the variables of `alpha`.
pub fn emit_holds_from_intervention(alpha: &InterventionSpec, n: u32) -> Condition {
    assert!(n >= 1, "at least one probed variable is required");
    assert!(alpha.max_index() <= n, "antecedent {alpha} mentions variables beyond X{n}");
    let values = alpha.literals().iter().map(|l| Condition::VarEqConst(l.atom, l.positive));
    let marks = (1..=n).map(|j| Condition::VarEqConst(Atom::new(j + n), alpha.value_of(Atom::new(j)).is_some()));
    Condition::all(values.chain(marks)).expect("n >= 1 gives at least one conjunct")
}

/// One constant assignment per literal, in index order.
pub fn emit_make_hold(beta: &InterventionSpec) -> Statement {
    Statement::seq(beta.literals().iter().map(|l| Statement::set(l.atom.index(), l.positive)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisOutput {
    pub program: PLProgram,
    pub tape: Tape,
    /// Number of probed variables.
    pub n: u32,
}

impl SynthesisOutput {
    pub fn model(&self) -> Model {
        Model::new(self.program.clone(), self.tape.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SynthesisError {
    #[error("N = {n} is below the largest index X{needed} of the clause (and must be at least 1)")]
    BoundTooSmall { n: u32, needed: u32 },
    #[error("selection function does not cover exactly the antecedents of the clause")]
    KeyMismatch,
    #[error("outcome {outcome} under {antecedent} does not extend the antecedent")]
    NotAnExtension { antecedent: InterventionSpec, outcome: InterventionSpec },
    #[error("selection function under {antecedent} has {width} outcomes, not allowed in dialect {dialect}")]
    DialectWidth { antecedent: InterventionSpec, width: usize, dialect: Dialect },
    #[error("synthesized program left dialect {0}")]
    DialectViolation(Dialect),
}

/// Number of probed variables used for a formula or clause whose largest index is `max`.
pub fn probe_count(max: u32) -> u32 {
    max.max(1)
}

pub fn synthesize(
    c: &NormalClause,
    f: &SelectionFunction,
    dialect: Dialect,
    n: u32,
) -> Result<SynthesisOutput, SynthesisError> {
    let needed = c.max_index();
    if n < needed.max(1) {
        return Err(SynthesisError::BoundTooSmall { n, needed });
    }
    if !f.entries.keys().eq(c.antecedents().iter()) {
        return Err(SynthesisError::KeyMismatch);
    }
    for (alpha, outs) in &f.entries {
        if let Some(o) = outs.iter().find(|o| !o.extends(alpha)) {
            return Err(SynthesisError::NotAnExtension { antecedent: alpha.clone(), outcome: o.clone() });
        }
        let width = outs.len();
        if (dialect.is_deterministic() && width > 1) || (dialect.is_halting() && width == 0) {
            return Err(SynthesisError::DialectWidth { antecedent: alpha.clone(), width, dialect });
        }
    }

    let probes = (1..=n).map(|i| emit_is_intervened(i, n));
    let detectors = f.entries.iter().map(|(alpha, outs)| {
        let body = match outs.len() {
            0 => Statement::Loop,
            _ => Statement::choose(outs.iter().map(emit_make_hold).collect()),
        };
        Statement::if_else(emit_holds_from_intervention(alpha, n), body, Statement::Empty)
    });
    let program = PLProgram::new(Statement::seq(probes.chain(detectors)));
    if validate_dialect(&program, dialect).is_err() {
        return Err(SynthesisError::DialectViolation(dialect));
    }
    let tape = Tape::from_ones(c.pi.iter().filter(|l| l.positive).map(|l| l.atom.index()));
    Ok(SynthesisOutput { program, tape, n })
}
