//! Model checking formulas against (program, tape) models.

use std::collections::HashMap;

use crate::formula::{CondAtom, Formula, InterventionSpec, Modality};
use crate::fragment::{FragmentView, ShapeError};
use crate::interp::{execute, find_path, ExecutionSummary};
use crate::pl::PLProgram;
use crate::tape::{clamp_of, Tape};

/// A causal simulation model: a program together with an input tape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub program: PLProgram,
    pub tape: Tape,
}

impl Model {
    pub fn new(program: PLProgram, tape: Tape) -> Model {
        Model { program, tape }
    }

    pub fn run(&self, antecedent: &InterventionSpec) -> ExecutionSummary {
        execute(&self.program, &self.tape, &clamp_of(antecedent))
    }
}

/// Evaluates formulas on one model, running each antecedent's intervention once.
pub struct Checker<'m> {
    model: &'m Model,
    runs: HashMap<InterventionSpec, ExecutionSummary>,
}

impl<'m> Checker<'m> {
    pub fn new(model: &'m Model) -> Checker<'m> {
        Checker { model, runs: HashMap::new() }
    }

    fn outputs(&mut self, antecedent: &InterventionSpec) -> &ExecutionSummary {
        let model = self.model;
        self.runs.entry(antecedent.clone()).or_insert_with(|| model.run(antecedent))
    }

    pub fn check_cond(&mut self, c: &CondAtom) -> bool {
        let mut outs = self.outputs(&c.antecedent).halting_outputs.iter();
        match c.modality {
            Modality::Box => outs.all(|t| t.satisfies(&c.consequent)),
            Modality::Diamond => outs.any(|t| t.satisfies(&c.consequent)),
        }
    }

    pub fn check(&mut self, formula: &Formula) -> bool {
        let model = self.model;
        formula.eval_with(&|a| model.tape.get(a.index()), &mut |c| self.check_cond(c))
    }
}

/// Truth of `formula` on the model. Box is vacuously true when no execution
/// halts; Diamond then is false.
pub fn check(m: &Model, formula: &Formula) -> bool {
    Checker::new(m).check(formula)
}

/// A halting path that settles a conditional atom: a witness for a true
/// diamond, or a counter-example for a false box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEvidence {
    pub choices: Vec<usize>,
    pub output: Tape,
}

/// Evidence path for `c`, if one exists (`None` for true boxes and false diamonds).
pub fn evidence(m: &Model, c: &CondAtom) -> Option<PathEvidence> {
    let clamp = clamp_of(&c.antecedent);
    let want = c.modality == Modality::Diamond;
    find_path(&m.program, &m.tape, &clamp, |t| t.satisfies(&c.consequent) == want)
        .map(|(choices, output)| PathEvidence { choices, output })
}

/// Structured verification of one conditional literal on a canonical-shape
/// program: compute the tape left by the intervention probes, then run only
/// the matching detection branch (choice: every branch; assignment sequence:
/// once; loop: no output).
pub fn fast_check_literal(m: &Model, lit: &CondAtom) -> Result<bool, ShapeError> {
    let view = FragmentView::parse(&m.program)?;
    let (outputs, _) = view.outputs_under(&m.tape, &lit.antecedent);
    let mut outs = outputs.iter();
    Ok(match lit.modality {
        Modality::Box => outs.all(|t| t.satisfies(&lit.consequent)),
        Modality::Diamond => outs.any(|t| t.satisfies(&lit.consequent)),
    })
}
