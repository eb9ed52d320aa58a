//! Execution of programs under interventions.
//!
//! An intervention first writes its clamped values onto the input tape and
//! then ignores every write to a clamped variable. All executions are
//! enumerated depth-first; `choose` forks one path per branch and `loop`
//! ends a path without output.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::formula::Atom;
use crate::pl::{PLProgram, Source, Statement};
use crate::tape::{ClampSet, Tape};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExecutionSummary {
    pub halting_outputs: BTreeSet<Tape>,
    /// Some path reached `loop`.
    pub diverges: bool,
    /// Number of enumerated paths, halting or not.
    pub paths: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceOutcome {
    Halted(Tape),
    Divergent,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("choice {choice} at choose #{step} is out of range ({branches} branches)")]
    ChoiceOutOfRange { step: usize, choice: usize, branches: usize },
    #[error("ran out of branch choices at choose #{step}")]
    InsufficientChoices { step: usize },
}

/// Working memory of one execution.
#[derive(Clone)]
struct Machine {
    bits: Vec<bool>,
}

impl Machine {
    fn start(p: &PLProgram, input: &Tape, clamp: &ClampSet) -> (Machine, Vec<Option<bool>>) {
        let size = p.max_index().max(input.max_index()).max(clamp.max_index()) as usize + 1;
        let mut bits = vec![false; size];
        for i in input.ones() {
            bits[i as usize] = true;
        }
        let mut fixed = vec![None; size];
        for (i, b) in clamp.iter() {
            bits[i as usize] = b;
            fixed[i as usize] = Some(b);
        }
        (Machine { bits }, fixed)
    }

    fn read(&self, a: Atom) -> bool {
        self.bits[a.index() as usize]
    }

    fn assign(&mut self, fixed: &[Option<bool>], target: Atom, source: Source) {
        let value = match source {
            Source::Const(b) => b,
            Source::Var(a) => self.read(a),
            Source::NegVar(a) => !self.read(a),
        };
        let t = target.index() as usize;
        if fixed[t].is_none() {
            self.bits[t] = value;
        }
    }

    fn tape(&self) -> Tape {
        Tape::from_ones(self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i as u32))
    }
}

enum Cont<'a> {
    Done,
    Rest(&'a [Statement], &'a Cont<'a>),
}

type Visitor<'v> = dyn FnMut(&[usize], Option<&Tape>) -> ControlFlow<()> + 'v;

struct Explorer<'v> {
    fixed: Vec<Option<bool>>,
    choices: Vec<usize>,
    visit: &'v mut Visitor<'v>,
}

impl Explorer<'_> {
    fn exec(&mut self, s: &Statement, mut m: Machine, k: &Cont<'_>) -> ControlFlow<()> {
        match s {
            Statement::Empty => self.resume(m, k),
            Statement::Assign { target, source } => {
                m.assign(&self.fixed, *target, *source);
                self.resume(m, k)
            }
            Statement::Seq(items) => match items.split_first() {
                None => self.resume(m, k),
                Some((first, rest)) => self.exec(first, m, &Cont::Rest(rest, k)),
            },
            Statement::Loop => (self.visit)(&self.choices, None),
            Statement::If { cond, then_branch, else_branch } => {
                let branch = if cond.eval(&|a| m.read(a)) { then_branch } else { else_branch };
                self.exec(branch, m, k)
            }
            Statement::Choose(branches) => {
                for (i, b) in branches.iter().enumerate() {
                    self.choices.push(i);
                    let flow = self.exec(b, m.clone(), k);
                    self.choices.pop();
                    flow?;
                }
                ControlFlow::Continue(())
            }
        }
    }

    fn resume(&mut self, m: Machine, k: &Cont<'_>) -> ControlFlow<()> {
        match k {
            Cont::Done => (self.visit)(&self.choices, Some(&m.tape())),
            Cont::Rest(items, parent) => match items.split_first() {
                None => self.resume(m, parent),
                Some((first, rest)) => self.exec(first, m, &Cont::Rest(rest, parent)),
            },
        }
    }
}

/// Calls `visit` once per execution path, in depth-first order with lower
/// branch indices first. The first argument lists the branch taken at each
/// `choose`; the second is the output, or `None` for a divergent path.
pub fn for_each_path(
    p: &PLProgram,
    input: &Tape,
    clamp: &ClampSet,
    mut visit: impl FnMut(&[usize], Option<&Tape>) -> ControlFlow<()>,
) {
    let (m, fixed) = Machine::start(p, input, clamp);
    let mut explorer = Explorer { fixed, choices: Vec::new(), visit: &mut visit };
    let _ = explorer.exec(&p.body, m, &Cont::Done);
}

pub fn execute(p: &PLProgram, input: &Tape, clamp: &ClampSet) -> ExecutionSummary {
    let mut summary = ExecutionSummary::default();
    for_each_path(p, input, clamp, |_, out| {
        summary.paths += 1;
        match out {
            Some(t) => {
                summary.halting_outputs.insert(t.clone());
            }
            None => summary.diverges = true,
        }
        ControlFlow::Continue(())
    });
    summary
}

/// Branch choices of the first halting path whose output satisfies `pred`.
pub fn find_path(
    p: &PLProgram,
    input: &Tape,
    clamp: &ClampSet,
    mut pred: impl FnMut(&Tape) -> bool,
) -> Option<(Vec<usize>, Tape)> {
    let mut found = None;
    for_each_path(p, input, clamp, |choices, out| match out {
        Some(t) if pred(t) => {
            found = Some((choices.to_vec(), t.clone()));
            ControlFlow::Break(())
        }
        _ => ControlFlow::Continue(()),
    });
    found
}

/// Replays the single path that takes `choices[k]` at the k-th `choose`
/// reached.
pub fn trace_execute(
    p: &PLProgram,
    input: &Tape,
    clamp: &ClampSet,
    choices: &[usize],
) -> Result<TraceOutcome, TraceError> {
    fn run(
        s: &Statement,
        m: &mut Machine,
        fixed: &[Option<bool>],
        choices: &[usize],
        used: &mut usize,
    ) -> Result<bool, TraceError> {
        match s {
            Statement::Empty => Ok(true),
            Statement::Assign { target, source } => {
                m.assign(fixed, *target, *source);
                Ok(true)
            }
            Statement::Seq(items) => {
                for item in items {
                    if !run(item, m, fixed, choices, used)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Statement::Loop => Ok(false),
            Statement::If { cond, then_branch, else_branch } => {
                let branch = if cond.eval(&|a| m.read(a)) { then_branch } else { else_branch };
                run(branch, m, fixed, choices, used)
            }
            Statement::Choose(branches) => {
                let step = *used;
                let &choice = choices.get(step).ok_or(TraceError::InsufficientChoices { step })?;
                let branch = branches.get(choice).ok_or(TraceError::ChoiceOutOfRange {
                    step,
                    choice,
                    branches: branches.len(),
                })?;
                *used += 1;
                run(branch, m, fixed, choices, used)
            }
        }
    }
    let (mut m, fixed) = Machine::start(p, input, clamp);
    let mut used = 0;
    if run(&p.body, &mut m, &fixed, choices, &mut used)? {
        Ok(TraceOutcome::Halted(m.tape()))
    } else {
        Ok(TraceOutcome::Divergent)
    }
}
