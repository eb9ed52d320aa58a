//! Recognition of programs in canonical shape and a structured evaluator for them.

use std::collections::BTreeSet;

use crate::canonical::{emit_holds_from_intervention, emit_is_intervened, probe_count};
use crate::formula::{Atom, Formula, InterventionSpec, Literal};
use crate::interp::{trace_execute, TraceOutcome};
use crate::pl::{Condition, PLProgram, Source, Statement};
use crate::tape::{clamp_of, ClampSet, Tape};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("program does not start with an intervention probe")]
    MissingProbes,
    #[error("probe for X{0} is malformed or missing")]
    BadProbe(u32),
    #[error("item {0} after the probes is not a detector `if`")]
    NotADetector(usize),
    #[error("detector {0} has a condition that does not identify an intervention")]
    BadCondition(usize),
    #[error("detector {0} has an else branch")]
    NonEmptyElse(usize),
    #[error("detector {0} has a body that is not a choice, assignment block or loop")]
    BadBody(usize),
    #[error("two detectors test for {0}")]
    DuplicateAntecedent(InterventionSpec),
}

type Block = Vec<(Atom, Source)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetectorBody {
    Choice(Vec<Block>),
    Block(Block),
    Loop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detector {
    pub antecedent: InterventionSpec,
    pub cond: Condition,
    pub body: DetectorBody,
}

/// A program split into its probe prefix and detectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentView {
    pub n: u32,
    prefix: PLProgram,
    pub detectors: Vec<Detector>,
}

fn block(s: &Statement, n: u32) -> Option<Block> {
    s.items()
        .iter()
        .map(|item| match item {
            Statement::Assign { target, source } if target.index() <= n => Some((*target, *source)),
            _ => None,
        })
        .collect()
}

fn conjuncts(c: &Condition) -> &[Condition] {
    match c {
        Condition::Conj(parts) => parts,
        other => std::slice::from_ref(other),
    }
}

impl FragmentView {
    pub fn parse(p: &PLProgram) -> Result<FragmentView, ShapeError> {
        let items = p.body.items();
        let n = match items.first() {
            Some(Statement::Assign { target, source: Source::Var(from) })
                if from.index() == 1 && target.index() > 1 =>
            {
                target.index() - 1
            }
            _ => return Err(ShapeError::MissingProbes),
        };
        let probe_len = n as usize * 5;
        for i in 1..=n {
            let start = (i as usize - 1) * 5;
            let expected = emit_is_intervened(i, n);
            if items.get(start..start + 5) != Some(expected.items()) {
                return Err(ShapeError::BadProbe(i));
            }
        }
        let prefix = PLProgram::new(Statement::Seq(items[..probe_len].to_vec()));

        let mut seen = BTreeSet::new();
        let mut detectors = Vec::new();
        for (k, item) in items[probe_len..].iter().enumerate() {
            let Statement::If { cond, then_branch, else_branch } = item else {
                return Err(ShapeError::NotADetector(k));
            };
            let values = conjuncts(cond).iter().filter_map(|c| match c {
                Condition::VarEqConst(a, b) if a.index() <= n => Some(Literal::new(*a, *b)),
                _ => None,
            });
            let antecedent = InterventionSpec::new(values.collect()).map_err(|_| ShapeError::BadCondition(k))?;
            if emit_holds_from_intervention(&antecedent, n) != *cond {
                return Err(ShapeError::BadCondition(k));
            }
            if **else_branch != Statement::Empty {
                return Err(ShapeError::NonEmptyElse(k));
            }
            let body = match &**then_branch {
                Statement::Loop => DetectorBody::Loop,
                Statement::Choose(branches) => DetectorBody::Choice(
                    branches.iter().map(|b| block(b, n)).collect::<Option<_>>().ok_or(ShapeError::BadBody(k))?,
                ),
                other => DetectorBody::Block(block(other, n).ok_or(ShapeError::BadBody(k))?),
            };
            if !seen.insert(antecedent.clone()) {
                return Err(ShapeError::DuplicateAntecedent(antecedent));
            }
            detectors.push(Detector { antecedent, cond: cond.clone(), body });
        }
        Ok(FragmentView { n, prefix, detectors })
    }

    /// Halting outputs under the intervention `antecedent`, and whether some
    /// path diverges.
    pub fn outputs_under(&self, tape: &Tape, antecedent: &InterventionSpec) -> (BTreeSet<Tape>, bool) {
        let clamp = clamp_of(antecedent);
        let start = match trace_execute(&self.prefix, tape, &clamp, &[]) {
            Ok(TraceOutcome::Halted(t)) => t,
            _ => unreachable!("the probe prefix is straight-line"),
        };
        let mut current = BTreeSet::from([start]);
        let mut diverges = false;
        for d in &self.detectors {
            let mut next = BTreeSet::new();
            for t in current {
                if !d.cond.eval(&|a| t.get(a.index())) {
                    next.insert(t);
                    continue;
                }
                match &d.body {
                    DetectorBody::Loop => diverges = true,
                    DetectorBody::Block(b) => {
                        next.insert(apply(&t, b, &clamp));
                    }
                    DetectorBody::Choice(bs) => next.extend(bs.iter().map(|b| apply(&t, b, &clamp))),
                }
            }
            current = next;
        }
        (current, diverges)
    }

    /// Largest number of branches of a detector choice.
    pub fn max_branches(&self) -> usize {
        self.detectors
            .iter()
            .map(|d| match &d.body {
                DetectorBody::Choice(bs) => bs.len(),
                _ => 1,
            })
            .max()
            .unwrap_or(0)
    }
}

fn apply(t: &Tape, b: &Block, clamp: &ClampSet) -> Tape {
    let mut out = t.clone();
    for &(target, source) in b {
        if clamp.get(target.index()).is_some() {
            continue;
        }
        let v = match source {
            Source::Const(v) => v,
            Source::Var(a) => out.get(a.index()),
            Source::NegVar(a) => !out.get(a.index()),
        };
        out.set(target.index(), v);
    }
    out
}

/// Membership in the canonical fragment for `formula` with branch constant `c`:
/// probes for `1..=N`, at most one detector per antecedent of the formula,
/// and no choice wider than `c * |formula|`.
pub fn in_fragment(p: &PLProgram, formula: &Formula, c: usize) -> bool {
    let Ok(view) = FragmentView::parse(p) else { return false };
    let antecedents = formula.antecedents();
    view.n == probe_count(formula.max_index())
        && view.detectors.iter().all(|d| antecedents.contains(&d.antecedent))
        && view.max_branches() <= c * formula.size()
}

/// Smallest branch constant that admits `p` for `formula`.
pub fn min_fragment_c(p: &PLProgram, formula: &Formula) -> Option<usize> {
    let view = FragmentView::parse(p).ok()?;
    Some(view.max_branches().div_ceil(formula.size()).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::{check, Model};
    use crate::formula::parse_formula;
    use crate::interp::execute;

    fn spec(s: &str) -> InterventionSpec {
        s.parse().unwrap()
    }

    fn canonical(n: u32, detectors: &[(&str, Statement)]) -> PLProgram {
        let probes = (1..=n).map(|i| emit_is_intervened(i, n));
        let ifs = detectors.iter().map(|(a, body)| {
            Statement::if_else(emit_holds_from_intervention(&spec(a), n), body.clone(), Statement::Empty)
        });
        PLProgram::new(Statement::seq(probes.chain(ifs)))
    }

    #[test]
    fn recognises_canonical_programs() {
        let p = canonical(
            2,
            &[
                ("X1", Statement::choose(vec![Statement::set(2, true), Statement::Empty])),
                ("T", Statement::Loop),
                ("!X2", Statement::set(1, true)),
            ],
        );
        let view = FragmentView::parse(&p).unwrap();
        assert_eq!(view.n, 2);
        assert_eq!(view.detectors.len(), 3);
        assert_eq!(view.max_branches(), 2);
        let phi = parse_formula("<X1>X2 & [T]F & [!X2]X1").unwrap();
        assert!(in_fragment(&p, &phi, 1));
        assert!(!in_fragment(&p, &parse_formula("<X1>X2 & [T]F").unwrap(), 1));
    }

    #[test]
    fn rejects_other_shapes() {
        assert_eq!(FragmentView::parse(&"X1 := 1".parse().unwrap()), Err(ShapeError::MissingProbes));
        let p = canonical(1, &[("X1", Statement::Loop), ("X1", Statement::Loop)]);
        assert_eq!(FragmentView::parse(&p), Err(ShapeError::DuplicateAntecedent(spec("X1"))));
        let p = canonical(1, &[("X1", Statement::set(3, true))]);
        assert_eq!(FragmentView::parse(&p), Err(ShapeError::BadBody(0)));
        let mut items = canonical(2, &[]).body.items().to_vec();
        items.remove(7);
        assert_eq!(FragmentView::parse(&PLProgram::new(Statement::Seq(items))), Err(ShapeError::BadProbe(2)));
    }

    #[test]
    fn structured_outputs_match_interpreter() {
        let p = canonical(
            2,
            &[
                ("X1", Statement::choose(vec![Statement::set(2, true), Statement::set(2, false)])),
                ("T", Statement::seq([Statement::set(1, true), Statement::copy(2, 1)])),
                ("X2", Statement::Loop),
            ],
        );
        let view = FragmentView::parse(&p).unwrap();
        for tape in [Tape::zero(), Tape::from_ones([1]), Tape::from_ones([2, 3])] {
            for a in ["T", "X1", "!X1", "X2", "X1 & X2", "!X1 & !X2"] {
                let a = spec(a);
                let s = execute(&p, &tape, &clamp_of(&a));
                assert_eq!(view.outputs_under(&tape, &a), (s.halting_outputs, s.diverges), "{a} on {tape}");
            }
        }
        let m = Model::new(p, Tape::zero());
        assert!(check(&m, &parse_formula("<X1>X2 & <X1>!X2 & [T](X1 & X2) & [X2]F").unwrap()));
    }
}
