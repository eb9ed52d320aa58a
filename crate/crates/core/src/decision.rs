//! Satisfiability and validity per dialect, and a brute-force oracle over
//! finite abstract tables.

use std::collections::BTreeSet;

use crate::canonical::{build_selection, probe_count, synthesize, ClauseInconsistent, SynthesisError, SynthesisOutput};
use crate::check::check;
use crate::formula::{to_nnf, CondAtom, Formula, InterventionSpec, Modality};
use crate::normal_form::{normal_form_clauses, NormalClause};
use crate::pl::Dialect;
use crate::tape::{clamp_of, Tape};

pub use crate::fragment::{in_fragment, min_fragment_c};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Satisfiable {
        witness: SynthesisOutput,
        clause: NormalClause,
    },
    /// One rejection per normal-form clause, in stream order.
    Unsatisfiable {
        reasons: Vec<(NormalClause, ClauseInconsistent)>,
    },
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Satisfiable { .. })
    }

    pub fn witness(&self) -> Option<&SynthesisOutput> {
        match self {
            SatResult::Satisfiable { witness, .. } => Some(witness),
            SatResult::Unsatisfiable { .. } => None,
        }
    }
}

/// A bug in the decision procedure: a synthesized witness failed to verify.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InternalError {
    #[error("internal error: witness for clause {clause} does not satisfy {formula}")]
    Verification { clause: String, formula: String },
    #[error("internal error: synthesis failed for clause {clause}: {source}")]
    Synthesis { clause: String, source: SynthesisError },
}

/// Decides satisfiability in `dialect` by trying the normal-form clauses in
/// order and returning the first verified canonical witness.
pub fn sat(formula: &Formula, dialect: Dialect) -> Result<SatResult, InternalError> {
    let n = probe_count(formula.max_index());
    let mut reasons = Vec::new();
    for clause in normal_form_clauses(formula) {
        let f = match build_selection(&clause, dialect) {
            Ok(f) => f,
            Err(reason) => {
                reasons.push((clause, reason));
                continue;
            }
        };
        let witness = synthesize(&clause, &f, dialect, n)
            .map_err(|source| InternalError::Synthesis { clause: clause.to_string(), source })?;
        if !check(&witness.model(), formula) {
            return Err(InternalError::Verification { clause: clause.to_string(), formula: formula.to_string() });
        }
        return Ok(SatResult::Satisfiable { witness, clause });
    }
    Ok(SatResult::Unsatisfiable { reasons })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// A model of the negation.
    Invalid {
        countermodel: SynthesisOutput,
    },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        *self == Validity::Valid
    }
}

pub fn valid(formula: &Formula, dialect: Dialect) -> Result<Validity, InternalError> {
    Ok(match sat(&formula.clone().not(), dialect)? {
        SatResult::Satisfiable { witness, .. } => Validity::Invalid { countermodel: witness },
        SatResult::Unsatisfiable { .. } => Validity::Valid,
    })
}

/// Branch constant needed by the canonical witness of `formula`, if it has one.
pub fn default_c(formula: &Formula, dialect: Dialect) -> Result<Option<usize>, InternalError> {
    Ok(sat(formula, dialect)?.witness().and_then(|w| min_fragment_c(&w.program, formula)))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("oracle bounds exceeded: {0}")]
pub struct BoundsExceeded(pub String);

/// Largest bounds the oracle accepts.
pub const ORACLE_MAX_N: u32 = 4;
pub const ORACLE_MAX_OUTPUTS: usize = 4;

/// Whether the oracle is exact for `formula`: indices fit in `max_n` and no
/// antecedent carries more diamonds (after pushing negations inward) than
/// `max_outputs`.
pub fn within_oracle_bounds(formula: &Formula, max_n: u32, max_outputs: usize) -> bool {
    if formula.max_index() > max_n {
        return false;
    }
    let nnf = to_nnf(formula);
    let diamonds: Vec<&CondAtom> = nnf.cond_atoms().into_iter().filter(|c| c.modality == Modality::Diamond).collect();
    nnf.antecedents().iter().all(|a| diamonds.iter().filter(|c| c.antecedent == *a).count().max(1) <= max_outputs)
}

fn tapes_over(n: u32) -> Vec<Tape> {
    (0u32..1 << n).map(|bits| Tape::from_ones((1..=n).filter(|i| bits >> (i - 1) & 1 == 1))).collect()
}

fn subsets_up_to<T: Clone>(items: &[T], lo: usize, hi: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], hi: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        out.push(cur.clone());
        if cur.len() == hi {
            return;
        }
        for (i, x) in items.iter().enumerate() {
            cur.push(x.clone());
            go(&items[i + 1..], hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, hi, &mut Vec::new(), &mut out);
    out.retain(|s| s.len() >= lo);
    out
}

/// Searches every abstract table (a base tape over `1..=max_n` and an
/// output set per antecedent of `formula`, consistent with the clamps and the
/// dialect, of at most `max_outputs` tapes) for one satisfying `formula`.
pub fn brute_force_sat_small(
    formula: &Formula,
    dialect: Dialect,
    max_n: u32,
    max_outputs: usize,
) -> Result<bool, BoundsExceeded> {
    if formula.max_index() > max_n {
        return Err(BoundsExceeded(format!("formula mentions X{} beyond maxN = {max_n}", formula.max_index())));
    }
    if max_n > ORACLE_MAX_N || max_outputs > ORACLE_MAX_OUTPUTS {
        return Err(BoundsExceeded(format!(
            "maxN = {max_n}, maxOutputs = {max_outputs} (limits {ORACLE_MAX_N}, {ORACLE_MAX_OUTPUTS})"
        )));
    }
    let tapes = tapes_over(max_n);
    let lo = usize::from(dialect.is_halting());
    let hi = if dialect.is_deterministic() { max_outputs.min(1) } else { max_outputs };

    // For each antecedent, its distinct conditional atoms and the distinct
    // truth assignments to them realised by some admissible output set.
    let mut groups: Vec<(InterventionSpec, Vec<CondAtom>, Vec<u64>)> = Vec::new();
    for alpha in formula.antecedents() {
        let mut atoms: Vec<CondAtom> =
            formula.cond_atoms().into_iter().filter(|c| c.antecedent == alpha).cloned().collect();
        atoms.sort();
        atoms.dedup();
        let clamp = clamp_of(&alpha);
        let allowed: Vec<Tape> = tapes.iter().filter(|t| clamp.agrees_with(t)).cloned().collect();
        let masks: BTreeSet<u64> = subsets_up_to(&allowed, lo, hi)
            .iter()
            .map(|outs| {
                atoms.iter().enumerate().fold(0u64, |mask, (k, c)| {
                    let mut it = outs.iter();
                    let truth = match c.modality {
                        Modality::Box => it.all(|t| t.satisfies(&c.consequent)),
                        Modality::Diamond => it.any(|t| t.satisfies(&c.consequent)),
                    };
                    mask | (u64::from(truth) << k)
                })
            })
            .collect();
        if masks.is_empty() {
            return Ok(false);
        }
        groups.push((alpha, atoms, masks.into_iter().collect()));
    }

    let mut choice = vec![0usize; groups.len()];
    for base in &tapes {
        loop {
            let holds = formula.eval_with(&|a| base.get(a.index()), &mut |c| {
                let g = groups.iter().position(|(a, _, _)| *a == c.antecedent).expect("antecedent of formula");
                let k = groups[g].1.iter().position(|x| x == c).expect("atom of formula");
                groups[g].2[choice[g]] >> k & 1 == 1
            });
            if holds {
                return Ok(true);
            }
            // next combination of masks
            let mut g = 0;
            while g < groups.len() {
                choice[g] += 1;
                if choice[g] < groups[g].2.len() {
                    break;
                }
                choice[g] = 0;
                g += 1;
            }
            if g == groups.len() {
                break;
            }
        }
    }
    Ok(false)
}
