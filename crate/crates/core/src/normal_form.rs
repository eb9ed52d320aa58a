//! Disjunctive normal form over conditional literals.
//!
//! Every formula is equivalent to a disjunction of clauses
//!
//! ```text
//! pi & [a1](b11 | b12 | ...) & ... & <c1>d1 & <c2>d2 & ...
//! ```
//!
//! where `pi` is a conjunction of propositional literals and every `bij` and
//! `dk` is an intervention (a consistent literal conjunction). Box
//! consequents are brought into DNF with inconsistent disjuncts dropped;
//! diamonds are split over the disjuncts of their consequent.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::formula::{to_nnf, Formula, InterventionSpec, Literal, PropFormula};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalClause {
    /// Sorted, consistent.
    pub pi: Vec<Literal>,
    /// For each antecedent, one entry per box occurrence: the disjuncts of
    /// its consequent. An empty disjunct list is a `F` consequent.
    pub boxes: BTreeMap<InterventionSpec, Vec<Vec<InterventionSpec>>>,
    pub diamonds: Vec<(InterventionSpec, InterventionSpec)>,
    /// Antecedents of `<a>F` occurrences; any such clause is unsatisfiable.
    pub poisoned: Vec<InterventionSpec>,
}

impl NormalClause {
    /// Antecedents of all conditional literals in the clause, sorted.
    pub fn antecedents(&self) -> Vec<InterventionSpec> {
        let mut out: Vec<InterventionSpec> = self
            .boxes
            .keys()
            .cloned()
            .chain(self.diamonds.iter().map(|(a, _)| a.clone()))
            .chain(self.poisoned.iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn diamonds_at<'a>(
        &'a self,
        antecedent: &'a InterventionSpec,
    ) -> impl Iterator<Item = &'a InterventionSpec> + 'a {
        self.diamonds.iter().filter(move |(a, _)| a == antecedent).map(|(_, b)| b)
    }

    pub fn boxes_at(&self, antecedent: &InterventionSpec) -> &[Vec<InterventionSpec>] {
        self.boxes.get(antecedent).map_or(&[], Vec::as_slice)
    }

    pub fn max_index(&self) -> u32 {
        let pi = self.pi.iter().map(|l| l.atom.index()).max().unwrap_or(0);
        let boxes = self
            .boxes
            .iter()
            .flat_map(|(a, sets)| std::iter::once(a).chain(sets.iter().flatten()))
            .map(InterventionSpec::max_index)
            .max()
            .unwrap_or(0);
        let diamonds = self.diamonds.iter().map(|(a, b)| a.max_index().max(b.max_index())).max().unwrap_or(0);
        let poisoned = self.poisoned.iter().map(InterventionSpec::max_index).max().unwrap_or(0);
        pi.max(boxes).max(diamonds).max(poisoned)
    }

    /// Number of conditional literals.
    pub fn literal_count(&self) -> usize {
        self.pi.len() + self.boxes.values().map(Vec::len).sum::<usize>() + self.diamonds.len() + self.poisoned.len()
    }

    fn push(&mut self, lit: ClauseLit) {
        match lit {
            ClauseLit::Prop(l) => self.pi.push(l),
            ClauseLit::Box(a, set) => {
                let sets = self.boxes.entry(a).or_default();
                if !sets.contains(&set) {
                    sets.push(set);
                }
            }
            ClauseLit::Diamond(a, b) => {
                if !self.diamonds.contains(&(a.clone(), b.clone())) {
                    self.diamonds.push((a, b));
                }
            }
            ClauseLit::DiamondBottom(a) => {
                if !self.poisoned.contains(&a) {
                    self.poisoned.push(a);
                }
            }
        }
    }
}

/// The clause as a conjunction: `pi`, then boxes, then diamonds.
pub fn clause_to_formula(c: &NormalClause) -> Formula {
    let pi = c.pi.iter().map(|l| Formula::from_prop(&l.to_prop()));
    let boxes = c.boxes.iter().flat_map(|(a, sets)| {
        sets.iter().map(move |set| {
            let consequent = set.iter().map(InterventionSpec::to_prop).reduce(PropFormula::or);
            Formula::boxed(a.clone(), consequent.unwrap_or(PropFormula::Bottom))
        })
    });
    let diamonds = c.diamonds.iter().map(|(a, b)| Formula::diamond(a.clone(), b.to_prop()));
    let poisoned = c.poisoned.iter().map(|a| Formula::diamond(a.clone(), PropFormula::Bottom));
    Formula::conjunction(pi.chain(boxes).chain(diamonds).chain(poisoned))
}

impl fmt::Display for NormalClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        clause_to_formula(self).fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ClauseLit {
    Prop(Literal),
    Box(InterventionSpec, Vec<InterventionSpec>),
    Diamond(InterventionSpec, InterventionSpec),
    DiamondBottom(InterventionSpec),
}

enum Tree {
    Lit(ClauseLit),
    And(Rc<Tree>, Rc<Tree>),
    Or(Rc<Tree>, Rc<Tree>),
    True,
    False,
}

fn build(f: &Formula) -> Rc<Tree> {
    Rc::new(match f {
        Formula::Atom(a) => Tree::Lit(ClauseLit::Prop(Literal::new(*a, true))),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(a) => Tree::Lit(ClauseLit::Prop(Literal::new(*a, false))),
            _ => unreachable!("input is in negation normal form"),
        },
        Formula::Top => Tree::True,
        Formula::Bottom => Tree::False,
        Formula::And(a, b) => Tree::And(build(a), build(b)),
        Formula::Or(a, b) => Tree::Or(build(a), build(b)),
        Formula::Cond(c) => {
            let disjuncts = c.consequent.consistent_disjuncts();
            match c.modality {
                crate::formula::Modality::Box => Tree::Lit(ClauseLit::Box(c.antecedent.clone(), disjuncts)),
                crate::formula::Modality::Diamond => {
                    let mut leaves =
                        disjuncts.into_iter().map(|d| Rc::new(Tree::Lit(ClauseLit::Diamond(c.antecedent.clone(), d))));
                    match leaves.next() {
                        None => Tree::Lit(ClauseLit::DiamondBottom(c.antecedent.clone())),
                        Some(first) => {
                            return leaves.fold(first, |acc, leaf| Rc::new(Tree::Or(acc, leaf)));
                        }
                    }
                }
            }
        }
    })
}

fn conjunctions(t: Rc<Tree>) -> Box<dyn Iterator<Item = Vec<ClauseLit>>> {
    match &*t {
        Tree::Lit(l) => Box::new(std::iter::once(vec![l.clone()])),
        Tree::True => Box::new(std::iter::once(Vec::new())),
        Tree::False => Box::new(std::iter::empty()),
        Tree::Or(a, b) => Box::new(conjunctions(a.clone()).chain(conjunctions(b.clone()))),
        Tree::And(a, b) => {
            let b = b.clone();
            Box::new(conjunctions(a.clone()).flat_map(move |left| {
                conjunctions(b.clone()).map(move |right| {
                    let mut both = left.clone();
                    both.extend(right);
                    both
                })
            }))
        }
    }
}

/// Lazy stream of clauses whose disjunction is equivalent to `formula`.
/// Clauses with a complementary pair in `pi` are skipped.
pub fn normal_form_clauses(formula: &Formula) -> impl Iterator<Item = NormalClause> {
    conjunctions(build(&to_nnf(formula))).filter_map(|lits| {
        let mut clause = NormalClause::default();
        for lit in lits {
            clause.push(lit);
        }
        clause.pi = InterventionSpec::from_unordered(clause.pi)?.literals().to_vec();
        Some(clause)
    })
}

pub fn to_normal_form(formula: &Formula) -> Vec<NormalClause> {
    normal_form_clauses(formula).collect()
}
