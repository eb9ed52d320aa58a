//! Formulas of the conditional language.
//!
//! Three layers live here: propositional formulas over atoms `X1, X2, ...`,
//! interventions (ordered conjunctions of literals with strictly increasing
//! indices, the empty one written `T`), and full formulas, which are Boolean
//! combinations of atoms and conditional atoms `[a]b` / `<a>b`. Conditionals
//! never nest: an antecedent is an [`InterventionSpec`] and a consequent is a
//! [`PropFormula`].

mod parse;

use std::fmt;

pub use parse::{parse_formula, parse_intervention, parse_prop, FormulaError};

/// A propositional variable `X_i`, `i >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    /// Panics if `index == 0`.
    pub fn new(index: u32) -> Atom {
        Atom::try_new(index).expect("atom indices start at 1")
    }

    pub fn try_new(index: u32) -> Option<Atom> {
        (index >= 1).then_some(Atom(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn new(atom: Atom, positive: bool) -> Literal {
        Literal { atom, positive }
    }

    pub fn pos(index: u32) -> Literal {
        Literal::new(Atom::new(index), true)
    }

    pub fn neg(index: u32) -> Literal {
        Literal::new(Atom::new(index), false)
    }

    pub fn negate(self) -> Literal {
        Literal { positive: !self.positive, ..self }
    }

    pub fn to_prop(self) -> PropFormula {
        let atom = PropFormula::Atom(self.atom);
        if self.positive {
            atom
        } else {
            atom.not()
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// An intervention: literals with strictly increasing atom indices.
///
/// The empty list is the empty intervention `T`. Because the ordering is
/// total and duplicate-free, structural equality coincides with equivalence.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InterventionSpec {
    literals: Vec<Literal>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("intervention literals must have strictly increasing indices (X{prev} followed by X{next})")]
pub struct OrderError {
    pub prev: u32,
    pub next: u32,
}

impl InterventionSpec {
    pub fn top() -> InterventionSpec {
        InterventionSpec::default()
    }

    pub fn new(literals: Vec<Literal>) -> Result<InterventionSpec, OrderError> {
        for pair in literals.windows(2) {
            if pair[0].atom >= pair[1].atom {
                return Err(OrderError { prev: pair[0].atom.index(), next: pair[1].atom.index() });
            }
        }
        Ok(InterventionSpec { literals })
    }

    /// Sorts and deduplicates; `None` when some atom occurs with both signs.
    pub fn from_unordered(literals: impl IntoIterator<Item = Literal>) -> Option<InterventionSpec> {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort();
        literals.dedup();
        if literals.windows(2).any(|p| p[0].atom == p[1].atom) {
            return None;
        }
        Some(InterventionSpec { literals })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn is_top(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn value_of(&self, atom: Atom) -> Option<bool> {
        self.literals.binary_search_by_key(&atom, |l| l.atom).ok().map(|i| self.literals[i].positive)
    }

    /// The conjunction of both, if consistent.
    pub fn conjoin(&self, other: &InterventionSpec) -> Option<InterventionSpec> {
        InterventionSpec::from_unordered(self.literals.iter().chain(&other.literals).copied())
    }

    /// True when every literal of `other` is also a literal of `self`.
    pub fn extends(&self, other: &InterventionSpec) -> bool {
        other.literals.iter().all(|l| self.value_of(l.atom) == Some(l.positive))
    }

    pub fn max_index(&self) -> u32 {
        self.literals.last().map_or(0, |l| l.atom.index())
    }

    pub fn to_prop(&self) -> PropFormula {
        let mut lits = self.literals.iter().map(|l| l.to_prop());
        match lits.next() {
            None => PropFormula::Top,
            Some(first) => lits.fold(first, PropFormula::and),
        }
    }
}

impl fmt::Display for InterventionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("T");
        }
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropFormula {
    Atom(Atom),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Top,
    Bottom,
}

impl PropFormula {
    pub fn atom(index: u32) -> PropFormula {
        PropFormula::Atom(Atom::new(index))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> PropFormula {
        PropFormula::Not(Box::new(self))
    }

    pub fn and(self, other: PropFormula) -> PropFormula {
        PropFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: PropFormula) -> PropFormula {
        PropFormula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: PropFormula) -> PropFormula {
        self.not().or(other)
    }

    pub fn eval(&self, valuation: &impl Fn(Atom) -> bool) -> bool {
        match self {
            PropFormula::Atom(a) => valuation(*a),
            PropFormula::Not(p) => !p.eval(valuation),
            PropFormula::And(a, b) => a.eval(valuation) && b.eval(valuation),
            PropFormula::Or(a, b) => a.eval(valuation) || b.eval(valuation),
            PropFormula::Top => true,
            PropFormula::Bottom => false,
        }
    }

    pub fn max_index(&self) -> u32 {
        match self {
            PropFormula::Atom(a) => a.index(),
            PropFormula::Not(p) => p.max_index(),
            PropFormula::And(a, b) | PropFormula::Or(a, b) => a.max_index().max(b.max_index()),
            PropFormula::Top | PropFormula::Bottom => 0,
        }
    }

    /// Symbol count: one per atom, constant and connective.
    pub fn size(&self) -> usize {
        match self {
            PropFormula::Atom(_) | PropFormula::Top | PropFormula::Bottom => 1,
            PropFormula::Not(p) => 1 + p.size(),
            PropFormula::And(a, b) | PropFormula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Negation normal form.
    pub fn nnf(&self) -> PropFormula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> PropFormula {
        match (self, positive) {
            (PropFormula::Atom(a), true) => PropFormula::Atom(*a),
            (PropFormula::Atom(a), false) => PropFormula::Atom(*a).not(),
            (PropFormula::Not(p), _) => p.nnf_signed(!positive),
            (PropFormula::And(a, b), true) => a.nnf_signed(true).and(b.nnf_signed(true)),
            (PropFormula::And(a, b), false) => a.nnf_signed(false).or(b.nnf_signed(false)),
            (PropFormula::Or(a, b), true) => a.nnf_signed(true).or(b.nnf_signed(true)),
            (PropFormula::Or(a, b), false) => a.nnf_signed(false).and(b.nnf_signed(false)),
            (PropFormula::Top, true) | (PropFormula::Bottom, false) => PropFormula::Top,
            (PropFormula::Top, false) | (PropFormula::Bottom, true) => PropFormula::Bottom,
        }
    }

    /// Disjunctive normal form as a list of literal conjunctions. Conjunctions
    /// containing a complementary pair are kept; callers decide what to drop.
    pub fn dnf(&self) -> Vec<Vec<Literal>> {
        fn go(f: &PropFormula) -> Vec<Vec<Literal>> {
            match f {
                PropFormula::Atom(a) => vec![vec![Literal::new(*a, true)]],
                PropFormula::Not(p) => match p.as_ref() {
                    PropFormula::Atom(a) => vec![vec![Literal::new(*a, false)]],
                    _ => unreachable!("input is in negation normal form"),
                },
                PropFormula::Or(a, b) => {
                    let mut out = go(a);
                    out.extend(go(b));
                    out
                }
                PropFormula::And(a, b) => {
                    let right = go(b);
                    let mut out = Vec::new();
                    for l in go(a) {
                        for r in &right {
                            out.push(l.iter().chain(r).copied().collect());
                        }
                    }
                    out
                }
                PropFormula::Top => vec![vec![]],
                PropFormula::Bottom => vec![],
            }
        }
        go(&self.nnf())
    }

    /// Each consistent disjunct of the DNF as an intervention, deduplicated
    /// and in first-occurrence order.
    pub fn consistent_disjuncts(&self) -> Vec<InterventionSpec> {
        let mut out: Vec<InterventionSpec> = Vec::new();
        for conj in self.dnf() {
            if let Some(spec) = InterventionSpec::from_unordered(conj) {
                if !out.contains(&spec) {
                    out.push(spec);
                }
            }
        }
        out
    }
}

/// Outcome of [`int_equivalent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntEquivalent {
    Spec(InterventionSpec),
    NotConjunctive,
    Inconsistent,
}

/// The intervention equivalent of a pure literal conjunction: literals
/// reordered by index with repeats deleted.
pub fn int_equivalent(formula: &PropFormula) -> IntEquivalent {
    // Err means a disjunction or a non-literal negation was found.
    fn collect(f: &PropFormula, out: &mut Vec<Literal>, bottom: &mut bool) -> Result<(), ()> {
        match f {
            PropFormula::Top => Ok(()),
            PropFormula::Bottom => {
                *bottom = true;
                Ok(())
            }
            PropFormula::Atom(a) => {
                out.push(Literal::new(*a, true));
                Ok(())
            }
            PropFormula::Not(inner) => match inner.as_ref() {
                PropFormula::Atom(a) => {
                    out.push(Literal::new(*a, false));
                    Ok(())
                }
                _ => Err(()),
            },
            PropFormula::And(a, b) => {
                collect(a, out, bottom)?;
                collect(b, out, bottom)
            }
            PropFormula::Or(..) => Err(()),
        }
    }
    let mut lits = Vec::new();
    let mut bottom = false;
    if collect(formula, &mut lits, &mut bottom).is_err() {
        return IntEquivalent::NotConjunctive;
    }
    match InterventionSpec::from_unordered(lits) {
        Some(spec) if !bottom => IntEquivalent::Spec(spec),
        _ => IntEquivalent::Inconsistent,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modality {
    Box,
    Diamond,
}

impl Modality {
    pub fn dual(self) -> Modality {
        match self {
            Modality::Box => Modality::Diamond,
            Modality::Diamond => Modality::Box,
        }
    }
}

/// `[antecedent] consequent` or `<antecedent> consequent`. The diamond form
/// is shorthand for `![antecedent]!consequent` but stored directly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CondAtom {
    pub antecedent: InterventionSpec,
    pub consequent: PropFormula,
    pub modality: Modality,
}

impl CondAtom {
    pub fn boxed(antecedent: InterventionSpec, consequent: PropFormula) -> CondAtom {
        CondAtom { antecedent, consequent, modality: Modality::Box }
    }

    pub fn diamond(antecedent: InterventionSpec, consequent: PropFormula) -> CondAtom {
        CondAtom { antecedent, consequent, modality: Modality::Diamond }
    }

    pub fn max_index(&self) -> u32 {
        self.antecedent.max_index().max(self.consequent.max_index())
    }
}

impl fmt::Display for CondAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modality {
            Modality::Box => write!(f, "[{}]", self.antecedent)?,
            Modality::Diamond => write!(f, "<{}>", self.antecedent)?,
        }
        write_prop(f, &self.consequent, Prec::Unary)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Top,
    Bottom,
    Cond(CondAtom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(index: u32) -> Formula {
        Formula::Atom(Atom::new(index))
    }

    pub fn boxed(antecedent: InterventionSpec, consequent: PropFormula) -> Formula {
        Formula::Cond(CondAtom::boxed(antecedent, consequent))
    }

    pub fn diamond(antecedent: InterventionSpec, consequent: PropFormula) -> Formula {
        Formula::Cond(CondAtom::diamond(antecedent, consequent))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        self.not().or(other)
    }

    pub fn iff(self, other: Formula) -> Formula {
        self.clone().implies(other.clone()).and(other.implies(self))
    }

    /// Conjunction of all items; `T` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Disjunction of all items; `F` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    pub fn from_prop(p: &PropFormula) -> Formula {
        match p {
            PropFormula::Atom(a) => Formula::Atom(*a),
            PropFormula::Not(inner) => Formula::from_prop(inner).not(),
            PropFormula::And(a, b) => Formula::from_prop(a).and(Formula::from_prop(b)),
            PropFormula::Or(a, b) => Formula::from_prop(a).or(Formula::from_prop(b)),
            PropFormula::Top => Formula::Top,
            PropFormula::Bottom => Formula::Bottom,
        }
    }

    /// Largest atom index mentioned anywhere, antecedents and consequents included.
    pub fn max_index(&self) -> u32 {
        match self {
            Formula::Atom(a) => a.index(),
            Formula::Top | Formula::Bottom => 0,
            Formula::Cond(c) => c.max_index(),
            Formula::Not(p) => p.max_index(),
            Formula::And(a, b) | Formula::Or(a, b) => a.max_index().max(b.max_index()),
        }
    }

    /// Symbol count. A conditional atom counts one for the modality, one per
    /// antecedent literal (one for `T`) and the size of its consequent.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 1,
            Formula::Cond(c) => 1 + c.antecedent.len().max(1) + c.consequent.size(),
            Formula::Not(p) => 1 + p.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Every conditional atom, left to right.
    pub fn cond_atoms(&self) -> Vec<&CondAtom> {
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a CondAtom>) {
            match f {
                Formula::Cond(c) => out.push(c),
                Formula::Not(p) => go(p, out),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Formula::Atom(_) | Formula::Top | Formula::Bottom => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// The distinct antecedents occurring in the formula, sorted.
    pub fn antecedents(&self) -> Vec<InterventionSpec> {
        let mut out: Vec<InterventionSpec> = self.cond_atoms().into_iter().map(|c| c.antecedent.clone()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Evaluates with the given interpretations of atoms and conditional atoms.
    pub fn eval_with(&self, atom: &impl Fn(Atom) -> bool, cond: &mut impl FnMut(&CondAtom) -> bool) -> bool {
        match self {
            Formula::Atom(a) => atom(*a),
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Cond(c) => cond(c),
            Formula::Not(p) => !p.eval_with(atom, cond),
            Formula::And(a, b) => a.eval_with(atom, cond) && b.eval_with(atom, cond),
            Formula::Or(a, b) => a.eval_with(atom, cond) || b.eval_with(atom, cond),
        }
    }
}

/// Pushes negations down to atoms. A negated box becomes a diamond of the
/// negated consequent and vice versa; consequents are normalized too.
pub fn to_nnf(formula: &Formula) -> Formula {
    fn go(f: &Formula, positive: bool) -> Formula {
        match (f, positive) {
            (Formula::Atom(a), true) => Formula::Atom(*a),
            (Formula::Atom(a), false) => Formula::Atom(*a).not(),
            (Formula::Top, true) | (Formula::Bottom, false) => Formula::Top,
            (Formula::Top, false) | (Formula::Bottom, true) => Formula::Bottom,
            (Formula::Cond(c), _) => {
                let (modality, consequent) = if positive {
                    (c.modality, c.consequent.nnf())
                } else {
                    (c.modality.dual(), c.consequent.clone().not().nnf())
                };
                Formula::Cond(CondAtom { antecedent: c.antecedent.clone(), consequent, modality })
            }
            (Formula::Not(p), _) => go(p, !positive),
            (Formula::And(a, b), true) => go(a, true).and(go(b, true)),
            (Formula::And(a, b), false) => go(a, false).or(go(b, false)),
            (Formula::Or(a, b), true) => go(a, true).or(go(b, true)),
            (Formula::Or(a, b), false) => go(a, false).and(go(b, false)),
        }
    }
    go(formula, true)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Or,
    And,
    Unary,
}

fn write_prop(f: &mut fmt::Formatter<'_>, p: &PropFormula, min: Prec) -> fmt::Result {
    match p {
        PropFormula::Atom(a) => write!(f, "{a}"),
        PropFormula::Top => f.write_str("T"),
        PropFormula::Bottom => f.write_str("F"),
        PropFormula::Not(inner) => {
            f.write_str("!")?;
            write_prop(f, inner, Prec::Unary)
        }
        PropFormula::And(a, b) => paren(f, min > Prec::And, |f| {
            write_prop(f, a, Prec::And)?;
            f.write_str(" & ")?;
            write_prop(f, b, Prec::Unary)
        }),
        PropFormula::Or(a, b) => paren(f, min > Prec::Or, |f| {
            write_prop(f, a, Prec::Or)?;
            f.write_str(" | ")?;
            write_prop(f, b, Prec::And)
        }),
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, p: &Formula, min: Prec) -> fmt::Result {
    match p {
        Formula::Atom(a) => write!(f, "{a}"),
        Formula::Top => f.write_str("T"),
        Formula::Bottom => f.write_str("F"),
        Formula::Cond(c) => write!(f, "{c}"),
        Formula::Not(inner) => {
            f.write_str("!")?;
            write_formula(f, inner, Prec::Unary)
        }
        Formula::And(a, b) => paren(f, min > Prec::And, |f| {
            write_formula(f, a, Prec::And)?;
            f.write_str(" & ")?;
            write_formula(f, b, Prec::Unary)
        }),
        Formula::Or(a, b) => paren(f, min > Prec::Or, |f| {
            write_formula(f, a, Prec::Or)?;
            f.write_str(" | ")?;
            write_formula(f, b, Prec::And)
        }),
    }
}

fn paren(
    f: &mut fmt::Formatter<'_>,
    wrap: bool,
    body: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if wrap {
        f.write_str("(")?;
    }
    body(f)?;
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prop(f, self, Prec::Or)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, Prec::Or)
    }
}

/// Canonical concrete syntax; [`parse_formula`] inverts it.
pub fn print_formula(formula: &Formula) -> String {
    formula.to_string()
}

impl std::str::FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Formula, FormulaError> {
        parse_formula(s)
    }
}

impl std::str::FromStr for InterventionSpec {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<InterventionSpec, FormulaError> {
        parse_intervention(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(lits: &[Literal]) -> InterventionSpec {
        InterventionSpec::new(lits.to_vec()).unwrap()
    }

    #[test]
    fn int_equivalent_reorders_and_dedups() {
        let f = PropFormula::atom(2).not().and(PropFormula::atom(1)).and(PropFormula::atom(1));
        assert_eq!(int_equivalent(&f), IntEquivalent::Spec(spec(&[Literal::pos(1), Literal::neg(2)])));
    }

    #[test]
    fn int_equivalent_edge_cases() {
        let contradiction = PropFormula::atom(1).and(PropFormula::atom(1).not());
        assert_eq!(int_equivalent(&contradiction), IntEquivalent::Inconsistent);
        assert_eq!(int_equivalent(&PropFormula::Top), IntEquivalent::Spec(InterventionSpec::top()));
        assert_eq!(int_equivalent(&PropFormula::Bottom), IntEquivalent::Inconsistent);
        let disj = PropFormula::atom(1).or(PropFormula::atom(2));
        assert_eq!(int_equivalent(&disj), IntEquivalent::NotConjunctive);
        let double = PropFormula::atom(1).not().not();
        assert_eq!(int_equivalent(&double), IntEquivalent::NotConjunctive);
        // shape is checked before consistency
        let mixed = contradiction.and(PropFormula::atom(3).or(PropFormula::atom(4)));
        assert_eq!(int_equivalent(&mixed), IntEquivalent::NotConjunctive);
    }

    #[test]
    fn spec_constructor_rejects_disorder() {
        assert_eq!(InterventionSpec::new(vec![Literal::pos(2), Literal::pos(1)]), Err(OrderError { prev: 2, next: 1 }));
        assert!(InterventionSpec::new(vec![Literal::pos(1), Literal::neg(1)]).is_err());
    }

    #[test]
    fn nnf_dualizes_conditionals() {
        let x1 = spec(&[Literal::pos(1)]);
        let f = Formula::boxed(x1.clone(), PropFormula::atom(2)).not();
        assert_eq!(to_nnf(&f), Formula::diamond(x1.clone(), PropFormula::atom(2).not()));

        let g = Formula::diamond(x1.clone(), PropFormula::atom(2).or(PropFormula::atom(3))).not();
        assert_eq!(to_nnf(&g), Formula::boxed(x1, PropFormula::atom(2).not().and(PropFormula::atom(3).not())));

        let h = Formula::atom(1).and(Formula::atom(2)).not();
        assert_eq!(to_nnf(&h), Formula::atom(1).not().or(Formula::atom(2).not()));
    }

    #[test]
    fn prop_eval_on_valuations() {
        let only_x1 = |a: Atom| a.index() == 1;
        assert!(PropFormula::atom(1).and(PropFormula::atom(2).not()).eval(&only_x1));
        assert!(PropFormula::atom(7).not().eval(&|_| false));
        let only_x2 = |a: Atom| a.index() == 2;
        assert!(PropFormula::atom(1).or(PropFormula::atom(2)).eval(&only_x2));
    }

    #[test]
    fn printing() {
        let x1 = spec(&[Literal::pos(1), Literal::neg(2)]);
        let f = Formula::boxed(x1, PropFormula::atom(2).or(PropFormula::atom(3)));
        assert_eq!(f.to_string(), "[X1 & !X2](X2 | X3)");
        let g = Formula::atom(1).and(Formula::atom(2).and(Formula::atom(3)));
        assert_eq!(g.to_string(), "X1 & (X2 & X3)");
        let h = Formula::atom(1).or(Formula::atom(2)).and(Formula::Bottom).not();
        assert_eq!(h.to_string(), "!((X1 | X2) & F)");
        assert_eq!(Formula::diamond(InterventionSpec::top(), PropFormula::Top).to_string(), "<T>T");
    }

    #[test]
    fn consistent_disjuncts_drop_contradictions() {
        let f = PropFormula::atom(1)
            .and(PropFormula::atom(1).not())
            .or(PropFormula::atom(2).and(PropFormula::Top))
            .or(PropFormula::atom(2));
        assert_eq!(f.consistent_disjuncts(), vec![spec(&[Literal::pos(2)])]);
        assert!(PropFormula::Bottom.consistent_disjuncts().is_empty());
        assert_eq!(PropFormula::Top.consistent_disjuncts(), vec![InterventionSpec::top()]);
    }
}
