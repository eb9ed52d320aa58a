//! Seeded random generators for formulas, programs, tapes and interventions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Atom, Formula, InterventionSpec, Literal, PropFormula};
use crate::pl::{Condition, Dialect, PLProgram, Source, Statement};
use crate::tape::Tape;

pub struct Corpus {
    rng: ChaCha8Rng,
}

/// The axiom schemes checked by the fuzzers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `[a]a`
    R,
    /// `[a](b -> c) -> ([a]b -> [a]c)`
    K,
    /// `<a>b -> [a]b`
    F,
    /// `[a]b -> <a>b`
    D,
}

impl Corpus {
    pub fn new(seed: u64) -> Corpus {
        Corpus { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn tape(&mut self, n: u32) -> Tape {
        Tape::from_ones((1..=n).filter(|_| self.rng.gen_bool(0.5)))
    }

    /// Random intervention over `1..=n`; each variable is clamped with probability 1/3.
    pub fn intervention(&mut self, n: u32) -> InterventionSpec {
        let mut lits = Vec::new();
        for i in 1..=n {
            if self.rng.gen_bool(1.0 / 3.0) {
                lits.push(Literal::new(Atom::new(i), self.rng.gen_bool(0.5)));
            }
        }
        InterventionSpec::new(lits).expect("generated in index order")
    }

    /// Propositional formula using at most `*budget` connectives.
    pub fn prop(&mut self, atoms: u32, budget: &mut usize) -> PropFormula {
        if *budget == 0 || self.rng.gen_bool(0.45) {
            return match self.rng.gen_range(0..12) {
                0 => PropFormula::Top,
                1 => PropFormula::Bottom,
                _ => PropFormula::atom(self.rng.gen_range(1..=atoms)),
            };
        }
        *budget -= 1;
        match self.rng.gen_range(0..4) {
            0 => self.prop(atoms, budget).not(),
            1 => {
                let a = self.prop(atoms, budget);
                a.and(self.prop(atoms, budget))
            }
            2 => {
                let a = self.prop(atoms, budget);
                a.or(self.prop(atoms, budget))
            }
            // `a -> b` is stored as `!a | b`
            _ if *budget > 0 => {
                *budget -= 1;
                let a = self.prop(atoms, budget);
                a.implies(self.prop(atoms, budget))
            }
            _ => {
                let a = self.prop(atoms, budget);
                a.or(self.prop(atoms, budget))
            }
        }
    }

    fn cond(&mut self, atoms: u32, budget: &mut usize) -> Formula {
        let antecedent = self.intervention(atoms);
        let consequent = self.prop(atoms, budget);
        if self.rng.gen_bool(0.5) {
            Formula::boxed(antecedent, consequent)
        } else {
            Formula::diamond(antecedent, consequent)
        }
    }

    /// Formula over `X1..X{atoms}` with at most `connectives` connectives,
    /// counting those inside consequents.
    pub fn formula(&mut self, atoms: u32, connectives: usize) -> Formula {
        let mut budget = connectives;
        self.formula_with(atoms, &mut budget)
    }

    fn formula_with(&mut self, atoms: u32, budget: &mut usize) -> Formula {
        if *budget == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..10) {
                0 => Formula::Top,
                1 => Formula::Bottom,
                2..=3 => Formula::atom(self.rng.gen_range(1..=atoms)),
                _ => self.cond(atoms, budget),
            };
        }
        *budget -= 1;
        match self.rng.gen_range(0..5) {
            0 => self.formula_with(atoms, budget).not(),
            1 | 2 => {
                let a = self.formula_with(atoms, budget);
                a.and(self.formula_with(atoms, budget))
            }
            4 if *budget > 0 => {
                *budget -= 1;
                let a = self.formula_with(atoms, budget);
                a.implies(self.formula_with(atoms, budget))
            }
            _ => {
                let a = self.formula_with(atoms, budget);
                a.or(self.formula_with(atoms, budget))
            }
        }
    }

    fn source(&mut self, n: u32) -> Source {
        match self.rng.gen_range(0..3) {
            0 => Source::Const(self.rng.gen_bool(0.5)),
            1 => Source::Var(Atom::new(self.rng.gen_range(1..=n))),
            _ => Source::NegVar(Atom::new(self.rng.gen_range(1..=n))),
        }
    }

    fn comparison(&mut self, n: u32) -> Condition {
        let a = Atom::new(self.rng.gen_range(1..=n));
        let b = Atom::new(self.rng.gen_range(1..=n));
        match self.rng.gen_range(0..3) {
            0 => Condition::VarEqConst(a, self.rng.gen_bool(0.5)),
            1 => Condition::VarEqVar(a, b),
            _ => Condition::VarNeqVar(a, b),
        }
    }

    fn condition(&mut self, n: u32) -> Condition {
        let parts = if self.rng.gen_bool(0.2) { 2 } else { 1 };
        let cs: Vec<Condition> = (0..parts).map(|_| self.comparison(n)).collect();
        Condition::all(cs).expect("non-empty")
    }

    fn statement(&mut self, n: u32, depth: usize, dialect: Dialect) -> Statement {
        let mut kinds = vec![0, 0, 0, 0];
        if depth > 0 {
            kinds.extend([1, 1, 2, 2]);
            if !dialect.is_deterministic() {
                kinds.extend([3, 3]);
            }
        }
        if !dialect.is_halting() {
            kinds.push(4);
        }
        match *kinds.choose(&mut self.rng).expect("non-empty") {
            0 => {
                let target = Atom::new(self.rng.gen_range(1..=n));
                Statement::Assign { target, source: self.source(n) }
            }
            1 => {
                let len = self.rng.gen_range(2..=3);
                Statement::seq((0..len).map(|_| self.statement(n, depth - 1, dialect)).collect::<Vec<_>>())
            }
            2 => {
                let cond = self.condition(n);
                let then_branch = self.statement(n, depth - 1, dialect);
                let else_branch =
                    if self.rng.gen_bool(0.4) { Statement::Empty } else { self.statement(n, depth - 1, dialect) };
                Statement::if_else(cond, then_branch, else_branch)
            }
            3 => {
                let width = self.rng.gen_range(2..=3);
                Statement::Choose((0..width).map(|_| self.statement(n, depth - 1, dialect)).collect())
            }
            _ => Statement::Loop,
        }
    }

    /// Program over `X1..X{n}` with nesting depth at most `depth`, inside `dialect`.
    pub fn program(&mut self, n: u32, depth: usize, dialect: Dialect) -> PLProgram {
        let len = self.rng.gen_range(1..=3);
        let body = Statement::seq((0..len).map(|_| self.statement(n, depth, dialect)).collect::<Vec<_>>());
        PLProgram::new(body)
    }

    /// An instance of `axiom` over `X1..X{n}`.
    pub fn axiom(&mut self, axiom: Axiom, n: u32) -> Formula {
        let a = self.intervention(n);
        let mut prop = || {
            let mut budget = 2;
            self.prop(n, &mut budget)
        };
        match axiom {
            Axiom::R => Formula::boxed(a.clone(), a.to_prop()),
            Axiom::K => {
                let (b, c) = (prop(), prop());
                Formula::boxed(a.clone(), b.clone().implies(c.clone()))
                    .implies(Formula::boxed(a.clone(), b).implies(Formula::boxed(a, c)))
            }
            Axiom::F => {
                let b = prop();
                Formula::diamond(a.clone(), b.clone()).implies(Formula::boxed(a, b))
            }
            Axiom::D => {
                let b = prop();
                Formula::boxed(a.clone(), b.clone()).implies(Formula::diamond(a, b))
            }
        }
    }
}

/// Count of surface connectives (`!`, `&`, `|`) in a formula, including consequents.
pub fn connective_count(f: &Formula) -> usize {
    fn prop(p: &PropFormula) -> usize {
        match p {
            PropFormula::Atom(_) | PropFormula::Top | PropFormula::Bottom => 0,
            PropFormula::Not(a) => 1 + prop(a),
            PropFormula::And(a, b) | PropFormula::Or(a, b) => 1 + prop(a) + prop(b),
        }
    }
    match f {
        Formula::Atom(_) | Formula::Top | Formula::Bottom => 0,
        Formula::Cond(c) => prop(&c.consequent),
        Formula::Not(a) => 1 + connective_count(a),
        Formula::And(a, b) | Formula::Or(a, b) => 1 + connective_count(a) + connective_count(b),
    }
}

/// Nesting depth of compound statements.
pub fn statement_depth(s: &Statement) -> usize {
    match s {
        Statement::Empty | Statement::Assign { .. } | Statement::Loop => 0,
        Statement::Seq(items) => items.iter().map(statement_depth).max().unwrap_or(0),
        Statement::If { then_branch, else_branch, .. } => {
            1 + statement_depth(then_branch).max(statement_depth(else_branch))
        }
        Statement::Choose(bs) => 1 + bs.iter().map(statement_depth).max().unwrap_or(0),
    }
}
