//! Hand-derived values recomputed by routes independent of the library: a
//! separate worklist interpreter, direct token counting on printed text and
//! explicitly constructed abstract tables.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use simcond::canonical::{
    build_selection, emit_holds_from_intervention, emit_is_intervened, emit_make_hold, synthesize,
};
use simcond::corpus::Corpus;
use simcond::decision::{brute_force_sat_small, in_fragment, sat, valid};
use simcond::formula::{parse_prop, Atom, CondAtom, Modality};
use simcond::interp::execute;
use simcond::pl::{program_metrics, Source, Statement};
use simcond::tape::clamp_of;
use simcond::{
    fast_check_literal, parse_formula, parse_program, to_normal_form, Dialect, Formula, InterventionSpec, Model,
    PLProgram, Tape,
};

type State = BTreeMap<u32, bool>;

/// Worklist interpreter over explicit continuation stacks.
fn outcomes(p: &PLProgram, tape: &Tape, clamp: &BTreeMap<u32, bool>) -> (BTreeSet<Tape>, bool, usize) {
    let mut state: State = tape.ones().map(|i| (i, true)).collect();
    for (&i, &b) in clamp {
        state.insert(i, b);
    }
    let mut work: Vec<(Vec<&Statement>, State)> = vec![(vec![&p.body], state)];
    let (mut outs, mut diverges, mut paths) = (BTreeSet::new(), false, 0);
    while let Some((mut stack, mut st)) = work.pop() {
        let Some(s) = stack.pop() else {
            paths += 1;
            outs.insert(Tape::from_ones(st.iter().filter(|(_, b)| **b).map(|(i, _)| *i)));
            continue;
        };
        let read = |st: &State, a: Atom| st.get(&a.index()).copied().unwrap_or(false);
        match s {
            Statement::Empty => work.push((stack, st)),
            Statement::Assign { target, source } => {
                let v = match source {
                    Source::Const(b) => *b,
                    Source::Var(a) => read(&st, *a),
                    Source::NegVar(a) => !read(&st, *a),
                };
                if !clamp.contains_key(&target.index()) {
                    st.insert(target.index(), v);
                }
                work.push((stack, st));
            }
            Statement::Seq(items) => {
                stack.extend(items.iter().rev());
                work.push((stack, st));
            }
            Statement::If { cond, then_branch, else_branch } => {
                let taken = if cond.eval(&|a| read(&st, a)) { then_branch } else { else_branch };
                stack.push(taken);
                work.push((stack, st));
            }
            Statement::Choose(branches) => {
                for b in branches {
                    let mut next = stack.clone();
                    next.push(b);
                    work.push((next, st.clone()));
                }
            }
            Statement::Loop => {
                paths += 1;
                diverges = true;
            }
        }
    }
    (outs, diverges, paths)
}

fn clamp(a: &InterventionSpec) -> BTreeMap<u32, bool> {
    a.literals().iter().map(|l| (l.atom.index(), l.positive)).collect()
}

/// Truth of a formula computed from the worklist interpreter.
fn holds(p: &PLProgram, tape: &Tape, f: &Formula) -> bool {
    f.eval_with(&|a| tape.get(a.index()), &mut |c: &CondAtom| {
        let (outs, _, _) = outcomes(p, tape, &clamp(&c.antecedent));
        match c.modality {
            Modality::Box => outs.iter().all(|t| t.satisfies(&c.consequent)),
            Modality::Diamond => outs.iter().any(|t| t.satisfies(&c.consequent)),
        }
    })
}

fn spec(s: &str) -> InterventionSpec {
    s.parse().unwrap()
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

const EXAMPLE_ONE: &str = "if X1 = 1 then X4 := X2 ; X5 := X3 ; if X5 = 0 then X2 := 1 else end ; \
                           if X4 = 0 then X3 := 1 else end else end";

#[test]
fn token_length_by_counting_printed_text() {
    let p = parse_program("X2 := X5 ; X2 := X5").unwrap();
    let m = program_metrics(&p);
    assert_eq!((m.length, m.max_index), (7, 5));
    // whitespace words, with `!` split off its variable
    let probe = PLProgram::new(emit_is_intervened(1, 2));
    let text = probe.to_string();
    let words: usize = text.split_whitespace().map(|w| if w.starts_with('!') && w.len() > 1 { 2 } else { 1 }).sum();
    assert_eq!(program_metrics(&probe).length, words);
}

#[test]
fn choose_with_loop_by_worklist() {
    let p = parse_program("choose X2 := 1 or loop end").unwrap();
    let (outs, diverges, paths) = outcomes(&p, &Tape::zero(), &BTreeMap::new());
    assert_eq!(outs, BTreeSet::from([Tape::from_ones([2])]));
    assert!(diverges);
    assert_eq!(paths, 2);
    let s = execute(&p, &Tape::zero(), &simcond::ClampSet::empty());
    assert_eq!((s.halting_outputs, s.diverges, s.paths), (outs, diverges, paths));
}

#[test]
fn example_one_run_under_x1() {
    let p = parse_program(EXAMPLE_ONE).unwrap();
    let (outs, diverges, _) = outcomes(&p, &Tape::zero(), &clamp(&spec("X1")));
    // X4, X5 record the initial (zero) values of X2, X3
    assert_eq!(outs, BTreeSet::from([Tape::from_ones([1, 2, 3])]));
    assert!(!diverges);
    assert!(holds(&p, &Tape::zero(), &f("[X1](X2 & X3)")));
    assert!(holds(&p, &Tape::zero(), &f("[X1 & X2] !X3")));
    assert!(!holds(&p, &Tape::zero(), &f("[X1](X2 & X3) -> [X1 & X2]X3")));
}

#[test]
fn probe_traces() {
    let probe = PLProgram::new(emit_is_intervened(1, 2));
    for bits in 0u32..32 {
        let tape = Tape::from_ones((1..=5).filter(|i| bits >> (i - 1) & 1 == 1));
        let (outs, _, _) = outcomes(&probe, &tape, &BTreeMap::from([(1, true)]));
        let out = outs.into_iter().next().unwrap();
        assert!(out.get(3), "clamped X1 must be marked on {tape}");
    }
    let (outs, _, _) = outcomes(&probe, &Tape::zero(), &BTreeMap::new());
    let out = outs.into_iter().next().unwrap();
    assert!(!out.get(3) && !out.get(1));
}

fn every_intervention(n: u32) -> Vec<InterventionSpec> {
    (0..3u32.pow(n))
        .map(|code| {
            let lits = (1..=n).filter_map(|i| match code / 3u32.pow(i - 1) % 3 {
                0 => None,
                v => Some(simcond::Literal::new(Atom::new(i), v == 2)),
            });
            InterventionSpec::new(lits.collect()).unwrap()
        })
        .collect()
}

#[test]
fn detection_conditions_identify_exactly_one_intervention() {
    let n = 2;
    let probes = Statement::seq((1..=n).map(|i| emit_is_intervened(i, n)));
    for alpha in every_intervention(n) {
        let marker =
            Statement::if_else(emit_holds_from_intervention(&alpha, n), Statement::set(9, true), Statement::Empty);
        let p = PLProgram::new(Statement::seq([probes.clone(), marker]));
        for beta in every_intervention(n) {
            for tape in [Tape::zero(), Tape::from_ones([1]), Tape::from_ones([2]), Tape::from_ones([1, 2])] {
                let (outs, _, _) = outcomes(&p, &tape, &clamp(&beta));
                assert_eq!(outs.iter().next().unwrap().get(9), alpha == beta, "{alpha} vs {beta} on {tape}");
            }
        }
    }
    assert_eq!(emit_holds_from_intervention(&spec("X1"), 2).to_string(), "X1 = 1 & X3 = 1 & X4 = 0");
    assert_eq!(emit_holds_from_intervention(&spec("T"), 2).to_string(), "X3 = 0 & X4 = 0");
    assert_eq!(emit_holds_from_intervention(&spec("!X1 & X2"), 2).to_string(), "X1 = 0 & X2 = 1 & X3 = 1 & X4 = 1");
}

fn fragment(n: u32, alpha: &InterventionSpec, body: Statement) -> PLProgram {
    let probes = (1..=n).map(|i| emit_is_intervened(i, n));
    let detector = Statement::if_else(emit_holds_from_intervention(alpha, n), body, Statement::Empty);
    PLProgram::new(Statement::seq(probes.chain([detector])))
}

#[test]
fn fast_check_cases() {
    let x1 = spec("X1");
    let cond = |s: &str| match f(s) {
        Formula::Cond(c) => c,
        _ => unreachable!(),
    };
    let looping = Model::new(fragment(2, &x1, Statement::Loop), Tape::zero());
    assert!(fast_check_literal(&looping, &cond("[X1]F")).unwrap());
    assert!(holds(&looping.program, &looping.tape, &f("[X1]F")));

    let single = Model::new(fragment(2, &x1, emit_make_hold(&spec("X1 & X2"))), Tape::zero());
    assert!(fast_check_literal(&single, &cond("<X1>X2")).unwrap());
    assert!(holds(&single.program, &single.tape, &f("<X1>X2")));

    let both = Statement::choose(vec![emit_make_hold(&spec("X1 & X2")), emit_make_hold(&spec("X1 & !X2"))]);
    let choice = Model::new(fragment(2, &x1, both), Tape::zero());
    assert!(!fast_check_literal(&choice, &cond("[X1]X2")).unwrap());
    assert!(!holds(&choice.program, &choice.tape, &f("[X1]X2")));
}

#[test]
fn selection_examples_against_oracle() {
    let two = f("<X1>X2 & <X1>!X2");
    let c = to_normal_form(&two).remove(0);
    let full = build_selection(&c, Dialect::Full).unwrap();
    assert_eq!(full.get(&spec("X1")).unwrap(), &BTreeSet::from([spec("X1 & X2"), spec("X1 & !X2")]));
    assert!(build_selection(&c, Dialect::Det).is_err());
    assert_eq!(brute_force_sat_small(&two, Dialect::Full, 2, 2), Ok(true));
    assert_eq!(brute_force_sat_small(&two, Dialect::Det, 2, 2), Ok(false));

    let bottom = f("[X1]F");
    let c = to_normal_form(&bottom).remove(0);
    assert!(build_selection(&c, Dialect::Full).unwrap().get(&spec("X1")).unwrap().is_empty());
    assert!(build_selection(&c, Dialect::Halting).is_err());
    assert_eq!(brute_force_sat_small(&bottom, Dialect::Det, 1, 1), Ok(true));
    assert_eq!(brute_force_sat_small(&bottom, Dialect::Halting, 1, 1), Ok(false));
}

#[test]
fn synthesis_examples_by_worklist() {
    let c = simcond::NormalClause {
        pi: vec![simcond::Literal::pos(2)],
        diamonds: vec![(spec("X1"), spec("X1 & X2"))],
        ..Default::default()
    };
    let sel = build_selection(&c, Dialect::DetHalting).unwrap();
    let out = synthesize(&c, &sel, Dialect::DetHalting, 2).unwrap();
    assert_eq!(out.program, fragment(2, &spec("X1"), parse_program("X1 := 1 ; X2 := 1").unwrap().body));
    assert_eq!(out.tape, Tape::from_ones([2]));
    assert!(holds(&out.program, &out.tape, &f("X2 & <X1>(X1 & X2)")));

    let c = to_normal_form(&f("[X1]F")).remove(0);
    let out = synthesize(&c, &build_selection(&c, Dialect::Full).unwrap(), Dialect::Full, 1).unwrap();
    assert_eq!(out.program, fragment(1, &spec("X1"), Statement::Loop));
    assert!(holds(&out.program, &out.tape, &f("[X1]F")));

    let c = to_normal_form(&f("<X1>X2 & <X1>!X2")).remove(0);
    let out = synthesize(&c, &build_selection(&c, Dialect::Full).unwrap(), Dialect::Full, 2).unwrap();
    let (outs, diverges, paths) = outcomes(&out.program, &out.tape, &clamp(&spec("X1")));
    assert_eq!((outs.len(), diverges, paths), (2, false, 2));
    assert!(holds(&out.program, &out.tape, &f("<X1>X2 & <X1>!X2 & [X1](X2 | !X2)")));
}

#[test]
fn decision_examples_against_oracle() {
    for d in Dialect::ALL {
        assert!(!sat(&f("[X1]X2 & <X1>!X2"), d).unwrap().is_sat());
        assert_eq!(brute_force_sat_small(&f("[X1]X2 & <X1>!X2"), d, 2, 2), Ok(false));
    }
    let fax = f("<X1>X2 -> [X1]X2");
    for d in Dialect::ALL {
        let v = valid(&fax, d).unwrap();
        let oracle_valid = !brute_force_sat_small(&fax.clone().not(), d, 2, 2).unwrap();
        assert_eq!(v.is_valid(), oracle_valid, "{d}");
        assert_eq!(v.is_valid(), d.is_deterministic());
        if let simcond::decision::Validity::Invalid { countermodel } = v {
            assert!(!holds(&countermodel.program, &countermodel.tape, &fax));
            let Some(Statement::If { then_branch, .. }) = countermodel.program.body.items().last() else { panic!() };
            assert!(matches!(**then_branch, Statement::Choose(_)));
        }
    }
    let cm = f("[X1](X2 & X3) -> [X1 & X2] X3");
    for d in Dialect::ALL {
        let simcond::decision::Validity::Invalid { countermodel } = valid(&cm, d).unwrap() else { panic!("{d}") };
        assert!(!holds(&countermodel.program, &countermodel.tape, &cm));
    }
}

#[test]
fn abstract_table_for_two_diamonds() {
    // O_X1 = {X1=1 X2=0, X1=1 X2=1}
    let outputs = [Tape::from_ones([1]), Tape::from_ones([1, 2])];
    let x2 = parse_prop("X2").unwrap();
    let not_x2 = parse_prop("!X2").unwrap();
    assert!(outputs.iter().any(|t| t.satisfies(&x2)) && outputs.iter().any(|t| t.satisfies(&not_x2)));
    assert!(outputs.iter().all(|t| clamp_of(&spec("X1")).agrees_with(t)));
}

#[test]
fn fragment_constant_from_selection() {
    for s in ["<X1>X2 & <X1>!X2 & <X1>X3 & <X1>!X3", "<T>X1 & <T>!X1", "[X1]F & <X2>X1"] {
        let phi = f(s);
        let r = sat(&phi, Dialect::Full).unwrap();
        let simcond::decision::SatResult::Satisfiable { witness, clause } = r else { panic!() };
        let width = build_selection(&clause, Dialect::Full).unwrap().max_width();
        let c = width.div_ceil(phi.size()).max(1);
        assert!(in_fragment(&witness.program, &phi, c));
    }
}

proptest! {
    #[test]
    fn interpreters_agree(seed in any::<u64>(), d in 0usize..4) {
        let mut corpus = Corpus::new(seed);
        let p = corpus.program(3, 4, Dialect::ALL[d]);
        let tape = corpus.tape(3);
        let a = corpus.intervention(3);
        let s = execute(&p, &tape, &clamp_of(&a));
        prop_assert_eq!((s.halting_outputs, s.diverges, s.paths), outcomes(&p, &tape, &clamp(&a)));
    }

    #[test]
    fn checker_agrees_with_worklist_semantics(seed in any::<u64>()) {
        let mut corpus = Corpus::new(seed);
        let phi = corpus.formula(3, 6);
        let m = Model::new(corpus.program(3, 3, Dialect::Full), corpus.tape(3));
        prop_assert_eq!(simcond::check(&m, &phi), holds(&m.program, &m.tape, &phi));
    }
}
