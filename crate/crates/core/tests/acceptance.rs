//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::time::{Duration, Instant};

use simcond::canonical::probe_count;
use simcond::corpus::{Axiom, Corpus};
use simcond::decision::{brute_force_sat_small, in_fragment, min_fragment_c, sat, valid, within_oracle_bounds};
use simcond::formula::to_nnf;
use simcond::normal_form::clause_to_formula;
use simcond::pl::program_metrics;
use simcond::{check, fast_check_literal, parse_formula, parse_program, to_normal_form, Dialect, Formula, Model, Tape};

/// Corpus-wide constant in `length <= C0 * |phi|^3`.
const C0: f64 = 160.0;

const SEED: u64 = 0x5eed;

struct Outcome {
    ok: bool,
    detail: String,
}

fn first<T: std::fmt::Debug>(failures: &[T]) -> String {
    failures.first().map(|f| format!(", first: {f:?}")).unwrap_or_default()
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn example_one() -> Outcome {
    let program = parse_program(
        "if X1 = 1 then X4 := X2 ; X5 := X3 ; if X5 = 0 then X2 := 1 else end ; \
         if X4 = 0 then X3 := 1 else end else end",
    )
    .unwrap();
    let m = Model::new(program, Tape::zero());
    let got: Vec<bool> = ["[X1](X2 & X3)", "[X1 & X2] !X3", "[X1](X2&X3) -> [X1&X2]X3"]
        .iter()
        .map(|s| check(&m, &parse_formula(s).unwrap()))
        .collect();
    outcome(got == [true, true, false], format!("outcomes {got:?}"))
}

fn axiom_fuzz() -> Outcome {
    let mut corpus = Corpus::new(SEED);
    let mut violations = Vec::new();
    let mut instances = 0;
    let programs = 500;
    for k in 0..programs {
        let dialect = Dialect::ALL[k % 4];
        let n = 1 + (k as u32 % 4);
        let program = corpus.program(n, 6, dialect);
        let mut axioms = vec![Axiom::R, Axiom::K];
        if dialect.is_deterministic() {
            axioms.push(Axiom::F);
        }
        if dialect.is_halting() {
            axioms.push(Axiom::D);
        }
        for _ in 0..10 {
            let m = Model::new(program.clone(), corpus.tape(n));
            for &ax in &axioms {
                let inst = corpus.axiom(ax, n);
                instances += 1;
                if !check(&m, &inst) {
                    violations.push(format!("{ax:?}: {inst} on {program}"));
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!("{programs} programs, {instances} instances, {} violations{}", violations.len(), first(&violations)),
    )
}

struct Witnessed {
    formula: Formula,
    model: Model,
    n: u32,
}

fn round_trip(witnesses: &mut Vec<Witnessed>) -> Outcome {
    let mut corpus = Corpus::new(SEED + 3);
    let mut failures = Vec::new();
    let mut sat_count = 0;
    let formulas = 300;
    for _ in 0..formulas {
        let phi = corpus.formula(4, 6);
        for d in Dialect::ALL {
            match sat(&phi, d) {
                Err(e) => failures.push(e.to_string()),
                Ok(r) => {
                    if let Some(w) = r.witness() {
                        sat_count += 1;
                        let model = w.model();
                        if !check(&model, &phi) {
                            failures.push(format!("{phi} in {d}"));
                        }
                        witnesses.push(Witnessed { formula: phi.clone(), model, n: w.n });
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{formulas} formulas x 4 dialects, {sat_count} satisfiable answers, {} failures{}",
            failures.len(),
            first(&failures)
        ),
    )
}

fn oracle_agreement() -> Outcome {
    let mut corpus = Corpus::new(SEED + 4);
    let mut disagreements = Vec::new();
    let (mut compared, mut sat_count) = (0, 0);
    while compared < 300 {
        let phi = corpus.formula(2, 6);
        if !within_oracle_bounds(&phi, 2, 2) {
            continue;
        }
        compared += 1;
        for d in Dialect::ALL {
            let ours = sat(&phi, d).map(|r| r.is_sat());
            let oracle = brute_force_sat_small(&phi, d, 2, 2);
            match (ours, oracle) {
                (Ok(a), Ok(b)) if a == b => sat_count += usize::from(a),
                (a, b) => disagreements.push(format!("{phi} in {d}: sat {a:?}, oracle {b:?}")),
            }
        }
    }
    outcome(
        disagreements.is_empty(),
        format!(
            "{compared} formulas x 4 dialects, {sat_count} satisfiable, {} disagreements{}",
            disagreements.len(),
            first(&disagreements)
        ),
    )
}

fn separations() -> Outcome {
    let sat_in = |s: &str, d| sat(&parse_formula(s).unwrap(), d).unwrap().is_sat();
    let two = Dialect::ALL.map(|d| sat_in("<X1>X2 & <X1>!X2", d));
    let bottom = Dialect::ALL.map(|d| sat_in("[X1]F", d));
    let refl = Dialect::ALL.map(|d| valid(&parse_formula("[X1]X1").unwrap(), d).unwrap().is_valid());
    let ok = two == [true, false, true, false] && bottom == [true, true, false, false] && refl == [true; 4];
    outcome(ok, format!("full/det/halting/det-halting: two-diamonds {two:?}, [X1]F {bottom:?}, [X1]X1 valid {refl:?}"))
}

fn size_bounds(witnesses: &[Witnessed]) -> Outcome {
    let c = witnesses.iter().filter_map(|w| min_fragment_c(&w.model.program, &w.formula)).max().unwrap_or(1);
    let mut worst_ratio: f64 = 0.0;
    let mut failures = Vec::new();
    for w in witnesses {
        let metrics = program_metrics(&w.model.program);
        let size = w.formula.size() as f64;
        let ratio = metrics.length as f64 / size.powi(3);
        worst_ratio = worst_ratio.max(ratio);
        if metrics.max_index > 3 * probe_count(w.formula.max_index()) || ratio > C0 {
            failures.push(format!("{}: {} tokens, max index {}", w.formula, metrics.length, metrics.max_index));
        }
        if w.n != probe_count(w.formula.max_index()) || !in_fragment(&w.model.program, &w.formula, c) {
            failures.push(format!("{} not in fragment at C = {c}", w.formula));
        }
    }
    outcome(
        failures.is_empty() && !witnesses.is_empty(),
        format!(
            "{} witnesses, c0 = {C0}, max length/|phi|^3 = {worst_ratio:.2}, C = {c}, {} failures{}",
            witnesses.len(),
            failures.len(),
            first(&failures)
        ),
    )
}

fn verifier_agreement(witnesses: &[Witnessed]) -> Outcome {
    let mut literals = 0;
    let mut failures = Vec::new();
    for w in witnesses {
        let nnf = to_nnf(&w.formula);
        for lit in w.formula.cond_atoms().into_iter().chain(nnf.cond_atoms()) {
            literals += 1;
            let full = check(&w.model, &Formula::Cond(lit.clone()));
            match fast_check_literal(&w.model, lit) {
                Ok(fast) if fast == full => {}
                other => failures.push(format!("{lit} on witness of {}: {other:?} vs {full}", w.formula)),
            }
        }
    }
    outcome(failures.is_empty(), format!("{literals} literals, {} disagreements{}", failures.len(), first(&failures)))
}

fn normal_form_equivalence() -> Outcome {
    let mut corpus = Corpus::new(SEED + 8);
    let mut failures = Vec::new();
    let pairs = 200;
    for k in 0..pairs {
        let phi = corpus.formula(3, 6);
        let nf = Formula::disjunction(to_normal_form(&phi).iter().map(clause_to_formula));
        let dialect = Dialect::ALL[k % 4];
        let m = Model::new(corpus.program(3, 3, dialect), corpus.tape(3));
        if check(&m, &phi) != check(&m, &nf) {
            failures.push(format!("{phi} on {}", m.program));
        }
    }
    outcome(failures.is_empty(), format!("{pairs} pairs, {} mismatches{}", failures.len(), first(&failures)))
}

fn main() {
    let mut witnesses = Vec::new();
    let mut results: Vec<(&str, Duration, Duration, Outcome)> = Vec::new();
    let mut timed = |name, limit, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        results.push((name, start.elapsed(), limit, o));
    };
    timed("1 example one reproduction", Duration::from_secs(1), &mut example_one);
    timed("2 axiom soundness fuzzing", Duration::from_secs(60), &mut axiom_fuzz);
    timed("3 completeness round-trip", Duration::from_secs(120), &mut || round_trip(&mut witnesses));
    timed("4 oracle agreement", Duration::from_secs(120), &mut oracle_agreement);
    timed("5 dialect separations", Duration::from_secs(10), &mut separations);
    timed("6 size bounds", Duration::from_secs(60), &mut || size_bounds(&witnesses));
    timed("7 verifier agreement", Duration::from_secs(60), &mut || verifier_agreement(&witnesses));
    timed("8 normal-form equivalence", Duration::from_secs(60), &mut normal_form_equivalence);

    let mut all = true;
    for (name, elapsed, limit, o) in &results {
        let ok = o.ok && elapsed <= limit;
        all &= ok;
        println!(
            "[{}] criterion {name}: {} ({:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
