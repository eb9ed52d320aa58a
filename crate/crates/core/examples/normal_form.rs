// Brings formulas into disjunctive normal form over conditional literals
// and checks the result against the original on a few models.

use simcond::corpus::Corpus;
use simcond::normal_form::clause_to_formula;
use simcond::{check, parse_formula, to_normal_form, Dialect, Formula, Model};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let phi = parse_formula("!([X1](X2 | X3) & <T>X1) | (X2 & [!X2](X1 -> X3))")?;
    let clauses = to_normal_form(&phi);
    println!("{phi}");
    for c in &clauses {
        println!("  | {c}");
    }
    let nf = Formula::disjunction(clauses.iter().map(clause_to_formula));
    let mut corpus = Corpus::new(11);
    for _ in 0..50 {
        let m = Model::new(corpus.program(3, 3, Dialect::Full), corpus.tape(3));
        if check(&m, &phi) != check(&m, &nf) {
            return Err(format!("normal form disagrees on {}", m.program).into());
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("normal_form");
}
