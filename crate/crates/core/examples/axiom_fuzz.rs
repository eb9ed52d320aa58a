// Checks the axiom schemes R, K, F and D on random programs: R and K
// everywhere, F on deterministic programs, D on halting ones.

use simcond::corpus::{Axiom, Corpus};
use simcond::{check, Dialect, Model};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut corpus = Corpus::new(2024);
    let plan = [
        (Dialect::Full, vec![Axiom::R, Axiom::K]),
        (Dialect::Det, vec![Axiom::R, Axiom::K, Axiom::F]),
        (Dialect::Halting, vec![Axiom::R, Axiom::K, Axiom::D]),
        (Dialect::DetHalting, vec![Axiom::R, Axiom::K, Axiom::F, Axiom::D]),
    ];
    for (dialect, axioms) in plan {
        let mut checked = 0;
        for _ in 0..25 {
            let program = corpus.program(3, 4, dialect);
            for _ in 0..5 {
                let model = Model::new(program.clone(), corpus.tape(3));
                for &ax in &axioms {
                    let instance = corpus.axiom(ax, 3);
                    if !check(&model, &instance) {
                        return Err(format!("{ax:?} fails: {instance} on {program}").into());
                    }
                    checked += 1;
                }
            }
        }
        println!("{dialect}: {checked} instances hold");
    }
    Ok(())
}

fn main() {
    run_example().expect("axiom_fuzz");
}
