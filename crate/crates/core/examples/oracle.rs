// Cross-checks the decision procedure against brute-force search over
// abstract tables.

use simcond::corpus::Corpus;
use simcond::decision::{brute_force_sat_small, sat, within_oracle_bounds};
use simcond::Dialect;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut corpus = Corpus::new(5);
    let mut compared = 0;
    while compared < 40 {
        let phi = corpus.formula(2, 4);
        if !within_oracle_bounds(&phi, 2, 2) {
            continue;
        }
        for d in Dialect::ALL {
            let ours = sat(&phi, d)?.is_sat();
            let oracle = brute_force_sat_small(&phi, d, 2, 2)?;
            if ours != oracle {
                return Err(format!("{phi} in {d}: sat {ours}, oracle {oracle}").into());
            }
        }
        compared += 1;
    }
    println!("{compared} formulas agree in all dialects");
    Ok(())
}

fn main() {
    run_example().expect("oracle");
}
