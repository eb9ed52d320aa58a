// Satisfiability and validity in the four dialects.

use simcond::decision::{sat, valid};
use simcond::{parse_formula, Dialect};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("<X1>X2 & <X1>!X2", [true, false, true, false]),
        ("[X1]F", [true, true, false, false]),
        ("[X1]X2 & <X1>!X2", [false; 4]),
    ];
    for (text, expected) in cases {
        let phi = parse_formula(text)?;
        for (d, want) in Dialect::ALL.into_iter().zip(expected) {
            let r = sat(&phi, d)?;
            println!("sat {text} in {d}: {}", r.is_sat());
            if r.is_sat() != want {
                return Err(format!("sat {text} in {d} should be {want}").into());
            }
        }
    }
    for (text, expected) in [
        ("[X1]X1", [true; 4]),
        ("<X1>X2 -> [X1]X2", [false, true, false, true]),
        ("[X1]X2 -> <X1>X2", [false, false, true, true]),
        ("[X1](X2 & X3) -> [X1 & X2]X3", [false; 4]),
    ] {
        let phi = parse_formula(text)?;
        for (d, want) in Dialect::ALL.into_iter().zip(expected) {
            let v = valid(&phi, d)?;
            println!("valid {text} in {d}: {}", v.is_valid());
            if v.is_valid() != want {
                return Err(format!("valid {text} in {d} should be {want}").into());
            }
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("decide");
}
