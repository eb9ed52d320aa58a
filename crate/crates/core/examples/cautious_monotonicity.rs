// Two helpers are sent when Alf is in trouble: each checks on the other
// first and only goes if the other has not. Intervening so that one helper
// goes anyway makes the other stay home, so `[X1](X2 & X3)` holds while
// `[X1 & X2]X3` fails.

use simcond::{check, parse_formula, parse_program, Model, Tape};

pub const PROGRAM: &str = "if X1 = 1 then
    X4 := X2 ; X5 := X3 ;
    if X5 = 0 then X2 := 1 else end ;
    if X4 = 0 then X3 := 1 else end
else end";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = Model::new(parse_program(PROGRAM)?, Tape::zero());
    let expected = [("[X1](X2 & X3)", true), ("[X1 & X2] !X3", true), ("[X1](X2 & X3) -> [X1 & X2] X3", false)];
    for (text, want) in expected {
        let holds = check(&model, &parse_formula(text)?);
        println!("{text}: {holds}");
        if holds != want {
            return Err(format!("{text} should be {want}").into());
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("cautious_monotonicity");
}
