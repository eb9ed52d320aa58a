// Runs a nondeterministic program under an intervention and lists every
// halting output.

use simcond::interp::execute;
use simcond::tape::clamp_of;
use simcond::{parse_program, InterventionSpec, Tape};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let program = parse_program(
        "choose X2 := X1 or X2 := !X1 or loop end ;
         if X2 = 1 then X3 := 1 else end",
    )?;
    let tape: Tape = "X1=1".parse()?;
    for text in ["T", "!X1", "!X1 & X3"] {
        let a: InterventionSpec = text.parse()?;
        let s = execute(&program, &tape, &clamp_of(&a));
        let outs: Vec<String> = s.halting_outputs.iter().map(|t| format!("({t})")).collect();
        println!("under {a}: outputs [{}], diverges {}, {} paths", outs.join(", "), s.diverges, s.paths);
        if s.halting_outputs.len() != 2 || !s.diverges || s.paths != 3 {
            return Err(format!("unexpected run under {a}").into());
        }
        if !s.halting_outputs.iter().all(|t| clamp_of(&a).agrees_with(t)) {
            return Err("a clamp was overwritten".into());
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("run_program");
}
