// Builds the canonical model of a clause step by step: selection function,
// intervention probes, detectors, and the size of the result.

use simcond::canonical::{build_selection, probe_count, synthesize};
use simcond::decision::{in_fragment, min_fragment_c};
use simcond::pl::program_metrics;
use simcond::{check, parse_formula, to_normal_form, Dialect};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let phi = parse_formula("X2 & <X1>(X2 | X3) & <X1>!X2 & [X1 & X2]X3 & [T](X1 | X2)")?;
    let n = probe_count(phi.max_index());
    for clause in to_normal_form(&phi) {
        match build_selection(&clause, Dialect::Full) {
            Err(reason) => println!("{clause}\n  rejected: {reason}"),
            Ok(f) => {
                println!("{clause}\n  selection: {f}");
                let out = synthesize(&clause, &f, Dialect::Full, n)?;
                let metrics = program_metrics(&out.program);
                let c = min_fragment_c(&out.program, &phi).unwrap_or(1);
                println!("  tape ({}), {} tokens, max index X{}, C = {c}", out.tape, metrics.length, metrics.max_index);
                println!("  {}", out.program);
                if !check(&out.model(), &phi) || metrics.max_index > 3 * n || !in_fragment(&out.program, &phi, c) {
                    return Err("canonical model fails its contract".into());
                }
            }
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("synthesize");
}
