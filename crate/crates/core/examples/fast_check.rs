// Verifies conditional literals on a canonical program by running only the
// probe prefix and the matching detector, and compares with full execution.

use simcond::check::{check, fast_check_literal};
use simcond::decision::sat;
use simcond::formula::to_nnf;
use simcond::{parse_formula, Dialect, InterventionSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let phi = parse_formula("<X1>X2 & <X1>!X2 & [!X2](X1 & X3) & !<X3>T")?;
    let witness = sat(&phi, Dialect::Full)?.witness().cloned().ok_or("expected a model")?;
    let model = witness.model();
    for lit in to_nnf(&phi).cond_atoms() {
        let fast = fast_check_literal(&model, lit)?;
        let full = check(&model, &simcond::Formula::Cond(lit.clone()));
        println!("{lit}: {fast}");
        if fast != full {
            return Err(format!("fast check disagrees on {lit}").into());
        }
    }
    // antecedents outside the formula count too
    let other = simcond::CondAtom::diamond("X2".parse::<InterventionSpec>()?, parse_formula_prop("X2")?);
    println!("{other}: {}", fast_check_literal(&model, &other)?);
    Ok(())
}

fn parse_formula_prop(s: &str) -> Result<simcond::PropFormula, simcond::formula::FormulaError> {
    simcond::formula::parse_prop(s)
}

fn main() {
    run_example().expect("fast_check");
}
