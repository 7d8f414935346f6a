//! Model checking MSO sentences over a decomposition, next to the naive
//! evaluator that expands every quantifier.

use amalgam::decomposition::AmalgamDecomposition;
use amalgam::mso::{eval_naive, msom, parse, Assignment};
use amalgam::Result;

fn main() -> Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let hamiltonian = std::fs::read_to_string(format!("{dir}/formulas/hamiltonian.mso"))?;
    let phi = parse(hamiltonian.trim())?;
    println!("{phi}");
    for name in ["k4", "two_sum_of_triangles", "free_3", "cycle_7"] {
        let t = AmalgamDecomposition::load(format!("{dir}/decompositions/{name}.json"))?;
        let m = t.realize(t.root())?;
        let verdict = msom(&t, &phi, &Assignment::new())?;
        let naive = eval_naive(&m, &phi, &Assignment::new())?;
        println!("  {name:<22} {verdict}  (naive: {naive})");
    }

    let q: Assignment = amalgam::mso::parse_assignment(r#"{"C": [1, 2, 3, 4]}"#)?;
    let t = AmalgamDecomposition::load(format!("{dir}/decompositions/two_sum_of_triangles.json"))?;
    println!("is_circuit({{1,2,3,4}}) on the 2-sum: {}", msom(&t, &parse("is_circuit(C)")?, &q)?);
    Ok(())
}
