//! Turns a branch decomposition of a linear matroid into an amalgam decomposition
//! and compares the widths.

use amalgam::decomposition::{branch_width_of, from_branch_decomposition, BranchDecomposition};
use amalgam::{Matroid, Result};

fn main() -> Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/matroids");
    for name in ["coloops_and_loop_gf3", "parallel_class_gf2", "cycle_5_gf3", "u24_gf3", "k4_gf2", "fano_gf2"] {
        let m = Matroid::load(format!("{dir}/{name}.json"))?;
        let b = BranchDecomposition::load(format!("{dir}/{name}.branch.json"))?;
        let t = from_branch_decomposition(&m, &b)?;
        let (p, _) = m.linear_representation().expect("corpus matroids are linear");
        let k = branch_width_of(&m, &b)?;
        let bound = (p.get() as usize).pow(3 * k as u32 / 2);
        let same = t.realize(t.root())?.same_as(&m);
        println!("{name:<22} branch width {k}  amalgam width {:>2} (bound {bound:>3})  realizes input: {same}", t.width());
    }
    Ok(())
}
