//! Widths of the shipped decompositions and branch decompositions.

use std::fs;

use amalgam::decomposition::{branch_width_of, AmalgamDecomposition, BranchDecomposition};
use amalgam::{Matroid, Result};

fn main() -> Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
    let mut names: Vec<_> = fs::read_dir(format!("{dir}/decompositions"))?.map(|e| e.unwrap().path()).collect();
    names.sort();
    for path in names {
        let t = AmalgamDecomposition::load(&path)?;
        let size = t.realize(t.root())?.len();
        println!("{:<40} {size:>2} elements, width {}", path.file_name().unwrap().to_string_lossy(), t.width());
    }
    let m = Matroid::load(format!("{dir}/matroids/k4_gf2.json"))?;
    let b = BranchDecomposition::load(format!("{dir}/matroids/k4_gf2.branch.json"))?;
    println!("M(K4) opposite-edge branch decomposition: width {}", branch_width_of(&m, &b)?);
    let caterpillar = BranchDecomposition::caterpillar(m.elements());
    println!("M(K4) caterpillar: width {}", branch_width_of(&m, &caterpillar)?);
    Ok(())
}
