//! Rewrites a decomposition so that sibling boundaries are disjoint.

use amalgam::decomposition::AmalgamDecomposition;
use amalgam::Result;

fn main() -> Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/decompositions/fan_of_triangles.json").into());
    let t = AmalgamDecomposition::load(&path)?;
    let n = t.to_nice()?;
    println!("before: {} nodes, width {}, nice: {}", t.len(), t.width(), t.is_nice());
    println!("after:  {} nodes, width {}, nice: {}", n.len(), n.width(), n.is_nice());
    let same = n.realize(n.root())?.same_as(&t.realize(t.root())?);
    println!("same matroid: {same}");
    Ok(())
}
