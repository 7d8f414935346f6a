//! Checks a decomposition and prints every violated condition.
//!
//! ```text
//! cargo run --example validate -- corpus/invalid/j1_outside_k.json
//! ```

use amalgam::decomposition::AmalgamDecomposition;
use amalgam::Result;

fn main() -> Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/decompositions/two_sum_of_triangles.json").into());
    let t = AmalgamDecomposition::load(&path)?;
    let report = t.validate();
    if report.is_valid() {
        println!("valid, width {}, {} nodes, nice: {}", t.width(), t.len(), t.is_nice());
    }
    for v in &report.violations {
        println!("node {}: {} ({})", v.node, v.kind, v.detail);
    }
    Ok(())
}
