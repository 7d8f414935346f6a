//! Rank, circuits and flats of a matroid file.
//!
//! ```text
//! cargo run --example matroid_info -- corpus/matroids/k4_graphic.json
//! ```

use amalgam::{Matroid, Result};

fn main() -> Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/matroids/k4_graphic.json").into());
    let m = Matroid::load(&path)?;
    println!("{} elements, rank {}", m.len(), m.full_rank());
    for c in m.circuits()? {
        println!("circuit {:?}", c.iter().map(|e| e.0).collect::<Vec<_>>());
    }
    let flats = m.flats()?;
    for r in 0..=m.full_rank() {
        let n = flats.iter().filter(|f| m.rank(f).unwrap() == r).count();
        println!("{n} flats of rank {r}");
    }
    m.check_rank_axioms().expect("a loaded matroid satisfies the rank axioms");
    Ok(())
}
