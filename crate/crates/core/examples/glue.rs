//! Glueing two triangles along a shared element and deleting it gives the
//! 2-sum, a 4-cycle.

use amalgam::amalgam::glue;
use amalgam::catalog::{cycle, single, triangle};
use amalgam::matroid::two_sum;
use amalgam::{ElementId, Result};

fn main() -> Result<()> {
    let (m1, m2) = (triangle(1, 2, 5), triangle(3, 4, 5));
    let k = single(5, false);
    let parallel = glue(&m1, &m2, &k, &Default::default())?;
    println!("parallel connection: {} elements, rank {}", parallel.len(), parallel.full_rank());

    let sum = glue(&m1, &m2, &k, &[ElementId(5)].into())?;
    println!("2-sum: {} elements, rank {}", sum.len(), sum.full_rank());
    println!("equals the circuit-defined 2-sum: {}", sum.same_as(&two_sum(&m1, &m2, ElementId(5), ElementId(5))?));
    println!("is a 4-cycle: {}", sum.same_as(&cycle(4, 1)));
    Ok(())
}
