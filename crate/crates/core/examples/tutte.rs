//! Tutte polynomials by dynamic programming over a decomposition, checked
//! against the subset expansion when that is still cheap.

use std::time::Instant;

use amalgam::corpus::{k4_chain, triangle_chain};
use amalgam::tutte::{tutte_bruteforce, tutte_decomposition};
use amalgam::Result;
use num_bigint::BigInt;

fn main() -> Result<()> {
    let k4 = k4_chain(1);
    let dp = tutte_decomposition(&k4)?;
    let brute = tutte_bruteforce(&k4.realize(k4.root())?)?;
    println!("M(K4): {dp}");
    println!("  agrees with subset expansion: {}", dp == brute);
    println!("  spanning trees T(1,1) = {}", dp.evaluate_int(1, 1));

    for n in [8, 16, 32, 64] {
        let t = triangle_chain(n);
        let start = Instant::now();
        let p = tutte_decomposition(&t)?;
        let elapsed = start.elapsed();
        let total = p.evaluate_int(2, 2);
        assert_eq!(total, BigInt::from(2).pow(n as u32 + 2));
        println!("cycle on {:>2} elements: {} terms, {elapsed:?}", n + 2, p.terms().len());
    }
    Ok(())
}
