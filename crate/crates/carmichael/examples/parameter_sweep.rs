//! Sweep relaxed-mode block choices looking for new construction successes.
//! Useful for hunting instances at other shifts a.
//!
//!     cargo run --example parameter_sweep [a]

use carmichael::construct::{run_pipeline, ConstructionParams, Mode};

fn main() {
    let a: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23];
    let mut tried = 0;
    let mut found = 0;
    for width in 3..=6 {
        for start in 0..=primes.len() - width {
            let blocks: Vec<u64> = primes[start..start + width].to_vec();
            if blocks
                .iter()
                .any(|&b| num_integer::gcd(b as i64, a.abs()) != 1)
            {
                continue;
            }
            let params = ConstructionParams {
                a,
                y: 20,
                theta: 1.5,
                hb_exponent: 1,
                alpha: 1,
                k_cap: 120,
                kprime_cap: 400,
                mode: Mode::Relaxed,
                seed: 0,
                blocks: Some(blocks.clone()),
            };
            tried += 1;
            match run_pipeline(&params) {
                Ok(r) => {
                    found += 1;
                    println!("blocks {blocks:?}: n = {}", r.n);
                }
                Err(e) => println!("blocks {blocks:?}: {e}"),
            }
        }
    }
    println!("\na = {a}: {found} successes out of {tried} block choices");
}
