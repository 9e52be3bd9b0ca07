//! Run the construction pipeline end to end for several shifts a, using
//! relaxed-mode explicit blocks at desk scale. Every emitted n carries a
//! certificate that is re-verified here.
//!
//!     cargo run --example construct_carmichael

use carmichael::construct::{run_pipeline, ConstructionParams, Mode};

fn relaxed(a: i64, blocks: Vec<u64>) -> ConstructionParams {
    ConstructionParams {
        a,
        y: 20,
        theta: 1.5,
        hb_exponent: 1,
        alpha: 1,
        k_cap: 60,
        kprime_cap: 300,
        mode: Mode::Relaxed,
        seed: 0,
        blocks: Some(blocks),
    }
}

fn main() {
    let runs = [
        relaxed(1, vec![8, 3, 5, 7]),
        relaxed(-1, vec![4, 3, 5, 7]),
        relaxed(2, vec![3, 5, 7, 11, 13, 17]),
        relaxed(-2, vec![3, 5, 7, 11, 13, 17]),
        relaxed(3, vec![5, 7, 11, 13, 17, 19]),
    ];
    for params in runs {
        match run_pipeline(&params) {
            Ok(result) => {
                println!("a = {:>2}: n = {}", params.a, result.n);
                println!(
                    "        = {} * {}",
                    result.p,
                    result
                        .chosen
                        .iter()
                        .map(|h| h.prime.to_string())
                        .collect::<Vec<_>>()
                        .join(" * ")
                );
                println!(
                    "        k = {}, k' = {}, modulus Lkk' = {}, certificate ok = {}",
                    result.k,
                    result.kprime,
                    result.modulus,
                    result.certificate.verify()
                );
            }
            Err(e) => println!("a = {:>2}: failed: {e}", params.a),
        }
        println!();
    }
}
