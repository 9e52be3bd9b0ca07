//! Decide single numbers and print their certificates.
//!
//!     cargo run --example check_certificate

use num_bigint::BigInt;

use carmichael::korselt::{check, CheckOutcome};

fn main() {
    // The classic Carmichael number, its -1 analogue, and two refutations.
    let cases: [(i64, i64); 5] = [(561, 1), (399, -1), (935, -1), (561, 2), (9, 1)];
    for (n, a) in cases {
        let n = BigInt::from(n);
        match check(&n, a, true).expect("factorable at this size") {
            CheckOutcome::ACarmichael(cert) => {
                println!("{n} IS {a}-Carmichael; certificate:");
                println!("{}", serde_json::to_string_pretty(&cert).unwrap());
                assert!(cert.verify());
            }
            CheckOutcome::Refuted(reason) => {
                println!("{n} is NOT {a}-Carmichael: {reason}");
            }
        }
        println!();
    }

    // The relaxed (non-squarefree) reading of the predicate.
    let n = BigInt::from(1729 * 7); // 7^2 | n
    let strict = check(&n, 1, true).unwrap();
    let relaxed = check(&n, 1, false).unwrap();
    println!(
        "n = {n}: strict verdict {}, relaxed verdict {}",
        strict.is_carmichael(),
        relaxed.is_carmichael()
    );
}
