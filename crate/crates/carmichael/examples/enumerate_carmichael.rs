//! Enumerate a-Carmichael numbers for several shifts and cross-check the
//! a = 1 list against the exhaustive Fermat property.
//!
//!     cargo run --example enumerate_carmichael

use carmichael::korselt::{enumerate, fermat_cross_check};

fn main() {
    let limit = 100_000;
    for a in [-2i64, -1, 0, 1, 2, 3] {
        let hits = enumerate(a, limit, true);
        println!("a = {a:>2}: {:>3} hits up to {limit}", hits.len());
        let shown: Vec<String> = hits.iter().take(8).map(|n| n.to_string()).collect();
        println!(
            "        {}{}",
            shown.join(" "),
            if hits.len() > 8 { " ..." } else { "" }
        );
    }

    // Korselt <=> Fermat for a = 1: same numbers, found two different ways.
    let korselt_list = enumerate(1, limit, true);
    let fermat_list: Vec<u64> = (2..=limit)
        .filter(|&n| !carmichael::arith::is_prime_u64(n) && fermat_cross_check(n))
        .collect();
    assert_eq!(korselt_list, fermat_list);
    println!(
        "\nKorselt enumeration and Fermat scan agree on all {} Carmichael numbers up to {limit}",
        korselt_list.len()
    );
}
