//! Walk the construction stage by stage with a sieved Q instead of explicit
//! blocks, printing what each stage produces.
//!
//!     cargo run --example pipeline_stages

use carmichael::construct::{
    build_blocks, build_q, find_best_slice, find_p, ConstructionParams, Mode,
};

fn main() {
    let params = ConstructionParams {
        a: 1,
        y: 20,
        theta: 1.5,
        hb_exponent: 1,
        alpha: 1,
        k_cap: 500,
        kprime_cap: 500,
        mode: Mode::Relaxed,
        seed: 0,
        blocks: None,
    };

    let q = build_q(&params).unwrap();
    println!(
        "Q: {} primes q in [{}, {}] with 20-smooth q-1:",
        q.omega(),
        q.lo,
        q.hi
    );
    println!("   {:?}", q.primes);
    println!("L = {}", q.product);

    let blocks = build_blocks(&q, params.hb_exponent).unwrap();
    println!(
        "\nblocks of {} primes each: {:?} (leftover {:?})",
        params.hb_exponent + 1,
        blocks.blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        blocks.leftover
    );

    let slice = find_best_slice(&blocks.blocks, params.a, params.k_cap, false).unwrap();
    println!("\nbest slice: k = {} with {} hits", slice.k, slice.hits.len());
    for hit in &slice.hits {
        println!("   d = {:>12}  p = d*k+a = {}", hit.d, hit.prime);
    }

    let l_times_k = &q.product * slice.k;
    let exclude: Vec<_> = slice.hits.iter().map(|h| h.prime.clone()).collect();
    match find_p(&l_times_k, params.a, params.kprime_cap, &exclude, None) {
        Ok((p, kprime)) => {
            println!("\nP = {p} with k' = {kprime} (P = a mod L*k)");
            println!(
                "the subset-product stage would now need a subset of the {} slice primes",
                slice.hits.len()
            );
            println!(
                "with product 1 mod L*k*k' = {}; at this scale the slice is far below",
                &l_times_k * kprime
            );
            println!("n(L*k*k'), so a relaxed run with explicit small blocks is the way in");
        }
        Err(e) => println!("\nfind_p: {e}"),
    }
}
