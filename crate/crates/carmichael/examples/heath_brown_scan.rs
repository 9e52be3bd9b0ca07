//! Empirical first-prime-in-progression statistics: for each modulus m the
//! worst-case least prime over all coprime residues, against m (log m)^2.
//!
//!     cargo run --example heath_brown_scan

use carmichael::ap::{hb_csv, hb_scan};

fn main() {
    let stats = hb_scan(3, 200, 2.0, 10_000_000).expect("cap is generous at this scale");
    print!("{}", hb_csv(&stats[..20.min(stats.len())]));
    println!("...");

    let worst = stats
        .iter()
        .max_by(|a, b| a.ratio2.total_cmp(&b.ratio2))
        .expect("nonempty scan");
    println!(
        "\nlargest p / (m (log m)^2) for 3 <= m <= 200: {:.6} at m = {}, c = {} (p = {})",
        worst.ratio2, worst.m, worst.worst_c, worst.worst_p
    );
    println!("the conjectured bound asserts this ratio stays O(1) as m grows");
}
