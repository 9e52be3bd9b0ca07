//! The Davenport-type bound versus exact n(L) on small moduli, plus the
//! smooth-modulus lambda bound.
//!
//!     cargo run --example group_bounds

use num_bigint::BigUint;

use carmichael::groups::{eq1_bound, lambda_smooth_bound};

fn main() {
    println!("{:>5} {:>8} {:>10} {:>8}", "L", "lambda", "bound", "n(L)");
    for l in [8u64, 12, 15, 16, 24, 35, 48, 63, 80, 105] {
        let report = eq1_bound(&BigUint::from(l))
            .unwrap()
            .with_n_exact(64)
            .unwrap();
        println!(
            "{l:>5} {:>8} {:>10.3} {:>8}",
            report.lambda,
            report.eq1_bound,
            report.n_exact.unwrap()
        );
        assert!((report.n_exact.unwrap() as f64) < report.eq1_bound);
    }
    println!("\nexact n(L) stays strictly below lambda(L)(1 + log(L/lambda(L))) every time");

    let b = lambda_smooth_bound(5, 1.5).unwrap();
    println!(
        "\ny = 5, theta = 1.5: max possible lambda over 5-smooth-unit moduli = {} <= e^(2 y theta) = e^{}",
        b.exact_product, b.log_bound
    );
}
