//! The counting chain at finite parameters: where it applies, where it
//! honestly does not, and the exact binomial sandwich underneath it.
//!
//!     cargo run --example counting_chain

use carmichael::bounds::{binom_bound_check, counting_report, CountingInputs};

fn main() {
    // Near-paper parameters: r and t are astronomical, but the n(L) bound
    // e^(3 y theta) is larger still, so the chain gate r > t > n fails.
    let paper_ish = CountingInputs {
        y: 100,
        theta: 1.5,
        hb_exponent: 2,
        gamma: 1.0,
        omega: 300,
        kappa: 1.0,
    };
    let report = counting_report(&paper_ish).unwrap();
    println!(
        "y = 100, omega = 300: log r = {:.1}, log t = {:.1}, log n-bound = {:.1} -> applicable: {}",
        report.log_r, report.log_t, report.log_n_bound, report.applicable
    );

    // A regime where the gate opens (tiny y, many primes relative to it).
    let open = CountingInputs {
        y: 2,
        theta: 1.1,
        hb_exponent: 1,
        gamma: 1.0,
        omega: 40,
        kappa: 1.0,
    };
    let report = counting_report(&open).unwrap();
    println!(
        "y = 2, omega = 40: applicable: {}, count exponent C-term = {:.6}",
        report.applicable, report.exponent
    );
    for step in &report.chain {
        println!(
            "  [{}] {}: {:.4} vs {:.4}",
            if step.holds { "ok" } else { "--" },
            step.name,
            step.lhs,
            step.rhs
        );
    }

    // The standard bound (u/v)^v <= C(u,v) <= (ue/v)^v, exactly.
    let s = binom_bound_check(10, 3).unwrap();
    println!(
        "\nC(10,3): {:.3} <= {} <= {:.3} (holds: {})",
        s.lower, s.exact, s.upper, s.holds
    );
}
