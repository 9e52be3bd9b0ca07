//! Command-line surface. One thin binary wraps the library: every subcommand
//! parses arguments, calls one library entry point, and prints.
//!
//! Exit codes partition outcomes: 0 success / verified true, 1 verified
//! false, 2 usage or malformed input, 3 budget exhausted. Identical
//! invocations (including --seed) produce byte-identical stdout; wall-clock
//! timings only appear with --timings.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_bigint::BigUint;
use serde_json::json;
use std::str::FromStr;

use crate::ap;
use crate::arith::ArithError;
use crate::bounds::{self, CountingInputs};
use crate::construct::{self, ConstructError, ConstructionParams};
use crate::groups;
use crate::korselt::{self, CheckOutcome};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "carmichael",
    about = "Verify, enumerate, and construct a-Carmichael numbers",
    version
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads for the parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for the randomized subset strategy (overrides the params file).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Generic budget: hb-scan prime cap, group-bound search cap.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether n is an a-Carmichael number and print the certificate.
    Check {
        #[arg(allow_negative_numbers = true)]
        n: String,
        #[arg(allow_negative_numbers = true)]
        a: i64,
        /// Accept non-squarefree n as well.
        #[arg(long)]
        relax_squarefree: bool,
    },
    /// List every a-Carmichael number up to the limit.
    Enumerate {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        limit: u64,
        #[arg(long)]
        relax_squarefree: bool,
    },
    /// Run the construction pipeline from a key = value parameter file.
    Construct {
        params_file: String,
        /// Write the run trace to this file, one line per event.
        #[arg(long)]
        trace: Option<String>,
        /// Include wall-clock stage timings in the output.
        #[arg(long)]
        timings: bool,
    },
    /// Worst-case first primes over all residues, for each modulus in range.
    #[command(name = "hb-scan")]
    HbScan {
        m_lo: u64,
        m_hi: u64,
        /// Exponent A for the relaxed-conjecture ratio column.
        #[arg(long, default_value_t = 2.0)]
        hb_exponent: f64,
    },
    /// Evaluate the counting chain at finite parameters.
    Bounds {
        #[arg(long)]
        y: u64,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 1)]
        hb_exponent: u32,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long)]
        omega: u64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
    },
    /// lambda(L), the Davenport-type bound, and optionally exact n(L).
    GroupBound {
        l: String,
        /// Compute exact n(L) when the unit group is at most this large.
        #[arg(long)]
        exact_cap: Option<u64>,
        /// Smooth-parameter context for the e^(3 y theta) companion bound.
        #[arg(long)]
        y: Option<u64>,
        #[arg(long, requires = "y")]
        theta: Option<f64>,
    },
}

/// Parses argv, dispatches, and exits with the documented code.
pub fn run() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(), // clap: 2 on usage errors, 0 on --help/--version
    };
    if let Some(n) = cli.threads {
        // Ignore the error if a pool already exists (tests call run() twice).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    // Resolved config goes to stderr so stdout stays clean for the payload.
    eprintln!(
        "config: format={:?} threads={:?} seed={:?} cap={:?} command={:?}",
        cli.format, cli.threads, cli.seed, cli.cap, cli.command
    );
    std::process::exit(dispatch(&cli));
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn dispatch(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Check {
            n,
            a,
            relax_squarefree,
        } => cmd_check(cli, n, *a, *relax_squarefree),
        Command::Enumerate {
            a,
            limit,
            relax_squarefree,
        } => cmd_enumerate(cli, *a, *limit, *relax_squarefree),
        Command::Construct {
            params_file,
            trace,
            timings,
        } => cmd_construct(cli, params_file, trace.as_deref(), *timings),
        Command::HbScan {
            m_lo,
            m_hi,
            hb_exponent,
        } => cmd_hb_scan(cli, *m_lo, *m_hi, *hb_exponent),
        Command::Bounds {
            y,
            theta,
            hb_exponent,
            gamma,
            omega,
            kappa,
        } => cmd_bounds(
            cli,
            &CountingInputs {
                y: *y,
                theta: *theta,
                hb_exponent: *hb_exponent,
                gamma: *gamma,
                omega: *omega,
                kappa: *kappa,
            },
        ),
        Command::GroupBound {
            l,
            exact_cap,
            y,
            theta,
        } => cmd_group_bound(cli, l, *exact_cap, *y, *theta),
    }
}

fn cmd_check(cli: &Cli, n_text: &str, a: i64, relax_squarefree: bool) -> i32 {
    let Ok(n) = BigInt::from_str(n_text) else {
        return usage_error(&format!("'{n_text}' is not an integer"));
    };
    match korselt::check(&n, a, !relax_squarefree) {
        Ok(CheckOutcome::ACarmichael(cert)) => {
            match cli.format {
                Format::Json => print_json(&json!({ "verdict": true, "certificate": cert })),
                Format::Csv => {
                    println!("p,divisor,quotient");
                    for e in &cert.entries {
                        println!("{},{},{}", e.p, e.divisor, e.quotient);
                    }
                }
                Format::Text => {
                    println!("{n} is a {a}-Carmichael number");
                    for e in &cert.entries {
                        println!("  p = {}: {} * {} = {}", e.p, e.divisor, e.quotient, &n - a);
                    }
                }
            }
            EXIT_TRUE
        }
        Ok(CheckOutcome::Refuted(reason)) => {
            match cli.format {
                Format::Json => {
                    print_json(&json!({ "verdict": false, "reason": reason.to_string() }))
                }
                _ => println!("{n} is not a {a}-Carmichael number: {reason}"),
            }
            EXIT_FALSE
        }
        Err(e @ ArithError::FactorBudget { .. }) => {
            eprintln!("error: {e}");
            EXIT_BUDGET
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FALSE
        }
    }
}

fn cmd_enumerate(cli: &Cli, a: i64, limit: u64, relax_squarefree: bool) -> i32 {
    let hits = korselt::enumerate(a, limit, !relax_squarefree);
    match cli.format {
        Format::Json => print_json(&json!(hits)),
        Format::Csv => {
            println!("n");
            for n in &hits {
                println!("{n}");
            }
        }
        Format::Text => {
            println!(
                "{}",
                hits.iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
    }
    EXIT_TRUE
}

fn cmd_construct(cli: &Cli, params_file: &str, trace_path: Option<&str>, timings: bool) -> i32 {
    let text = match std::fs::read_to_string(params_file) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {params_file}: {e}")),
    };
    let mut params: ConstructionParams = match toml::from_str(&text) {
        Ok(p) => p,
        Err(e) => return usage_error(&format!("bad parameter file: {e}")),
    };
    if let Some(seed) = cli.seed {
        params.seed = seed;
    }
    match construct::run_pipeline(&params) {
        Ok(mut result) => {
            if let Some(path) = trace_path {
                if let Err(e) = std::fs::write(path, result.trace.join("\n") + "\n") {
                    eprintln!("warning: cannot write trace to {path}: {e}");
                }
            }
            if !timings {
                result.timings = None;
            }
            match cli.format {
                Format::Json => print_json(&serde_json::to_value(&result).expect("serializable")),
                _ => {
                    println!("n = {}", result.n);
                    println!(
                        "P = {} (k = {}, k' = {})",
                        result.p, result.k, result.kprime
                    );
                    println!("L = {}, modulus L*k*k' = {}", result.l, result.modulus);
                    println!(
                        "chosen primes: {}",
                        result
                            .chosen
                            .iter()
                            .map(|h| h.prime.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                    println!("certificate verifies: {}", result.certificate.verify());
                }
            }
            EXIT_TRUE
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                ConstructError::InvalidParams(_) => EXIT_USAGE,
                e if e.is_budget() => EXIT_BUDGET,
                _ => EXIT_FALSE,
            }
        }
    }
}

fn cmd_hb_scan(cli: &Cli, m_lo: u64, m_hi: u64, hb_exponent: f64) -> i32 {
    let cap = cli.cap.unwrap_or(10_000_000);
    match ap::hb_scan(m_lo, m_hi, hb_exponent, cap) {
        Ok(stats) => {
            match cli.format {
                Format::Json => print_json(&json!(stats)),
                _ => print!("{}", ap::hb_csv(&stats)),
            }
            EXIT_TRUE
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_FALSE
            }
        }
    }
}

fn cmd_bounds(cli: &Cli, inputs: &CountingInputs) -> i32 {
    match bounds::counting_report(inputs) {
        Ok(report) => {
            match cli.format {
                Format::Json => print_json(&serde_json::to_value(&report).expect("serializable")),
                Format::Csv => {
                    println!("step,lhs,rhs,holds");
                    for s in &report.chain {
                        println!("{},{:.9},{:.9},{}", s.name, s.lhs, s.rhs, s.holds);
                    }
                }
                Format::Text => {
                    println!(
                        "log r = {:.6}, log t = {:.6}, log n-bound = {:.6}",
                        report.log_r, report.log_t, report.log_n_bound
                    );
                    println!("applicable (r > t > n): {}", report.applicable);
                    for s in &report.chain {
                        println!(
                            "  [{}] {}: {:.6} vs {:.6}",
                            if s.holds { "ok" } else { "--" },
                            s.name,
                            s.lhs,
                            s.rhs
                        );
                    }
                    println!("count exponent C-term: {:.9}", report.exponent);
                }
            }
            EXIT_TRUE
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn cmd_group_bound(
    cli: &Cli,
    l_text: &str,
    exact_cap: Option<u64>,
    y: Option<u64>,
    theta: Option<f64>,
) -> i32 {
    let Ok(l) = BigUint::from_str(l_text) else {
        return usage_error(&format!("'{l_text}' is not a nonnegative integer"));
    };
    if l < BigUint::from(2u32) {
        return usage_error("L must be at least 2");
    }
    let mut report = match groups::eq1_bound(&l) {
        Ok(r) => r,
        Err(e @ ArithError::FactorBudget { .. }) => {
            eprintln!("error: {e}");
            return EXIT_BUDGET;
        }
        Err(e) => return usage_error(&e.to_string()),
    };
    if let Some(cap) = exact_cap.or(cli.cap) {
        match report.clone().with_n_exact(cap) {
            Ok(r) => report = r,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_BUDGET;
            }
        }
    }
    if let (Some(y), Some(theta)) = (y, theta) {
        report = report.with_smooth_context(y, theta);
    }
    match cli.format {
        Format::Json => print_json(&serde_json::to_value(&report).expect("serializable")),
        _ => {
            println!("L = {}", report.modulus);
            println!("lambda(L) = {}", report.lambda);
            println!("eq1 bound on n(L): {:.6}", report.eq1_bound);
            if let Some(n) = report.n_exact {
                println!("exact n(L) = {n}");
            }
            if let Some(b) = report.e3y_bound {
                println!("e^(3 y theta) = {b:.6}");
            }
        }
    }
    EXIT_TRUE
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("valid json")
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_arguments_parse() {
        let cli = Cli::try_parse_from(["carmichael", "check", "561", "-1"]).unwrap();
        match cli.command {
            Command::Check { n, a, .. } => {
                assert_eq!(n, "561");
                assert_eq!(a, -1);
            }
            _ => panic!("expected check"),
        }
        let cli = Cli::try_parse_from(["carmichael", "enumerate", "-1", "1000"]).unwrap();
        match cli.command {
            Command::Enumerate { a, limit, .. } => {
                assert_eq!(a, -1);
                assert_eq!(limit, 1000);
            }
            _ => panic!("expected enumerate"),
        }
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["carmichael", "check", "561", "1", "--bogus"]).is_err());
    }
}
