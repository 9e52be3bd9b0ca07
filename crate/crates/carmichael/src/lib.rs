//! a-Carmichael numbers: verification, enumeration, and construction.
//!
//! An a-Carmichael number is a composite (here also squarefree) n such that
//! p - a divides n - a for every prime p dividing n; a = 1 gives the
//! classical Carmichael numbers. This crate provides:
//!
//! - [`korselt`]: the decision predicate with self-verifying certificates,
//!   range enumeration, and the exhaustive Fermat cross-check oracle;
//! - [`arith`]: primality (deterministic through 2^64), factorization with
//!   explicit budgets, smoothness, the Carmichael function, element orders;
//! - [`ap`]: least primes in arithmetic progressions and empirical scans for
//!   the first-prime conjecture ratios;
//! - [`groups`]: the Davenport-type bound on n(L), exact n(L) on small
//!   moduli, and subset-product-equals-one solvers;
//! - [`construct`]: the end-to-end pipeline that builds a smooth-prime
//!   modulus, harvests primes d*k + a, solves a subset product, and emits a
//!   verified a-Carmichael number;
//! - [`bounds`]: the counting chain evaluated honestly at finite parameters.
//!
//! Every runnable capability has a corresponding example under `examples/`;
//! the `carmichael` binary exposes the same entry points as subcommands.
//!
//! ```
//! use num_bigint::BigInt;
//! use carmichael::korselt;
//!
//! let out = korselt::check(&BigInt::from(561), 1, true).unwrap();
//! assert!(out.is_carmichael());
//! assert_eq!(korselt::enumerate(-1, 1000, true), vec![399, 935]);
//! ```

pub mod ap;
pub mod arith;
pub mod bounds;
pub mod cli;
pub mod construct;
pub mod groups;
pub mod korselt;
pub mod ser;

pub use arith::{Factorization, PrimalityResult};
pub use construct::{ConstructionParams, ConstructionResult, Mode};
pub use korselt::{Certificate, CheckOutcome};
