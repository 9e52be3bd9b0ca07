//! The a-Carmichael predicate: for every prime p | n, p - a divides n - a.
//!
//! `check` decides a single n and emits a self-verifying [`Certificate`];
//! `enumerate` scans a range with a segmented sieve. Both implement the same
//! predicate through different machinery, which is exactly what makes
//! `enumerate` usable as a brute-force oracle for `check` (and vice versa).

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, ArithError};

/// One row of a certificate: a prime factor p of n together with the exact
/// division witness (n - a) = divisor * quotient, divisor = p - a.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertEntry {
    #[serde(serialize_with = "crate::ser::biguint")]
    pub p: BigUint,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub divisor: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub quotient: BigInt,
}

/// Factored divisibility witness for a verified a-Carmichael number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "crate::ser::bigint")]
    pub n: BigInt,
    pub a: i64,
    #[serde(rename = "factors")]
    pub entries: Vec<CertEntry>,
    pub squarefree: bool,
    pub composite: bool,
}

impl Certificate {
    /// Re-derives every invariant from scratch: each divisor * quotient must
    /// reassemble n - a and divisor must equal p - a.
    pub fn verify(&self) -> bool {
        let n_minus_a = &self.n - BigInt::from(self.a);
        self.composite
            && !self.entries.is_empty()
            && self.entries.iter().all(|e| {
                let p = BigInt::from(e.p.clone());
                e.divisor == &p - BigInt::from(self.a)
                    && &e.divisor * &e.quotient == n_minus_a
            })
    }
}

/// First failing condition, in the order the predicate tests them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// n < 2 (0, 1, and negatives are neither prime nor composite here).
    TooSmall,
    Prime,
    NotSquarefree { p: BigUint },
    /// p = a makes p - a = 0, which divides n - a only in the excluded n = a case.
    PrimeEqualsShift { p: BigUint },
    Indivisible {
        p: BigUint,
        divisor: BigInt,
        n_minus_a: BigInt,
    },
}

impl std::fmt::Display for Refutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Refutation::TooSmall => write!(f, "n < 2"),
            Refutation::Prime => write!(f, "prime"),
            Refutation::NotSquarefree { p } => write!(f, "not squarefree: {p}^2 | n"),
            Refutation::PrimeEqualsShift { p } => write!(f, "prime factor {p} equals a"),
            Refutation::Indivisible {
                divisor, n_minus_a, ..
            } => write!(f, "{divisor} ∤ {n_minus_a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    ACarmichael(Certificate),
    Refuted(Refutation),
}

impl CheckOutcome {
    pub fn is_carmichael(&self) -> bool {
        matches!(self, CheckOutcome::ACarmichael(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CheckOutcome::ACarmichael(c) => Some(c),
            CheckOutcome::Refuted(_) => None,
        }
    }
}

/// Decides whether n is an a-Carmichael number: composite, (optionally)
/// squarefree, no prime factor equal to a, and p - a | n - a for every prime
/// p | n, where divisibility of a negative p - a is taken via |p - a|.
///
/// A factorization-budget failure surfaces as `Err`, never as a refutation.
pub fn check(n: &BigInt, a: i64, require_squarefree: bool) -> Result<CheckOutcome, ArithError> {
    if n < &BigInt::from(2) {
        return Ok(CheckOutcome::Refuted(Refutation::TooSmall));
    }
    let n_uint = n.to_biguint().expect("n >= 2");
    let factorization = arith::factor(&n_uint)?;
    if factorization.is_prime() {
        return Ok(CheckOutcome::Refuted(Refutation::Prime));
    }
    let squarefree = factorization.is_squarefree();
    if require_squarefree && !squarefree {
        let p = factorization
            .factors()
            .iter()
            .find(|(_, e)| *e >= 2)
            .map(|(p, _)| p.clone())
            .expect("non-squarefree has a repeated prime");
        return Ok(CheckOutcome::Refuted(Refutation::NotSquarefree { p }));
    }
    let a_int = BigInt::from(a);
    let n_minus_a = n - &a_int;
    let mut entries = Vec::with_capacity(factorization.factors().len());
    for (p, _) in factorization.factors() {
        let p_int = BigInt::from(p.clone());
        let divisor = &p_int - &a_int;
        if divisor.is_zero() {
            return Ok(CheckOutcome::Refuted(Refutation::PrimeEqualsShift {
                p: p.clone(),
            }));
        }
        if !(&n_minus_a % &divisor).is_zero() {
            return Ok(CheckOutcome::Refuted(Refutation::Indivisible {
                p: p.clone(),
                divisor,
                n_minus_a,
            }));
        }
        let quotient = &n_minus_a / &divisor;
        entries.push(CertEntry {
            p: p.clone(),
            divisor,
            quotient,
        });
    }
    Ok(CheckOutcome::ACarmichael(Certificate {
        n: n.clone(),
        a,
        entries,
        squarefree,
        composite: true,
    }))
}

pub fn check_u64(n: u64, a: i64, require_squarefree: bool) -> Result<CheckOutcome, ArithError> {
    check(&BigInt::from(n), a, require_squarefree)
}

/// All a-Carmichael numbers up to `limit`, ascending. Runs the predicate over
/// a segmented factorization sieve, partitioned across worker threads; output
/// is deterministic regardless of thread count.
pub fn enumerate(a: i64, limit: u64, require_squarefree: bool) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    const CHUNK: u64 = 1 << 20;
    let chunks: Vec<(u64, u64)> = (0..)
        .map(|i| 2 + i * CHUNK)
        .take_while(|&lo| lo <= limit)
        .map(|lo| (lo, (lo + CHUNK - 1).min(limit)))
        .collect();
    chunks
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut hits = Vec::new();
            arith::for_each_factorization(lo, hi, |n, factors| {
                if passes_u64(n, factors, a, require_squarefree) {
                    hits.push(n);
                }
            });
            hits
        })
        .reduce(Vec::new, |mut acc, mut part| {
            acc.append(&mut part);
            acc
        })
}

/// Same predicate as `check`, evaluated on machine words.
fn passes_u64(n: u64, factors: &[(u64, u32)], a: i64, require_squarefree: bool) -> bool {
    let composite = factors.len() > 1 || factors[0].1 > 1;
    if !composite {
        return false;
    }
    if require_squarefree && factors.iter().any(|(_, e)| *e > 1) {
        return false;
    }
    let n_minus_a = n as i128 - a as i128;
    factors.iter().all(|&(p, _)| {
        let divisor = p as i128 - a as i128;
        divisor != 0 && n_minus_a % divisor == 0
    })
}

/// Independent oracle for a = 1: n is Carmichael iff b^n = b mod n for every
/// base 0 <= b < n. Exhaustive by construction, so only usable at small n.
pub fn fermat_cross_check(n: u64) -> bool {
    debug_assert!(n >= 2);
    (0..n).all(|b| arith::pow_mod_u64(b, n, n) == b % n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn entries_of(outcome: &CheckOutcome) -> Vec<(u64, i64, i64)> {
        outcome
            .certificate()
            .expect("expected certificate")
            .entries
            .iter()
            .map(|e| {
                (
                    e.p.to_u64().unwrap(),
                    e.divisor.to_i64().unwrap(),
                    e.quotient.to_i64().unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn classic_carmichael_certificate() {
        let out = check_u64(561, 1, true).unwrap();
        assert!(out.is_carmichael());
        assert_eq!(entries_of(&out), vec![(3, 2, 280), (11, 10, 56), (17, 16, 35)]);
        assert!(out.certificate().unwrap().verify());
    }

    #[test]
    fn negative_shift_certificate() {
        let out = check_u64(399, -1, true).unwrap();
        assert!(out.is_carmichael());
        assert_eq!(entries_of(&out), vec![(3, 4, 100), (7, 8, 50), (19, 20, 20)]);
    }

    #[test]
    fn refutations_name_the_first_failure() {
        assert_eq!(
            check_u64(7, 1, true).unwrap(),
            CheckOutcome::Refuted(Refutation::Prime)
        );
        assert!(matches!(
            check_u64(9, 1, true).unwrap(),
            CheckOutcome::Refuted(Refutation::NotSquarefree { .. })
        ));
        match check_u64(561, 2, true).unwrap() {
            CheckOutcome::Refuted(Refutation::Indivisible {
                divisor, n_minus_a, ..
            }) => {
                assert_eq!(divisor, BigInt::from(9));
                assert_eq!(n_minus_a, BigInt::from(559));
            }
            other => panic!("expected 9 ∤ 559, got {other:?}"),
        }
        assert_eq!(
            check_u64(1, 1, true).unwrap(),
            CheckOutcome::Refuted(Refutation::TooSmall)
        );
        assert_eq!(
            check(&BigInt::from(-6), 1, true).unwrap(),
            CheckOutcome::Refuted(Refutation::TooSmall)
        );
    }

    #[test]
    fn prime_factor_equal_to_a_is_rejected() {
        assert!(matches!(
            check_u64(15, 3, true).unwrap(),
            CheckOutcome::Refuted(Refutation::PrimeEqualsShift { .. })
        ));
    }

    #[test]
    fn negative_divisors_use_absolute_divisibility() {
        // 15 = 3 * 5 with a = 7: divisors -4 and -2 both divide 8.
        let out = check_u64(15, 7, true).unwrap();
        assert!(out.is_carmichael());
        assert_eq!(entries_of(&out), vec![(3, -4, -2), (5, -2, -4)]);
        assert!(out.certificate().unwrap().verify());
    }

    #[test]
    fn enumerate_known_prefixes() {
        assert_eq!(enumerate(1, 2000, true), vec![561, 1105, 1729]);
        assert_eq!(enumerate(-1, 1000, true), vec![399, 935]);
        assert_eq!(enumerate(0, 15, true), vec![6, 10, 14, 15]);
        assert_eq!(enumerate(1, 1, true), Vec::<u64>::new());
    }

    #[test]
    fn enumerate_agrees_with_check() {
        for a in [-2i64, 0, 1, 3] {
            let listed = enumerate(a, 3000, true);
            for n in 2..=3000u64 {
                let direct = check_u64(n, a, true).unwrap().is_carmichael();
                assert_eq!(direct, listed.contains(&n), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn fermat_examples() {
        assert!(fermat_cross_check(561));
        assert!(!fermat_cross_check(6));
        assert!(fermat_cross_check(2));
    }

    #[test]
    fn certificate_serializes_to_spec_schema() {
        let out = check_u64(561, 1, true).unwrap();
        let json = serde_json::to_value(out.certificate().unwrap()).unwrap();
        assert_eq!(json["n"], "561");
        assert_eq!(json["a"], 1);
        assert_eq!(json["squarefree"], true);
        assert_eq!(json["composite"], true);
        assert_eq!(json["factors"][0]["p"], "3");
        assert_eq!(json["factors"][0]["divisor"], "2");
        assert_eq!(json["factors"][0]["quotient"], "280");
    }
}
