//! First primes in arithmetic progressions: single-progression searches, the
//! shifted form p = d*k + a used by the construction, and empirical scans for
//! the two first-prime conjectures.
//!
//! Caps are always explicit parameters: running out of budget is an error
//! distinct from any mathematical negative, so "conjecture looks false" and
//! "we stopped looking" can never be confused.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApError {
    #[error("no prime possible in {residue} mod {modulus}: gcd {gcd} > 1")]
    NoCoprimeResidue { residue: u64, modulus: u64, gcd: u64 },
    #[error("every d*k + a shares the factor {gcd} (d = {d}, a = {a})")]
    SharedFactor { d: BigUint, a: i64, gcd: BigUint },
    #[error("no prime below {cap} in {residue} mod {modulus}")]
    CapExceeded { residue: u64, modulus: u64, cap: u64 },
    #[error("no prime d*k + a for k < {k_cap} (d = {d}, a = {a})")]
    KCapExceeded { d: BigUint, a: i64, k_cap: u64 },
}

impl ApError {
    pub fn is_budget(&self) -> bool {
        matches!(self, ApError::CapExceeded { .. } | ApError::KCapExceeded { .. })
    }
}

/// The least prime in a progression c mod m, with its index k (p = c + k*m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApHit {
    pub modulus: u64,
    pub residue: u64,
    pub prime: u64,
    pub k: u64,
}

/// Shifted-form hit: p = d*k + a with k >= 1 minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftHit {
    pub d: BigUint,
    pub a: i64,
    pub k: u64,
    pub prime: BigUint,
}

/// Smallest prime congruent to c mod m that is below `cap`.
///
/// c is normalized into [0, m). When gcd(c, m) > 1 the only conceivable prime
/// member is the gcd itself; it is reported when it actually lies in the
/// progression, otherwise the structural error is returned.
pub fn least_prime_in_ap(c: i64, m: u64, cap: u64) -> Result<ApHit, ApError> {
    assert!(m >= 1);
    let residue = c.rem_euclid(m as i64) as u64;
    let g = arith::gcd_u64(residue, m);
    if g > 1 {
        let trivial_in_progression = residue == g || (residue == 0 && g == m);
        if trivial_in_progression && arith::is_prime_u64(g) {
            return Ok(ApHit {
                modulus: m,
                residue,
                prime: g,
                k: (g - residue) / m,
            });
        }
        return Err(ApError::NoCoprimeResidue {
            residue,
            modulus: m,
            gcd: g,
        });
    }
    let mut value = residue;
    let mut k = 0u64;
    while value < cap {
        if value >= 2 && arith::is_prime_u64(value) {
            return Ok(ApHit {
                modulus: m,
                residue,
                prime: value,
                k,
            });
        }
        value = match value.checked_add(m) {
            Some(v) => v,
            None => break,
        };
        k += 1;
    }
    Err(ApError::CapExceeded {
        residue,
        modulus: m,
        cap,
    })
}

/// Least k >= 1 such that d*k + a exceeds 1 and is prime, scanning k < k_cap.
///
/// d may exceed machine words (block products in the construction do);
/// primality above 2^64 is Miller-Rabin with the default round count.
pub fn least_k_shift(d: &BigUint, a: i64, k_cap: u64) -> Result<ShiftHit, ApError> {
    let g = d.gcd(&BigUint::from(a.unsigned_abs()));
    if !g.is_one() && !d.is_one() {
        return Err(ApError::SharedFactor {
            d: d.clone(),
            a,
            gcd: g,
        });
    }
    if let Some(d_small) = d.to_u64() {
        for k in 1..k_cap {
            let value = d_small as i128 * k as i128 + a as i128;
            if value > 1 && value <= u64::MAX as i128 && arith::is_prime_u64(value as u64) {
                return Ok(ShiftHit {
                    d: d.clone(),
                    a,
                    k,
                    prime: BigUint::from(value as u64),
                });
            }
        }
    } else {
        let d_int = BigInt::from(d.clone());
        let a_int = BigInt::from(a);
        for k in 1..k_cap {
            let value = &d_int * k + &a_int;
            if value.is_positive() && !value.is_one() {
                let candidate = value.to_biguint().expect("positive");
                if arith::is_prime(&candidate).is_prime {
                    return Ok(ShiftHit {
                        d: d.clone(),
                        a,
                        k,
                        prime: candidate,
                    });
                }
            }
        }
    }
    Err(ApError::KCapExceeded {
        d: d.clone(),
        a,
        k_cap,
    })
}

/// Worst-case first prime over all coprime residues of one modulus, with the
/// conjecture ratios p / (m (log m)^2) and p / (m (log m)^A), natural log.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HbStatistic {
    pub m: u64,
    pub worst_c: u64,
    pub worst_p: u64,
    pub ratio2: f64,
    pub ratio_a: f64,
}

/// Scans moduli in `[m_lo, m_hi]`. Moduli below 3 are degenerate
/// (log m <= 0 makes the ratios meaningless) and are skipped. The scan is
/// partitioned across threads; output order and content depend only on the
/// inputs. Any budget error aborts the whole scan, reported for the smallest
/// offending modulus.
pub fn hb_scan(m_lo: u64, m_hi: u64, a_exp: f64, cap: u64) -> Result<Vec<HbStatistic>, ApError> {
    let moduli: Vec<u64> = (m_lo.max(3)..=m_hi).collect();
    let results: Vec<Result<HbStatistic, ApError>> = moduli
        .into_par_iter()
        .map(|m| hb_statistic(m, a_exp, cap))
        .collect();
    results.into_iter().collect()
}

fn hb_statistic(m: u64, a_exp: f64, cap: u64) -> Result<HbStatistic, ApError> {
    let mut worst_c = 0u64;
    let mut worst_p = 0u64;
    for c in 1..m {
        if arith::gcd_u64(c, m) != 1 {
            continue;
        }
        let hit = least_prime_in_ap(c as i64, m, cap)?;
        if hit.prime > worst_p {
            worst_p = hit.prime;
            worst_c = c;
        }
    }
    let log_m = (m as f64).ln();
    Ok(HbStatistic {
        m,
        worst_c,
        worst_p,
        ratio2: worst_p as f64 / (m as f64 * log_m * log_m),
        ratio_a: worst_p as f64 / (m as f64 * log_m.powf(a_exp)),
    })
}

/// CSV rendering: header plus one row per modulus, ratios to 6 decimals.
pub fn hb_csv(stats: &[HbStatistic]) -> String {
    let mut out = String::from("m,worst_c,worst_p,ratio2,ratioA\n");
    for s in stats {
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6}\n",
            s.m, s.worst_c, s.worst_p, s.ratio2, s.ratio_a
        ));
    }
    out
}
