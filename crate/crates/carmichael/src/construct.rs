//! The construction pipeline: build the smooth-prime set Q and its product L,
//! group Q into blocks, find the multiplier k whose slice of primes d*k + a is
//! largest, find the companion prime P = a (mod Lk), solve the subset product
//! 1 (mod Lkk'), and assemble n = P * n' -- which is then independently
//! verified through `korselt::check` before it is ever returned.
//!
//! Strict mode derives its search caps from the conjectured first-prime
//! bounds and fails closed when they are exceeded. Relaxed mode exists
//! because the strict thresholds ("sufficiently large y") are astronomically
//! beyond desk scale: it accepts user caps and, optionally, an explicit list
//! of pairwise-coprime block integers in place of the sieved Q.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;
use thiserror::Error;

use crate::ap::{self, ApError};
use crate::arith::{self, ArithError, SmoothnessChecker};
use crate::groups::{self, GroupsError, Strategy};
use crate::korselt::{self, Certificate, CheckOutcome};

/// Divisor enumeration walks all 2^blocks subsets; refuse beyond this.
pub const MAX_BLOCKS: usize = 16;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("Q is empty: the {filter} filter eliminated every candidate ({detail})")]
    EmptyQ { filter: &'static str, detail: String },
    #[error("need at least {needed} primes in Q to form one block, found {omega}")]
    TooFewPrimes { omega: usize, needed: usize },
    #[error("{count} blocks exceed the {max}-block divisor-enumeration limit")]
    TooManyBlocks { count: usize, max: usize },
    #[error("conjecture budget exceeded: {n} block-product divisor(s) found no prime below the k-cap", n = .failures.len())]
    ConjectureBudget { failures: Vec<(BigUint, u64)> },
    #[error("duplicate prime {p} in slice k = {k}")]
    DuplicateSlicePrime { p: BigUint, k: u64 },
    #[error("no prime P = a (mod {modulus}) with k' < {cap}")]
    NoPrimeP { modulus: BigUint, cap: u64 },
    #[error("strict mode: k' = {kprime} exceeds (log L)^A = {bound:.3}")]
    KPrimeBound { kprime: u64, bound: f64 },
    #[error(
        "insufficient primes: {available} slice unit(s) mod {modulus}, against eq1 bound {eq1_bound:.2}"
    )]
    InsufficientPrimes {
        available: usize,
        modulus: BigUint,
        eq1_bound: f64,
    },
    #[error("pipeline invariant violated: {0}")]
    InternalInvariant(String),
    #[error("verification failed for n = {n}: {reason}")]
    VerificationFailed { n: BigUint, reason: String },
    #[error(transparent)]
    Ap(#[from] ApError),
    #[error(transparent)]
    Groups(#[from] GroupsError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl ConstructError {
    /// Budget/feasibility failures, as opposed to invalid input or a bug.
    pub fn is_budget(&self) -> bool {
        match self {
            ConstructError::ConjectureBudget { .. }
            | ConstructError::NoPrimeP { .. }
            | ConstructError::KPrimeBound { .. }
            | ConstructError::InsufficientPrimes { .. }
            | ConstructError::EmptyQ { .. }
            | ConstructError::TooFewPrimes { .. } => true,
            ConstructError::Ap(e) => e.is_budget(),
            ConstructError::Arith(e) => matches!(e, ArithError::FactorBudget { .. }),
            ConstructError::Groups(e) => matches!(e, GroupsError::SizeCapExceeded { .. }),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Caps derived from the conjectured bounds; any excess fails closed.
    Strict,
    /// User-supplied caps, explicit blocks allowed.
    Relaxed,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Strict => write!(f, "strict"),
            Mode::Relaxed => write!(f, "relaxed"),
        }
    }
}

fn default_y() -> u64 {
    20
}
fn default_theta() -> f64 {
    1.5
}
fn default_hb_exponent() -> u32 {
    1
}
fn default_alpha() -> u64 {
    1
}
fn default_cap() -> u64 {
    200
}
fn default_mode() -> Mode {
    Mode::Relaxed
}

/// Everything that drives one pipeline run. Deserializable from the flat
/// key = value parameter file; `a` is the only mandatory key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams {
    /// The shift: we look for composite n with p - a | n - a.
    pub a: i64,
    #[serde(default = "default_y")]
    pub y: u64,
    #[serde(default = "default_theta")]
    pub theta: f64,
    /// The conjecture exponent A.
    #[serde(rename = "A", default = "default_hb_exponent")]
    pub hb_exponent: u32,
    /// Congruence filter on Q: q = -1 (mod alpha). 1 makes it vacuous.
    #[serde(default = "default_alpha")]
    pub alpha: u64,
    #[serde(default = "default_cap")]
    pub k_cap: u64,
    #[serde(default = "default_cap")]
    pub kprime_cap: u64,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub seed: u64,
    /// Relaxed mode only: bypass the Q sieve with explicit pairwise-coprime
    /// block integers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<u64>>,
}

impl ConstructionParams {
    pub fn validate(&self) -> Result<(), ConstructError> {
        let fail = |msg: String| Err(ConstructError::InvalidParams(msg));
        if self.a == 0 {
            return fail("a = 0 is degenerate: every squarefree composite qualifies".into());
        }
        if self.y < 3 {
            return fail(format!("y = {} must be at least 3", self.y));
        }
        if !(self.theta > 1.0 && self.theta < 2.0) {
            return fail(format!("theta = {} outside (1, 2)", self.theta));
        }
        if self.hb_exponent < 1 {
            return fail("A must be at least 1".into());
        }
        if self.alpha < 1 {
            return fail("alpha must be at least 1".into());
        }
        if self.k_cap < 2 || self.kprime_cap < 2 {
            return fail("k_cap and kprime_cap must be at least 2".into());
        }
        if let Some(blocks) = &self.blocks {
            if self.mode != Mode::Relaxed {
                return fail("explicit blocks are a relaxed-mode facility".into());
            }
            if blocks.is_empty() {
                return fail("explicit block list is empty".into());
            }
            for (i, &b) in blocks.iter().enumerate() {
                if b < 2 {
                    return fail(format!("block {b} at index {i} must exceed 1"));
                }
                for &c in &blocks[..i] {
                    if arith::gcd_u64(b, c) != 1 {
                        return fail(format!("blocks {c} and {b} are not coprime"));
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Stage 1: the smooth-prime set Q and L
// ---------------------------------------------------------------------------

/// Primes q in [y^theta / log y, y^theta] with q = -1 (mod alpha) and
/// y-smooth q - 1, together with their product L.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothPrimeSet {
    pub primes: Vec<u64>,
    pub product: BigUint,
    /// Integer endpoints of the sieved range.
    pub lo: u64,
    pub hi: u64,
}

impl SmoothPrimeSet {
    pub fn omega(&self) -> usize {
        self.primes.len()
    }
}

pub fn build_q(params: &ConstructionParams) -> Result<SmoothPrimeSet, ConstructError> {
    params.validate()?;
    let y = params.y as f64;
    let y_theta = y.powf(params.theta);
    let lo = (y_theta / y.ln()).ceil() as u64;
    let hi = y_theta.floor() as u64;
    if hi >= 1 << 32 {
        return Err(ConstructError::InvalidParams(format!(
            "y^theta = {hi} too large to sieve"
        )));
    }
    if lo > hi {
        return Err(ConstructError::EmptyQ {
            filter: "range",
            detail: format!("[{y_theta:.2}/log y, {y_theta:.2}] contains no integer"),
        });
    }
    let sieve = arith::Sieve::up_to(hi);
    let in_range = sieve.primes_in(lo, hi);
    if in_range.is_empty() {
        return Err(ConstructError::EmptyQ {
            filter: "range",
            detail: format!("no primes in [{lo}, {hi}]"),
        });
    }
    let congruent: Vec<u64> = in_range
        .iter()
        .copied()
        .filter(|q| (q + 1) % params.alpha == 0)
        .collect();
    if congruent.is_empty() {
        return Err(ConstructError::EmptyQ {
            filter: "congruence",
            detail: format!("no q = -1 (mod {}) among {} primes", params.alpha, in_range.len()),
        });
    }
    let checker = SmoothnessChecker::new(params.y);
    let smooth: Vec<u64> = congruent
        .iter()
        .copied()
        .filter(|&q| checker.is_smooth_u64(q - 1))
        .collect();
    if smooth.is_empty() {
        return Err(ConstructError::EmptyQ {
            filter: "smoothness",
            detail: format!(
                "no q with P(q-1) <= {} among {} candidates",
                params.y,
                congruent.len()
            ),
        });
    }
    let a_abs = params.a.unsigned_abs();
    let primes: Vec<u64> = smooth
        .iter()
        .copied()
        .filter(|&q| arith::gcd_u64(q, a_abs) == 1)
        .collect();
    if primes.is_empty() {
        return Err(ConstructError::EmptyQ {
            filter: "gcd(q, a)",
            detail: format!("every candidate divides a = {}", params.a),
        });
    }
    let product = primes
        .iter()
        .fold(BigUint::one(), |acc, &q| acc * BigUint::from(q));
    Ok(SmoothPrimeSet {
        primes,
        product,
        lo,
        hi,
    })
}

// ---------------------------------------------------------------------------
// Stage 2: blocks Q_i
// ---------------------------------------------------------------------------

/// Consecutive groups of A+1 primes from Q; the divisors d of the slice are
/// exactly the products of whole blocks, which is what makes every slice
/// prime arise from a unique d.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSet {
    pub blocks: Vec<BigUint>,
    /// Constituent primes per block (empty when blocks were given explicitly).
    pub block_primes: Vec<Vec<u64>>,
    pub leftover: Vec<u64>,
}

impl BlockSet {
    pub fn from_explicit(blocks: &[u64]) -> Self {
        BlockSet {
            blocks: blocks.iter().map(|&b| BigUint::from(b)).collect(),
            block_primes: Vec::new(),
            leftover: Vec::new(),
        }
    }
}

pub fn build_blocks(q: &SmoothPrimeSet, hb_exponent: u32) -> Result<BlockSet, ConstructError> {
    let group = hb_exponent as usize + 1;
    let omega = q.primes.len();
    if omega < group {
        return Err(ConstructError::TooFewPrimes {
            omega,
            needed: group,
        });
    }
    let count = omega / group;
    let mut blocks = Vec::with_capacity(count);
    let mut block_primes = Vec::with_capacity(count);
    for chunk in q.primes[..count * group].chunks(group) {
        let product = chunk
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p));
        blocks.push(product);
        block_primes.push(chunk.to_vec());
    }
    let leftover = q.primes[count * group..].to_vec();
    Ok(BlockSet {
        blocks,
        block_primes,
        leftover,
    })
}

/// The §3 lower bound every block satisfies: y^((A+1) theta) / (log y)^(A+1).
pub fn block_lower_bound(y: u64, theta: f64, hb_exponent: u32) -> f64 {
    let a1 = hb_exponent as f64 + 1.0;
    let y = y as f64;
    a1 * (theta * y.ln() - y.ln().ln())
}

// ---------------------------------------------------------------------------
// Stage 3: the best slice P_k
// ---------------------------------------------------------------------------

/// One prime of the slice: p = d*k + a with d a product of distinct blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceHit {
    #[serde(serialize_with = "crate::ser::biguint")]
    pub d: BigUint,
    #[serde(rename = "p", serialize_with = "crate::ser::biguint")]
    pub prime: BigUint,
}

/// The multiplier k and every (d, d*k + a) hit bucketed under it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSlice {
    pub k: u64,
    pub hits: Vec<SliceHit>,
}

enum DivisorOutcome {
    Hit(u64, BigUint, BigUint),
    SkippedGcd,
    Budget(BigUint, u64),
}

/// For every nonempty subset of blocks, finds the least k with d*k + a prime,
/// buckets hits by k, and returns the fullest slice (ties to the smallest k).
/// Divisors sharing a factor with a are skipped: d*k + a could never be
/// prime beyond trivial cases. In strict mode any divisor that exhausts its
/// k-cap fails the whole search; relaxed mode records the failure and goes on.
pub fn find_best_slice(
    blocks: &[BigUint],
    a: i64,
    k_cap: u64,
    strict: bool,
) -> Result<PrimeSlice, ConstructError> {
    if blocks.is_empty() {
        return Err(ConstructError::InvalidParams("no blocks".into()));
    }
    if blocks.len() > MAX_BLOCKS {
        return Err(ConstructError::TooManyBlocks {
            count: blocks.len(),
            max: MAX_BLOCKS,
        });
    }
    let a_abs = BigUint::from(a.unsigned_abs());
    let masks: Vec<u64> = (1..(1u64 << blocks.len())).collect();
    let outcomes: Vec<DivisorOutcome> = masks
        .par_iter()
        .map(|&mask| {
            let d = product_of(blocks, mask);
            if !d.gcd(&a_abs).is_one() && !d.is_one() {
                return DivisorOutcome::SkippedGcd;
            }
            match ap::least_k_shift(&d, a, k_cap) {
                Ok(hit) => DivisorOutcome::Hit(hit.k, d, hit.prime),
                Err(ApError::SharedFactor { .. }) => DivisorOutcome::SkippedGcd,
                Err(ApError::KCapExceeded { .. }) => DivisorOutcome::Budget(d, k_cap),
                Err(e) => unreachable!("least_k_shift returned {e}"),
            }
        })
        .collect();
    let mut buckets: BTreeMap<u64, Vec<SliceHit>> = BTreeMap::new();
    let mut failures: Vec<(BigUint, u64)> = Vec::new();
    for outcome in outcomes {
        match outcome {
            DivisorOutcome::Hit(k, d, prime) => {
                buckets.entry(k).or_default().push(SliceHit { d, prime });
            }
            DivisorOutcome::SkippedGcd => {}
            DivisorOutcome::Budget(d, cap) => failures.push((d, cap)),
        }
    }
    if (strict && !failures.is_empty()) || buckets.is_empty() {
        return Err(ConstructError::ConjectureBudget { failures });
    }
    let (&k, _) = buckets
        .iter()
        .max_by(|(ka, va), (kb, vb)| va.len().cmp(&vb.len()).then(kb.cmp(ka)))
        .expect("nonempty buckets");
    let mut hits = buckets.remove(&k).expect("winning bucket");
    hits.sort_by(|x, y| x.d.cmp(&y.d));
    // No double counting: within one slice distinct d's must give distinct
    // primes. Abort on violation, never dedupe.
    for w in hits.windows(2) {
        if w[0].prime == w[1].prime {
            return Err(ConstructError::DuplicateSlicePrime {
                p: w[0].prime.clone(),
                k,
            });
        }
    }
    Ok(PrimeSlice { k, hits })
}

fn product_of(blocks: &[BigUint], mask: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        acc *= &blocks[i];
    }
    acc
}

// ---------------------------------------------------------------------------
// Stage 4: the prime P = a (mod Lk)
// ---------------------------------------------------------------------------

/// Least prime P = a (mod Lk) with P > a and P not in `exclude`
/// (P must differ from every slice prime so n stays squarefree);
/// returns (P, k') with k' = (P - a) / (Lk). When `strict_bound` is given the
/// found k' must satisfy k' <= (log L)^A.
pub fn find_p(
    l_times_k: &BigUint,
    a: i64,
    kprime_cap: u64,
    exclude: &[BigUint],
    strict_bound: Option<f64>,
) -> Result<(BigUint, u64), ConstructError> {
    let g = l_times_k.gcd(&BigUint::from(a.unsigned_abs()));
    if !g.is_one() && !l_times_k.is_one() {
        return Err(ConstructError::InvalidParams(format!(
            "gcd(a, Lk) = {g} > 1: no prime P = a (mod Lk) exists"
        )));
    }
    let m_int = BigInt::from(l_times_k.clone());
    let a_int = BigInt::from(a);
    for kprime in 1..kprime_cap {
        let value = &m_int * kprime + &a_int;
        if !value.is_positive() || value.is_one() {
            continue;
        }
        let candidate = value.to_biguint().expect("positive");
        if exclude.contains(&candidate) {
            continue;
        }
        if arith::is_prime(&candidate).is_prime {
            if let Some(bound) = strict_bound {
                if kprime as f64 > bound {
                    return Err(ConstructError::KPrimeBound { kprime, bound });
                }
            }
            return Ok((candidate, kprime));
        }
    }
    Err(ConstructError::NoPrimeP {
        modulus: l_times_k.clone(),
        cap: kprime_cap,
    })
}

// ---------------------------------------------------------------------------
// Stage 5: assemble and verify
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Assembled {
    pub chosen: Vec<SliceHit>,
    /// Slice hits dropped because their prime divides the modulus
    /// (possible only at desk scale, where slice primes can be tiny).
    pub excluded: Vec<SliceHit>,
    pub n: BigUint,
    pub modulus: BigUint,
    pub certificate: Certificate,
}

/// Multiplies a product-one subset of the slice by P and verifies the result
/// end to end. Every divisibility link of the construction is checked
/// literally; a verification failure is reported loudly, never papered over.
pub fn assemble(
    slice: &PrimeSlice,
    p: &BigUint,
    kprime: u64,
    l: &BigUint,
    params: &ConstructionParams,
) -> Result<Assembled, ConstructError> {
    if slice.hits.is_empty() {
        return Err(ConstructError::InvalidParams("empty slice".into()));
    }
    if slice.hits.iter().any(|h| &h.prime == p) {
        return Err(ConstructError::InternalInvariant(
            "P collides with a slice prime".into(),
        ));
    }
    let modulus = l * slice.k * kprime;
    let mut usable: Vec<SliceHit> = Vec::new();
    let mut excluded: Vec<SliceHit> = Vec::new();
    for hit in &slice.hits {
        if hit.prime.gcd(&modulus).is_one() {
            usable.push(hit.clone());
        } else {
            excluded.push(hit.clone());
        }
    }
    let elements: Vec<BigUint> = usable.iter().map(|h| h.prime.clone()).collect();
    let solution = if elements.is_empty() {
        None
    } else {
        groups::find_subset_product_one(
            &elements,
            &modulus,
            Strategy::Auto { seed: params.seed },
            None,
        )?
    };
    let Some(solution) = solution else {
        let eq1 = groups::eq1_bound(&modulus)?;
        return Err(ConstructError::InsufficientPrimes {
            available: elements.len(),
            modulus,
            eq1_bound: eq1.eq1_bound,
        });
    };
    if solution.chosen.is_empty() {
        return Err(ConstructError::InternalInvariant(
            "solver proposed the empty subset".into(),
        ));
    }
    let chosen: Vec<SliceHit> = solution.chosen.iter().map(|&i| usable[i].clone()).collect();
    let n_prime = chosen
        .iter()
        .fold(BigUint::one(), |acc, h| acc * &h.prime);
    let n = p * &n_prime;

    // The divisibility chain, checked exactly: n' = 1 and P = a mod Lkk',
    // d | L and p - a = d k for every chosen prime.
    if !(&n_prime % &modulus).is_one() {
        return Err(ConstructError::InternalInvariant(
            "n' is not 1 mod Lkk'".into(),
        ));
    }
    let p_int = BigInt::from(p.clone());
    let a_int = BigInt::from(params.a);
    if !((&p_int - &a_int) % BigInt::from(modulus.clone())).is_zero() {
        return Err(ConstructError::InternalInvariant(
            "P is not congruent to a mod Lkk'".into(),
        ));
    }
    for hit in &chosen {
        if !(l % &hit.d).is_zero() {
            return Err(ConstructError::InternalInvariant(format!(
                "divisor {} does not divide L",
                hit.d
            )));
        }
        let expected = BigInt::from(&hit.d * slice.k) + &a_int;
        if BigInt::from(hit.prime.clone()) != expected {
            return Err(ConstructError::InternalInvariant(format!(
                "slice prime {} is not d*k + a",
                hit.prime
            )));
        }
    }

    let n_int = BigInt::from(n.clone());
    match korselt::check(&n_int, params.a, true)? {
        CheckOutcome::ACarmichael(certificate) => Ok(Assembled {
            chosen,
            excluded,
            n,
            modulus,
            certificate,
        }),
        CheckOutcome::Refuted(reason) => Err(ConstructError::VerificationFailed {
            n,
            reason: reason.to_string(),
        }),
    }
}

// ---------------------------------------------------------------------------
// The composed pipeline
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionResult {
    pub params: ConstructionParams,
    /// The sieved Q; absent when explicit blocks were supplied.
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q_primes: Option<Vec<u64>>,
    #[serde(rename = "L", serialize_with = "crate::ser::biguint")]
    pub l: BigUint,
    #[serde(serialize_with = "crate::ser::biguint_vec")]
    pub blocks: Vec<BigUint>,
    pub k: u64,
    pub slice: Vec<SliceHit>,
    #[serde(rename = "P", serialize_with = "crate::ser::biguint")]
    pub p: BigUint,
    pub kprime: u64,
    #[serde(serialize_with = "crate::ser::biguint")]
    pub modulus: BigUint,
    pub chosen: Vec<SliceHit>,
    #[serde(serialize_with = "crate::ser::biguint")]
    pub n: BigUint,
    pub certificate: Certificate,
    #[serde(skip)]
    pub trace: Vec<String>,
    /// Wall-clock stage timings; excluded from serialization so identical
    /// runs stay byte-identical. The CLI prints them on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<(String, u64)>>,
}

/// Runs the five stages end to end. Deterministic given the parameters
/// (including the seed, which only the randomized subset strategy consumes).
pub fn run_pipeline(params: &ConstructionParams) -> Result<ConstructionResult, ConstructError> {
    params.validate()?;
    let mut trace = Vec::new();
    let mut timings: Vec<(String, u64)> = Vec::new();
    trace.push(format!(
        "params: a={} y={} theta={} A={} alpha={} k_cap={} kprime_cap={} mode={} seed={}",
        params.a,
        params.y,
        params.theta,
        params.hb_exponent,
        params.alpha,
        params.k_cap,
        params.kprime_cap,
        params.mode,
        params.seed
    ));

    let started = Instant::now();
    let (block_set, l, q_primes) = match &params.blocks {
        Some(explicit) => {
            let set = BlockSet::from_explicit(explicit);
            let l = set
                .blocks
                .iter()
                .fold(BigUint::one(), |acc, b| acc * b);
            trace.push(format!("explicit blocks: {explicit:?}, L = {l}"));
            (set, l, None)
        }
        None => {
            let q = build_q(params)?;
            trace.push(format!(
                "Q: {} primes in [{}, {}]: {:?}",
                q.omega(),
                q.lo,
                q.hi,
                q.primes
            ));
            let set = build_blocks(&q, params.hb_exponent)?;
            trace.push(format!(
                "blocks: {} of size {}, leftover {:?}",
                set.blocks.len(),
                params.hb_exponent + 1,
                set.leftover
            ));
            let l = q.product.clone();
            (set, l, Some(q.primes))
        }
    };
    trace.push(format!("L = {l} (log L = {:.3})", arith::ln_big(&l)));
    timings.push(("build".into(), started.elapsed().as_millis() as u64));

    let strict = params.mode == Mode::Strict;
    let log_l = arith::ln_big(&l);
    let derived_cap = log_l.powi(params.hb_exponent as i32).ceil();
    let k_cap = if strict {
        derived_cap as u64
    } else {
        params.k_cap
    };
    let kprime_cap = if strict { derived_cap as u64 } else { params.kprime_cap };
    trace.push(format!("k_cap = {k_cap}, kprime_cap = {kprime_cap}"));

    let t = Instant::now();
    let slice = find_best_slice(&block_set.blocks, params.a, k_cap, strict)?;
    trace.push(format!(
        "best slice: k = {} with {} hit(s): {:?}",
        slice.k,
        slice.hits.len(),
        slice
            .hits
            .iter()
            .map(|h| h.prime.to_string())
            .collect::<Vec<_>>()
    ));
    timings.push(("slice".into(), t.elapsed().as_millis() as u64));

    let t = Instant::now();
    let l_times_k = &l * slice.k;
    let exclude: Vec<BigUint> = slice.hits.iter().map(|h| h.prime.clone()).collect();
    let strict_bound = strict.then_some(derived_cap);
    let (p, kprime) = find_p(&l_times_k, params.a, kprime_cap, &exclude, strict_bound)?;
    trace.push(format!("P = {p} (k' = {kprime})"));
    timings.push(("find_p".into(), t.elapsed().as_millis() as u64));

    let t = Instant::now();
    let assembled = assemble(&slice, &p, kprime, &l, params)?;
    if !assembled.excluded.is_empty() {
        trace.push(format!(
            "excluded {} slice prime(s) dividing the modulus",
            assembled.excluded.len()
        ));
    }
    trace.push(format!(
        "chosen {} prime(s): {:?}",
        assembled.chosen.len(),
        assembled
            .chosen
            .iter()
            .map(|h| h.prime.to_string())
            .collect::<Vec<_>>()
    ));
    trace.push(format!("n = {} verified (a = {})", assembled.n, params.a));
    timings.push(("assemble".into(), t.elapsed().as_millis() as u64));

    Ok(ConstructionResult {
        params: params.clone(),
        q_primes,
        l,
        blocks: block_set.blocks,
        k: slice.k,
        slice: slice.hits,
        p,
        kprime,
        modulus: assembled.modulus,
        chosen: assembled.chosen,
        n: assembled.n,
        certificate: assembled.certificate,
        trace,
        timings: Some(timings),
    })
}
