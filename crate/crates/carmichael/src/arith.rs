//! Exact integer arithmetic: primality, factorization, smoothness, the
//! Carmichael function and multiplicative orders.
//!
//! Everything here is a pure function of its inputs, safe to call from many
//! threads. Values below 2^64 take deterministic fast paths; larger values
//! fall back to `BigUint` arithmetic where primality is probabilistic with an
//! explicitly reported error bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Miller-Rabin rounds used above the deterministic 64-bit threshold.
pub const DEFAULT_MR_ROUNDS: u32 = 40;

/// Witnesses proving 64-bit primality deterministically
/// (Sinclair's 7-witness set, exhaustively verified for all n < 2^64).
const MR_WITNESSES_64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("factorization budget exceeded: {digits}-digit cofactor {cofactor} left unfactored")]
    FactorBudget { cofactor: BigUint, digits: usize },
    #[error("{u} is not a unit modulo {n} (gcd {g})")]
    NotAUnit { u: BigUint, n: BigUint, g: BigUint },
    #[error("{n} has no prime factor")]
    NoPrimeFactor { n: BigUint },
}

// ---------------------------------------------------------------------------
// u64 layer
// ---------------------------------------------------------------------------

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Deterministic primality for the full 64-bit range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &MR_WITNESSES_64 {
        let a = w % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Plain sieve of Eratosthenes with O(1) membership queries.
pub struct Sieve {
    limit: u64,
    composite: Vec<bool>,
    primes: Vec<u64>,
}

impl Sieve {
    pub fn up_to(limit: u64) -> Self {
        assert!(limit < (1 << 32), "sieve limit too large");
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        let mut i = 2usize;
        while i <= n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        Sieve {
            limit,
            composite,
            primes,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Membership test; `n` must not exceed the sieve limit.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "query {n} beyond sieve limit {}", self.limit);
        n >= 2 && !self.composite[n as usize]
    }

    /// Primes in the inclusive range `[lo, hi]`.
    pub fn primes_in(&self, lo: u64, hi: u64) -> &[u64] {
        assert!(hi <= self.limit);
        let begin = self.primes.partition_point(|&p| p < lo);
        let end = self.primes.partition_point(|&p| p <= hi);
        &self.primes[begin..end]
    }
}

/// Complete factorization of a u64. Trial division for small factors,
/// Brent's variant of Pollard rho for the rest.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n < 2 {
        return out;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut p = 41u64;
    while p <= 10_000 && p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    if n > 1 {
        if p * p > n || is_prime_u64(n) {
            out.push((n, 1));
        } else {
            let mut stack = vec![n];
            let mut found: Vec<u64> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime_u64(m) {
                    found.push(m);
                    continue;
                }
                let d = pollard_rho_u64(m);
                stack.push(d);
                stack.push(m / d);
            }
            found.sort_unstable();
            for q in found {
                match out.iter_mut().find(|(r, _)| *r == q) {
                    Some((_, e)) => *e += 1,
                    None => out.push((q, 1)),
                }
            }
        }
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    out
}

/// One nontrivial divisor of an odd composite `n` (Brent's cycle variant,
/// deterministic polynomial-offset schedule).
fn pollard_rho_u64(n: u64) -> u64 {
    debug_assert!(n > 3 && !is_prime_u64(n));
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let step = |x: u64| {
            let y = mul_mod_u64(x, x, n);
            let z = y + c;
            if z >= n {
                z - n
            } else {
                z
            }
        };
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = step(x);
            y = step(step(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho schedule exhausted");
}

/// Streams the complete factorization of every integer in `[lo, hi]`
/// (inclusive), ascending, using a segmented sieve over the base primes up to
/// sqrt(hi). This is the workhorse behind enumeration scans.
pub fn for_each_factorization<F: FnMut(u64, &[(u64, u32)])>(lo: u64, hi: u64, mut f: F) {
    let lo = lo.max(2);
    if lo > hi {
        return;
    }
    let root = (hi as f64).sqrt() as u64 + 1;
    let base = Sieve::up_to(root);
    const SEG: u64 = 1 << 16;
    let mut residual: Vec<u64> = Vec::with_capacity(SEG as usize);
    let mut factors: Vec<Vec<(u64, u32)>> = vec![Vec::new(); SEG as usize];
    let mut start = lo;
    while start <= hi {
        let end = (start + SEG - 1).min(hi);
        let len = (end - start + 1) as usize;
        residual.clear();
        residual.extend(start..=end);
        for slot in factors.iter_mut().take(len) {
            slot.clear();
        }
        for &p in base.primes() {
            if p > end {
                break;
            }
            let mut m = start.div_ceil(p) * p;
            while m <= end {
                let i = (m - start) as usize;
                let mut e = 0u32;
                while residual[i] % p == 0 {
                    residual[i] /= p;
                    e += 1;
                }
                if e > 0 {
                    factors[i].push((p, e));
                }
                m += p;
            }
        }
        for i in 0..len {
            if residual[i] > 1 {
                factors[i].push((residual[i], 1));
            }
            f(start + i as u64, &factors[i]);
        }
        start = end + 1;
    }
}

/// Carmichael function lambda(n) for machine-word n.
pub fn carmichael_lambda_u64(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(1u64, |acc, (p, e)| acc.lcm(&lambda_prime_power_u64(p, e)))
}

fn lambda_prime_power_u64(p: u64, e: u32) -> u64 {
    if p == 2 {
        match e {
            1 => 1,
            2 => 2,
            _ => 1u64 << (e - 2),
        }
    } else {
        p.pow(e - 1) * (p - 1)
    }
}

/// Least t >= 1 with u^t = 1 mod n; `None` when gcd(u, n) > 1.
pub fn multiplicative_order_u64(u: u64, n: u64) -> Option<u64> {
    if n <= 1 {
        return Some(1);
    }
    let u = u % n;
    if gcd_u64(u, n) != 1 {
        return None;
    }
    let lambda = carmichael_lambda_u64(n);
    let mut order = lambda;
    for (r, _) in factor_u64(lambda) {
        while order % r == 0 && pow_mod_u64(u, order / r, n) == 1 {
            order /= r;
        }
    }
    Some(order)
}

// ---------------------------------------------------------------------------
// BigUint layer
// ---------------------------------------------------------------------------

/// How sure a primality verdict is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Certainty {
    Deterministic,
    Probabilistic { error_bound: f64 },
}

/// Verdict of a primality test. Below 2^64 verdicts are always exact;
/// above, a `prime` verdict carries error bound 4^-rounds while a
/// `composite` verdict (a witness was found) is still deterministic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimalityResult {
    pub is_prime: bool,
    pub certainty: Certainty,
}

impl PrimalityResult {
    fn exact(is_prime: bool) -> Self {
        PrimalityResult {
            is_prime,
            certainty: Certainty::Deterministic,
        }
    }
}

pub fn is_prime(n: &BigUint) -> PrimalityResult {
    is_prime_with_rounds(n, DEFAULT_MR_ROUNDS)
}

pub fn is_prime_with_rounds(n: &BigUint, rounds: u32) -> PrimalityResult {
    if let Some(v) = n.to_u64() {
        return PrimalityResult::exact(is_prime_u64(v));
    }
    // n > 2^64 from here on; in particular n is odd or caught below.
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return PrimalityResult::exact(false);
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Bases are drawn from a stream seeded by n itself, so repeated calls
    // are reproducible across runs and platforms.
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from_biguint(n));
    'round: for _ in 0..rounds {
        let a = BigUint::from(rng.gen_range(2u64..u64::MAX));
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'round;
            }
        }
        return PrimalityResult::exact(false);
    }
    PrimalityResult {
        is_prime: true,
        certainty: Certainty::Probabilistic {
            error_bound: 0.25f64.powi(rounds as i32),
        },
    }
}

fn seed_from_biguint(n: &BigUint) -> u64 {
    // FNV-1a over the little-endian u64 digits.
    let mut h = 0xcbf29ce484222325u64;
    for d in n.iter_u64_digits() {
        h ^= d;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Resource cap for `factor`: an explicit failure is returned instead of a
/// partial answer when a composite cofactor stays unsplit.
#[derive(Debug, Clone)]
pub struct FactorBudget {
    /// Refuse composite cofactors with more decimal digits than this.
    pub max_digits: usize,
    /// Total Pollard-rho iterations across all splitting attempts.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            max_digits: 80,
            rho_iterations: 20_000_000,
        }
    }
}

/// A certified prime-power decomposition: primes strictly increasing and the
/// product of p^e always equal to n (n = 1 has no factors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            n: BigUint::one(),
            factors: Vec::new(),
        }
    }

    pub(crate) fn from_parts(n: BigUint, factors: Vec<(BigUint, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert_eq!(
            factors
                .iter()
                .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e)),
            n
        );
        Factorization { n, factors }
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.last().map(|(p, _)| p)
    }

    /// Euler phi.
    pub fn phi(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (p, e)| {
            acc * (p - 1u32) * p.pow(e - 1)
        })
    }

    /// Carmichael lambda: the exponent of the unit group mod n.
    pub fn lambda(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc.lcm(&lambda_prime_power(p, *e)))
    }

    /// Factorization of the product n * m from the two known decompositions.
    pub fn merged_with(&self, other: &Factorization) -> Factorization {
        let mut merged = self.factors.clone();
        for (p, e) in &other.factors {
            match merged.iter_mut().find(|(q, _)| q == p) {
                Some((_, f)) => *f += e,
                None => merged.push((p.clone(), *e)),
            }
        }
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        Factorization::from_parts(&self.n * &other.n, merged)
    }
}

fn lambda_prime_power(p: &BigUint, e: u32) -> BigUint {
    if p == &BigUint::from(2u32) {
        match e {
            1 => BigUint::one(),
            2 => BigUint::from(2u32),
            _ => BigUint::one() << (e - 2),
        }
    } else {
        (p - 1u32) * p.pow(e - 1)
    }
}

pub fn factor(n: &BigUint) -> Result<Factorization, ArithError> {
    factor_with_budget(n, &FactorBudget::default())
}

pub fn factor_with_budget(n: &BigUint, budget: &FactorBudget) -> Result<Factorization, ArithError> {
    if let Some(v) = n.to_u64() {
        let factors = factor_u64(v)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
        return Ok(Factorization::from_parts(n.clone(), factors));
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    for &p in &SMALL_PRIMES {
        push_all_divisions(&mut m, &BigUint::from(p), &mut factors);
    }
    let mut p = 41u64;
    while p <= 99_991 {
        push_all_divisions(&mut m, &BigUint::from(p), &mut factors);
        p += 2;
    }
    let mut rho_left = budget.rho_iterations;
    let mut stack = vec![m];
    let mut found: Vec<BigUint> = Vec::new();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if let Some(v) = c.to_u64() {
            for (p, e) in factor_u64(v) {
                for _ in 0..e {
                    found.push(BigUint::from(p));
                }
            }
            continue;
        }
        if is_prime(&c).is_prime {
            found.push(c);
            continue;
        }
        let digits = c.to_string().len();
        if digits > budget.max_digits {
            return Err(ArithError::FactorBudget { cofactor: c, digits });
        }
        match pollard_rho_big(&c, &mut rho_left) {
            Some(d) => {
                stack.push(&c / &d);
                stack.push(d);
            }
            None => {
                return Err(ArithError::FactorBudget { cofactor: c, digits });
            }
        }
    }
    found.sort();
    for q in found {
        match factors.iter_mut().find(|(p, _)| *p == q) {
            Some((_, e)) => *e += 1,
            None => factors.push((q, 1)),
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization::from_parts(n.clone(), factors))
}

fn push_all_divisions(m: &mut BigUint, p: &BigUint, factors: &mut Vec<(BigUint, u32)>) {
    let mut e = 0u32;
    while (&*m % p).is_zero() {
        *m /= p;
        e += 1;
    }
    if e > 0 {
        factors.push((p.clone(), e));
    }
}

/// Brent-style rho on a BigUint composite; returns None if the iteration
/// budget runs out before a split is found.
fn pollard_rho_big(n: &BigUint, iterations_left: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u64..64 {
        let c_big = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &c_big) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            if *iterations_left == 0 {
                return None;
            }
            *iterations_left -= 1;
            x = step(&x);
            y = step(&step(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle collapsed, retry with the next offset
            }
            let d = diff.gcd(n);
            if d > one {
                if &d < n {
                    return Some(d);
                }
                break;
            }
        }
    }
    None
}

/// Largest prime factor P(n); errors on n < 2.
pub fn largest_prime_factor(n: &BigUint) -> Result<BigUint, ArithError> {
    let f = factor(n)?;
    f.largest_prime()
        .cloned()
        .ok_or_else(|| ArithError::NoPrimeFactor { n: n.clone() })
}

/// Reusable y-smoothness test: true iff every prime factor is <= y.
/// Holds the sieved prime list so bulk scans pay the sieve once.
pub struct SmoothnessChecker {
    y: u64,
    primes: Vec<u64>,
}

impl SmoothnessChecker {
    pub fn new(y: u64) -> Self {
        assert!(y >= 2);
        SmoothnessChecker {
            y,
            primes: Sieve::up_to(y).primes().to_vec(),
        }
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn is_smooth_u64(&self, mut n: u64) -> bool {
        for &p in &self.primes {
            while n % p == 0 {
                n /= p;
            }
            if n == 1 {
                return true;
            }
        }
        n == 1
    }

    pub fn is_smooth(&self, n: &BigUint) -> bool {
        if let Some(v) = n.to_u64() {
            return self.is_smooth_u64(v);
        }
        let mut m = n.clone();
        for &p in &self.primes {
            let p = BigUint::from(p);
            while (&m % &p).is_zero() {
                m /= &p;
            }
            if m.is_one() {
                return true;
            }
        }
        m.is_one()
    }
}

/// One-shot convenience for `SmoothnessChecker`; n = 1 is vacuously smooth.
pub fn is_y_smooth(n: &BigUint, y: u64) -> bool {
    SmoothnessChecker::new(y).is_smooth(n)
}

pub fn carmichael_lambda(n: &BigUint) -> Result<BigUint, ArithError> {
    Ok(factor(n)?.lambda())
}

/// Least t >= 1 with u^t = 1 mod n. Errors when u is not a unit.
pub fn multiplicative_order(u: &BigUint, n: &BigUint) -> Result<BigUint, ArithError> {
    if n <= &BigUint::one() {
        return Ok(BigUint::one());
    }
    if let (Some(u_small), Some(n_small)) = (u.to_u64(), n.to_u64()) {
        return multiplicative_order_u64(u_small, n_small)
            .map(BigUint::from)
            .ok_or_else(|| ArithError::NotAUnit {
                u: u.clone(),
                n: n.clone(),
                g: BigUint::from(gcd_u64(u_small % n_small, n_small)),
            });
    }
    let u = u % n;
    let g = u.gcd(n);
    if !g.is_one() {
        return Err(ArithError::NotAUnit {
            u,
            n: n.clone(),
            g,
        });
    }
    let lambda = carmichael_lambda(n)?;
    let mut order = lambda.clone();
    for (r, _) in factor(&lambda)?.factors() {
        loop {
            if !(&order % r).is_zero() {
                break;
            }
            let candidate = &order / r;
            if u.modpow(&candidate, n).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Modular inverse of a mod m, if it exists.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a % m);
    let m_int = BigInt::from(m.clone());
    let ext = a.extended_gcd(&m_int);
    if !ext.gcd.is_one() {
        return None;
    }
    let inv = ext.x.mod_floor(&m_int);
    Some(inv.to_biguint().expect("mod_floor of positive modulus"))
}

/// Natural log of a BigUint, stable far beyond f64 range.
pub fn ln_big(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "log of zero");
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let mant = (n >> shift).to_f64().expect("53-bit mantissa");
    mant.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_cases() {
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(19));
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64(999983));
        assert!(!is_prime_u64(999381247093216751)); // strong pseudoprime trap
    }

    #[test]
    fn primality_result_reports_certainty() {
        let r = is_prime(&BigUint::from(561u32));
        assert!(!r.is_prime);
        assert_eq!(r.certainty, Certainty::Deterministic);
        // 2^89 - 1 is a Mersenne prime, well above the 64-bit threshold.
        let m89 = (BigUint::one() << 89) - 1u32;
        let r = is_prime(&m89);
        assert!(r.is_prime);
        match r.certainty {
            Certainty::Probabilistic { error_bound } => {
                assert!(error_bound <= 0.25f64.powi(DEFAULT_MR_ROUNDS as i32));
            }
            Certainty::Deterministic => panic!("expected probabilistic verdict above 2^64"),
        }
        // 2^67 - 1 = 193707721 * 761838257287 (composite).
        let m67 = (BigUint::one() << 67) - 1u32;
        assert!(!is_prime(&m67).is_prime);
    }

    #[test]
    fn factor_matches_trial_division_oracle() {
        assert_eq!(factor_u64(561), vec![(3, 1), (11, 1), (17, 1)]);
        assert_eq!(factor_u64(400), vec![(2, 4), (5, 2)]);
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(2), vec![(2, 1)]);
        let f = factor(&BigUint::from(561u32)).unwrap();
        assert!(f.is_squarefree());
        assert_eq!(f.phi(), BigUint::from(320u32));
    }

    #[test]
    fn factor_splits_beyond_u64() {
        // Product of two primes straddling 2^34.
        let p = BigUint::from(17179869209u64);
        let q = BigUint::from(17179869263u64);
        let n = &p * &q;
        let f = factor(&n).unwrap();
        assert_eq!(f.factors().len(), 2);
        assert_eq!(f.n(), &n);
    }

    #[test]
    fn factor_budget_is_an_explicit_error() {
        let p = (BigUint::one() << 89) - 1u32;
        let q = (BigUint::one() << 107) - 1u32; // both Mersenne primes
        let n = &p * &q;
        let tiny = FactorBudget {
            max_digits: 80,
            rho_iterations: 10,
        };
        match factor_with_budget(&n, &tiny) {
            Err(ArithError::FactorBudget { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn largest_prime_factor_examples() {
        assert_eq!(
            largest_prime_factor(&BigUint::from(560u32)).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(
            largest_prime_factor(&BigUint::from(8u32)).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            largest_prime_factor(&BigUint::from(399u32)).unwrap(),
            BigUint::from(19u32)
        );
        assert!(largest_prime_factor(&BigUint::one()).is_err());
    }

    #[test]
    fn smoothness_examples() {
        assert!(is_y_smooth(&BigUint::from(560u32), 7));
        assert!(!is_y_smooth(&BigUint::from(560u32), 5));
        assert!(is_y_smooth(&BigUint::one(), 2));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(carmichael_lambda_u64(561), 80); // lcm(2, 10, 16)
        assert_eq!(carmichael_lambda_u64(1), 1);
        assert_eq!(carmichael_lambda_u64(8), 2);
        assert_eq!(carmichael_lambda_u64(16), 4);
        assert_eq!(
            carmichael_lambda(&BigUint::from(561u32)).unwrap(),
            BigUint::from(80u32)
        );
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order_u64(3, 8), Some(2));
        assert_eq!(multiplicative_order_u64(1, 97), Some(1));
        assert_eq!(multiplicative_order_u64(2, 561), Some(40));
        assert_eq!(multiplicative_order_u64(6, 8), None);
        let e = multiplicative_order(&BigUint::from(6u32), &BigUint::from(8u32));
        assert!(matches!(e, Err(ArithError::NotAUnit { .. })));
    }

    #[test]
    fn segmented_factorization_agrees_with_direct() {
        for_each_factorization(2, 2000, |n, factors| {
            let direct = factor_u64(n);
            assert_eq!(factors, direct.as_slice(), "mismatch at {n}");
        });
    }

    #[test]
    fn sieve_range_queries() {
        let s = Sieve::up_to(100);
        assert_eq!(s.primes_in(10, 20), &[11, 13, 17, 19]);
        assert!(s.is_prime(97));
        assert!(!s.is_prime(1));
        assert_eq!(s.primes().len(), 25);
    }

    #[test]
    fn mod_inverse_round_trip() {
        let m = BigUint::from(561u32);
        for a in [2u32, 5, 100, 560] {
            let a = BigUint::from(a);
            if a.gcd(&m).is_one() {
                let inv = mod_inverse(&a, &m).unwrap();
                assert!(((&a * &inv) % &m).is_one());
            }
        }
        assert!(mod_inverse(&BigUint::from(3u32), &m).is_none());
    }

    #[test]
    fn ln_big_matches_f64_and_scales() {
        let n = BigUint::from(1_000_000u64);
        assert!((ln_big(&n) - 13.815510557964274).abs() < 1e-9);
        let huge = BigUint::from(10u32).pow(500);
        assert!((ln_big(&huge) - 500.0 * std::f64::consts::LN_10).abs() < 1e-6);
    }
}
