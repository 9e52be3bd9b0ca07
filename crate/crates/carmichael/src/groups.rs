//! Unit-group machinery: the Davenport-type bound on n(L), exact n(L) by
//! exhaustive search on small moduli, and subset-product-equals-one solvers.
//!
//! n(L) is the least size forcing every set of that many *distinct* units mod
//! L to contain a nonempty subset with product 1. Set semantics throughout;
//! the classical multiset Davenport constant is a different animal.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, ArithError};

/// Exhaustive subset search is refused above this element count (2^n blowup).
pub const EXHAUSTIVE_MAX: usize = 25;
/// Meet-in-the-middle is refused above this element count.
pub const MEET_IN_MIDDLE_MAX: usize = 40;
/// Default budget for the randomized strategy.
pub const RANDOMIZED_DEFAULT_TRIALS: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupsError {
    #[error("element {element} at index {index} is not a unit mod {modulus}")]
    NonUnit {
        index: usize,
        element: BigUint,
        modulus: BigUint,
    },
    #[error("{count} elements exceed the {max}-element limit of this strategy")]
    TooManyElements { count: usize, max: usize },
    #[error("unit group of size {phi} exceeds the exhaustive-search cap {cap}")]
    SizeCapExceeded { phi: u64, cap: u64 },
    #[error("theta = {theta} outside the required open interval (1, 2)")]
    ThetaOutOfRange { theta: f64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

/// lambda(L), the Davenport-type bound lambda(L) * (1 + log(L / lambda(L))),
/// and optionally the exact n(L) and the e^(3*y*theta) smooth-parameter bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupBoundReport {
    #[serde(rename = "L", serialize_with = "crate::ser::biguint")]
    pub modulus: BigUint,
    #[serde(serialize_with = "crate::ser::biguint")]
    pub lambda: BigUint,
    pub eq1_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_exact: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e3y_bound: Option<f64>,
}

/// Evaluates the bound n(L) < lambda(L) (1 + log(L / lambda(L))), natural log.
pub fn eq1_bound(l: &BigUint) -> Result<GroupBoundReport, ArithError> {
    assert!(l >= &BigUint::from(2u32), "modulus must be at least 2");
    let lambda = arith::factor(l)?.lambda();
    let log_ratio = arith::ln_big(l) - arith::ln_big(&lambda);
    let lambda_f = lambda.to_f64().unwrap_or(f64::INFINITY);
    Ok(GroupBoundReport {
        modulus: l.clone(),
        lambda,
        eq1_bound: lambda_f * (1.0 + log_ratio),
        n_exact: None,
        e3y_bound: None,
    })
}

impl GroupBoundReport {
    /// Fills in exact n(L) when the unit group is small enough to search.
    pub fn with_n_exact(mut self, size_cap: u64) -> Result<Self, GroupsError> {
        let l = self
            .modulus
            .to_u64()
            .ok_or(GroupsError::SizeCapExceeded {
                phi: u64::MAX,
                cap: size_cap,
            })?;
        self.n_exact = Some(n_exact(l, size_cap)?);
        Ok(self)
    }

    pub fn with_smooth_context(mut self, y: u64, theta: f64) -> Self {
        self.e3y_bound = Some((3.0 * y as f64 * theta).exp());
        self
    }
}

/// The smooth-modulus lambda bound e^(2*y*theta) together with the exact
/// product it majorizes: prod over primes r <= y of r^a_r, where a_r is
/// maximal with r^a_r <= y^theta.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothLambdaBound {
    pub y: u64,
    pub theta: f64,
    /// 2*y*theta, the natural log of the bound.
    pub log_bound: f64,
    pub bound: f64,
    pub exact_product: BigUint,
}

pub fn lambda_smooth_bound(y: u64, theta: f64) -> Result<SmoothLambdaBound, GroupsError> {
    if !(theta > 1.0 && theta < 2.0) {
        return Err(GroupsError::ThetaOutOfRange { theta });
    }
    assert!(y >= 2);
    let y_theta = (y as f64).powf(theta).floor() as u64;
    let mut exact_product = BigUint::one();
    for &r in arith::Sieve::up_to(y).primes() {
        let mut power = r;
        while power <= y_theta / r {
            power *= r;
        }
        exact_product *= BigUint::from(power);
    }
    let log_bound = 2.0 * y as f64 * theta;
    Ok(SmoothLambdaBound {
        y,
        theta,
        log_bound,
        bound: log_bound.exp(),
        exact_product,
    })
}

// ---------------------------------------------------------------------------
// Exact n(L)
// ---------------------------------------------------------------------------

/// The units of Z/LZ, ascending. L must be at least 2.
pub fn units_mod(l: u64) -> Vec<u64> {
    assert!(l >= 2);
    (1..l).filter(|&u| arith::gcd_u64(u, l) == 1).collect()
}

/// Exact n(L): one more than the largest set of distinct units containing no
/// nonempty subset with product 1 mod L. Depth-first search over the unit
/// group, propagating the set of reachable subset products as a bitmask.
pub fn n_exact(l: u64, size_cap: u64) -> Result<u64, GroupsError> {
    let units = units_mod(l);
    let phi = units.len();
    let cap = size_cap.min(63);
    if phi as u64 > cap {
        return Err(GroupsError::SizeCapExceeded {
            phi: phi as u64,
            cap,
        });
    }
    let mut pos = vec![usize::MAX; l as usize];
    for (i, &u) in units.iter().enumerate() {
        pos[u as usize] = i;
    }
    let mult: Vec<Vec<usize>> = units
        .iter()
        .map(|&a| {
            units
                .iter()
                .map(|&b| pos[(arith::mul_mod_u64(a, b, l)) as usize])
                .collect()
        })
        .collect();
    struct Search<'a> {
        mult: &'a [Vec<usize>],
        phi: usize,
        best: usize,
    }
    // products bitmask: bit j means some nonempty chosen subset multiplies to
    // units[j]; bit 0 is the identity, so reaching it kills the branch.
    fn dfs(s: &mut Search, start: usize, products: u64, size: usize) {
        if size > s.best {
            s.best = size;
        }
        for j in start..s.phi {
            if size + (s.phi - j) <= s.best {
                break;
            }
            let mut next = products | 1 << j;
            let mut bits = products;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= 1 << s.mult[b][j];
            }
            if next & 1 == 0 {
                dfs(s, j + 1, next, size + 1);
            }
        }
    }
    let mut search = Search {
        mult: &mult,
        phi,
        best: 0,
    };
    // index 0 is the unit 1, which alone is a product-one subset; skip it.
    dfs(&mut search, 1, 0, 0);
    Ok(search.best as u64 + 1)
}

// ---------------------------------------------------------------------------
// Subset-product solvers
// ---------------------------------------------------------------------------

/// How to look for a product-one subset. Exhaustive and meet-in-the-middle
/// are complete on their admissible sizes; randomized is budgeted and its
/// `None` means "not found", not "does not exist".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    MeetInMiddle,
    Randomized { trials: u64, seed: u64 },
    /// Pick by element count: exhaustive, then MITM, then randomized.
    Auto { seed: u64 },
}

/// A nonempty subset of the input elements whose product is 1 mod M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSolution {
    pub modulus: BigUint,
    /// Input elements reduced mod M.
    pub elements: Vec<BigUint>,
    /// Indices into `elements`, strictly increasing.
    pub chosen: Vec<usize>,
    pub product_check: bool,
}

impl SubsetSolution {
    /// Recomputes the product of the chosen elements from scratch.
    pub fn reverify(&self) -> bool {
        !self.chosen.is_empty()
            && self
                .chosen
                .iter()
                .fold(BigUint::one(), |acc, &i| acc * &self.elements[i] % &self.modulus)
                .is_one()
    }
}

fn validate_units(elements: &[BigUint], m: &BigUint) -> Result<Vec<BigUint>, GroupsError> {
    let mut reduced = Vec::with_capacity(elements.len());
    for (index, e) in elements.iter().enumerate() {
        let r = e % m;
        if !r.gcd(m).is_one() {
            return Err(GroupsError::NonUnit {
                index,
                element: e.clone(),
                modulus: m.clone(),
            });
        }
        reduced.push(r);
    }
    Ok(reduced)
}

fn effective_window(window: Option<(usize, usize)>, n: usize) -> (usize, usize) {
    let (lo, hi) = window.unwrap_or((1, n));
    (lo.max(1), hi.min(n))
}

/// Finds a nonempty subset of `elements` whose product is 1 mod `m`,
/// optionally restricted to subset sizes in `size_window` (inclusive).
///
/// All elements must be units mod m. `Ok(None)` from the complete strategies
/// means no qualifying subset exists; from the randomized strategy it only
/// means the trial budget was spent.
pub fn find_subset_product_one(
    elements: &[BigUint],
    m: &BigUint,
    strategy: Strategy,
    size_window: Option<(usize, usize)>,
) -> Result<Option<SubsetSolution>, GroupsError> {
    assert!(m >= &BigUint::from(2u32));
    let reduced = validate_units(elements, m)?;
    let n = reduced.len();
    let window = effective_window(size_window, n);
    if n == 0 || window.0 > window.1 {
        return Ok(None);
    }
    let chosen = match strategy {
        Strategy::Auto { seed } => {
            if n <= EXHAUSTIVE_MAX {
                exhaustive_find(&reduced, m, window)
            } else if n <= MEET_IN_MIDDLE_MAX {
                mitm_find(&reduced, m, window)
            } else {
                randomized_find(&reduced, m, window, RANDOMIZED_DEFAULT_TRIALS, seed)
            }
        }
        Strategy::Exhaustive => {
            if n > EXHAUSTIVE_MAX {
                return Err(GroupsError::TooManyElements {
                    count: n,
                    max: EXHAUSTIVE_MAX,
                });
            }
            exhaustive_find(&reduced, m, window)
        }
        Strategy::MeetInMiddle => {
            if n > MEET_IN_MIDDLE_MAX {
                return Err(GroupsError::TooManyElements {
                    count: n,
                    max: MEET_IN_MIDDLE_MAX,
                });
            }
            mitm_find(&reduced, m, window)
        }
        Strategy::Randomized { trials, seed } => randomized_find(&reduced, m, window, trials, seed),
    };
    Ok(chosen.map(|mask| {
        let solution = SubsetSolution {
            modulus: m.clone(),
            elements: reduced,
            chosen: mask_to_indices(mask),
            product_check: true,
        };
        debug_assert!(solution.reverify());
        solution
    }))
}

fn mask_to_indices(mask: u64) -> Vec<usize> {
    let mut idx = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        idx.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    idx
}

/// Gray-code walk over all nonempty subsets; each step multiplies by one
/// element or its inverse. `visit` returns true to stop early.
fn gray_scan_u64(elems: &[u64], m: u64, mut visit: impl FnMut(u64, u64) -> bool) {
    let n = elems.len();
    let inv: Vec<u64> = elems
        .iter()
        .map(|&e| inv_mod_u64(e, m).expect("validated unit"))
        .collect();
    let mut product = 1u64 % m;
    let mut prev = 0u64;
    for s in 1u64..1 << n {
        let gray = s ^ (s >> 1);
        let bit = (gray ^ prev).trailing_zeros() as usize;
        product = if gray >> bit & 1 == 1 {
            arith::mul_mod_u64(product, elems[bit], m)
        } else {
            arith::mul_mod_u64(product, inv[bit], m)
        };
        prev = gray;
        if visit(gray, product) {
            return;
        }
    }
}

fn gray_scan_big(elems: &[BigUint], m: &BigUint, mut visit: impl FnMut(u64, &BigUint) -> bool) {
    let n = elems.len();
    let inv: Vec<BigUint> = elems
        .iter()
        .map(|e| arith::mod_inverse(e, m).expect("validated unit"))
        .collect();
    let mut product = BigUint::one() % m;
    let mut prev = 0u64;
    for s in 1u64..1 << n {
        let gray = s ^ (s >> 1);
        let bit = (gray ^ prev).trailing_zeros() as usize;
        product = if gray >> bit & 1 == 1 {
            &product * &elems[bit] % m
        } else {
            &product * &inv[bit] % m
        };
        prev = gray;
        if visit(gray, &product) {
            return;
        }
    }
}

fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut t1) = (0i128, 1i128);
    let (mut r, mut r1) = (m as i128, (a % m) as i128);
    while r1 != 0 {
        let q = r / r1;
        (t, t1) = (t1, t - q * t1);
        (r, r1) = (r1, r - q * r1);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

fn exhaustive_find(elements: &[BigUint], m: &BigUint, window: (usize, usize)) -> Option<u64> {
    let mut found = None;
    let in_window = |gray: u64| {
        let c = gray.count_ones() as usize;
        c >= window.0 && c <= window.1
    };
    if let Some(m_small) = m.to_u64() {
        let elems: Vec<u64> = elements.iter().map(|e| e.to_u64().expect("reduced")).collect();
        gray_scan_u64(&elems, m_small, |gray, product| {
            if product == 1 % m_small && in_window(gray) {
                found = Some(gray);
                true
            } else {
                false
            }
        });
    } else {
        gray_scan_big(elements, m, |gray, product| {
            if product.is_one() && in_window(gray) {
                found = Some(gray);
                true
            } else {
                false
            }
        });
    }
    found
}

/// Splits the elements in half, tabulates every left-half product, then scans
/// right-half products for a matching inverse. Complete, like exhaustive, but
/// O(2^(n/2)) instead of O(2^n).
fn mitm_find(elements: &[BigUint], m: &BigUint, window: (usize, usize)) -> Option<u64> {
    let n = elements.len();
    let half = n / 2;
    let (left, right) = elements.split_at(half);
    // product -> (mask, popcount) for every left subset, empty included.
    let mut table: HashMap<BigUint, Vec<(u64, usize)>> = HashMap::new();
    table.insert(BigUint::one() % m, vec![(0, 0)]);
    gray_scan_big(left, m, |gray, product| {
        table
            .entry(product.clone())
            .or_default()
            .push((gray, gray.count_ones() as usize));
        false
    });
    let check = |right_mask: u64, right_product: &BigUint| -> Option<u64> {
        let needed = arith::mod_inverse(right_product, m).expect("unit product");
        let right_count = right_mask.count_ones() as usize;
        if let Some(candidates) = table.get(&needed) {
            for &(left_mask, left_count) in candidates {
                let total = left_count + right_count;
                if total >= window.0.max(1) && total <= window.1 {
                    return Some(left_mask | right_mask << half);
                }
            }
        }
        None
    };
    // Empty right side first: catches pure-left solutions deterministically.
    if let Some(mask) = check(0, &(BigUint::one() % m)) {
        return Some(mask);
    }
    let mut found = None;
    gray_scan_big(right, m, |gray, product| {
        if let Some(mask) = check(gray, product) {
            found = Some(mask);
            true
        } else {
            false
        }
    });
    found
}

fn randomized_find(
    elements: &[BigUint],
    m: &BigUint,
    window: (usize, usize),
    trials: u64,
    seed: u64,
) -> Option<u64> {
    let n = elements.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let size = rand::Rng::gen_range(&mut rng, window.0..=window.1.min(63));
        let picked = rand::seq::index::sample(&mut rng, n, size);
        let mut product = BigUint::one() % m;
        let mut mask = 0u64;
        for i in picked.iter() {
            product = product * &elements[i] % m;
            if i < 64 {
                mask |= 1 << i;
            }
        }
        if product.is_one() && mask.count_ones() as usize == size {
            return Some(mask);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

/// Exhaustive count of product-one subsets, with the counting-theorem lower
/// bound C(r, t) / C(r, n) for the window read as (t - n, t).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetCount {
    pub count: u64,
    pub r: usize,
    pub window: (usize, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_bound: Option<f64>,
}

/// Counts every nonempty subset with product 1 mod m and size inside the
/// window. Exhaustive, so the element count is capped at `EXHAUSTIVE_MAX`.
pub fn count_subset_solutions(
    elements: &[BigUint],
    m: &BigUint,
    size_window: Option<(usize, usize)>,
) -> Result<SubsetCount, GroupsError> {
    assert!(m >= &BigUint::from(2u32));
    let reduced = validate_units(elements, m)?;
    let n = reduced.len();
    if n > EXHAUSTIVE_MAX {
        return Err(GroupsError::TooManyElements {
            count: n,
            max: EXHAUSTIVE_MAX,
        });
    }
    let window = effective_window(size_window, n);
    let mut count = 0u64;
    let in_window = |gray: u64| {
        let c = gray.count_ones() as usize;
        c >= window.0 && c <= window.1
    };
    if let Some(m_small) = m.to_u64() {
        let elems: Vec<u64> = reduced.iter().map(|e| e.to_u64().expect("reduced")).collect();
        gray_scan_u64(&elems, m_small, |gray, product| {
            if product == 1 % m_small && in_window(gray) {
                count += 1;
            }
            false
        });
    } else {
        gray_scan_big(&reduced, m, |gray, product| {
            if product.is_one() && in_window(gray) {
                count += 1;
            }
            false
        });
    }
    let theorem_bound = size_window.and_then(|(lo, hi)| {
        let t = hi as u64;
        let davenport = (hi - lo.min(hi)) as u64;
        (n as u64 >= t && t >= 1).then(|| theorem_lower_bound(n as u64, t, davenport))
    });
    Ok(SubsetCount {
        count,
        r: n,
        window,
        theorem_bound,
    })
}

/// ln C(u, v), exact summation.
pub fn ln_binomial(u: u64, v: u64) -> f64 {
    assert!(v <= u);
    let v = v.min(u - v);
    (1..=v)
        .map(|i| ((u - v + i) as f64).ln() - (i as f64).ln())
        .sum()
}

/// The counting theorem's lower bound C(r, t) / C(r, n) on the number of
/// product-one subsets of size in [t - n, t], valid when r > t > n.
pub fn theorem_lower_bound(r: u64, t: u64, n: u64) -> f64 {
    (ln_binomial(r, t) - ln_binomial(r, n)).exp()
}
