//! The counting apparatus as a calculator: the subset-count parameters r and
//! t, the binomial lower bound, and the X-exponent chain, all evaluated in
//! natural-log space because the raw quantities overflow immediately.
//!
//! Nothing here asserts the asymptotic theorem. The report states whether
//! each inequality in the chain holds at the supplied finite parameters and
//! flags the whole chain not-applicable when r > t > n fails, which is the
//! expected verdict anywhere near desk scale.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::groups::ln_binomial;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("theta = {theta} outside the required open interval (1, 2)")]
    ThetaOutOfRange { theta: f64 },
    #[error("gamma = {gamma} must be positive")]
    GammaNotPositive { gamma: f64 },
    #[error("kappa = {kappa} must lie in (0, 1.02)")]
    KappaOutOfRange { kappa: f64 },
    #[error("binomial check limited to 0 < v <= u <= {max}, got ({u}, {v})")]
    BinomOutOfRange { u: u64, v: u64, max: u64 },
}

/// Inputs to the counting chain. `gamma` is the density constant from the
/// smooth-prime count assumption, `kappa` the constant in L <= e^(kappa y^theta),
/// `hb_exponent` the conjecture exponent A, `omega` the number of primes in L.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountingInputs {
    pub y: u64,
    pub theta: f64,
    pub hb_exponent: u32,
    pub gamma: f64,
    pub omega: u64,
    pub kappa: f64,
}

impl CountingInputs {
    fn validate(&self) -> Result<(), BoundsError> {
        if !(self.theta > 1.0 && self.theta < 2.0) {
            return Err(BoundsError::ThetaOutOfRange { theta: self.theta });
        }
        if self.gamma <= 0.0 {
            return Err(BoundsError::GammaNotPositive { gamma: self.gamma });
        }
        if !(self.kappa > 0.0 && self.kappa < 1.02) {
            return Err(BoundsError::KappaOutOfRange { kappa: self.kappa });
        }
        Ok(())
    }
}

/// One inequality of the chain, evaluated as lhs >= rhs (or lhs > rhs where
/// noted in `name`). Quantities whose raw form scales with t are normalized
/// per t so they stay finite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainStep {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingReport {
    pub inputs: CountingInputs,
    /// Natural logs of r = (7/4)^(omega/(A+1)), t = (3/2)^(omega/(A+1)),
    /// and the n(Lkk') bound e^(3 y theta).
    pub log_r: f64,
    pub log_t: f64,
    pub log_n_bound: f64,
    /// exp of the above; +inf when out of f64 range.
    pub r: f64,
    pub t: f64,
    pub n_bound: f64,
    /// Whether r > t > n holds, the gate for everything downstream.
    pub applicable: bool,
    /// log of the sandwich lower bound (r/t)^t / (re/n)^n; +/-inf at scale.
    pub binom_lower_log: f64,
    /// Same quantity divided by t, always finite.
    pub binom_lower_log_per_t: f64,
    /// log X from the X = P x^t display: 3 y^theta t, and its per-t form.
    pub log_x_upper: f64,
    pub log_x_upper_per_t: f64,
    /// (log 1.1 / (3 (A+1))) * (gamma / (logloglog X)^2).
    pub exponent: f64,
    pub chain: Vec<ChainStep>,
}

/// Evaluates every displayed quantity of the counting argument at the given
/// finite parameters. Natural logs throughout.
pub fn counting_report(inputs: &CountingInputs) -> Result<CountingReport, BoundsError> {
    inputs.validate()?;
    let a1 = (inputs.hb_exponent + 1) as f64;
    let w = inputs.omega as f64 / a1;
    let y = inputs.y as f64;
    let y_theta = y.powf(inputs.theta);
    let log_y = y.ln();

    let log_r = w * (7f64 / 4.0).ln();
    let log_t = w * 1.5f64.ln();
    let log_n = 3.0 * y * inputs.theta;
    let t = log_t.exp();
    let n_bound = log_n.exp();
    let inv_t = (-log_t).exp();
    let ratio_n_t = (log_n - log_t).exp();

    let applicable = log_r > log_t && log_t > log_n;

    // Sandwich bound C(r,t)/C(r,n) >= (r/t)^t / (re/n)^n, per-t normalized.
    let sandwich_per_t = (log_r - log_t) - ratio_n_t * (log_r - log_n + 1.0);
    // The first displayed minorant ((7/6)^w)^t / ((7/5)^w e)^(t/20), per t.
    let display1_per_t = w * (7f64 / 6.0).ln() - (w * (7f64 / 5.0).ln() + 1.0) / 20.0;

    let log_kappa_y_theta = (inputs.kappa * y_theta).ln();
    let eq2_lhs_per_t = inputs.kappa * y_theta * (1.0 + inv_t)
        + ((2.0 * (inputs.hb_exponent as f64) + 1.0) * inv_t + a1) * log_kappa_y_theta;
    let eq2_rhs_per_t = 3.0 * y_theta;

    let log_log_x = 3f64.ln() + inputs.theta * log_y + log_t;
    let lll_x = log_log_x.ln();
    let exponent = (1.1f64.ln() / (3.0 * a1)) * (inputs.gamma / (lll_x * lll_x));

    let chain = vec![
        step("r > t", log_r, log_t, log_r > log_t),
        step("t > n", log_t, log_n, log_t > log_n),
        step_ge("n < (5/4)^(omega/(A+1))", w * 1.25f64.ln(), log_n),
        step_ge("n <= t/20", log_t - 20f64.ln(), log_n),
        step_ge("sandwich >= first display (per t)", sandwich_per_t, display1_per_t),
        step_ge(
            "first display >= 1.1^(t omega/(A+1)) (per t)",
            display1_per_t,
            w * 1.1f64.ln(),
        ),
        step_ge(
            "omega >= gamma y^theta / log y",
            inputs.omega as f64,
            inputs.gamma * y_theta / log_y,
        ),
        step_ge("eq2: X <= e^(3 y^theta t) (per t)", eq2_rhs_per_t, eq2_lhs_per_t),
        step_ge("eq3: (logloglog X)^2 >= log y", lll_x * lll_x, log_y),
        step_ge(
            "final: count exponent dominates (per t)",
            y_theta * (1.1f64.ln() / a1) * (inputs.gamma / log_y),
            3.0 * y_theta * (1.1f64.ln() / (3.0 * a1)) * (inputs.gamma / (lll_x * lll_x)),
        ),
    ];

    Ok(CountingReport {
        inputs: *inputs,
        log_r,
        log_t,
        log_n_bound: log_n,
        r: log_r.exp(),
        t,
        n_bound,
        applicable,
        binom_lower_log: t * sandwich_per_t,
        binom_lower_log_per_t: sandwich_per_t,
        log_x_upper: 3.0 * y_theta * t,
        log_x_upper_per_t: 3.0 * y_theta,
        exponent,
        chain,
    })
}

fn step(name: &str, lhs: f64, rhs: f64, holds: bool) -> ChainStep {
    ChainStep {
        name: name.to_string(),
        lhs,
        rhs,
        holds,
    }
}

fn step_ge(name: &str, lhs: f64, rhs: f64) -> ChainStep {
    step(name, lhs, rhs, lhs >= rhs)
}

/// The standard sandwich (u/v)^v <= C(u, v) <= (ue/v)^v, verified exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinomSandwich {
    pub lower: f64,
    #[serde(serialize_with = "crate::ser::biguint")]
    pub exact: BigUint,
    pub upper: f64,
    pub holds: bool,
}

pub const BINOM_CHECK_MAX: u64 = 1000;

pub fn binom_bound_check(u: u64, v: u64) -> Result<BinomSandwich, BoundsError> {
    if v == 0 || v > u || u > BINOM_CHECK_MAX {
        return Err(BoundsError::BinomOutOfRange {
            u,
            v,
            max: BINOM_CHECK_MAX,
        });
    }
    let exact = binomial_exact(u, v);
    let log_ratio = (u as f64 / v as f64).ln();
    let lower_log = v as f64 * log_ratio;
    let upper_log = v as f64 * (log_ratio + 1.0);
    let exact_log = ln_binomial(u, v);
    let holds = lower_log <= exact_log + 1e-9 && exact_log <= upper_log + 1e-9;
    Ok(BinomSandwich {
        lower: lower_log.exp(),
        exact,
        upper: upper_log.exp(),
        holds,
    })
}

/// Exact C(u, v) by the multiplicative formula; every intermediate division
/// is exact because each prefix is itself a binomial coefficient.
pub fn binomial_exact(u: u64, v: u64) -> BigUint {
    let v = v.min(u - v);
    let mut acc = BigUint::one();
    for i in 1..=v {
        acc = acc * BigUint::from(u - v + i) / BigUint::from(i);
    }
    acc
}
