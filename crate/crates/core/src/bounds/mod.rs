//! Exact extremal bounds for RS graphs and executable audits of the
//! counting arguments behind them.
//!
//! All arithmetic is exact: rationals for the matching-size bound and big
//! integers for the logarithmic bounds on `t`. Floats only appear when a
//! caller renders a report.

mod audit;
mod distance;

pub use audit::{
    expansion_audit, Assertion, AssertionStatus, AuditReport, BfsWitness, LayerBound, LayerRow,
};
pub use distance::{distance_certificate, DistanceCertificate};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// Largest `r` allowed for an `(r, t)`-RS graph on `n` vertices:
/// `(n/4)(1 + 1/t)` for odd `t`, `(n/4)(1 + 1/(t+1))` for even `t`.
///
/// `t = 0` falls in the even branch and gives the trivial `n/2`.
pub fn max_r(n: u64, t: u64) -> Rational {
    let n = i128::from(n);
    let t = i128::from(t);
    if t % 2 == 1 {
        Rational::new(n * (t + 1), 4 * t)
    } else {
        Rational::new(n * (t + 2), 4 * (t + 1))
    }
}

/// Where `r` sits relative to `n / 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Regime {
    AboveQuarter,
    ExactlyQuarter,
    BelowQuarter,
}

impl Regime {
    pub fn of(n: u64, r: u64) -> Self {
        match (4 * u128::from(r)).cmp(&u128::from(n)) {
            core::cmp::Ordering::Greater => Regime::AboveQuarter,
            core::cmp::Ordering::Equal => Regime::ExactlyQuarter,
            core::cmp::Ordering::Less => Regime::BelowQuarter,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Regime::AboveQuarter => "above-quarter",
            Regime::ExactlyQuarter => "exactly-quarter",
            Regime::BelowQuarter => "below-quarter",
        }
    }
}

/// A logarithmic bound `t <= multiplier * (log2 n + 1)`, decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LogBound {
    pub expression: String,
    /// Largest integer `t` satisfying the bound.
    pub max_t: u64,
    pub holds: bool,
}

impl LogBound {
    /// `t <= m (log2 n + 1)`  ⟺  `2^t <= (2n)^m`.
    pub fn new(multiplier: u32, n: u64, t: u64) -> Self {
        let power = BigUint::from(2 * u128::from(n)).pow(multiplier);
        // floor(log2((2n)^m)) = bits - 1
        let max_t = power.bits().saturating_sub(1);
        LogBound {
            expression: format!("t <= {multiplier}(log2 n + 1)"),
            max_t,
            holds: n > 0 && t <= max_t,
        }
    }
}

/// Feasibility of `(n, r, t)` against the exact bounds, plus advisory
/// statements of asymptotic results that are not decidable at finite `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundVerdict {
    pub n: u64,
    pub r: u64,
    pub t: u64,
    pub regime: Regime,
    pub feasible: bool,
    /// The matching-size bound `max_r(n, t)`; present in the above-quarter
    /// regime, where it is the binding constraint.
    #[cfg_attr(
        feature = "serde",
        serde(serialize_with = "crate::rational::serde_string::option::serialize")
    )]
    pub hard_bound: Option<Rational>,
    /// `r == max_r(n, t)`.
    pub tight: bool,
    /// Explicit logarithmic bound on `t`, present when `r = n/4`.
    pub t_bound: Option<LogBound>,
    /// Reason for infeasibility, if any.
    pub witness: Option<String>,
    pub advisory: Vec<String>,
}

/// Decides `(n, r, t)` against the exact bounds.
///
/// - `r > max_r(n, t)`: infeasible.
/// - `r = n/4`: `t <= 8(log2 n + 1)` is enforced as a hard bound.
/// - `r < n/4`: only advisory statements are attached; their constants are
///   not explicit enough to rule anything out at finite `n`.
pub fn feasibility_verdict(n: u64, r: u64, t: u64) -> Result<BoundVerdict> {
    if 2 * u128::from(r) > u128::from(n) {
        return Err(Error::ImpossibleParameters { n, r });
    }
    let regime = Regime::of(n, r);
    let bound = max_r(n, t);
    let r_q = Rational::from_integer(i128::from(r));
    let mut feasible = r_q <= bound;
    let mut witness = (!feasible).then(|| format!("r = {r} exceeds max_r({n}, {t}) = {bound}"));
    let mut t_bound = None;
    let mut advisory = Vec::new();
    match regime {
        Regime::AboveQuarter => {
            advisory.push(format!(
                "c = r/n = {} > 1/4: t is bounded by a constant depending only on c",
                ratio(r, n)
            ));
            if t % 2 == 1 {
                advisory.push(String::from(
                    "for odd t the bound is attained by KG(t, (t-1)/2) and its vertex-disjoint copies",
                ));
            }
        }
        Regime::ExactlyQuarter => {
            let lb = LogBound::new(8, n, t);
            if !lb.holds && feasible {
                feasible = false;
                witness = Some(format!(
                    "t = {t} exceeds 8(log2 n + 1), max t = {}",
                    lb.max_t
                ));
            }
            t_bound = Some(lb);
            let regular = LogBound::new(2, n, t);
            advisory.push(String::from(
                "asymptotically t <= (6 + o(1)) log2 n when r = n/4",
            ));
            advisory.push(format!(
                "if the graph is regular: t <= 2(log2 n + 1), i.e. t <= {} ({})",
                regular.max_t,
                if regular.holds {
                    "satisfied"
                } else {
                    "violated"
                }
            ));
            advisory.push(String::from(
                "hypercube constructions reach t = 2 log2 n, and 2(log2 n + 1) for even log2 n",
            ));
        }
        Regime::BelowQuarter => {
            let c = ratio(r, n);
            let fifth = Rational::new(1, 5);
            if c > fifth {
                let eps = c - fifth;
                let k = Rational::from_integer(100) / eps;
                advisory.push(format!(
                    "1/5 + eps <= c < 1/4 with eps = {eps}: t = O(n / log n), proof constant K = 100/eps = {k}"
                ));
            } else {
                advisory.push(format!(
                    "c = {c} <= 1/5: only the general t = o(n) upper bound applies"
                ));
            }
            advisory.push(String::from(
                "for r >= (1/4 - b) n with a small absolute constant b > 0: t = n / ((log n) 2^Omega(log* n)) = o(n / log n)",
            ));
        }
    }
    Ok(BoundVerdict {
        n,
        r,
        t,
        regime,
        feasible,
        hard_bound: (regime == Regime::AboveQuarter).then_some(bound),
        tight: r_q == bound,
        t_bound,
        witness,
        advisory,
    })
}
