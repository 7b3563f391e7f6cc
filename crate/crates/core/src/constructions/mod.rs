//! Deterministic generators for the RS-graph families.
//!
//! Labelings are canonical so serialized outputs are byte-stable:
//! colex order of `k`-subsets for Kneser graphs, integer bit-values for
//! hypercubes, and part offsets (`0..n`, `n..2n`) for bipartite outputs.

mod apfree;
mod cayley;
mod hypercube;
mod kneser;
mod transform;

pub use apfree::{ap_free_set, find_three_term_ap, ApFreeSet, ApMethod};
pub use cayley::cayley_rs;
pub use hypercube::hypercube_rs;
pub use kneser::{kneser_rs, kneser_rs_with_budget};
pub use transform::{disjoint_union, double_cover};

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::decomposition::MatchingDecomposition;
use crate::error::{Error, Result};

/// Largest vertex count a generator will materialize by default.
pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 22;

pub(crate) fn check_budget(what: &'static str, needed: u128, budget: usize) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::Resource {
            what,
            needed,
            budget: budget as u128,
        })
    } else {
        Ok(())
    }
}

/// Source of the difference set for [`Family::CayleyAp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DifferenceSet {
    /// Generate with `method` on `[1, limit]`.
    Generated { method: ApMethod, limit: u64 },
    /// Explicit set; checked for 3-AP-freeness before use.
    Explicit(Vec<u64>),
}

/// A fully parameterized construction request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Kneser { k: usize },
    Hypercube { k: usize },
    HypercubeAugmented { k: usize },
    CayleyAp { modulus: u64, set: DifferenceSet },
    DisjointUnion { base: Box<Family>, copies: usize },
    DoubleCover { base: Box<Family> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Kneser { .. } => "kneser",
            Family::Hypercube { .. } => "hypercube",
            Family::HypercubeAugmented { .. } => "hypercube-augmented",
            Family::CayleyAp { .. } => "cayley-ap",
            Family::DisjointUnion { .. } => "disjoint-union",
            Family::DoubleCover { .. } => "double-cover",
        }
    }

    /// Runs the generator (recursively for transforms).
    pub fn build(&self) -> Result<MatchingDecomposition> {
        match self {
            Family::Kneser { k } => kneser_rs(*k),
            Family::Hypercube { k } => hypercube_rs(*k, false),
            Family::HypercubeAugmented { k } => hypercube_rs(*k, true),
            Family::CayleyAp { modulus, set } => {
                let set = match set {
                    DifferenceSet::Generated { method, limit } => ap_free_set(*method, *limit)?,
                    DifferenceSet::Explicit(elements) => {
                        ApFreeSet::from_elements(elements.clone())?
                    }
                };
                cayley_rs(*modulus, &set)
            }
            Family::DisjointUnion { base, copies } => disjoint_union(&base.build()?, *copies),
            Family::DoubleCover { base } => double_cover(&base.build()?),
        }
    }

    /// Short human-readable description, e.g. `double-cover(kneser k=2)`.
    pub fn describe(&self) -> String {
        use alloc::format;
        match self {
            Family::Kneser { k } => format!("kneser k={k}"),
            Family::Hypercube { k } => format!("hypercube k={k}"),
            Family::HypercubeAugmented { k } => format!("hypercube-augmented k={k}"),
            Family::CayleyAp { modulus, set } => match set {
                DifferenceSet::Generated { method, limit } => {
                    format!("cayley-ap N={modulus} S={}[{limit}]", method.name())
                }
                DifferenceSet::Explicit(s) => format!("cayley-ap N={modulus} S={s:?}"),
            },
            Family::DisjointUnion { base, copies } => {
                format!("disjoint-union({} x{copies})", base.describe())
            }
            Family::DoubleCover { base } => format!("double-cover({})", base.describe()),
        }
    }
}
