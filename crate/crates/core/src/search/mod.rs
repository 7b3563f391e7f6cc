//! Exact decision procedures for small instances.
//!
//! [`exists_rs`] asks whether an `(r, t)`-RS graph on `n` vertices exists by
//! building the matchings directly, one edge at a time, under a
//! lexicographic symmetry reduction. [`max_t_on_graph`] packs induced
//! matchings of a fixed graph. Both run under a node budget and an optional
//! time limit; running out is reported as [`Verdict::Indeterminate`], never
//! folded into UNSAT.
//!
//! The core has no clock. Callers that want a time limit pass a [`Clock`];
//! the `rsg` crate supplies one backed by `std::time::Instant`.

mod exists;
mod packing;

pub use exists::{exists_rs, exists_rs_with_clock, BranchResult, ExistsSearch, SearchOptions};
pub use packing::{max_t_on_graph, max_t_on_graph_with_clock, PackingOptions};

use alloc::string::String;
use core::sync::atomic::{AtomicU64, AtomicU8, AtomicUsize, Ordering};
use core::time::Duration;

use crate::decomposition::MatchingDecomposition;

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);

/// Budgets are polled every this many nodes.
const POLL_INTERVAL: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    /// Only enforced when the caller supplies a [`Clock`].
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: DEFAULT_MAX_NODES,
            time_limit: Some(DEFAULT_TIME_LIMIT),
        }
    }
}

/// Elapsed time since the search started.
pub trait Clock: Sync {
    fn elapsed(&self) -> Option<Duration>;
}

/// A clock that never advances; time limits are ignored.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Option<Duration> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum Verdict {
    Sat,
    Unsat,
    Indeterminate,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Indeterminate => "INDETERMINATE",
        }
    }
}

/// Result of a search. A SAT certificate has passed
/// [`verify_decomposition`](crate::verify_decomposition) before it is
/// returned.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchOutcome {
    pub verdict: Verdict,
    #[cfg_attr(feature = "serde", serde(skip))]
    pub certificate: Option<MatchingDecomposition>,
    pub nodes_explored: u64,
    pub wall_time: Option<Duration>,
    pub note: Option<String>,
}

impl SearchOutcome {
    pub fn is_sat(&self) -> bool {
        self.verdict == Verdict::Sat
    }

    /// Number of matchings in the certificate, if any.
    pub fn t(&self) -> Option<usize> {
        self.certificate.as_ref().map(MatchingDecomposition::t)
    }
}

/// Counters shared by the workers of one search.
#[derive(Debug)]
pub struct SharedProgress {
    nodes: AtomicU64,
    /// Lowest branch index that found a certificate.
    sat_branch: AtomicUsize,
    /// 0 while running, otherwise the [`Stop`] code that ended the search.
    stop: AtomicU8,
}

impl Default for SharedProgress {
    fn default() -> Self {
        SharedProgress {
            nodes: AtomicU64::new(0),
            sat_branch: AtomicUsize::new(usize::MAX),
            stop: AtomicU8::new(0),
        }
    }
}

impl SharedProgress {
    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    Nodes,
    Time,
    Cancelled,
}

impl Stop {
    fn code(self) -> u8 {
        match self {
            Stop::Nodes => 1,
            Stop::Time => 2,
            Stop::Cancelled => 3,
        }
    }

    fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(Stop::Nodes),
            2 => Some(Stop::Time),
            _ => None,
        }
    }

    fn note(self, budget: &Budget) -> String {
        match self {
            Stop::Nodes => alloc::format!("node budget of {} exhausted", budget.max_nodes),
            Stop::Time => alloc::format!(
                "time limit of {:?} reached",
                budget.time_limit.unwrap_or_default()
            ),
            Stop::Cancelled => String::from("cancelled"),
        }
    }
}

/// Per-worker view of the budget. Nodes are counted locally and flushed to
/// the shared counter every [`POLL_INTERVAL`] nodes, or as soon as the local
/// count would reach the node budget.
struct Meter<'a> {
    budget: Budget,
    clock: &'a dyn Clock,
    shared: &'a SharedProgress,
    branch: usize,
    pending: u64,
    /// Shared total as of the last poll.
    seen: u64,
    stop: Option<Stop>,
}

impl<'a> Meter<'a> {
    fn new(
        budget: Budget,
        clock: &'a dyn Clock,
        shared: &'a SharedProgress,
        branch: usize,
    ) -> Self {
        Meter {
            budget,
            clock,
            shared,
            branch,
            pending: 0,
            seen: shared.nodes(),
            stop: None,
        }
    }

    /// Counts one node; false once the search must stop.
    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending < POLL_INTERVAL && self.seen + self.pending < self.budget.max_nodes {
            return true;
        }
        self.poll()
    }

    fn poll(&mut self) -> bool {
        let total = self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        self.seen = total;
        if self.stop.is_some() {
            return false;
        }
        if let Some(stop) = Stop::from_code(self.shared.stop.load(Ordering::Relaxed)) {
            self.stop = Some(stop);
        } else if total >= self.budget.max_nodes {
            self.stop = Some(Stop::Nodes);
        } else if let (Some(limit), Some(now)) = (self.budget.time_limit, self.clock.elapsed()) {
            if now >= limit {
                self.stop = Some(Stop::Time);
            }
        }
        if let Some(stop) = self.stop {
            self.shared.stop.store(stop.code(), Ordering::Relaxed);
        } else if self.shared.sat_branch.load(Ordering::Relaxed) < self.branch {
            self.stop = Some(Stop::Cancelled);
        }
        self.stop.is_none()
    }

    fn finish(&mut self) {
        self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed);
        self.pending = 0;
    }
}
