use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::sync::atomic::Ordering;

use super::{Budget, Clock, Meter, NoClock, SearchOutcome, SharedProgress, Stop, Verdict};
use crate::bounds::max_r;
use crate::decomposition::{require_verified, MatchingDecomposition};
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::rational::Rational;

/// Largest `n` the bitmask search handles.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Answer UNSAT without searching when `r > max_r(n, t)`.
    pub eq1_shortcut: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::default(),
            eq1_shortcut: true,
        }
    }
}

/// How one top-level branch ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchResult {
    Sat(Vec<Vec<Edge>>),
    Unsat,
    OutOfBudget(String),
    /// A lower-index branch already found a certificate.
    Cancelled,
}

/// Decides whether an `(r, t)`-RS graph on `n` vertices exists.
///
/// Time limits need a clock; see [`exists_rs_with_clock`].
pub fn exists_rs(n: usize, r: usize, t: usize, options: &SearchOptions) -> Result<SearchOutcome> {
    exists_rs_with_clock(n, r, t, options, &NoClock)
}

pub fn exists_rs_with_clock(
    n: usize,
    r: usize,
    t: usize,
    options: &SearchOptions,
    clock: &dyn Clock,
) -> Result<SearchOutcome> {
    ExistsSearch::new(n, r, t, *options)?.run(clock)
}

/// A prepared existence search, split into independent top-level branches.
///
/// The first matching is forced to `{01, 23, ...}` by the symmetry
/// reduction; the branches are the admissible first edges of the second
/// matching, in increasing order. Branches may run on separate threads
/// sharing one [`SharedProgress`]; [`ExistsSearch::combine`] then picks the
/// lowest-index certificate, so the result matches a serial run whenever
/// the budget is not hit.
#[derive(Debug, Clone)]
pub struct ExistsSearch {
    n: usize,
    r: usize,
    t: usize,
    options: SearchOptions,
    plan: Plan,
}

#[derive(Debug, Clone)]
enum Plan {
    /// Answered without search.
    Decided { verdict: Verdict, note: String },
    Branches {
        root: State,
        first_edges: Vec<Option<(usize, usize)>>,
    },
}

impl ExistsSearch {
    pub fn new(n: usize, r: usize, t: usize, options: SearchOptions) -> Result<Self> {
        if 2 * r as u128 > n as u128 {
            return Err(Error::ImpossibleParameters {
                n: n as u64,
                r: r as u64,
            });
        }
        if r == 0 {
            return Err(Error::Parameter("r must be positive".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::Parameter(format!(
                "search supports n <= {MAX_VERTICES}, got {n}"
            )));
        }
        let bound = max_r(n as u64, t as u64);
        let plan = if t == 0 {
            Plan::Decided {
                verdict: Verdict::Sat,
                note: String::from("t = 0: the edgeless graph"),
            }
        } else if options.eq1_shortcut && Rational::from_integer(r as i128) > bound {
            Plan::Decided {
                verdict: Verdict::Unsat,
                note: format!("r = {r} exceeds max_r({n}, {t}) = {bound}; not searched"),
            }
        } else {
            let mut root = State::new(n, r, t);
            for k in 0..r {
                root.place(0, 2 * k, 2 * k + 1);
            }
            let first_edges = if t == 1 {
                alloc::vec![None]
            } else {
                root.candidates(1).into_iter().map(Some).collect()
            };
            Plan::Branches { root, first_edges }
        };
        Ok(ExistsSearch {
            n,
            r,
            t,
            options,
            plan,
        })
    }

    pub fn branch_count(&self) -> usize {
        match &self.plan {
            Plan::Decided { .. } => 0,
            Plan::Branches { first_edges, .. } => first_edges.len(),
        }
    }

    /// Explores branch `index` to completion or until the budget runs out.
    pub fn run_branch(
        &self,
        index: usize,
        shared: &SharedProgress,
        clock: &dyn Clock,
    ) -> BranchResult {
        let Plan::Branches { root, first_edges } = &self.plan else {
            return BranchResult::Unsat;
        };
        let mut meter = Meter::new(self.options.budget, clock, shared, index);
        if shared.sat_branch.load(Ordering::Relaxed) < index {
            return BranchResult::Cancelled;
        }
        let mut state = root.clone();
        let flow = match first_edges[index] {
            None => state.dfs(1, &mut meter),
            Some((a, b)) => {
                meter.tick();
                state.place(1, a, b);
                state.dfs(1, &mut meter)
            }
        };
        meter.finish();
        match flow {
            Flow::Found => {
                shared.sat_branch.fetch_min(index, Ordering::Relaxed);
                BranchResult::Sat(state.found.take().unwrap_or_default())
            }
            Flow::Exhausted => BranchResult::Unsat,
            Flow::Stopped => match meter.stop {
                Some(Stop::Cancelled) | None => BranchResult::Cancelled,
                Some(stop) => BranchResult::OutOfBudget(stop.note(&self.options.budget)),
            },
        }
    }

    /// Aggregates branch results (indexed like the branches; `None` for a
    /// branch that never ran).
    pub fn combine(
        &self,
        results: &[Option<BranchResult>],
        shared: &SharedProgress,
        clock: &dyn Clock,
    ) -> Result<SearchOutcome> {
        let mut outcome = SearchOutcome {
            verdict: Verdict::Unsat,
            certificate: None,
            nodes_explored: shared.nodes(),
            wall_time: clock.elapsed(),
            note: None,
        };
        if let Plan::Decided { verdict, note } = &self.plan {
            outcome.verdict = *verdict;
            outcome.note = Some(note.clone());
            if *verdict == Verdict::Sat {
                outcome.certificate = Some(self.certify(Vec::new())?);
            }
            return Ok(outcome);
        }
        let first_sat = results
            .iter()
            .position(|res| matches!(res, Some(BranchResult::Sat(_))));
        if let Some(i) = first_sat {
            let Some(BranchResult::Sat(matchings)) = &results[i] else {
                unreachable!()
            };
            outcome.verdict = Verdict::Sat;
            outcome.certificate = Some(self.certify(matchings.clone())?);
            if results[..i]
                .iter()
                .any(|res| res != &Some(BranchResult::Unsat))
            {
                outcome.note = Some(format!(
                    "certificate from branch {i}; earlier branches unresolved"
                ));
            }
            return Ok(outcome);
        }
        let unresolved = results
            .iter()
            .filter(|res| *res != &Some(BranchResult::Unsat))
            .count();
        if unresolved > 0 {
            outcome.verdict = Verdict::Indeterminate;
            let reason = results.iter().find_map(|res| match res {
                Some(BranchResult::OutOfBudget(note)) => Some(note.clone()),
                _ => None,
            });
            outcome.note = Some(format!(
                "{}; {unresolved} of {} branches unresolved",
                reason.unwrap_or_else(|| String::from("budget exhausted")),
                results.len()
            ));
        } else {
            outcome.note = Some(format!("exhausted {} branches", results.len()));
        }
        Ok(outcome)
    }

    /// Runs all branches in order on the current thread.
    pub fn run(&self, clock: &dyn Clock) -> Result<SearchOutcome> {
        let shared = SharedProgress::default();
        let mut results = alloc::vec![None; self.branch_count()];
        for (i, slot) in results.iter_mut().enumerate() {
            let res = self.run_branch(i, &shared, clock);
            let stop = !matches!(res, BranchResult::Unsat);
            *slot = Some(res);
            if stop {
                break;
            }
        }
        self.combine(&results, &shared, clock)
    }

    fn certify(&self, matchings: Vec<Vec<Edge>>) -> Result<MatchingDecomposition> {
        let dec = MatchingDecomposition::from_matchings(self.n, matchings, self.r)?;
        debug_assert_eq!(
            dec.t(),
            if matches!(self.plan, Plan::Decided { .. }) {
                0
            } else {
                self.t
            }
        );
        require_verified(&dec)?;
        Ok(dec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Found,
    Exhausted,
    Stopped,
}

/// Partial decomposition with bitmask bookkeeping.
///
/// Canonical form enforced on the edge sequence (matchings in order, edges
/// in order within a matching):
/// - edges inside a matching increase lexicographically;
/// - first edges of consecutive matchings increase;
/// - vertices are introduced in label order: an edge may use the next
///   unused label `m`, and an edge with two unused endpoints is `(m, m+1)`.
///
/// Every decomposition has a relabeling and reordering of this form
/// (always take the smallest available edge, labeling fresh vertices on
/// first use), so exhausting the reduced space is a proof of nonexistence.
#[derive(Debug, Clone)]
struct State {
    n: usize,
    r: usize,
    t: usize,
    adj: Vec<u64>,
    degree: Vec<usize>,
    /// `V_i` for every matching.
    sets: Vec<u64>,
    matchings: Vec<Vec<(usize, usize)>>,
    /// Labels `0..used` have appeared on some edge.
    used: usize,
    found: Option<Vec<Vec<Edge>>>,
}

impl State {
    fn new(n: usize, r: usize, t: usize) -> Self {
        State {
            n,
            r,
            t,
            adj: alloc::vec![0; n],
            degree: alloc::vec![0; n],
            sets: alloc::vec![0; t],
            matchings: alloc::vec![Vec::with_capacity(r); t],
            used: 0,
            found: None,
        }
    }

    fn place(&mut self, i: usize, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        self.degree[a] += 1;
        self.degree[b] += 1;
        self.sets[i] |= (1 << a) | (1 << b);
        self.matchings[i].push((a, b));
        self.used = self.used.max(b + 1);
    }

    fn unplace(&mut self, i: usize, a: usize, b: usize, used: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
        self.degree[a] -= 1;
        self.degree[b] -= 1;
        self.sets[i] &= !((1 << a) | (1 << b));
        self.matchings[i].pop();
        self.used = used;
    }

    /// Edges that may extend matching `i`, in increasing order.
    fn candidates(&self, i: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.for_each_candidate(i, |a, b| {
            out.push((a, b));
            true
        });
        out
    }

    /// Calls `f` on every admissible next edge of matching `i` until it
    /// returns false.
    fn for_each_candidate(&self, i: usize, mut f: impl FnMut(usize, usize) -> bool) {
        let n = self.n;
        let m = self.used;
        let k = self.matchings[i].len();
        let lower = match self.matchings[i].last() {
            Some(&e) => Some(e),
            None if i > 0 => Some(self.matchings[i - 1][0]),
            None => None,
        };
        let a_start = lower.map_or(0, |(a, _)| a);
        let a_end = m.min(n.saturating_sub(2));
        for a in a_start..=a_end {
            if self.sets[i] & (1 << a) != 0 || self.adj[a] & self.sets[i] != 0 {
                continue;
            }
            let b_start = match lower {
                Some((la, lb)) if la == a => lb + 1,
                _ => a + 1,
            };
            let (lo, hi) = if a < m {
                (b_start, m.min(n - 1))
            } else {
                (b_start.max(m + 1), m + 1)
            };
            for b in lo..=hi {
                if b >= n {
                    break;
                }
                if self.admissible(i, k, a, b) && !f(a, b) {
                    return;
                }
            }
        }
    }

    fn admissible(&self, i: usize, k: usize, a: usize, b: usize) -> bool {
        let (ba, bb) = (1u64 << a, 1u64 << b);
        let set = self.sets[i] | ba | bb;
        // Matching, edge-disjointness, and earlier edges not inside V_i.
        if self.sets[i] & bb != 0 || self.adj[a] & bb != 0 || self.adj[b] & self.sets[i] != 0 {
            return false;
        }
        for j in 0..i {
            let other = self.sets[j];
            // The new edge inside V_j, or V_i ∩ V_j too large.
            if (other & ba != 0 && other & bb != 0) || (set & other).count_ones() as usize > self.r
            {
                return false;
            }
        }
        // Degree sums, which only grow.
        let cap = self.t + 1;
        let (da, db) = (self.degree[a] + 1, self.degree[b] + 1);
        if da + db > cap {
            return false;
        }
        for (x, dx) in [(a, da), (b, db)] {
            let mut rest = self.adj[x];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if dx + self.degree[w] > cap {
                    return false;
                }
            }
        }
        // Later edges of this matching lie strictly above vertex a.
        let remaining = self.r - k - 1;
        let above = if a + 1 >= 64 { 0 } else { !0u64 << (a + 1) };
        let in_range = if self.n >= 64 {
            !0u64
        } else {
            (1u64 << self.n) - 1
        };
        (above & in_range & !set).count_ones() as usize >= 2 * remaining
    }

    fn dfs(&mut self, i: usize, meter: &mut Meter<'_>) -> Flow {
        if i == self.t {
            self.found = Some(
                self.matchings
                    .iter()
                    .map(|m| m.iter().map(|&(a, b)| Edge::of(a, b)).collect())
                    .collect(),
            );
            return Flow::Found;
        }
        if self.matchings[i].len() == self.r {
            return self.dfs(i + 1, meter);
        }
        let mut flow = Flow::Exhausted;
        let candidates = self.candidates(i);
        for (a, b) in candidates {
            if !meter.tick() {
                return Flow::Stopped;
            }
            let used = self.used;
            self.place(i, a, b);
            let inner = self.dfs(i, meter);
            self.unplace(i, a, b, used);
            if inner != Flow::Exhausted {
                flow = inner;
                break;
            }
        }
        flow
    }
}
