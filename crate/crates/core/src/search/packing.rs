use alloc::format;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use super::{Budget, Clock, Meter, NoClock, SearchOutcome, SharedProgress, Verdict};
use crate::decomposition::{require_verified, MatchingDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Largest `n` supported by [`max_t_on_graph`].
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PackingOptions {
    pub budget: Budget,
    /// Require the matchings to cover every edge of the graph.
    pub exact_cover: bool,
}

pub fn max_t_on_graph(g: &Graph, r: usize, options: &PackingOptions) -> Result<SearchOutcome> {
    max_t_on_graph_with_clock(g, r, options, &NoClock)
}

/// Largest number of pairwise edge-disjoint induced `r`-matchings of `g`.
///
/// Inducedness is measured in `g`, so the union of the chosen matchings is
/// an RS graph whether or not it is all of `g`. With `exact_cover` the
/// union must be `E(g)`, `t = |E| / r` is forced and the verdict decides
/// decomposability. Without it, SAT means the certificate's `t` is
/// maximal; INDETERMINATE carries the best packing found so far.
pub fn max_t_on_graph_with_clock(
    g: &Graph,
    r: usize,
    options: &PackingOptions,
    clock: &dyn Clock,
) -> Result<SearchOutcome> {
    let m = g.edge_count();
    if r == 0 || r > m {
        return Err(Error::Parameter(format!(
            "need 1 <= r <= |E| = {m}, got r = {r}"
        )));
    }
    if options.exact_cover && !m.is_multiple_of(r) {
        return Err(Error::Parameter(format!(
            "exact cover needs r | |E|, but {r} does not divide {m}"
        )));
    }
    if g.n() > MAX_VERTICES {
        return Err(Error::Parameter(format!(
            "max_t_on_graph supports n <= {MAX_VERTICES}, got {}",
            g.n()
        )));
    }
    let shared = SharedProgress::default();
    let mut meter = Meter::new(options.budget, clock, &shared, 0);
    let matchings = match induced_matchings(g, r, &mut meter) {
        Some(list) => list,
        None => {
            meter.finish();
            return finish(
                g,
                r,
                Verdict::Indeterminate,
                Vec::new(),
                &shared,
                clock,
                Some(format!(
                    "{} while enumerating induced matchings",
                    meter
                        .stop
                        .map(|s| s.note(&options.budget))
                        .unwrap_or_default()
                )),
            );
        }
    };
    let mut by_edge = alloc::vec![Vec::new(); m];
    for (idx, mm) in matchings.iter().enumerate() {
        for &e in mm {
            by_edge[e].push(idx);
        }
    }
    let mut packer = Packer {
        r,
        exact: options.exact_cover,
        matchings: &matchings,
        by_edge: &by_edge,
        decided: FixedBitSet::with_capacity(m),
        undecided: m,
        chosen: Vec::new(),
        best: None,
        target: m / r,
    };
    packer.search(&mut meter);
    meter.finish();
    let best = packer.best.take().unwrap_or_default();
    let complete = best.len() == m / r;
    let edges: Vec<Vec<Edge>> = best
        .iter()
        .map(|&idx| matchings[idx].iter().map(|&e| g.edges()[e]).collect())
        .collect();
    let t = edges.len();
    let count = matchings.len();
    let (verdict, edges, note) = match meter.stop {
        Some(stop) if !(options.exact_cover && complete) => {
            let reason = stop.note(&options.budget);
            if options.exact_cover {
                (Verdict::Indeterminate, Vec::new(), reason)
            } else {
                (
                    Verdict::Indeterminate,
                    edges,
                    format!("{reason}; best t so far {t}"),
                )
            }
        }
        _ if options.exact_cover && complete => (
            Verdict::Sat,
            edges,
            format!("exact cover with t = {t} ({count} induced {r}-matchings)"),
        ),
        _ if options.exact_cover => (
            Verdict::Unsat,
            Vec::new(),
            format!("no exact cover ({count} induced {r}-matchings)"),
        ),
        _ => (
            Verdict::Sat,
            edges,
            format!("t = {t} is maximal ({count} induced {r}-matchings)"),
        ),
    };
    finish(g, r, verdict, edges, &shared, clock, Some(note))
}

fn finish(
    g: &Graph,
    r: usize,
    verdict: Verdict,
    matchings: Vec<Vec<Edge>>,
    shared: &SharedProgress,
    clock: &dyn Clock,
    note: Option<alloc::string::String>,
) -> Result<SearchOutcome> {
    let certificate = if verdict == Verdict::Unsat
        || (verdict == Verdict::Indeterminate && matchings.is_empty())
    {
        None
    } else {
        let dec = MatchingDecomposition::from_matchings(g.n(), matchings, r)?;
        require_verified(&dec)?;
        Some(dec)
    };
    Ok(SearchOutcome {
        verdict,
        certificate,
        nodes_explored: shared.nodes(),
        wall_time: clock.elapsed(),
        note,
    })
}

/// Induced `r`-matchings of `g` as sorted edge-index lists, in
/// lexicographic order. `None` if the budget ran out.
fn induced_matchings(g: &Graph, r: usize, meter: &mut Meter<'_>) -> Option<Vec<Vec<usize>>> {
    let nbr: Vec<u128> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u128, |acc, &w| acc | 1 << w))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    let ok = extend(g, r, &nbr, 0, 0, &mut current, &mut out, meter);
    ok.then_some(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    r: usize,
    nbr: &[u128],
    start: usize,
    covered: u128,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    meter: &mut Meter<'_>,
) -> bool {
    if current.len() == r {
        out.push(current.clone());
        return true;
    }
    let need = r - current.len();
    let edges = g.edges();
    for idx in start..edges.len() {
        if edges.len() - idx < need {
            break;
        }
        let (a, b) = (edges[idx].u(), edges[idx].v());
        let ends = (1u128 << a) | (1u128 << b);
        // Disjoint from the matching so far and not adjacent to it.
        if covered & ends != 0 || (nbr[a] | nbr[b]) & covered != 0 {
            continue;
        }
        if !meter.tick() {
            return false;
        }
        current.push(idx);
        let ok = extend(g, r, nbr, idx + 1, covered | ends, current, out, meter);
        current.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Branch and bound over edges: the undecided edge with the fewest live
/// candidate matchings is either covered by one of them or, outside exact
/// cover mode, left uncovered.
struct Packer<'a> {
    r: usize,
    exact: bool,
    matchings: &'a [Vec<usize>],
    by_edge: &'a [Vec<usize>],
    /// Edges already covered or given up on.
    decided: FixedBitSet,
    undecided: usize,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
    /// `floor(|E| / r)`: a packing of this size cannot be beaten.
    target: usize,
}

impl Packer<'_> {
    fn live(&self, idx: usize) -> bool {
        self.matchings[idx]
            .iter()
            .all(|&e| !self.decided.contains(e))
    }

    /// `Some(())` when the search can stop early (an exact cover was found,
    /// or a packing reached the trivial upper bound); `None` otherwise,
    /// including budget exhaustion (see `meter.stop`).
    fn search(&mut self, meter: &mut Meter<'_>) -> Option<()> {
        if self
            .best
            .as_ref()
            .is_none_or(|b| self.chosen.len() > b.len())
        {
            self.best = Some(self.chosen.clone());
            if self.chosen.len() == self.target {
                return Some(());
            }
        }
        if self.undecided == 0 {
            return None;
        }
        let best_len = self.best.as_ref().map_or(0, Vec::len);
        if !self.exact && self.chosen.len() + self.undecided / self.r <= best_len {
            return None;
        }
        // Pick the undecided edge with the fewest live candidates.
        let mut pick: Option<(usize, usize)> = None;
        for e in 0..self.by_edge.len() {
            if self.decided.contains(e) {
                continue;
            }
            let live = self.by_edge[e]
                .iter()
                .filter(|&&idx| self.live(idx))
                .count();
            if pick.is_none_or(|(_, c)| live < c) {
                pick = Some((e, live));
                if live == 0 {
                    break;
                }
            }
        }
        let (edge, _) = pick?;
        let (by_edge, matchings) = (self.by_edge, self.matchings);
        for &idx in &by_edge[edge] {
            if !self.live(idx) {
                continue;
            }
            if !meter.tick() {
                return None;
            }
            for &e in &matchings[idx] {
                self.decided.insert(e);
            }
            self.undecided -= self.r;
            self.chosen.push(idx);
            let done = self.search(meter);
            self.chosen.pop();
            self.undecided += self.r;
            for &e in &matchings[idx] {
                self.decided.set(e, false);
            }
            if done.is_some() || meter.stop.is_some() {
                return done;
            }
        }
        if !self.exact {
            if !meter.tick() {
                return None;
            }
            self.decided.insert(edge);
            self.undecided -= 1;
            let done = self.search(meter);
            self.undecided += 1;
            self.decided.set(edge, false);
            return done;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{hypercube_rs, kneser_rs};

    fn exact() -> PackingOptions {
        PackingOptions {
            exact_cover: true,
            ..PackingOptions::default()
        }
    }

    #[test]
    fn petersen_exact_cover() {
        let petersen = kneser_rs(2).unwrap();
        let out = max_t_on_graph(petersen.graph(), 3, &exact()).unwrap();
        assert_eq!(out.verdict, Verdict::Sat);
        assert_eq!(out.t(), Some(5));
        assert_eq!(out.certificate.unwrap().graph(), petersen.graph());
    }

    #[test]
    fn augmented_q4_exact_cover() {
        let q4 = hypercube_rs(4, true).unwrap();
        let out = max_t_on_graph(q4.graph(), 4, &exact()).unwrap();
        assert_eq!(out.verdict, Verdict::Sat);
        assert_eq!(out.t(), Some(10));
    }

    #[test]
    fn star_has_no_induced_two_matching() {
        let star = Graph::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let out = max_t_on_graph(&star, 2, &PackingOptions::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Sat);
        assert_eq!(out.t(), Some(0));
    }

    #[test]
    fn path_packing_is_not_a_cover() {
        // P5 = 0-1-2-3-4: {01, 34} is the only induced 2-matching.
        let path = Graph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let packed = max_t_on_graph(&path, 2, &PackingOptions::default()).unwrap();
        assert_eq!(packed.t(), Some(1));
        let cover = max_t_on_graph(&path, 2, &exact()).unwrap();
        assert_eq!(cover.verdict, Verdict::Unsat);
        assert!(cover.certificate.is_none());
    }

    #[test]
    fn exact_cover_needs_divisibility() {
        let triangle = Graph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            max_t_on_graph(&triangle, 2, &exact()),
            Err(Error::Parameter(_))
        ));
        assert!(max_t_on_graph(&triangle, 0, &PackingOptions::default()).is_err());
    }
}
