//! Matching decompositions and the RS verifier.
//!
//! A decomposition is certified when every listed edge belongs to the graph,
//! the matchings partition the edge set, each has exactly `r` edges, and
//! each is an induced matching. The verifier additionally checks the two
//! edge-local consequences used by the bound proofs: `d_u + d_v <= t + 1`
//! on every edge and `|V_i ∩ V_j| <= r` for every pair of matchings.

use alloc::format;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::rational::{ratio, Rational};

/// A graph together with an ordered list of matchings claimed to be an
/// `(r, t)`-RS decomposition of it.
///
/// Construction only checks structure (endpoints in range, no edge listed
/// twice inside one matching) and sorts every matching. Whether the claim
/// holds is decided by [`verify_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingDecomposition {
    graph: Graph,
    matchings: Vec<Vec<Edge>>,
    r: usize,
}

impl MatchingDecomposition {
    pub fn new(graph: Graph, mut matchings: Vec<Vec<Edge>>, r: usize) -> Result<Self> {
        let n = graph.n();
        for (i, m) in matchings.iter_mut().enumerate() {
            m.sort_unstable();
            if let Some(e) = m.iter().find(|e| e.v() >= n) {
                return Err(Error::MalformedInput(format!(
                    "matching {i} lists edge {e} outside 0..{n}"
                )));
            }
            if let Some(w) = m.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::MalformedInput(format!(
                    "matching {i} lists edge {} twice",
                    w[0]
                )));
            }
        }
        Ok(MatchingDecomposition {
            graph,
            matchings,
            r,
        })
    }

    /// Builds the graph as the union of the matchings (the RS definition)
    /// and wraps it. Fails if two matchings share an edge.
    pub fn from_matchings(n: usize, matchings: Vec<Vec<Edge>>, r: usize) -> Result<Self> {
        let graph = Graph::new(n, matchings.iter().flatten().copied())?;
        Self::new(graph, matchings, r)
    }

    /// The vacuous decomposition of an edgeless graph.
    pub fn empty(n: usize) -> Self {
        MatchingDecomposition {
            graph: Graph::empty(n),
            matchings: Vec::new(),
            r: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matchings(&self) -> &[Vec<Edge>] {
        &self.matchings
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.matchings.len()
    }

    /// Endpoint set `V_i` of every matching.
    pub fn vertex_sets(&self) -> Vec<FixedBitSet> {
        self.matchings
            .iter()
            .map(|m| {
                let mut set = FixedBitSet::with_capacity(self.n());
                for e in m {
                    set.insert(e.u());
                    set.insert(e.v());
                }
                set
            })
            .collect()
    }

    /// `A_v`: the set of matching indices touching each vertex.
    pub fn incidence_sets(&self) -> Vec<FixedBitSet> {
        let mut sets = alloc::vec![FixedBitSet::with_capacity(self.t()); self.n()];
        for (i, m) in self.matchings.iter().enumerate() {
            for e in m {
                sets[e.u()].insert(i);
                sets[e.v()].insert(i);
            }
        }
        sets
    }

    /// Every edge labeled with its matching index, ordered by `(m, u, v)`.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (usize, Edge)> + '_ {
        self.matchings
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.iter().map(move |&e| (i, e)))
    }
}

/// Outcome of [`induced_matching_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "result", rename_all = "kebab-case"))]
pub enum InducedCheck {
    Pass,
    /// Two listed edges share `vertex`.
    NotMatching {
        vertex: Vertex,
    },
    /// `(u, v)` is an edge of the graph joining two endpoints of the
    /// matching without being one of its edges.
    NotInduced {
        u: Vertex,
        v: Vertex,
    },
}

impl InducedCheck {
    pub fn is_pass(&self) -> bool {
        matches!(self, InducedCheck::Pass)
    }
}

/// Checks that `m` is a matching of `g` and that no edge of `g` outside `m`
/// joins two of its endpoints. Witnesses are the lexicographically first
/// offender.
pub fn induced_matching_check(g: &Graph, m: &[Edge]) -> Result<InducedCheck> {
    if let Some(e) = m.iter().find(|e| !g.contains(e)) {
        return Err(Error::MalformedInput(format!(
            "edge {e} is not in the graph"
        )));
    }
    let mut sorted: Vec<Edge> = m.to_vec();
    sorted.sort_unstable();
    let mut endpoints: Vec<Vertex> = sorted.iter().flat_map(Edge::endpoints).collect();
    endpoints.sort_unstable();
    if let Some(w) = endpoints.windows(2).find(|w| w[0] == w[1]) {
        return Ok(InducedCheck::NotMatching { vertex: w[0] });
    }
    for &a in &endpoints {
        for &b in g.neighbors(a) {
            if b > a
                && endpoints.binary_search(&b).is_ok()
                && sorted.binary_search(&Edge::of(a, b)).is_err()
            {
                return Ok(InducedCheck::NotInduced { u: a, v: b });
            }
        }
    }
    Ok(InducedCheck::Pass)
}

/// Invariants checked by [`verify_decomposition`], in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Invariant {
    EdgeNotInGraph,
    NotEdgeDisjoint,
    UncoveredEdge,
    SizeMismatch,
    NotAMatching,
    NotInduced,
    DegreeSum,
    Intersection,
}

impl Invariant {
    pub fn name(&self) -> &'static str {
        match self {
            Invariant::EdgeNotInGraph => "edge-not-in-graph",
            Invariant::NotEdgeDisjoint => "not-edge-disjoint",
            Invariant::UncoveredEdge => "uncovered-edge",
            Invariant::SizeMismatch => "size-mismatch",
            Invariant::NotAMatching => "not-a-matching",
            Invariant::NotInduced => "not-induced",
            Invariant::DegreeSum => "degree-sum",
            Invariant::Intersection => "intersection",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum Witness {
    Edge {
        matching: Option<usize>,
        edge: Edge,
    },
    SharedEdge {
        edge: Edge,
        first: usize,
        second: usize,
    },
    Size {
        matching: usize,
        size: usize,
        expected: usize,
    },
    Vertex {
        matching: usize,
        vertex: Vertex,
    },
    Pair {
        matching: usize,
        u: Vertex,
        v: Vertex,
    },
    DegreeSum {
        edge: Edge,
        sum: usize,
        limit: usize,
    },
    Intersection {
        first: usize,
        second: usize,
        size: usize,
        limit: usize,
    },
}

/// One violated invariant: its first lexicographic offender and how many
/// offenders were found in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Violation {
    pub invariant: Invariant,
    pub witness: Witness,
    pub count: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationStats {
    pub n: usize,
    pub t: usize,
    pub r: usize,
    pub edges: usize,
    /// `degree_histogram[d]` = number of vertices of degree `d`.
    pub degree_histogram: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub max_degree_sum: usize,
    pub max_intersection: usize,
    pub isolated_vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
    pub stats: VerificationStats,
}

impl VerificationReport {
    pub fn violation(&self, invariant: Invariant) -> Option<&Violation> {
        self.violations.iter().find(|v| v.invariant == invariant)
    }
}

#[derive(Default)]
struct Collector {
    found: Vec<Violation>,
}

impl Collector {
    /// Offenders must be fed in lexicographic order per invariant.
    fn record(&mut self, invariant: Invariant, witness: Witness) {
        match self.found.iter_mut().find(|v| v.invariant == invariant) {
            Some(v) => v.count += 1,
            None => self.found.push(Violation {
                invariant,
                witness,
                count: 1,
            }),
        }
    }

    fn finish(mut self) -> Vec<Violation> {
        self.found.sort_by_key(|v| v.invariant);
        self.found
    }
}

/// Checks every decomposition invariant and collects all violations.
pub fn verify_decomposition(dec: &MatchingDecomposition) -> VerificationReport {
    let g = dec.graph();
    let n = g.n();
    let t = dec.t();
    let r = dec.r();
    let mut out = Collector::default();

    // Membership and the partition property.
    let mut owner: Vec<Option<usize>> = alloc::vec![None; g.edge_count()];
    for (i, e) in dec.labeled_edges() {
        match g.edges().binary_search(&e) {
            Err(_) => out.record(
                Invariant::EdgeNotInGraph,
                Witness::Edge {
                    matching: Some(i),
                    edge: e,
                },
            ),
            Ok(idx) => match owner[idx] {
                Some(first) => out.record(
                    Invariant::NotEdgeDisjoint,
                    Witness::SharedEdge {
                        edge: e,
                        first,
                        second: i,
                    },
                ),
                None => owner[idx] = Some(i),
            },
        }
    }
    for (idx, e) in g.edges().iter().enumerate() {
        if owner[idx].is_none() {
            out.record(
                Invariant::UncoveredEdge,
                Witness::Edge {
                    matching: None,
                    edge: *e,
                },
            );
        }
    }

    for (i, m) in dec.matchings().iter().enumerate() {
        if m.len() != r {
            out.record(
                Invariant::SizeMismatch,
                Witness::Size {
                    matching: i,
                    size: m.len(),
                    expected: r,
                },
            );
        }
    }

    // Matching and inducedness, per matching in index order.
    for (i, m) in dec.matchings().iter().enumerate() {
        let mut endpoints: Vec<Vertex> = m.iter().flat_map(Edge::endpoints).collect();
        endpoints.sort_unstable();
        let mut shared = endpoints.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]);
        if let Some(vertex) = shared.next() {
            out.record(
                Invariant::NotAMatching,
                Witness::Vertex {
                    matching: i,
                    vertex,
                },
            );
            for vertex in shared {
                out.record(
                    Invariant::NotAMatching,
                    Witness::Vertex {
                        matching: i,
                        vertex,
                    },
                );
            }
        }
        endpoints.dedup();
        for &a in &endpoints {
            for &b in g.neighbors(a) {
                if b > a
                    && endpoints.binary_search(&b).is_ok()
                    && m.binary_search(&Edge::of(a, b)).is_err()
                {
                    out.record(
                        Invariant::NotInduced,
                        Witness::Pair {
                            matching: i,
                            u: a,
                            v: b,
                        },
                    );
                }
            }
        }
    }

    // Degree-sum bound on the full graph.
    let degrees = g.degrees();
    let mut max_degree_sum = 0;
    for e in g.edges() {
        let sum = degrees[e.u()] + degrees[e.v()];
        max_degree_sum = max_degree_sum.max(sum);
        if sum > t + 1 {
            out.record(
                Invariant::DegreeSum,
                Witness::DegreeSum {
                    edge: *e,
                    sum,
                    limit: t + 1,
                },
            );
        }
    }

    // Pairwise intersections of endpoint sets.
    let sets = dec.vertex_sets();
    let mut max_intersection = 0;
    for i in 0..t {
        for j in i + 1..t {
            let size = sets[i].intersection_count(&sets[j]);
            max_intersection = max_intersection.max(size);
            if size > r {
                out.record(
                    Invariant::Intersection,
                    Witness::Intersection {
                        first: i,
                        second: j,
                        size,
                        limit: r,
                    },
                );
            }
        }
    }

    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let mut degree_histogram = alloc::vec![0; max_degree + 1];
    for &d in &degrees {
        degree_histogram[d] += 1;
    }
    let stats = VerificationStats {
        n,
        t,
        r,
        edges: g.edge_count(),
        min_degree: degrees.iter().copied().min().unwrap_or(0),
        max_degree,
        isolated_vertices: if n == 0 { 0 } else { degree_histogram[0] },
        degree_histogram,
        max_degree_sum,
        max_intersection,
    };
    let violations = out.finish();
    VerificationReport {
        pass: violations.is_empty(),
        violations,
        stats,
    }
}

/// The `(n, r, t)` triple with `c = r / n` as an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RsParameters {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    #[cfg_attr(
        feature = "serde",
        serde(serialize_with = "crate::rational::serde_string::serialize")
    )]
    pub c: Rational,
}

impl RsParameters {
    pub fn new(n: usize, r: usize, t: usize) -> Self {
        let c = if n == 0 {
            Rational::from_integer(0)
        } else {
            ratio(r as u64, n as u64)
        };
        RsParameters { n, r, t, c }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DecompositionStats {
    pub params: RsParameters,
    pub min_degree: usize,
    pub max_degree: usize,
    pub max_degree_sum: usize,
    pub max_intersection: usize,
    pub isolated_vertices: usize,
}

/// Parameters and extremal statistics of a decomposition that verifies.
pub fn decomposition_stats(dec: &MatchingDecomposition) -> Result<DecompositionStats> {
    let report = verify_decomposition(dec);
    require_pass(&report)?;
    let s = report.stats;
    Ok(DecompositionStats {
        params: RsParameters::new(s.n, s.r, s.t),
        min_degree: s.min_degree,
        max_degree: s.max_degree,
        max_degree_sum: s.max_degree_sum,
        max_intersection: s.max_intersection,
        isolated_vertices: s.isolated_vertices,
    })
}

pub(crate) fn require_pass(report: &VerificationReport) -> Result<()> {
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Precondition(format!(
            "decomposition does not verify ({} violated, first witness {:?})",
            v.invariant.name(),
            v.witness
        ))),
    }
}

pub(crate) fn require_verified(dec: &MatchingDecomposition) -> Result<()> {
    require_pass(&verify_decomposition(dec))
}
