//! Executable audit of the expansion argument bounding `t` when `r = n/4`.
//!
//! The audit works on a bipartite decomposition (non-bipartite input is
//! replaced by its double cover, which keeps `r/n` and `t`). It classifies
//! edges by degree sum, strips low-degree vertices from the heavy-edge
//! subgraph to get a core `F`, and checks the incidence-distance claims and
//! binomial layer growth on `F`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constructions::double_cover;
use crate::decomposition::{require_verified, MatchingDecomposition};
use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::rational::{binomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum AssertionStatus {
    Pass,
    Fail,
    NotApplicable,
    /// Reported, not asserted.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Assertion {
    pub name: &'static str,
    pub status: AssertionStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum LayerBound {
    /// `|N_i| >= C(s, i)` with `s = ceil(t/8)`, BFS in the core `F`.
    Weaker,
    /// `|N'_{2i}| >= C(s', i) C(s'-1, i)` and `|N'_{2i+1}| >= C(s', i+1) C(s'-1, i)`
    /// with `s' = floor(E_1 / n)`, BFS in the core `F'` of the `t+1` edges.
    Sharpened,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LayerRow {
    pub bound: LayerBound,
    pub depth: usize,
    pub size: usize,
    pub lower_bound: u128,
    pub asserted: bool,
    pub holds: bool,
}

/// First violation of the incidence-distance claim: `u` at distance `k`
/// from `v` in `F` with `|A_u ∩ A_v| > k` (odd `k`) or `|A_u \ A_v| > k`
/// (even `k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BfsWitness {
    pub source: Vertex,
    pub target: Vertex,
    pub distance: usize,
    pub measured: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AuditReport {
    /// Parameters of the audited (bipartite) decomposition.
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub double_covered: bool,
    pub edges: usize,
    /// Edges with `d_u + d_v = t + 1`.
    pub e1: usize,
    /// Edges with `d_u + d_v = t`.
    pub e0: usize,
    /// `e_neg[j - 1]` counts edges with `d_u + d_v = t - j`.
    pub e_neg: Vec<usize>,
    /// Edges with `d_u + d_v > t + 1`; zero for any RS decomposition.
    pub e_above: usize,
    /// `Σ_{uv ∈ E} (d_u + d_v - t)`, which equals `Σ_v d_v^2 - t |E|`.
    pub excess_sum: i128,
    #[cfg_attr(
        feature = "serde",
        serde(serialize_with = "crate::rational::serde_string::serialize")
    )]
    pub s: Rational,
    #[cfg_attr(
        feature = "serde",
        serde(serialize_with = "crate::rational::serde_string::serialize")
    )]
    pub s_prime: Rational,
    pub f_vertices: usize,
    pub f_edges: usize,
    pub f_min_degree: Option<usize>,
    pub bfs_pairs_checked: u64,
    pub bfs_violations: u64,
    pub bfs_witness: Option<BfsWitness>,
    pub layers: Vec<LayerRow>,
    pub assertions: Vec<Assertion>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.assertions
            .iter()
            .all(|a| a.status != AssertionStatus::Fail)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }
}

pub const EDGE_CLASSES: &str = "edge-class-partition";
pub const DEGREE_SUM: &str = "degree-sum-at-most-t-plus-1";
pub const INCIDENCE: &str = "incidence-equals-degree";
pub const SQUARE_SUM: &str = "degree-square-excess";
pub const HEAVY_EDGES: &str = "heavy-edge-count";
pub const CORE: &str = "min-degree-core";
pub const BFS: &str = "bfs-incidence-distance";
pub const LAYERS: &str = "layer-growth";

fn check(assertions: &mut Vec<Assertion>, name: &'static str, ok: bool, detail: String) {
    let status = if ok {
        AssertionStatus::Pass
    } else {
        AssertionStatus::Fail
    };
    assertions.push(Assertion {
        name,
        status,
        detail,
    });
}

/// Runs the audit on a verified decomposition.
pub fn expansion_audit(dec: &MatchingDecomposition) -> Result<AuditReport> {
    require_verified(dec)?;
    let covered;
    let (dec, double_covered) = if dec.graph().is_bipartite() {
        (dec, false)
    } else {
        covered = double_cover(dec)?;
        (&covered, true)
    };
    let g = dec.graph();
    let (n, r, t) = (dec.n(), dec.r(), dec.t());
    let quarter = 4 * r == n;
    let degrees = g.degrees();
    let incidence = dec.incidence_sets();
    let mut assertions = Vec::new();

    // Edge classes by degree sum.
    let (mut e1, mut e0, mut e_above) = (0, 0, 0);
    let mut e_neg = alloc::vec![0usize; t];
    let mut excess_sum: i128 = 0;
    for e in g.edges() {
        let sum = degrees[e.u()] + degrees[e.v()];
        excess_sum += sum as i128 - t as i128;
        match sum.cmp(&t) {
            core::cmp::Ordering::Greater if sum == t + 1 => e1 += 1,
            core::cmp::Ordering::Greater => e_above += 1,
            core::cmp::Ordering::Equal => e0 += 1,
            core::cmp::Ordering::Less => e_neg[t - sum - 1] += 1,
        }
    }
    let m = g.edge_count();
    let classified = e1 + e0 + e_above + e_neg.iter().sum::<usize>();
    check(
        &mut assertions,
        EDGE_CLASSES,
        classified == m,
        format!(
            "E1 + E0 + sum E_-j = {} (+{e_above} above) of {m} edges",
            e1 + e0 + e_neg.iter().sum::<usize>()
        ),
    );
    check(
        &mut assertions,
        DEGREE_SUM,
        e_above == 0,
        format!("{e_above} edges with d_u + d_v > t + 1"),
    );

    let bad_incidence = (0..n).find(|&v| incidence[v].count_ones(..) != degrees[v]);
    check(
        &mut assertions,
        INCIDENCE,
        bad_incidence.is_none(),
        match bad_incidence {
            None => String::from("|A_v| = d_v for every vertex"),
            Some(v) => format!(
                "vertex {v}: |A_v| = {} but d_v = {}",
                incidence[v].count_ones(..),
                degrees[v]
            ),
        },
    );

    let square_sum: i128 = degrees.iter().map(|&d| (d * d) as i128).sum();
    let identity = square_sum - (t as i128) * (m as i128) == excess_sum;
    if quarter {
        check(
            &mut assertions,
            SQUARE_SUM,
            identity && excess_sum >= 0,
            format!("sum (d_u + d_v - t) = sum d^2 - t e = {excess_sum} >= 0"),
        );
        let lhs = 4 * (2 * e1 + e0) as u128;
        let rhs = (n as u128) * (t as u128);
        check(
            &mut assertions,
            HEAVY_EDGES,
            lhs >= rhs,
            format!(
                "2E1 + E0 = {} vs nt/4 = {}",
                2 * e1 + e0,
                Rational::new(rhs as i128, 4)
            ),
        );
    } else {
        check(
            &mut assertions,
            SQUARE_SUM,
            identity,
            format!("identity only (r != n/4): excess sum {excess_sum}"),
        );
        assertions.push(Assertion {
            name: HEAVY_EDGES,
            status: AssertionStatus::NotApplicable,
            detail: format!("r = {r} != n/4 = {}", Rational::new(n as i128, 4)),
        });
    }

    // Core F of the heavy-edge subgraph H (edges with d_u + d_v >= t),
    // stripped to minimum degree >= t/8.
    let heavy = subgraph(g, |u, v| degrees[u] + degrees[v] >= t);
    let core_f = strip(&heavy, |deg| 8 * deg >= t);
    let f_vertices = core_f.iter().filter(|&&keep| keep).count();
    let f_adj = restrict(&heavy, &core_f);
    let f_edges = f_adj.iter().map(Vec::len).sum::<usize>() / 2;
    let f_min_degree = (0..n).filter(|&v| core_f[v]).map(|v| f_adj[v].len()).min();
    let core_detail = match f_min_degree {
        Some(d) => format!(
            "F has {f_vertices} vertices, {f_edges} edges, min degree {d} (threshold t/8 = {})",
            Rational::new(t as i128, 8)
        ),
        None => format!(
            "F is empty (threshold t/8 = {})",
            Rational::new(t as i128, 8)
        ),
    };
    if quarter && m > 0 {
        check(&mut assertions, CORE, f_vertices > 0, core_detail);
    } else {
        assertions.push(Assertion {
            name: CORE,
            status: AssertionStatus::Info,
            detail: core_detail,
        });
    }

    // Incidence-distance claims from every vertex of F.
    let mut bfs_pairs_checked = 0u64;
    let mut bfs_violations = 0u64;
    let mut bfs_witness = None;
    let mut dist = alloc::vec![usize::MAX; n];
    for source in (0..n).filter(|&v| core_f[v]) {
        bfs(&f_adj, source, &mut dist);
        for target in 0..n {
            let k = dist[target];
            if k == usize::MAX {
                continue;
            }
            bfs_pairs_checked += 1;
            let shared = incidence[target].intersection_count(&incidence[source]);
            let measured = if k % 2 == 1 {
                shared
            } else {
                incidence[target].count_ones(..) - shared
            };
            if measured > k {
                bfs_violations += 1;
                bfs_witness.get_or_insert(BfsWitness {
                    source,
                    target,
                    distance: k,
                    measured,
                });
            }
        }
    }
    check(
        &mut assertions,
        BFS,
        bfs_violations == 0,
        format!("{bfs_violations} violations over {bfs_pairs_checked} (source, target) pairs"),
    );

    // Layer growth from the smallest vertex of F.
    let mut layers = Vec::new();
    let s_int = t.div_ceil(8);
    if let Some(root) = (0..n).find(|&v| core_f[v]) {
        let sizes = layer_sizes(&f_adj, root, &mut dist);
        for depth in 0..=s_int {
            let size = sizes.get(depth).copied().unwrap_or(0);
            let lower_bound = binomial(s_int as u128, depth as u128);
            layers.push(LayerRow {
                bound: LayerBound::Weaker,
                depth,
                size,
                lower_bound,
                asserted: true,
                holds: size as u128 >= lower_bound,
            });
        }
        let bad = layers.iter().find(|row| !row.holds);
        check(
            &mut assertions,
            LAYERS,
            bad.is_none(),
            match bad {
                None => format!("|N_i| >= C({s_int}, i) for i <= {s_int} from root {root}"),
                Some(row) => format!(
                    "|N_{}| = {} < C({s_int}, {}) = {}",
                    row.depth, row.size, row.depth, row.lower_bound
                ),
            },
        );
    } else {
        assertions.push(Assertion {
            name: LAYERS,
            status: AssertionStatus::NotApplicable,
            detail: String::from("F is empty"),
        });
    }

    // Sharpened rows on the core of the t+1 edges, informational only.
    let s_prime = if n == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(e1 as i128, n as i128)
    };
    if e1 > 0 {
        let tight = subgraph(g, |u, v| degrees[u] + degrees[v] == t + 1);
        let core_fp = strip(&tight, |deg| deg * n >= e1);
        let fp_adj = restrict(&tight, &core_fp);
        if let Some(root) = (0..n).find(|&v| core_fp[v]) {
            let sizes = layer_sizes(&fp_adj, root, &mut dist);
            let sp = (e1 / n) as u128;
            for i in 0..=sp as usize {
                let i_u = i as u128;
                let even = binomial(sp, i_u) * binomial(sp.saturating_sub(1), i_u);
                let odd = binomial(sp, i_u + 1) * binomial(sp.saturating_sub(1), i_u);
                for (depth, lower_bound) in [(2 * i, even), (2 * i + 1, odd)] {
                    let size = sizes.get(depth).copied().unwrap_or(0);
                    layers.push(LayerRow {
                        bound: LayerBound::Sharpened,
                        depth,
                        size,
                        lower_bound,
                        asserted: false,
                        holds: size as u128 >= lower_bound,
                    });
                }
            }
        }
    }

    Ok(AuditReport {
        n,
        r,
        t,
        double_covered,
        edges: m,
        e1,
        e0,
        e_neg,
        e_above,
        excess_sum,
        s: if n == 0 {
            Rational::from_integer(0)
        } else {
            Rational::new((e1 + e0) as i128, n as i128)
        },
        s_prime,
        f_vertices,
        f_edges,
        f_min_degree,
        bfs_pairs_checked,
        bfs_violations,
        bfs_witness,
        layers,
        assertions,
    })
}

fn subgraph(g: &Graph, keep: impl Fn(Vertex, Vertex) -> bool) -> Vec<Vec<Vertex>> {
    let mut adj = alloc::vec![Vec::new(); g.n()];
    for e in g.edges() {
        if keep(e.u(), e.v()) {
            adj[e.u()].push(e.v());
            adj[e.v()].push(e.u());
        }
    }
    adj
}

/// Repeatedly deletes vertices whose remaining degree fails `ok`.
fn strip(adj: &[Vec<Vertex>], ok: impl Fn(usize) -> bool) -> Vec<bool> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = alloc::vec![true; n];
    let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| !ok(degree[v])).collect();
    for &v in &queue {
        alive[v] = false;
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if alive[w] {
                degree[w] -= 1;
                if !ok(degree[w]) {
                    alive[w] = false;
                    queue.push_back(w);
                }
            }
        }
    }
    alive
}

fn restrict(adj: &[Vec<Vertex>], alive: &[bool]) -> Vec<Vec<Vertex>> {
    adj.iter()
        .enumerate()
        .map(|(v, list)| {
            if alive[v] {
                list.iter().copied().filter(|&w| alive[w]).collect()
            } else {
                Vec::new()
            }
        })
        .collect()
}

fn bfs(adj: &[Vec<Vertex>], source: Vertex, dist: &mut [usize]) {
    dist.iter_mut().for_each(|d| *d = usize::MAX);
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
}

fn layer_sizes(adj: &[Vec<Vertex>], root: Vertex, dist: &mut [usize]) -> Vec<usize> {
    bfs(adj, root, dist);
    let mut sizes = Vec::new();
    for &d in dist.iter().filter(|&&d| d != usize::MAX) {
        if sizes.len() <= d {
            sizes.resize(d + 1, 0);
        }
        sizes[d] += 1;
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{hypercube_rs, kneser_rs};
    use crate::graph::Edge;

    #[test]
    fn q2_counts() {
        let report = expansion_audit(&hypercube_rs(2, false).unwrap()).unwrap();
        assert!(!report.double_covered);
        assert_eq!((report.e1, report.e0), (0, 4));
        assert_eq!(4 * (2 * report.e1 + report.e0), report.n * report.t);
        assert!(report.passed(), "{:#?}", report.assertions);
    }

    #[test]
    fn q4_augmented_is_tight() {
        let report = expansion_audit(&hypercube_rs(4, true).unwrap()).unwrap();
        // Antipodal edges join vertices of equal parity, so the audit runs on
        // the double cover: n = 32, t = 10, degree sum 10 everywhere.
        assert!(report.double_covered);
        assert_eq!((report.e1, report.e0, report.edges), (0, 80, 80));
        assert_eq!(4 * report.e0, report.n * report.t);
        assert_eq!(
            report.assertion(HEAVY_EDGES).unwrap().status,
            AssertionStatus::Pass
        );
        assert_eq!(report.bfs_violations, 0);
        assert!(report.passed());
    }

    #[test]
    fn path_with_isolated_vertex() {
        // P4 plus an isolated vertex: r = 1 < n/4.
        let dec = MatchingDecomposition::from_matchings(
            5,
            alloc::vec![
                alloc::vec![Edge::of(0, 1)],
                alloc::vec![Edge::of(1, 2)],
                alloc::vec![Edge::of(2, 3)]
            ],
            1,
        )
        .unwrap();
        let report = expansion_audit(&dec).unwrap();
        assert_eq!(
            report.assertion(DEGREE_SUM).unwrap().status,
            AssertionStatus::Pass
        );
        assert_eq!(
            report.assertion(HEAVY_EDGES).unwrap().status,
            AssertionStatus::NotApplicable
        );
        assert!(report.passed());
    }

    #[test]
    fn non_bipartite_input_is_covered() {
        let report = expansion_audit(&kneser_rs(2).unwrap()).unwrap();
        assert!(report.double_covered);
        assert_eq!((report.n, report.r, report.t), (20, 6, 5));
        // Petersen is 3-regular with t = 5: every edge has degree sum 6 = t + 1.
        assert_eq!(report.e1, 30);
        assert!(report.passed(), "{:#?}", report.assertions);
    }
}
