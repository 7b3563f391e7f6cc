//! Undirected simple graphs on dense vertex labels `0..n`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Unordered vertex pair stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Normalizes the pair; rejects self-loops.
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            core::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            core::cmp::Ordering::Equal => {
                Err(Error::MalformedInput(format!("self-loop at vertex {a}")))
            }
        }
    }

    /// Caller guarantees `a != b`.
    pub(crate) fn of(a: Vertex, b: Vertex) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        [self.u, self.v]
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Immutable simple graph. Edges are kept sorted; adjacency is answered in
/// expected O(1) through a hash set.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<Vertex>>,
    edge_set: HashSet<Edge>,
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints and duplicate edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list: Vec<Edge> = edges.into_iter().collect();
        for e in &list {
            if e.v >= n {
                return Err(Error::MalformedInput(format!(
                    "edge {e} has an endpoint outside 0..{n}"
                )));
            }
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!("duplicate edge {}", w[0])));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// Convenience constructor from raw pairs.
    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, edges)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        let mut neighbors = alloc::vec![Vec::new(); n];
        for e in &edges {
            neighbors[e.u].push(e.v);
            neighbors[e.v].push(e.u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let edge_set = edges.iter().copied().collect();
        Graph {
            n,
            edges,
            neighbors,
            edge_set,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in increasing `(u, v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, x: Vertex) -> &[Vertex] {
        &self.neighbors[x]
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.neighbors[x].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && a < self.n && b < self.n && self.edge_set.contains(&Edge::of(a, b))
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edge_set.contains(e)
    }

    pub fn is_regular(&self) -> bool {
        self.neighbors.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// A proper 2-coloring if the graph is bipartite. Isolated vertices and
    /// component roots get color 0.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        const UNSEEN: u8 = u8::MAX;
        let mut color = alloc::vec![UNSEEN; self.n];
        let mut stack = Vec::new();
        for root in 0..self.n {
            if color[root] != UNSEEN {
                continue;
            }
            color[root] = 0;
            stack.push(root);
            while let Some(x) = stack.pop() {
                for &y in &self.neighbors[x] {
                    if color[y] == UNSEEN {
                        color[y] = 1 - color[x];
                        stack.push(y);
                    } else if color[y] == color[x] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = alloc::vec![usize::MAX; self.n];
        let mut parent = alloc::vec![usize::MAX; self.n];
        let mut queue = alloc::collections::VecDeque::new();
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for &y in &self.neighbors[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_normalizes_and_rejects_loops() {
        assert_eq!(Edge::new(3, 1).unwrap(), Edge::new(1, 3).unwrap());
        assert!(Edge::new(2, 2).is_err());
    }

    #[test]
    fn rejects_duplicates_and_out_of_range() {
        assert!(Graph::from_pairs(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_pairs(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.has_edge(a, b), g.has_edge(b, a));
            }
        }
        assert!(!g.has_edge(0, 0));
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn bipartite_and_girth() {
        let triangle = Graph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!triangle.is_bipartite());
        assert_eq!(triangle.girth(), Some(3));
        let c6 = Graph::from_pairs(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        assert!(c6.is_bipartite());
        assert_eq!(c6.girth(), Some(6));
        let path = Graph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
    }
}
