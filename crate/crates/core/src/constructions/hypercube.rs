use alloc::vec::Vec;

use super::{check_budget, DEFAULT_VERTEX_BUDGET};
use crate::decomposition::MatchingDecomposition;
use crate::error::{Error, Result};
use crate::graph::Edge;

/// Hypercube `Q_k` split into `2k` induced matchings of size `2^k / 4`.
///
/// Vertex labels are the integer values of the bit-vectors; coordinate `i`
/// is bit `i`. Matching `i < k` pairs each even-parity `v` having bit `i`
/// clear with `v ^ (1 << i)`; matching `k + i` does the same for odd-parity
/// `v`. With `augmented`, two more matchings pair antipodal vertices
/// (`u ^ v = all-ones`), first the even ones, then the odd ones. This needs
/// `k` even so antipodes share parity.
pub fn hypercube_rs(k: usize, augmented: bool) -> Result<MatchingDecomposition> {
    // Q_1 has a single edge; its odd-parity matching would be empty.
    if k < 2 {
        return Err(Error::Parameter(alloc::format!(
            "hypercube construction needs k >= 2 so that n / 4 is a whole matching, got k = {k}"
        )));
    }
    if augmented && k % 2 == 1 {
        return Err(Error::Parameter(alloc::format!(
            "augmented hypercube needs even k, got k = {k}"
        )));
    }
    if k >= usize::BITS as usize - 1 {
        return Err(Error::Resource {
            what: "hypercube dimension",
            needed: k as u128,
            budget: usize::BITS as u128 - 2,
        });
    }
    let n = 1usize << k;
    check_budget("hypercube vertices", n as u128, DEFAULT_VERTEX_BUDGET)?;

    let parity = |v: usize| v.count_ones() % 2;
    let mut matchings: Vec<Vec<Edge>> = Vec::with_capacity(2 * k + 2);
    for p in 0..2 {
        for i in 0..k {
            let bit = 1usize << i;
            matchings.push(
                (0..n)
                    .filter(|&v| parity(v) == p && v & bit == 0)
                    .map(|v| Edge::of(v, v | bit))
                    .collect(),
            );
        }
    }
    if augmented {
        let all = n - 1;
        for p in 0..2 {
            matchings.push(
                (0..n)
                    .filter(|&v| parity(v) == p && v < v ^ all)
                    .map(|v| Edge::of(v, v ^ all))
                    .collect(),
            );
        }
    }
    MatchingDecomposition::from_matchings(n, matchings, n / 4)
}
