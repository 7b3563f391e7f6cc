use alloc::vec::Vec;

use super::{check_budget, DEFAULT_VERTEX_BUDGET};
use crate::decomposition::{require_verified, MatchingDecomposition};
use crate::error::{Error, Result};
use crate::graph::Edge;

/// `copies` vertex-disjoint copies of a verified decomposition.
///
/// Copy `c` occupies labels `c*n .. (c+1)*n`. Matching `i` of the output is
/// the union of the translates of matching `i`, so `t` is unchanged, `r`
/// scales by `copies` and `r / n` is preserved.
pub fn disjoint_union(dec: &MatchingDecomposition, copies: usize) -> Result<MatchingDecomposition> {
    if copies == 0 {
        return Err(Error::Parameter(
            "disjoint union needs at least one copy".into(),
        ));
    }
    require_verified(dec)?;
    let n = dec.n();
    let total = (n as u128) * (copies as u128);
    check_budget("disjoint-union vertices", total, DEFAULT_VERTEX_BUDGET)?;
    let matchings = dec
        .matchings()
        .iter()
        .map(|m| {
            (0..copies)
                .flat_map(|c| {
                    m.iter()
                        .map(move |e| Edge::of(e.u() + c * n, e.v() + c * n))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    MatchingDecomposition::from_matchings(n * copies, matchings, dec.r() * copies)
}

/// Bipartite double cover `G × K_2` of a verified decomposition.
///
/// `(v, 0)` becomes `v` and `(v, 1)` becomes `v + n`. Each edge `(u, v)` of
/// matching `i` yields `(u, v + n)` and `(v, u + n)` in matching `i`, giving
/// a `(2r, t)` decomposition on `2n` vertices with parts `0..n`, `n..2n`.
pub fn double_cover(dec: &MatchingDecomposition) -> Result<MatchingDecomposition> {
    require_verified(dec)?;
    let n = dec.n();
    check_budget(
        "double-cover vertices",
        2 * n as u128,
        DEFAULT_VERTEX_BUDGET,
    )?;
    let matchings = dec
        .matchings()
        .iter()
        .map(|m| {
            m.iter()
                .flat_map(|e| [Edge::of(e.u(), e.v() + n), Edge::of(e.v(), e.u() + n)])
                .collect::<Vec<_>>()
        })
        .collect();
    MatchingDecomposition::from_matchings(2 * n, matchings, 2 * dec.r())
}
