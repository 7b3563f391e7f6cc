use alloc::vec::Vec;

use super::{check_budget, ApFreeSet, DEFAULT_VERTEX_BUDGET};
use crate::decomposition::{require_pass, verify_decomposition, MatchingDecomposition};
use crate::error::{Error, Result};
use crate::graph::Edge;

/// Bipartite Cayley-type RS graph over `Z_N` from a 3-AP-free set `S`.
///
/// Parts are `X = 0..N` and `Y = N..2N`; `x ~ N + y` iff `(y - x) mod N ∈ S`.
/// Matching `z ∈ Z_N` is `{(z - 2a, N + z - a) : a ∈ S}`. For odd `N` and
/// `S ⊆ [1, (N-1)/3]` a stray edge `(z - 2a, N + z - b)` inside `V_z` would
/// force `b + c = 2a` for some `c ∈ S`, so every matching is induced. The
/// result is still certified by the verifier before it is returned.
///
/// Output parameters: `n = 2N`, `t = N`, `r = |S|`.
pub fn cayley_rs(modulus: u64, set: &ApFreeSet) -> Result<MatchingDecomposition> {
    if modulus.is_multiple_of(2) {
        return Err(Error::Parameter(alloc::format!(
            "cayley construction needs an odd modulus, got {modulus}"
        )));
    }
    if set.is_empty() {
        return Err(Error::Parameter(
            "cayley construction needs a nonempty set".into(),
        ));
    }
    let max = set.max().unwrap_or(0);
    if 3 * max > modulus - 1 {
        return Err(Error::Parameter(alloc::format!(
            "max(S) = {max} exceeds (N - 1) / 3 = {}; wraparound would create progressions",
            (modulus - 1) / 3
        )));
    }
    check_budget(
        "cayley vertices",
        2 * u128::from(modulus),
        DEFAULT_VERTEX_BUDGET,
    )?;
    let n = modulus as usize;
    let matchings = (0..modulus)
        .map(|z| {
            set.elements
                .iter()
                .map(|&a| {
                    let x = (z + 2 * (modulus - a)) % modulus;
                    let y = (z + modulus - a) % modulus;
                    Edge::of(x as usize, n + y as usize)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let dec = MatchingDecomposition::from_matchings(2 * n, matchings, set.len())?;
    require_pass(&verify_decomposition(&dec))?;
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{ap_free_set, ApMethod};

    fn set(elements: &[u64]) -> ApFreeSet {
        ApFreeSet::from_elements(elements.to_vec()).unwrap()
    }

    #[test]
    fn single_difference() {
        let dec = cayley_rs(5, &set(&[1])).unwrap();
        assert_eq!((dec.n(), dec.t(), dec.r()), (10, 5, 1));
    }

    #[test]
    fn n13_with_124() {
        let dec = cayley_rs(13, &set(&[1, 2, 4])).unwrap();
        assert_eq!((dec.n(), dec.t(), dec.r()), (26, 13, 3));
        assert_eq!(dec.graph().edge_count(), 39);
        assert!(dec.graph().is_bipartite());
    }

    #[test]
    fn n41_with_greedy_13() {
        let s = ap_free_set(ApMethod::GreedyBase3, 13).unwrap();
        let dec = cayley_rs(41, &s).unwrap();
        assert_eq!((dec.n(), dec.t(), dec.r()), (82, 41, 7));
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            cayley_rs(12, &set(&[1])),
            Err(Error::Parameter(_))
        ));
        // 5 > (13 - 1) / 3
        assert!(matches!(
            cayley_rs(13, &set(&[1, 5])),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn edge_to_matching_map_is_a_bijection() {
        let s = set(&[1, 2, 4]);
        let dec = cayley_rs(13, &s).unwrap();
        let n = 13u64;
        for (z, e) in dec.labeled_edges() {
            let x = e.u() as u64;
            let y = e.v() as u64 - n;
            assert_eq!(((2 * y + n - x) % n) as usize, z);
        }
    }
}
