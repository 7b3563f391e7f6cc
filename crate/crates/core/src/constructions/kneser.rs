use alloc::vec::Vec;

use super::{check_budget, DEFAULT_VERTEX_BUDGET};
use crate::decomposition::MatchingDecomposition;
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::rational::binomial;

/// Kneser graph `KG(2k+1, k)` with its `2k+1` induced matchings.
///
/// Vertices are the `k`-subsets of `{0, .., 2k}` in colex order. Matching
/// `i` holds the edges `(A, B)` with `A ∪ B = {0, .., 2k} \ {i}`. The result
/// has `n = C(2k+1, k)`, `t = 2k+1` and `r = C(2k, k) / 2`.
pub fn kneser_rs(k: usize) -> Result<MatchingDecomposition> {
    kneser_rs_with_budget(k, DEFAULT_VERTEX_BUDGET)
}

pub fn kneser_rs_with_budget(k: usize, vertex_budget: usize) -> Result<MatchingDecomposition> {
    if k == 0 {
        return Err(Error::Parameter("kneser construction needs k >= 1".into()));
    }
    let ground = 2 * k + 1;
    if ground > 63 {
        return Err(Error::Resource {
            what: "kneser ground set",
            needed: ground as u128,
            budget: 63,
        });
    }
    check_budget(
        "kneser vertices",
        binomial(ground as u128, k as u128),
        vertex_budget,
    )?;

    let subsets = colex_subsets(ground, k);
    let label = |mask: u64| {
        subsets
            .binary_search(&mask)
            .expect("complement of a k-subset inside a (k+1)-set is a k-subset")
    };
    let full = (1u64 << ground) - 1;
    let matchings = (0..ground)
        .map(|i| {
            let rest = full & !(1u64 << i);
            subsets
                .iter()
                .enumerate()
                .filter(|&(_, &a)| a & (1 << i) == 0)
                .filter_map(|(x, &a)| {
                    let y = label(rest & !a);
                    (x < y).then(|| Edge::of(x, y))
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let r = matchings[0].len();
    MatchingDecomposition::from_matchings(subsets.len(), matchings, r)
}

/// All `k`-subsets of `{0, .., m-1}` as bitmasks, ascending (= colex order).
fn colex_subsets(m: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let limit = 1u64 << m;
    let mut x: u64 = (1u64 << k) - 1;
    while x < limit {
        out.push(x);
        // Gosper's hack: next integer with the same popcount.
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify_decomposition;

    #[test]
    fn colex_order() {
        assert_eq!(
            colex_subsets(4, 2),
            [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]
        );
    }

    #[test]
    fn k1_is_a_triangle() {
        let dec = kneser_rs(1).unwrap();
        assert_eq!((dec.n(), dec.t(), dec.r()), (3, 3, 1));
        assert_eq!(dec.graph().edge_count(), 3);
        assert!(verify_decomposition(&dec).pass);
    }

    #[test]
    fn k2_is_petersen() {
        let dec = kneser_rs(2).unwrap();
        assert_eq!((dec.n(), dec.t(), dec.r()), (10, 5, 3));
        let g = dec.graph();
        assert_eq!(g.edge_count(), 15);
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn rejects_k0_and_budget() {
        assert!(matches!(kneser_rs(0), Err(Error::Parameter(_))));
        assert!(matches!(
            kneser_rs_with_budget(3, 34),
            Err(Error::Resource { needed: 35, .. })
        ));
    }
}
