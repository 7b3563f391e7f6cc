use alloc::format;

use crate::decomposition::{require_verified, MatchingDecomposition};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Hamming-distance certificate for a verified decomposition.
///
/// The characteristic vectors `v_1..v_t` of the endpoint sets, extended by
/// the all-zero vector `v_0`, are pairwise at distance at least `2r`.
/// Summing over all pairs and then per coordinate gives
/// `2r C(t+1, 2) <= Σ dist = Σ_x a_x b_x <= n(t+1)^2/4` (odd `t`) or
/// `n t (t+2) / 4` (even `t`); both slacks are reported.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DistanceCertificate {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    /// Smallest distance over `0 <= i < j <= t`, `None` when `t = 0`.
    pub min_distance: Option<usize>,
    /// Lexicographically first pair attaining `min_distance` (index 0 is `v_0`).
    pub min_pair: Option<(usize, usize)>,
    /// Smallest distance among `v_1..v_t` only.
    pub min_distance_matchings: Option<usize>,
    pub pairwise_ok: bool,
    /// `2r C(t+1, 2)`.
    pub lower: u128,
    /// `Σ_{i<j} dist(v_i, v_j)`.
    pub distance_sum: u128,
    /// `Σ_x a_x b_x`; equal to `distance_sum` by double counting.
    pub coordinate_sum: u128,
    #[cfg_attr(
        feature = "serde",
        serde(serialize_with = "crate::rational::serde_string::serialize")
    )]
    pub upper: Rational,
    /// `distance_sum - lower`.
    pub lower_slack: i128,
    /// `upper - coordinate_sum`.
    #[cfg_attr(
        feature = "serde",
        serde(serialize_with = "crate::rational::serde_string::serialize")
    )]
    pub upper_slack: Rational,
    /// Whether the resulting bound on `r` can exclude anything (`4r > n`).
    pub binding: bool,
}

impl DistanceCertificate {
    pub fn holds(&self) -> bool {
        self.pairwise_ok
            && self.distance_sum == self.coordinate_sum
            && self.lower_slack >= 0
            && self.upper_slack >= Rational::from_integer(0)
    }
}

pub fn distance_certificate(dec: &MatchingDecomposition) -> Result<DistanceCertificate> {
    require_verified(dec)?;
    let (n, r, t) = (dec.n(), dec.r(), dec.t());
    let sets = dec.vertex_sets();
    if let Some((i, s)) = sets
        .iter()
        .enumerate()
        .find(|(_, s)| s.count_ones(..) != 2 * r)
    {
        return Err(Error::Precondition(format!(
            "|V_{i}| = {} but the zero-vector extension needs every |V_i| = 2r = {}",
            s.count_ones(..),
            2 * r
        )));
    }

    // Index 0 is v_0; dist(v_0, v_i) = |V_i| = 2r.
    let mut min: Option<(usize, (usize, usize))> = None;
    let mut min_matchings: Option<usize> = None;
    let mut distance_sum: u128 = 0;
    let mut consider = |d: usize, pair: (usize, usize)| {
        distance_sum += d as u128;
        if min.is_none_or(|(m, _)| d < m) {
            min = Some((d, pair));
        }
    };
    for j in 1..=t {
        consider(2 * r, (0, j));
    }
    for i in 0..t {
        for j in i + 1..t {
            let d = sets[i].symmetric_difference_count(&sets[j]);
            min_matchings = Some(min_matchings.map_or(d, |m| m.min(d)));
            consider(d, (i + 1, j + 1));
        }
    }
    // Pairs are visited in lexicographic order, so ties keep the first one.
    let min_pair = min.map(|(_, pair)| pair);

    let coordinate_sum: u128 = dec
        .graph()
        .degrees()
        .iter()
        .map(|&b| {
            let a = t + 1 - b;
            (a as u128) * (b as u128)
        })
        .sum();

    let t1 = t as u128 + 1;
    let lower = 2 * r as u128 * (t1 * (t1 - 1) / 2);
    let n_q = n as i128;
    let t_q = t as i128;
    let upper = if t % 2 == 1 {
        Rational::new(n_q * (t_q + 1) * (t_q + 1), 4)
    } else {
        Rational::new(n_q * t_q * (t_q + 2), 4)
    };
    let upper_slack = upper - Rational::from_integer(coordinate_sum as i128);
    Ok(DistanceCertificate {
        n,
        r,
        t,
        min_distance: min.map(|(d, _)| d),
        min_pair,
        min_distance_matchings: min_matchings,
        pairwise_ok: min.is_none_or(|(d, _)| d >= 2 * r),
        lower,
        distance_sum,
        coordinate_sum,
        upper,
        lower_slack: distance_sum as i128 - lower as i128,
        upper_slack,
        binding: 4 * r > n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{hypercube_rs, kneser_rs};

    #[test]
    fn petersen_distance_is_six() {
        let cert = distance_certificate(&kneser_rs(2).unwrap()).unwrap();
        assert_eq!(cert.min_distance, Some(6));
        assert_eq!(cert.min_distance_matchings, Some(6));
        assert!(cert.holds());
        assert!(cert.binding);
        // Kneser is extremal: every pair sits at exactly 2r.
        assert_eq!(cert.lower_slack, 0);
        assert_eq!(cert.upper_slack, Rational::from_integer(0));
    }

    #[test]
    fn augmented_q4() {
        let cert = distance_certificate(&hypercube_rs(4, true).unwrap()).unwrap();
        assert!(cert.min_distance.unwrap() >= 8);
        assert!(cert.holds());
        assert!(!cert.binding);
    }

    #[test]
    fn single_matching() {
        let dec = MatchingDecomposition::from_matchings(
            4,
            alloc::vec![alloc::vec![crate::Edge::of(0, 1), crate::Edge::of(2, 3)]],
            2,
        )
        .unwrap();
        let cert = distance_certificate(&dec).unwrap();
        assert_eq!(cert.min_distance, Some(4));
        assert_eq!(cert.min_pair, Some((0, 1)));
        assert!(cert.holds());
    }
}
