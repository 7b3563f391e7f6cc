use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Sets over `[1, limit]` up to this size are checked for 3-term
/// progressions when they are built.
pub const VERIFY_LIMIT: u64 = 100_000;

/// Behrend enumerates `h^d` digit vectors; refuse beyond this.
const BEHREND_VECTOR_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ApMethod {
    /// `{x : x - 1 has no digit 2 in base 3}`.
    GreedyBase3,
    /// Densest sphere layer of a digit box encoded in base `q`.
    Behrend,
}

impl ApMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ApMethod::GreedyBase3 => "greedy-base3",
            ApMethod::Behrend => "behrend",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "greedy-base3" | "greedy" => Some(ApMethod::GreedyBase3),
            "behrend" => Some(ApMethod::Behrend),
            _ => None,
        }
    }
}

/// Strictly increasing positive integers in `[1, limit]` with no
/// nontrivial 3-term arithmetic progression.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ApFreeSet {
    pub limit: u64,
    pub elements: Vec<u64>,
    /// Method that actually produced the set.
    pub method: ApMethod,
    /// Set when the requested method was replaced by greedy-base3.
    pub fallback: Option<&'static str>,
    /// Whether the progression check ran (it does for `limit <= VERIFY_LIMIT`).
    pub verified: bool,
}

impl ApFreeSet {
    /// Wraps explicit elements after checking positivity and 3-AP-freeness.
    pub fn from_elements(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() == Some(&0) {
            return Err(Error::Parameter(
                "3-AP-free set elements must be positive".into(),
            ));
        }
        if let Some((x, y, z)) = find_three_term_ap(&elements) {
            return Err(Error::Parameter(alloc::format!(
                "set contains the progression {x}, {y}, {z}"
            )));
        }
        Ok(ApFreeSet {
            limit: elements.last().copied().unwrap_or(0),
            elements,
            method: ApMethod::GreedyBase3,
            fallback: Some("explicit set"),
            verified: true,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }
}

/// A 3-AP-free subset of `[1, limit]`.
///
/// Behrend needs `limit >= 8` and a digit box of side at least 2; smaller
/// inputs fall back to greedy-base3 and say so in `fallback`.
pub fn ap_free_set(method: ApMethod, limit: u64) -> Result<ApFreeSet> {
    if limit == 0 {
        return Err(Error::Parameter("3-AP-free set needs limit >= 1".into()));
    }
    let (elements, used, fallback) = match method {
        ApMethod::GreedyBase3 => (greedy_base3(limit), ApMethod::GreedyBase3, None),
        ApMethod::Behrend if limit < 8 => (
            greedy_base3(limit),
            ApMethod::GreedyBase3,
            Some("behrend needs limit >= 8; used greedy-base3"),
        ),
        ApMethod::Behrend => match behrend(limit)? {
            Some(set) => (set, ApMethod::Behrend, None),
            None => (
                greedy_base3(limit),
                ApMethod::GreedyBase3,
                Some("behrend digit box is degenerate; used greedy-base3"),
            ),
        },
    };
    let verified = limit <= VERIFY_LIMIT;
    if verified {
        if let Some((x, y, z)) = find_three_term_ap(&elements) {
            return Err(Error::MalformedInput(alloc::format!(
                "{} produced the progression {x}, {y}, {z}",
                used.name()
            )));
        }
    }
    Ok(ApFreeSet {
        limit,
        elements,
        method: used,
        fallback,
        verified,
    })
}

/// First progression `x < y < z`, `x + z = 2y`, in a sorted slice, by `(x, z)`.
pub fn find_three_term_ap(sorted: &[u64]) -> Option<(u64, u64, u64)> {
    for (i, &x) in sorted.iter().enumerate() {
        for &z in sorted.get(i + 2..).unwrap_or(&[]) {
            if (x + z) % 2 == 0 && sorted[i + 1..].binary_search(&((x + z) / 2)).is_ok() {
                return Some((x, (x + z) / 2, z));
            }
        }
    }
    None
}

fn greedy_base3(limit: u64) -> Vec<u64> {
    // Numbers without digit 2 are sums of distinct powers of 3; enumerate
    // them as binary masks instead of scanning the whole range.
    let mut out = Vec::new();
    let mut mask: u64 = 0;
    loop {
        let mut value: u64 = 0;
        let mut pow: u64 = 1;
        let mut bits = mask;
        let mut overflow = false;
        while bits > 0 {
            if bits & 1 == 1 {
                value = match value.checked_add(pow) {
                    Some(v) => v,
                    None => {
                        overflow = true;
                        break;
                    }
                };
            }
            bits >>= 1;
            if bits > 0 {
                pow = match pow.checked_mul(3) {
                    Some(p) => p,
                    None => {
                        overflow = true;
                        break;
                    }
                };
            }
        }
        // Masks enumerate values in increasing order.
        if overflow || value >= limit {
            break;
        }
        out.push(value + 1);
        mask += 1;
    }
    out
}

/// `floor(m^(1/d))`, exact.
fn integer_root(m: u64, d: u32) -> u64 {
    if d == 1 {
        return m;
    }
    let guess = libm::pow(m as f64, 1.0 / f64::from(d)) as u64;
    let fits = |q: u64| q.checked_pow(d).is_some_and(|p| p <= m);
    let mut q = guess.saturating_sub(1).max(1);
    while fits(q + 1) {
        q += 1;
    }
    while q > 1 && !fits(q) {
        q -= 1;
    }
    q
}

/// Densest layer `sum x_i^2 = s` of `{0..h-1}^d`, `h = floor(q/2)`,
/// encoded as `1 + sum x_i q^i`. Digits stay below `q/2`, so sums of two
/// encodings never carry and a progression among the integers is a
/// progression of digit vectors, impossible on a sphere.
fn behrend(limit: u64) -> Result<Option<Vec<u64>>> {
    let d = libm::round(libm::sqrt(libm::log(limit as f64))).max(1.0) as u32;
    let q = integer_root(limit, d);
    let h = q / 2;
    if h < 2 {
        return Ok(None);
    }
    let vectors = h.checked_pow(d).unwrap_or(u64::MAX);
    if vectors > BEHREND_VECTOR_BUDGET {
        return Err(Error::Resource {
            what: "behrend digit vectors",
            needed: u128::from(vectors),
            budget: u128::from(BEHREND_VECTOR_BUDGET),
        });
    }
    let max_norm = (d as u64) * (h - 1) * (h - 1);
    let mut counts = alloc::vec![0u64; max_norm as usize + 1];
    for_each_digit_vector(d, h, q, |norm, _| counts[norm as usize] += 1);
    let best = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(s, _)| s as u64)
        .unwrap_or(0);
    let mut out = Vec::with_capacity(counts[best as usize] as usize);
    for_each_digit_vector(d, h, q, |norm, value| {
        if norm == best {
            out.push(value + 1);
        }
    });
    out.sort_unstable();
    Ok(Some(out))
}

/// Calls `f(squared norm, base-q value)` for every vector in `{0..h-1}^d`.
fn for_each_digit_vector(d: u32, h: u64, q: u64, mut f: impl FnMut(u64, u64)) {
    let mut digits = alloc::vec![0u64; d as usize];
    loop {
        let mut norm = 0;
        let mut value = 0;
        for &x in digits.iter().rev() {
            norm += x * x;
            value = value * q + x;
        }
        f(norm, value);
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < h {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_on_13() {
        let s = ap_free_set(ApMethod::GreedyBase3, 13).unwrap();
        assert_eq!(s.elements, [1, 2, 4, 5, 10, 11, 13]);
        assert!(s.verified);
    }

    #[test]
    fn tiny_limits() {
        for method in [ApMethod::GreedyBase3, ApMethod::Behrend] {
            assert_eq!(ap_free_set(method, 2).unwrap().elements, [1, 2]);
            assert_eq!(ap_free_set(method, 1).unwrap().elements, [1]);
        }
        assert!(ap_free_set(ApMethod::Behrend, 2)
            .unwrap()
            .fallback
            .is_some());
        assert!(ap_free_set(ApMethod::GreedyBase3, 0).is_err());
    }

    #[test]
    fn behrend_on_ten_thousand() {
        let s = ap_free_set(ApMethod::Behrend, 10_000).unwrap();
        assert_eq!(s.method, ApMethod::Behrend);
        assert!(!s.is_empty());
        assert!(s.max().unwrap() <= 10_000);
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(10_000, 3), 21);
        assert_eq!(integer_root(9261, 3), 21);
        assert_eq!(integer_root(9260, 3), 20);
        assert_eq!(integer_root(u64::MAX, 2), 4_294_967_295);
    }

    #[test]
    fn explicit_sets() {
        assert!(ApFreeSet::from_elements(alloc::vec![4, 1, 2]).is_ok());
        assert!(ApFreeSet::from_elements(alloc::vec![1, 2, 3]).is_err());
        assert!(ApFreeSet::from_elements(alloc::vec![0, 1]).is_err());
    }
}
