//! Exact rationals used by every bound computation.

use num_rational::Ratio;

/// Exact rational number. Bound arithmetic never goes through floating point.
pub type Rational = Ratio<i128>;

/// `numer / denom` as an exact rational. Panics if `denom == 0`.
pub fn ratio(numer: u64, denom: u64) -> Rational {
    Rational::new(i128::from(numer), i128::from(denom))
}

/// `C(n, k)`; zero when `k > n`. Overflows only past `u128`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Lossy conversion for human-readable rendering only.
pub fn to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

#[cfg(feature = "serde")]
pub(crate) mod serde_string {
    use super::Rational;
    use alloc::string::ToString;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub mod option {
        use super::Rational;
        use alloc::string::ToString;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_some(&q.to_string()),
                None => s.serialize_none(),
            }
        }
    }
}
