//! Closed-form bounds on the chromatic number of G(n, r, s) and an
//! aggregator that merges them into a single report.
//!
//! Lower bounds round up and independence bounds round down, since the
//! underlying inequalities are between real-valued ratios.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorings::theorem1_prime;
use crate::distgraph::{GraphError, GraphSpec};
use crate::numtheory::{binomial_mod_prime, is_prime, next_prime, PrimeModulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bound needs 2 <= r < n, got n={n}, r={r}")]
    InvalidParams { n: usize, r: usize },
    #[error("reference formula only applies for r < 2s + 1, got r={r}, s={s}")]
    OutOfValidity { r: usize, s: usize },
    #[error("intermediate value overflowed 128 bits")]
    Overflow,
    #[error("internal contradiction: r={r} prime, n={n} = -1 mod r, yet C(n, r-1) = 0 mod r")]
    Contradiction { n: usize, r: usize },
    #[error("inconsistent bounds for {spec}: lower {lower} > upper {upper}")]
    Inconsistent {
        spec: GraphSpec,
        lower: u64,
        upper: u64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Where a bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundSource {
    /// `χ <= n` from the sum coloring of G(n, r, r - 1).
    #[serde(rename = "ineq1")]
    Ineq1,
    /// `n - 2` or `n - 1` colors for G(n, 3, 2) via circles.
    #[serde(rename = "thm1")]
    Thm1,
    /// Counting lower bound through the independence number.
    #[serde(rename = "thm2A")]
    Thm2A,
    /// Divisibility lower bound for `n = rk - 1`, `r` prime.
    #[serde(rename = "thm2B")]
    Thm2B,
    /// `n^(r-s)` for prime `n`.
    #[serde(rename = "thm3")]
    Thm3,
    /// `p^(r-s)` for the next prime `p >= n`.
    #[serde(rename = "next_prime")]
    NextPrime,
    /// Main term of the asymptotic upper bound; never certified.
    #[serde(rename = "reference_eq2")]
    ReferenceEq2,
    /// A sunflower clique: `floor((n - s) / (r - s))` sets sharing one `s`-core.
    #[serde(rename = "clique")]
    Clique,
}

impl BoundSource {
    pub fn tag(self) -> &'static str {
        match self {
            BoundSource::Ineq1 => "ineq1",
            BoundSource::Thm1 => "thm1",
            BoundSource::Thm2A => "thm2A",
            BoundSource::Thm2B => "thm2B",
            BoundSource::Thm3 => "thm3",
            BoundSource::NextPrime => "next_prime",
            BoundSource::ReferenceEq2 => "reference_eq2",
            BoundSource::Clique => "clique",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub value: u64,
    pub source: BoundSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub spec: GraphSpec,
    pub lower: Vec<BoundEntry>,
    pub upper: Vec<BoundEntry>,
    /// Informational values, excluded from `best_upper`.
    pub reference: Vec<BoundEntry>,
    pub best_lower: u64,
    pub best_upper: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<u64>,
}

impl BoundsReport {
    /// `χ = v` or `χ ∈ [lo, hi]`.
    pub fn summary(&self) -> String {
        match self.exact {
            Some(v) => format!("χ = {v}"),
            None => format!("χ ∈ [{}, {}]", self.best_lower, self.best_upper),
        }
    }

    pub fn sources_of(entries: &[BoundEntry], value: u64) -> Vec<BoundSource> {
        entries
            .iter()
            .filter(|e| e.value == value)
            .map(|e| e.source)
            .collect()
    }
}

fn binomial_u128(n: u64, k: u64) -> Result<u128, BoundsError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc
            .checked_mul(n as u128 - i)
            .ok_or(BoundsError::Overflow)?
            / (i + 1);
    }
    Ok(acc)
}

fn factorial(n: u64) -> Result<u128, BoundsError> {
    (1..=n as u128).try_fold(1u128, |acc, k| {
        acc.checked_mul(k).ok_or(BoundsError::Overflow)
    })
}

fn check_star_params(n: usize, r: usize) -> Result<(), BoundsError> {
    if 2 <= r && r < n {
        Ok(())
    } else {
        Err(BoundsError::InvalidParams { n, r })
    }
}

/// `⌈(n-r+2)(n-r+1) / (2 ⌊(n-r+2)/2⌋)⌉` for G(n, r, r - 1): `n - r + 1`
/// when `n - r` is even, `n - r + 2` when odd.
pub fn counting_lower_bound(n: usize, r: usize) -> Result<u64, BoundsError> {
    check_star_params(n, r)?;
    let m = (n - r) as u64;
    let num = (m + 2) * (m + 1);
    let den = 2 * ((m + 2) / 2);
    Ok(num.div_ceil(den))
}

/// `⌊ ⌊(n-r+2)/2⌋ C(n, r-2) / C(r, 2) ⌋`, an upper bound on the
/// independence number of G(n, r, r - 1).
pub fn independence_upper_bound(n: usize, r: usize) -> Result<u64, BoundsError> {
    check_star_params(n, r)?;
    let per_core = ((n - r + 2) / 2) as u128;
    let cores = binomial_u128(n as u64, r as u64 - 2)?;
    let pairs = binomial_u128(r as u64, 2)?;
    let value = per_core.checked_mul(cores).ok_or(BoundsError::Overflow)? / pairs;
    u64::try_from(value).map_err(|_| BoundsError::Overflow)
}

/// `n - r + 2` when `r` is prime and `n = -1 (mod r)`, after confirming that
/// the number of maximal cliques `C(n, r-1)` is not divisible by `r`.
pub fn divisibility_lower_bound(n: usize, r: usize) -> Result<Option<u64>, BoundsError> {
    check_star_params(n, r)?;
    if !is_prime(r as u64) || !(n + 1).is_multiple_of(r) {
        return Ok(None);
    }
    let pm = PrimeModulus::new(r as u64).expect("checked prime");
    if binomial_mod_prime(n as u64, r as u64 - 1, pm) == 0 {
        return Err(BoundsError::Contradiction { n, r });
    }
    Ok(Some((n - r + 2) as u64))
}

/// `⌊n^(r-s) r! / (s! ((r-s)!)^2)⌋`, valid only for `r < 2s + 1`.
/// The asymptotic bound carries an unspecified `1 + o(1)` factor, so this
/// is a comparison figure, not a certified bound.
pub fn eq2_reference(n: usize, r: usize, s: usize) -> Result<u64, BoundsError> {
    let spec = GraphSpec::new(n, r, s)?;
    if spec.r > 2 * spec.s {
        return Err(BoundsError::OutOfValidity { r, s });
    }
    let h = (r - s) as u32;
    let power = (n as u128).checked_pow(h).ok_or(BoundsError::Overflow)?;
    let num = power
        .checked_mul(factorial(r as u64)?)
        .ok_or(BoundsError::Overflow)?;
    let hf = factorial(h as u64)?;
    let den = factorial(s as u64)?
        .checked_mul(hf.checked_mul(hf).ok_or(BoundsError::Overflow)?)
        .ok_or(BoundsError::Overflow)?;
    u64::try_from(num / den).map_err(|_| BoundsError::Overflow)
}

/// `n^(r-s)` when `n` is prime.
pub fn theorem3_upper(n: usize, r: usize, s: usize) -> Option<u64> {
    if !is_prime(n as u64) || s >= r {
        return None;
    }
    (n as u64).checked_pow((r - s) as u32)
}

/// `p^(r-s)` for the smallest prime `p >= n`; G(n, r, s) embeds in G(p, r, s).
pub fn next_prime_upper(n: usize, r: usize, s: usize) -> Option<u64> {
    if s >= r {
        return None;
    }
    next_prime(n as u64).checked_pow((r - s) as u32)
}

/// Size of a sunflower clique: sets sharing one `s`-core with disjoint
/// petals of size `r - s`.
pub fn clique_lower_bound(n: usize, r: usize, s: usize) -> u64 {
    ((n - s) / (r - s)) as u64
}

/// Collects every applicable bound for G(n, r, s).
pub fn aggregate(n: usize, r: usize, s: usize) -> Result<BoundsReport, BoundsError> {
    let spec = GraphSpec::new(n, r, s)?;
    let entry = |value, source| BoundEntry { value, source };
    let star = s + 1 == r;

    let mut lower = vec![entry(clique_lower_bound(n, r, s), BoundSource::Clique)];
    if star && r >= 2 {
        lower.push(entry(counting_lower_bound(n, r)?, BoundSource::Thm2A));
        if let Some(v) = divisibility_lower_bound(n, r)? {
            lower.push(entry(v, BoundSource::Thm2B));
        }
    }

    let mut upper = Vec::new();
    if star {
        upper.push(entry(n as u64, BoundSource::Ineq1));
    }
    if star && r == 3 {
        if let Some(p) = theorem1_prime(n) {
            upper.push(entry(p, BoundSource::Thm1));
        }
    }
    if let Some(v) = theorem3_upper(n, r, s) {
        upper.push(entry(v, BoundSource::Thm3));
    }
    if let Some(v) = next_prime_upper(n, r, s) {
        upper.push(entry(v, BoundSource::NextPrime));
    }

    let reference = eq2_reference(n, r, s)
        .ok()
        .map(|v| vec![entry(v, BoundSource::ReferenceEq2)])
        .unwrap_or_default();

    let best_lower = lower
        .iter()
        .map(|e| e.value)
        .max()
        .expect("clique bound always present");
    let best_upper = upper
        .iter()
        .map(|e| e.value)
        .min()
        .ok_or(BoundsError::Overflow)?;
    if best_lower > best_upper {
        return Err(BoundsError::Inconsistent {
            spec,
            lower: best_lower,
            upper: best_upper,
        });
    }
    Ok(BoundsReport {
        spec,
        lower,
        upper,
        reference,
        best_lower,
        best_upper,
        exact: (best_lower == best_upper).then_some(best_lower),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::binomial;

    #[test]
    fn counting_examples() {
        assert_eq!(counting_lower_bound(9, 3), Ok(7));
        assert_eq!(counting_lower_bound(8, 3), Ok(7));
        assert!(counting_lower_bound(3, 3).is_err());
        assert!(counting_lower_bound(5, 1).is_err());
    }

    #[test]
    fn counting_parity_identity() {
        for n in 3..=60usize {
            for r in 2..n {
                let expected = if (n - r) % 2 == 0 {
                    n - r + 1
                } else {
                    n - r + 2
                };
                assert_eq!(
                    counting_lower_bound(n, r),
                    Ok(expected as u64),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_upper_bound(9, 3), Ok(12));
        assert_eq!(independence_upper_bound(5, 3), Ok(3));
        // G(n, 2, 1) is the line graph of K_n: a maximum matching
        assert_eq!(independence_upper_bound(7, 2), Ok(3));
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(divisibility_lower_bound(11, 3), Ok(Some(10)));
        assert_eq!(binomial(11, 2).unwrap() % 3, 1);
        assert_eq!(divisibility_lower_bound(7, 3), Ok(None));
        assert_eq!(divisibility_lower_bound(9, 4), Ok(None));
    }

    #[test]
    fn divisibility_never_contradicts() {
        for r in [2usize, 3, 5, 7, 11, 13] {
            for k in 1..=20usize {
                let n = r * k - 1;
                if n <= r {
                    continue;
                }
                let v = divisibility_lower_bound(n, r).unwrap();
                assert_eq!(v, Some((n - r + 2) as u64));
                // exact binomial as independent check
                let exact = binomial_u128(n as u64, r as u64 - 1).unwrap();
                assert_ne!(exact % r as u128, 0, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn eq2_examples() {
        assert_eq!(eq2_reference(10, 3, 2), Ok(30));
        assert_eq!(eq2_reference(10, 4, 3), Ok(40));
        assert_eq!(
            eq2_reference(10, 3, 1),
            Err(BoundsError::OutOfValidity { r: 3, s: 1 })
        );
        // 7!/(4! 3!^2) = 35/6, floored after multiplying by 10^3
        assert_eq!(eq2_reference(10, 7, 4), Ok(5833));
    }

    #[test]
    fn prime_power_bounds() {
        assert_eq!(theorem3_upper(5, 3, 1), Some(25));
        assert_eq!(theorem3_upper(6, 3, 1), None);
        assert_eq!(theorem3_upper(7, 4, 2), Some(49));
        assert_eq!(next_prime_upper(10, 3, 1), Some(121));
        assert_eq!(next_prime_upper(11, 3, 1), Some(121));
        assert_eq!(next_prime_upper(9, 3, 2), Some(11));
    }

    #[test]
    fn aggregate_examples() {
        let r9 = aggregate(9, 3, 2).unwrap();
        assert_eq!((r9.best_lower, r9.best_upper, r9.exact), (7, 7, Some(7)));
        assert_eq!(r9.summary(), "χ = 7");
        let r8 = aggregate(8, 3, 2).unwrap();
        assert_eq!((r8.best_lower, r8.best_upper, r8.exact), (7, 7, Some(7)));
        let r5 = aggregate(5, 3, 2).unwrap();
        assert_eq!((r5.best_lower, r5.best_upper, r5.exact), (4, 5, None));
        assert_eq!(r5.summary(), "χ ∈ [4, 5]");
        let r11 = aggregate(11, 3, 2).unwrap();
        assert!(r11.best_lower >= 10);
        assert!(r11.lower.contains(&BoundEntry {
            value: 10,
            source: BoundSource::Thm2B
        }));
        let r531 = aggregate(5, 3, 1).unwrap();
        assert!(r531.upper.contains(&BoundEntry {
            value: 25,
            source: BoundSource::Thm3
        }));
    }

    #[test]
    fn reference_never_enters_best_upper() {
        let rep = aggregate(10, 3, 2).unwrap();
        assert_eq!(
            rep.reference,
            vec![BoundEntry {
                value: 30,
                source: BoundSource::ReferenceEq2
            }]
        );
        assert!(rep
            .upper
            .iter()
            .all(|e| e.source != BoundSource::ReferenceEq2));
        assert_eq!(
            rep.best_upper,
            rep.upper.iter().map(|e| e.value).min().unwrap()
        );
    }

    #[test]
    fn r3_congruence_classes() {
        for n in 4..=60usize {
            let rep = aggregate(n, 3, 2).unwrap();
            let expected = matches!(n % 6, 0 | 2 | 4 | 5);
            assert_eq!(rep.best_lower >= n as u64 - 1, expected, "n = {n}");
        }
    }

    #[test]
    fn report_json_shape() {
        let rep = aggregate(9, 3, 2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["exact"], 7);
        assert_eq!(v["spec"]["n"], 9);
        assert!(v["lower"]
            .as_array()
            .unwrap()
            .iter()
            .any(|e| e["source"] == "thm2A"));
        let r5 = serde_json::to_value(aggregate(5, 3, 2).unwrap()).unwrap();
        assert!(r5.get("exact").is_none());
    }
}
