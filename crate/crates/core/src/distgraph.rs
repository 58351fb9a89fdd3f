//! The distance graph G(n, r, s): vertices are the r-subsets of
//! `{0, ..., n-1}`, two of them adjacent when they share exactly `s` elements.
//!
//! Vertices are indexed densely by their colexicographic rank
//! (combinatorial number system), so colorings are plain label vectors.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::binomial;

/// Largest vertex count for which full edge enumeration is allowed.
pub const EDGE_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph parameters n={n}, r={r}, s={s} (need 0 <= s < r <= n)")]
    InvalidSpec { n: usize, r: usize, s: usize },
    #[error("{0:?} is not a valid subset for this graph")]
    InvalidSubset(Vec<usize>),
    #[error("rank {rank} out of range (vertex count {count})")]
    OutOfRange { rank: u64, count: u64 },
    #[error("graph has {count} vertices, above the cap of {cap}")]
    TooLarge { count: u64, cap: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    pub n: usize,
    pub r: usize,
    pub s: usize,
}

impl GraphSpec {
    pub fn new(n: usize, r: usize, s: usize) -> Result<Self, GraphError> {
        if s < r && r <= n {
            Ok(Self { n, r, s })
        } else {
            Err(GraphError::InvalidSpec { n, r, s })
        }
    }

    /// `C(n, r)`, or `None` if it does not fit in 64 bits.
    pub fn vertex_count(&self) -> Option<u64> {
        binomial(self.n as u64, self.r as u64)
    }

    /// Vertex count, rejected when above `cap`.
    pub fn checked_vertex_count(&self, cap: u64) -> Result<u64, GraphError> {
        match self.vertex_count() {
            Some(count) if count <= cap => Ok(count),
            Some(count) => Err(GraphError::TooLarge { count, cap }),
            None => Err(GraphError::TooLarge {
                count: u64::MAX,
                cap,
            }),
        }
    }

    /// Common degree `C(r, s) * C(n - r, r - s)` of every vertex.
    pub fn degree(&self) -> Option<u64> {
        let (n, r, s) = (self.n as u64, self.r as u64, self.s as u64);
        binomial(r, s)?.checked_mul(binomial(n - r, r - s)?)
    }

    pub fn rank(&self, v: &RSubset) -> Result<u64, GraphError> {
        self.check_subset(v)?;
        Ok(colex_rank(&v.0))
    }

    pub fn unrank(&self, rank: u64) -> Result<RSubset, GraphError> {
        let count = self.checked_vertex_count(u64::MAX)?;
        if rank >= count {
            return Err(GraphError::OutOfRange { rank, count });
        }
        Ok(RSubset(colex_unrank(rank, self.r, self.n)))
    }

    fn check_subset(&self, v: &RSubset) -> Result<(), GraphError> {
        if v.0.len() == self.r && v.0.last().is_none_or(|&x| x < self.n) {
            Ok(())
        } else {
            Err(GraphError::InvalidSubset(v.0.clone()))
        }
    }

    /// Adjacency: `|u ∩ v| = s` and `u != v`.
    pub fn is_edge(&self, u: &RSubset, v: &RSubset) -> bool {
        u != v && u.intersection_size(v) == self.s
    }

    /// Neighbours of `v`, in ascending rank order.
    pub fn neighbors(&self, v: &RSubset) -> Result<Vec<RSubset>, GraphError> {
        self.check_subset(v)?;
        let mut out: Vec<(u64, RSubset)> = self
            .neighbor_subsets(v)
            .into_iter()
            .map(|w| (colex_rank(&w.0), w))
            .collect();
        out.sort_unstable_by_key(|(k, _)| *k);
        Ok(out.into_iter().map(|(_, w)| w).collect())
    }

    /// Ranks of the neighbours of `v`, ascending.
    pub fn neighbor_ranks(&self, v: &RSubset) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .neighbor_subsets(v)
            .iter()
            .map(|w| colex_rank(&w.0))
            .collect();
        out.sort_unstable();
        out
    }

    // keep s elements of v, add r-s elements from its complement
    fn neighbor_subsets(&self, v: &RSubset) -> Vec<RSubset> {
        let complement: Vec<usize> = (0..self.n).filter(|x| !v.contains(*x)).collect();
        let add = self.r - self.s;
        let mut out = Vec::new();
        for kept in Combinations::new(self.r, self.s) {
            for extra in Combinations::new(complement.len(), add) {
                let mut w: Vec<usize> = kept.iter().map(|&i| v.0[i]).collect();
                w.extend(extra.iter().map(|&i| complement[i]));
                w.sort_unstable();
                out.push(RSubset(w));
            }
        }
        out
    }

    /// Every unordered edge once, as `(rank u, rank v)` with `u < v`,
    /// ordered by `u` then `v`.
    pub fn edges(&self) -> Result<impl Iterator<Item = (u64, u64)> + '_, GraphError> {
        let count = self.checked_vertex_count(EDGE_ENUMERATION_CAP)?;
        Ok((0..count).flat_map(move |u| {
            let vert = RSubset(colex_unrank(u, self.r, self.n));
            self.neighbor_ranks(&vert)
                .into_iter()
                .filter(move |&w| w > u)
                .map(move |w| (u, w))
        }))
    }

    pub fn vertices(&self) -> Result<impl Iterator<Item = RSubset> + '_, GraphError> {
        let count = self.checked_vertex_count(EDGE_ENUMERATION_CAP)?;
        Ok((0..count).map(move |k| RSubset(colex_unrank(k, self.r, self.n))))
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({}, {}, {})", self.n, self.r, self.s)
    }
}

/// A strictly increasing list of ground-set elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RSubset(Vec<usize>);

impl RSubset {
    /// Sorts and validates; fails on duplicates.
    pub fn new(mut elements: Vec<usize>) -> Result<Self, GraphError> {
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::InvalidSubset(elements));
        }
        Ok(Self(elements))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn intersection_size(&self, other: &RSubset) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut common) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        common
    }
}

/// `sum_i C(c_i, i + 1)` over the sorted elements.
pub fn colex_rank(sorted: &[usize]) -> u64 {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c as u64, i as u64 + 1).expect("rank fits in u64"))
        .sum()
}

/// Inverse of [`colex_rank`] for `r`-subsets of `{0, ..., n-1}`.
pub fn colex_unrank(mut rank: u64, r: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0usize; r];
    let mut hi = n;
    for i in (1..=r).rev() {
        // largest c < hi with C(c, i) <= rank
        let mut c = hi - 1;
        while binomial(c as u64, i as u64).expect("fits") > rank {
            c -= 1;
        }
        rank -= binomial(c as u64, i as u64).expect("fits");
        out[i - 1] = c;
        hi = c;
    }
    out
}

/// Lexicographic `k`-combinations of `0..n` as index vectors.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        if let Some(pos) = (0..k).rev().find(|&i| next[i] < self.n - k + i) {
            next[pos] += 1;
            for j in pos + 1..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(xs: &[usize]) -> RSubset {
        RSubset::new(xs.to_vec()).unwrap()
    }

    fn all_specs(max_n: usize) -> impl Iterator<Item = GraphSpec> {
        (1..=max_n)
            .flat_map(|n| (1..=n).flat_map(move |r| (0..r).map(move |s| GraphSpec { n, r, s })))
    }

    #[test]
    fn spec_validation() {
        assert!(GraphSpec::new(9, 3, 2).is_ok());
        assert!(GraphSpec::new(3, 3, 0).is_ok());
        assert_eq!(
            GraphSpec::new(3, 4, 1),
            Err(GraphError::InvalidSpec { n: 3, r: 4, s: 1 })
        );
        assert!(GraphSpec::new(5, 2, 2).is_err());
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(GraphSpec::new(9, 3, 2).unwrap().vertex_count(), Some(84));
        assert_eq!(GraphSpec::new(5, 3, 2).unwrap().vertex_count(), Some(10));
        assert_eq!(GraphSpec::new(7, 7, 3).unwrap().vertex_count(), Some(1));
    }

    #[test]
    fn rank_unrank_bijection() {
        let spec = GraphSpec::new(7, 3, 1).unwrap();
        for k in 0..35 {
            let v = spec.unrank(k).unwrap();
            assert_eq!(spec.rank(&v).unwrap(), k);
        }
        assert_eq!(spec.rank(&subset(&[0, 1, 2])).unwrap(), 0);
        assert_eq!(spec.rank(&subset(&[4, 5, 6])).unwrap(), 34);
        assert_eq!(
            spec.unrank(35),
            Err(GraphError::OutOfRange {
                rank: 35,
                count: 35
            })
        );
        assert!(spec.rank(&subset(&[0, 1, 7])).is_err());
        assert!(spec.rank(&subset(&[0, 1])).is_err());
    }

    #[test]
    fn colex_order_is_sorted_reversed_tuples() {
        // colex order = lexicographic order of the reversed element lists
        let spec = GraphSpec::new(8, 4, 1).unwrap();
        let verts: Vec<_> = spec.vertices().unwrap().collect();
        for w in verts.windows(2) {
            let a: Vec<_> = w[0].elements().iter().rev().collect();
            let b: Vec<_> = w[1].elements().iter().rev().collect();
            assert!(a < b);
        }
    }

    #[test]
    fn edge_examples() {
        let g = GraphSpec::new(9, 3, 2).unwrap();
        assert!(g.is_edge(&subset(&[0, 1, 2]), &subset(&[0, 1, 3])));
        assert!(!g.is_edge(&subset(&[0, 1, 2]), &subset(&[0, 1, 2])));
        let h = GraphSpec::new(5, 3, 1).unwrap();
        assert!(h.is_edge(&subset(&[0, 1, 2]), &subset(&[0, 3, 4])));
    }

    #[test]
    fn degrees_and_edge_counts() {
        let g = GraphSpec::new(9, 3, 2).unwrap();
        assert_eq!(g.degree(), Some(18));
        for v in g.vertices().unwrap() {
            assert_eq!(g.neighbors(&v).unwrap().len(), 18);
        }
        assert_eq!(
            GraphSpec::new(5, 3, 2).unwrap().edges().unwrap().count(),
            30
        );
    }

    #[test]
    fn adjacency_matches_brute_force_up_to_8() {
        for spec in all_specs(8) {
            let verts: Vec<_> = spec.vertices().unwrap().collect();
            let mut brute = Vec::new();
            for (i, u) in verts.iter().enumerate() {
                for (j, v) in verts.iter().enumerate() {
                    assert_eq!(spec.is_edge(u, v), spec.is_edge(v, u));
                    if i < j && spec.is_edge(u, v) {
                        brute.push((i as u64, j as u64));
                    }
                }
                assert!(!spec.is_edge(u, u));
                let nb = spec.neighbors(u).unwrap();
                assert_eq!(nb.len() as u64, spec.degree().unwrap(), "{spec} at {u:?}");
                let mut dedup = nb.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), nb.len());
            }
            let streamed: Vec<_> = spec.edges().unwrap().collect();
            assert_eq!(streamed, brute, "{spec}");
        }
    }

    #[test]
    fn complementation_maps_g532_to_g521() {
        let g = GraphSpec::new(5, 3, 2).unwrap();
        let h = GraphSpec::new(5, 2, 1).unwrap();
        let complement =
            |v: &RSubset| RSubset::new((0..5).filter(|x| !v.contains(*x)).collect()).unwrap();
        let verts: Vec<_> = g.vertices().unwrap().collect();
        for u in &verts {
            for v in &verts {
                assert_eq!(g.is_edge(u, v), h.is_edge(&complement(u), &complement(v)));
            }
        }
    }

    #[test]
    fn edge_cap() {
        let big = GraphSpec::new(40, 6, 5).unwrap();
        assert!(matches!(
            big.edges().err(),
            Some(GraphError::TooLarge { .. })
        ));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(6, 3).count(), 20);
        assert_eq!(Combinations::new(4, 0).count(), 1);
        assert_eq!(Combinations::new(3, 4).count(), 0);
    }

    proptest::proptest! {
        #[test]
        fn unrank_then_rank_roundtrips(n in 1usize..30, r_seed in 0usize..30, k_seed in 0u64..u64::MAX) {
            let r = 1 + r_seed % n;
            let spec = GraphSpec::new(n, r, 0).unwrap();
            let count = spec.vertex_count().unwrap();
            let k = k_seed % count;
            let v = spec.unrank(k).unwrap();
            proptest::prop_assert!(v.elements().windows(2).all(|w| w[0] < w[1]));
            proptest::prop_assert_eq!(spec.rank(&v).unwrap(), k);
        }
    }
}
