//! Explicit proper colorings of G(n, r, s) and an independent verifier.
//!
//! Four constructions live here:
//! - [`color_theorem1`]: G(n, 3, 2) with `n - 2` colors (`n = p + 2`) or
//!   `n - 1` colors (`n = p + 1`), driven by the circle machinery in
//!   [`circles`];
//! - [`color_sum`]: the sum of the elements modulo `n`, proper on
//!   G(n, r, r - 1);
//! - [`color_bose_chowla`] and [`color_symmetric`]: two `n^(r-s)`-color
//!   colorings of G(n, r, s) for prime `n`.
//!
//! [`verify_proper`] knows nothing about any of them; it walks the edge
//! stream and compares labels.

mod algebraic;
pub mod circles;
mod theorem1;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distgraph::{colex_unrank, GraphError, GraphSpec, RSubset, EDGE_ENUMERATION_CAP};
use crate::gf::GfError;
use crate::numtheory::NumTheoryError;

pub use algebraic::{color_bose_chowla, color_sum, color_symmetric, elementary_symmetric};
pub use circles::{
    bipartition_circles, circle, circle_graph, circle_point_closed_form, f_select, Circle,
    CircleBipartition, CircleGraph, CircleId,
};
pub use theorem1::{color_theorem1, theorem1_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(
        "no prime p > 3 satisfying the power-of-two condition has n = p + 1 or n = p + 2 (n = {0})"
    )]
    UnsupportedN(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("circle graph for p = {0} has an odd cycle")]
    OddCycle(u64),
    #[error("coloring is incomplete: expected {expected} labels, found {found}")]
    IncompleteColoring { expected: u64, found: u64 },
    #[error("coloring belongs to {found}, not {expected}")]
    SpecMismatch {
        expected: GraphSpec,
        found: GraphSpec,
    },
    #[error("palette of {0} colors does not fit in 64 bits")]
    PaletteOverflow(GraphSpec),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "sum")]
    SumModN,
    #[serde(rename = "bose-chowla")]
    BoseChowla,
    #[serde(rename = "symmetric")]
    SymmetricPoly,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Theorem1 => "theorem1",
            Method::SumModN => "sum",
            Method::BoseChowla => "bose-chowla",
            Method::SymmetricPoly => "symmetric",
        }
    }
}

/// Labels indexed by colex vertex rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub spec: GraphSpec,
    pub labels: Vec<u64>,
    pub method: Method,
    /// Every label is below this value.
    pub palette_bound: u64,
}

impl Coloring {
    pub(crate) fn from_fn(
        spec: GraphSpec,
        method: Method,
        palette_bound: u64,
        mut label: impl FnMut(&[usize]) -> u64,
    ) -> Result<Self, ColoringError> {
        let count = spec.checked_vertex_count(EDGE_ENUMERATION_CAP)?;
        let labels = (0..count)
            .map(|k| {
                let c = label(&colex_unrank(k, spec.r, spec.n));
                debug_assert!(c < palette_bound);
                c
            })
            .collect();
        Ok(Self {
            spec,
            labels,
            method,
            palette_bound,
        })
    }

    pub fn colors_used(&self) -> usize {
        self.labels.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn label_of(&self, v: &RSubset) -> Result<u64, ColoringError> {
        Ok(self.labels[self.spec.rank(v)? as usize])
    }
}

/// A monochromatic edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub u: RSubset,
    pub v: RSubset,
    pub shared_color: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    Violation(Violation),
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, Verdict::Proper)
    }
}

/// Checks every edge of `spec` for distinct endpoint labels.
///
/// Vertices are scanned in parallel; the reported violation is always the
/// first one in edge-stream order (smallest `u`, then smallest `v`).
pub fn verify_proper(spec: &GraphSpec, coloring: &Coloring) -> Result<Verdict, ColoringError> {
    if coloring.spec != *spec {
        return Err(ColoringError::SpecMismatch {
            expected: *spec,
            found: coloring.spec,
        });
    }
    verify_labels(spec, &coloring.labels)
}

/// [`verify_proper`] on a bare label vector.
pub fn verify_labels(spec: &GraphSpec, labels: &[u64]) -> Result<Verdict, ColoringError> {
    let count = spec.checked_vertex_count(EDGE_ENUMERATION_CAP)?;
    if labels.len() as u64 != count {
        return Err(ColoringError::IncompleteColoring {
            expected: count,
            found: labels.len() as u64,
        });
    }
    let first = (0..count).into_par_iter().find_map_first(|u| {
        let su = RSubset::new(colex_unrank(u, spec.r, spec.n)).expect("unrank is sorted");
        let lu = labels[u as usize];
        spec.neighbor_ranks(&su)
            .into_iter()
            .filter(|&w| w > u && labels[w as usize] == lu)
            .find_map(|w| {
                let sw = RSubset::new(colex_unrank(w, spec.r, spec.n)).expect("unrank is sorted");
                spec.is_edge(&su, &sw).then(|| Violation {
                    u: su.clone(),
                    v: sw,
                    shared_color: lu,
                })
            })
    });
    Ok(match first {
        Some(v) => Verdict::Violation(v),
        None => Verdict::Proper,
    })
}

/// Machine-readable coloring certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub method: Method,
    pub palette_bound: u64,
    pub colors_used: usize,
    pub proper: bool,
    pub labels: Vec<Option<u64>>,
}

impl Certificate {
    pub fn new(coloring: &Coloring, verdict: &Verdict) -> Self {
        Self {
            n: coloring.spec.n,
            r: coloring.spec.r,
            s: coloring.spec.s,
            method: coloring.method,
            palette_bound: coloring.palette_bound,
            colors_used: coloring.colors_used(),
            proper: verdict.is_proper(),
            labels: coloring.labels.iter().copied().map(Some).collect(),
        }
    }

    /// Rebuilds the coloring; any missing label is an error.
    pub fn to_coloring(&self) -> Result<Coloring, ColoringError> {
        let spec = GraphSpec::new(self.n, self.r, self.s)?;
        let expected = spec.checked_vertex_count(EDGE_ENUMERATION_CAP)?;
        let labels: Option<Vec<u64>> = self.labels.iter().copied().collect();
        match labels {
            Some(labels) if labels.len() as u64 == expected => Ok(Coloring {
                spec,
                labels,
                method: self.method,
                palette_bound: self.palette_bound,
            }),
            _ => Err(ColoringError::IncompleteColoring {
                expected,
                found: self.labels.iter().flatten().count() as u64,
            }),
        }
    }
}
