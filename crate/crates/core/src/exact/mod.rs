//! Exact oracles for small graphs: chromatic number by DSATUR
//! branch-and-bound, independence number by bitset max-clique search on the
//! complement. Both report budget exhaustion as a normal outcome.

mod chromatic;
mod independence;

use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::distgraph::{GraphError, GraphSpec};

pub use chromatic::{exact_chromatic_number, greedy_clique, greedy_coloring};
pub use independence::exact_independence_number;

/// Default vertex cap for the chromatic solver.
pub const CHROMATIC_VERTEX_CAP: usize = 120;
/// Default vertex cap for the independence solver.
pub const INDEPENDENCE_VERTEX_CAP: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph has {order} vertices, above the solver cap of {cap}")]
    TooLarge { order: u64, cap: usize },
    #[error("solve limits must be positive")]
    InvalidLimits,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Symmetric, irreflexive adjacency stored as one bitset row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    order: usize,
    words: usize,
    bits: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn empty(order: usize) -> Self {
        let words = order.div_ceil(64);
        Self {
            order,
            words,
            bits: vec![0; order * words],
        }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Self::empty(order);
        for u in 0..order {
            for v in u + 1..order {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(order);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Materializes G(n, r, s), refusing graphs with more than `cap` vertices.
    pub fn from_spec(spec: &GraphSpec, cap: usize) -> Result<Self, ExactError> {
        let order = spec.vertex_count().unwrap_or(u64::MAX);
        if order > cap as u64 {
            return Err(ExactError::TooLarge { order, cap });
        }
        let edges = spec.edges()?.map(|(u, v)| (u as usize, v as usize));
        Ok(Self::from_edges(order as usize, edges))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loops are not allowed");
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.order);
        for u in 0..self.order {
            for v in u + 1..self.order {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    pub max_vertices: usize,
    pub max_nodes: u64,
    pub time_budget: Duration,
    /// Threads for the independence search; the optimum does not depend on it.
    pub workers: usize,
}

impl SolveLimits {
    pub fn chromatic() -> Self {
        Self {
            max_vertices: CHROMATIC_VERTEX_CAP,
            max_nodes: 50_000_000,
            time_budget: Duration::from_secs(60),
            workers: 1,
        }
    }

    pub fn independence() -> Self {
        Self {
            max_vertices: INDEPENDENCE_VERTEX_CAP,
            ..Self::chromatic()
        }
    }

    fn check(&self, g: &AdjacencyMatrix) -> Result<(), ExactError> {
        if self.max_vertices == 0
            || self.max_nodes == 0
            || self.time_budget.is_zero()
            || self.workers == 0
        {
            return Err(ExactError::InvalidLimits);
        }
        if g.order() > self.max_vertices {
            return Err(ExactError::TooLarge {
                order: g.order() as u64,
                cap: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// Result of an exact search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    /// Optimum proven; `witness` is an optimal coloring (labels per vertex)
    /// or a maximum independent set (vertex indices).
    Solved { value: usize, witness: Vec<usize> },
    /// Budget ran out; the optimum lies in `[lower, upper]`.
    Exhausted { lower: usize, upper: usize },
}

impl Outcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            Outcome::Solved { value, .. } => Some(*value),
            Outcome::Exhausted { .. } => None,
        }
    }
}
