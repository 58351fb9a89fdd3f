//! Circles in `Z_p`: orbits of `t -> (t + i) / 2`, the graph joining
//! `C(i, j)` to `C(j, i)`, its 2-coloring, and the selector functions
//! `f_1`, `f_2` derived from that 2-coloring.
//!
//! The map `t -> (t + i) / 2` fixes `i` and permutes the other residues, so
//! for a fixed parameter `i` the circles partition `Z_p \ {i}`. Every circle
//! has length `ord_p(2)`.

use std::collections::VecDeque;

use serde::Serialize;

use super::ColoringError;
use crate::numtheory::{mod_pow, mul_mod, PrimeModulus};

/// Largest prime for which a full circle graph is built (`p^2` lookup table).
pub const CIRCLE_PRIME_CAP: u64 = 4096;

/// A circle is identified by its parameter and its smallest point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CircleId {
    pub parameter: u64,
    pub start: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Circle {
    pub parameter: u64,
    /// Cyclic order, rotated to start at the smallest point.
    pub points: Vec<u64>,
}

impl Circle {
    pub fn id(&self) -> CircleId {
        CircleId {
            parameter: self.parameter,
            start: self.points[0],
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn check_prime(p: PrimeModulus) -> Result<(), ColoringError> {
    if p.get() <= 3 {
        return Err(ColoringError::BadInput(format!(
            "circles need a prime p > 3, got {p}"
        )));
    }
    Ok(())
}

/// `C(i, j)`: the orbit of `j` under `t -> (t + i) * 2^-1 (mod p)`.
pub fn circle(p: PrimeModulus, i: u64, j: u64) -> Result<Circle, ColoringError> {
    check_prime(p)?;
    let m = p.get();
    let (i, j) = (i % m, j % m);
    if i == j {
        return Err(ColoringError::BadInput(format!(
            "circle parameter equals its start ({i})"
        )));
    }
    let half = m.div_ceil(2);
    let mut points = vec![j];
    let mut t = mul_mod((j + i) % m, half, m);
    while t != j {
        points.push(t);
        t = mul_mod((t + i) % m, half, m);
    }
    let start = points
        .iter()
        .enumerate()
        .min_by_key(|&(_, &x)| x)
        .map(|(k, _)| k)
        .unwrap();
    points.rotate_left(start);
    Ok(Circle {
        parameter: i,
        points,
    })
}

/// The `m`-th point of `C(i, j)` in closed form: `(j + (2^m - 1) i) / 2^m`,
/// evaluated as `i + (j - i) 2^-m`.
pub fn circle_point_closed_form(p: PrimeModulus, i: u64, j: u64, m: u64) -> u64 {
    let q = p.get();
    let (i, j) = (i % q, j % q);
    let inv = mod_pow(q.div_ceil(2), m, q);
    (i + mul_mod((j + q - i) % q, inv, q)) % q
}

/// Circles as vertices, `C(i, j) ~ C(j, i)` as edges.
#[derive(Debug, Clone)]
pub struct CircleGraph {
    pub p: PrimeModulus,
    /// Sorted by [`CircleId`].
    pub circles: Vec<Circle>,
    /// Unordered edges `(a, b)`, `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    // owner[i * p + t] = index of the circle with parameter i through t
    owner: Vec<u32>,
}

impl CircleGraph {
    /// Index of `C(i, j)`.
    pub fn index_of(&self, i: u64, j: u64) -> usize {
        let p = self.p.get();
        debug_assert_ne!(i % p, j % p);
        self.owner[((i % p) * p + j % p) as usize] as usize
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn order(&self) -> usize {
        self.circles.len()
    }
}

pub fn circle_graph(p: PrimeModulus) -> Result<CircleGraph, ColoringError> {
    check_prime(p)?;
    let m = p.get();
    if m > CIRCLE_PRIME_CAP {
        return Err(ColoringError::BadInput(format!(
            "circle graph is limited to p <= {CIRCLE_PRIME_CAP}, got {p}"
        )));
    }
    let mut circles = Vec::new();
    let mut owner = vec![u32::MAX; (m * m) as usize];
    // parameters ascending and starts ascending within each: already sorted by id
    for i in 0..m {
        for j in 0..m {
            if j == i || owner[(i * m + j) as usize] != u32::MAX {
                continue;
            }
            let c = circle(p, i, j)?;
            let idx = circles.len() as u32;
            for &t in &c.points {
                owner[(i * m + t) as usize] = idx;
            }
            circles.push(c);
        }
    }
    let mut edges = Vec::with_capacity((m * (m - 1) / 2) as usize);
    let mut adjacency = vec![Vec::new(); circles.len()];
    for i in 0..m {
        for j in i + 1..m {
            let a = owner[(i * m + j) as usize] as usize;
            let b = owner[(j * m + i) as usize] as usize;
            edges.push((a.min(b), a.max(b)));
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    edges.sort_unstable();
    for nb in &mut adjacency {
        nb.sort_unstable();
    }
    Ok(CircleGraph {
        p,
        circles,
        edges,
        adjacency,
        owner,
    })
}

/// A proper 2-coloring of the circle graph; classes are 1 and 2.
#[derive(Debug, Clone)]
pub struct CircleBipartition {
    pub graph: CircleGraph,
    pub classes: Vec<u8>,
}

impl CircleBipartition {
    pub fn p(&self) -> PrimeModulus {
        self.graph.p
    }

    /// Class of `C(i, j)`.
    pub fn class_of(&self, i: u64, j: u64) -> u8 {
        self.classes[self.graph.index_of(i, j)]
    }
}

/// Breadth-first 2-coloring from the smallest unvisited circle of each
/// component, neighbours visited in ascending order, even layers in class 1.
pub fn bipartition_circles(p: PrimeModulus) -> Result<CircleBipartition, ColoringError> {
    let graph = circle_graph(p)?;
    let mut classes = vec![0u8; graph.order()];
    let mut queue = VecDeque::new();
    for root in 0..graph.order() {
        if classes[root] != 0 {
            continue;
        }
        classes[root] = 1;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let other = 3 - classes[v];
            for &w in graph.neighbors(v) {
                match classes[w] {
                    0 => {
                        classes[w] = other;
                        queue.push_back(w);
                    }
                    c if c == other => {}
                    _ => return Err(ColoringError::OddCycle(p.get())),
                }
            }
        }
    }
    Ok(CircleBipartition { graph, classes })
}

/// `f_index(x, y)`: `f_1(x, y) = x` and `f_2(x, y) = y` when `C(x, y)` is in
/// class 1, swapped otherwise.
pub fn f_select(bip: &CircleBipartition, index: u8, x: u64, y: u64) -> Result<u64, ColoringError> {
    let m = bip.p().get();
    let (x, y) = (x % m, y % m);
    if x == y {
        return Err(ColoringError::BadInput(format!(
            "selector needs distinct arguments, got {x} twice"
        )));
    }
    let first = match bip.class_of(x, y) {
        1 => x,
        _ => y,
    };
    match index {
        1 => Ok(first),
        2 => Ok(if first == x { y } else { x }),
        _ => Err(ColoringError::BadInput(format!(
            "selector index must be 1 or 2, got {index}"
        ))),
    }
}
