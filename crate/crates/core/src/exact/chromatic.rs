use std::time::Instant;

use super::{AdjacencyMatrix, ExactError, Outcome, SolveLimits};

const UNCOLORED: usize = usize::MAX;

fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

/// A maximal clique grown greedily from every start vertex; the largest wins.
pub fn greedy_clique(g: &AdjacencyMatrix) -> Vec<usize> {
    let degree: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut best = Vec::new();
    for start in 0..g.order() {
        let mut clique = vec![start];
        let mut cand = g.row(start).to_vec();
        while let Some(w) = bits(&cand).max_by_key(|&w| (degree[w], std::cmp::Reverse(w))) {
            clique.push(w);
            for (c, r) in cand.iter_mut().zip(g.row(w)) {
                *c &= r;
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// Number of colors used by greedy DSATUR (an upper bound on χ).
pub fn greedy_coloring(g: &AdjacencyMatrix) -> usize {
    dsatur_greedy(g)
        .into_iter()
        .map(|c| c + 1)
        .max()
        .unwrap_or(0)
}

fn dsatur_greedy(g: &AdjacencyMatrix) -> Vec<usize> {
    let n = g.order();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut colors = vec![UNCOLORED; n];
    let mut seen = vec![Vec::<usize>::new(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == UNCOLORED)
            .max_by_key(|&v| (seen[v].len(), degree[v], std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..).find(|c| !seen[v].contains(c)).unwrap();
        colors[v] = c;
        for w in bits(g.row(v)) {
            if let Err(pos) = seen[w].binary_search(&c) {
                seen[w].insert(pos, c);
            }
        }
    }
    colors
}

struct Search<'a> {
    limits: &'a SolveLimits,
    n: usize,
    adj: Vec<Vec<usize>>,
    degree: Vec<usize>,
    colors: Vec<usize>,
    // counts[v * n + c]: neighbours of v currently holding color c
    counts: Vec<u32>,
    saturation: Vec<usize>,
    lower: usize,
    best: usize,
    best_colors: Vec<usize>,
    nodes: u64,
    started: Instant,
    aborted: bool,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &w in &self.adj[v] {
            let slot = &mut self.counts[w * self.n + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = UNCOLORED;
        for &w in &self.adj[v] {
            let slot = &mut self.counts[w * self.n + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes
            || (self.nodes.is_multiple_of(1024) && self.started.elapsed() > self.limits.time_budget)
        {
            self.aborted = true;
        }
        self.aborted
    }

    fn descend(&mut self, colored: usize, used: usize) {
        if self.out_of_budget() {
            return;
        }
        if colored == self.n {
            if used < self.best {
                self.best = used;
                self.best_colors = self.colors.clone();
            }
            return;
        }
        let v = (0..self.n)
            .filter(|&v| self.colors[v] == UNCOLORED)
            .max_by_key(|&v| (self.saturation[v], self.degree[v], std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        for c in 0..=used {
            // the total must stay below the incumbent, which may shrink meanwhile
            if used.max(c + 1) >= self.best {
                break;
            }
            if self.counts[v * self.n + c] != 0 {
                continue;
            }
            self.assign(v, c);
            self.descend(colored + 1, used.max(c + 1));
            self.unassign(v, c);
            if self.aborted || self.best == self.lower {
                return;
            }
        }
    }
}

/// Chromatic number by DSATUR branch-and-bound.
///
/// A greedy clique fixes the first colors and gives the lower bound; greedy
/// DSATUR gives the first incumbent. The search then proves the incumbent
/// optimal by exhausting every coloring with fewer colors.
pub fn exact_chromatic_number(
    g: &AdjacencyMatrix,
    limits: &SolveLimits,
) -> Result<Outcome, ExactError> {
    limits.check(g)?;
    let n = g.order();
    if n == 0 {
        return Ok(Outcome::Solved {
            value: 0,
            witness: Vec::new(),
        });
    }
    let clique = greedy_clique(g);
    let greedy = dsatur_greedy(g);
    let mut search = Search {
        limits,
        n,
        adj: (0..n).map(|v| bits(g.row(v)).collect()).collect(),
        degree: (0..n).map(|v| g.degree(v)).collect(),
        colors: vec![UNCOLORED; n],
        counts: vec![0; n * n],
        saturation: vec![0; n],
        lower: clique.len(),
        best: greedy.iter().max().unwrap() + 1,
        best_colors: greedy,
        nodes: 0,
        started: Instant::now(),
        aborted: false,
    };
    if search.best > search.lower {
        for (c, &v) in clique.iter().enumerate() {
            search.assign(v, c);
        }
        search.descend(clique.len(), clique.len());
    }
    if search.aborted {
        return Ok(Outcome::Exhausted {
            lower: search.lower,
            upper: search.best,
        });
    }
    Ok(Outcome::Solved {
        value: search.best,
        witness: search.best_colors,
    })
}
