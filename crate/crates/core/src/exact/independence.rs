use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::{greedy_clique, AdjacencyMatrix, ExactError, Outcome, SolveLimits};

type Bitset = Vec<u64>;

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
fn clear(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1u64 << (v % 64));
}

/// State shared by all workers. The incumbent only ever grows.
struct Shared {
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    aborted: AtomicBool,
    /// Stop as soon as a clique of this size is known.
    goal: usize,
    max_nodes: u64,
    started: Instant,
    limits: SolveLimits,
}

impl Shared {
    fn new(initial: Vec<usize>, goal: usize, limits: &SolveLimits) -> Self {
        Shared {
            best: AtomicUsize::new(initial.len()),
            witness: Mutex::new(initial),
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            goal,
            max_nodes: limits.max_nodes,
            started: Instant::now(),
            limits: *limits,
        }
    }

    fn stopped(&self) -> bool {
        self.aborted.load(Ordering::Relaxed) || self.best.load(Ordering::SeqCst) >= self.goal
    }

    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if k > self.max_nodes
            || (k.is_multiple_of(1024) && self.started.elapsed() > self.limits.time_budget)
        {
            self.aborted.store(true, Ordering::Relaxed);
        }
        self.aborted.load(Ordering::Relaxed)
    }

    fn offer(&self, clique: &[usize]) {
        let mut w = self.witness.lock().expect("witness lock");
        if clique.len() > w.len() {
            *w = clique.to_vec();
            self.best.fetch_max(clique.len(), Ordering::SeqCst);
        }
    }
}

/// Max-clique search (greedy-coloring bound) on graph `g` whose rows are
/// already in the preferred vertex order.
struct CliqueSearch<'a> {
    g: &'a AdjacencyMatrix,
    shared: &'a Shared,
}

impl CliqueSearch<'_> {
    /// Greedy sequential coloring of `cand`: vertices paired with their
    /// color number, in color order. Color `k` bounds the clique size
    /// among the vertices listed up to that point.
    fn color_sort(&self, cand: &[u64]) -> Vec<(usize, usize)> {
        let mut uncolored = cand.to_vec();
        let mut out = Vec::new();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                clear(&mut uncolored, v);
                clear(&mut q, v);
                for (x, r) in q.iter_mut().zip(self.g.row(v)) {
                    *x &= !r;
                }
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&self, mut cand: Bitset, current: &mut Vec<usize>) {
        if self.shared.tick() {
            return;
        }
        let order = self.color_sort(&cand);
        for &(v, color) in order.iter().rev() {
            if current.len() + color <= self.shared.best.load(Ordering::SeqCst) {
                return;
            }
            self.branch(v, &cand, current);
            if self.shared.stopped() {
                return;
            }
            clear(&mut cand, v);
        }
    }

    fn branch(&self, v: usize, cand: &[u64], current: &mut Vec<usize>) {
        current.push(v);
        let next: Bitset = cand.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
        if next.iter().all(|&w| w == 0) {
            self.shared.offer(current);
        } else {
            self.expand(next, current);
        }
        current.pop();
    }
}

/// Independence number as the clique number of the complement.
///
/// The root's branches are handed out to `limits.workers` threads in a
/// fixed order; they share a monotone incumbent, so the optimum found does
/// not depend on the worker count (the witness set may).
pub fn exact_independence_number(
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
    let comp = g.complement();
    // highest complement degree first
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&v| (std::cmp::Reverse(comp.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    let ordered = AdjacencyMatrix::from_edges(
        n,
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| comp.has_edge(u, v))
            .map(|(u, v)| (pos[u], pos[v])),
    );

    let initial: Vec<usize> = greedy_clique(&ordered);
    let greedy_size = initial.len();
    let shared = Shared::new(initial, usize::MAX, limits);
    let search = CliqueSearch {
        g: &ordered,
        shared: &shared,
    };

    let mut root: Bitset = vec![!0u64; n.div_ceil(64)];
    if !n.is_multiple_of(64) {
        *root.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
    }
    let order = search.color_sort(&root);
    let root_bound = order.iter().map(|&(_, c)| c).max().unwrap_or(0);
    // task i branches on the i-th vertex from the back with every later
    // task's vertex still available, exactly as the sequential loop would
    let tasks: Vec<(usize, usize, Bitset)> = order
        .iter()
        .rev()
        .map(|&(v, color)| {
            let cand = root.clone();
            clear(&mut root, v);
            (v, color, cand)
        })
        .collect();
    run_tasks(&search, &tasks, limits.workers);

    let best = shared.best.load(Ordering::SeqCst);
    if shared.aborted.load(Ordering::Relaxed) {
        return Ok(Outcome::Exhausted {
            lower: best,
            upper: root_bound.max(best),
        });
    }
    let mut witness = shared.witness.into_inner().expect("witness lock");
    if limits.workers > 1 && best > greedy_size {
        // which worker reached the optimum first depends on timing; redo
        // the search alone, aiming for `best`, so the witness does not
        let again = Shared::new(Vec::new(), best, limits);
        again.best.store(best - 1, Ordering::SeqCst);
        let search = CliqueSearch {
            g: &ordered,
            shared: &again,
        };
        run_tasks(&search, &tasks, 1);
        let found = again.witness.into_inner().expect("witness lock");
        if found.len() == best {
            witness = found;
        }
    }
    let mut witness: Vec<usize> = witness.iter().map(|&i| perm[i]).collect();
    witness.sort_unstable();
    Ok(Outcome::Solved {
        value: best,
        witness,
    })
}

fn run_tasks(search: &CliqueSearch, tasks: &[(usize, usize, Bitset)], workers: usize) {
    let shared = search.shared;
    let next_task = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut current = Vec::new();
                loop {
                    let i = next_task.fetch_add(1, Ordering::SeqCst);
                    let Some((v, color, cand)) = tasks.get(i) else {
                        break;
                    };
                    if shared.stopped() {
                        break;
                    }
                    if *color <= shared.best.load(Ordering::SeqCst) {
                        // colors only decrease along the task list
                        break;
                    }
                    search.branch(*v, cand, &mut current);
                }
            });
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distgraph::GraphSpec;

    fn brute_alpha(g: &AdjacencyMatrix) -> usize {
        let n = g.order();
        assert!(n <= 20);
        let adj: Vec<u32> = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&v| g.has_edge(u, v))
                    .fold(0, |m, v| m | 1 << v)
            })
            .collect();
        (0u32..1 << n)
            .filter(|&mask| (0..n).all(|u| mask >> u & 1 == 0 || adj[u] & mask == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn solve(g: &AdjacencyMatrix, workers: usize) -> usize {
        let limits = SolveLimits {
            workers,
            ..SolveLimits::independence()
        };
        match exact_independence_number(g, &limits).unwrap() {
            Outcome::Solved { value, witness } => {
                assert_eq!(witness.len(), value);
                for (i, &u) in witness.iter().enumerate() {
                    for &v in &witness[i + 1..] {
                        assert!(!g.has_edge(u, v));
                    }
                }
                value
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_graphs() {
        assert_eq!(solve(&AdjacencyMatrix::complete(7), 1), 1);
        assert_eq!(solve(&AdjacencyMatrix::empty(70), 1), 70);
        assert_eq!(solve(&AdjacencyMatrix::empty(0), 1), 0);
    }

    #[test]
    fn matches_brute_force() {
        for (n, r, s) in [
            (5, 2, 0),
            (5, 2, 1),
            (6, 2, 1),
            (5, 3, 2),
            (6, 3, 2),
            (6, 2, 0),
            (5, 3, 1),
        ] {
            let g = AdjacencyMatrix::from_spec(&GraphSpec::new(n, r, s).unwrap(), 500).unwrap();
            assert_eq!(solve(&g, 1), brute_alpha(&g), "G({n},{r},{s})");
        }
    }

    #[test]
    fn worker_count_does_not_change_value() {
        let g = AdjacencyMatrix::from_spec(&GraphSpec::new(8, 3, 2).unwrap(), 500).unwrap();
        let values: Vec<_> = [1, 2, 4, 8].iter().map(|&w| solve(&g, w)).collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
    }

    #[test]
    fn g932_has_alpha_twelve() {
        let g = AdjacencyMatrix::from_spec(&GraphSpec::new(9, 3, 2).unwrap(), 500).unwrap();
        assert_eq!(solve(&g, 2), 12);
    }
}
