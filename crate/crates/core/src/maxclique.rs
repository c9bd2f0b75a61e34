//! Exact maximum clique by branch and bound with greedy colouring bounds.
//!
//! Vertices are relabelled by a degeneracy ordering (last removed first),
//! candidate sets are coloured greedily in that order, and a branch is cut as
//! soon as the current clique plus the colour count cannot beat the
//! incumbent. A greedy clique seeds the incumbent.

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCliqueResult {
    /// Vertices of the best clique found, ascending, in the caller's labels.
    pub clique: Vec<usize>,
    /// The search space was fully covered, so `clique` is maximum.
    pub exhaustive: bool,
    pub nodes: u64,
    /// Sizes of successive incumbents, starting with the greedy seed.
    pub incumbents: Vec<usize>,
}

struct Solver<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
    incumbents: Vec<usize>,
}

impl Solver<'_> {
    /// Greedy sequential colouring of `p` in index order; returns vertices
    /// and their colour numbers sorted by colour.
    fn colour_sort(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.len());
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail = avail.difference(&self.adj[v]);
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut p: BitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let order = self.colour_sort(&p);
        for &(v, colour) in order.iter().rev() {
            if current.len() + colour <= self.best.len() {
                return;
            }
            current.push(v);
            let next = p.intersection(&self.adj[v]);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                    self.incumbents.push(current.len());
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            if self.aborted {
                return;
            }
            p.remove(v);
        }
    }
}

/// Order in which vertices are removed by repeatedly taking a minimum-degree
/// vertex, reversed (densest core first).
fn degeneracy_order(adj: &[BitSet]) -> Vec<usize> {
    let n = adj.len();
    let mut alive = BitSet::full(n);
    let mut deg: Vec<usize> = adj.iter().map(BitSet::len).collect();
    let mut removed = Vec::with_capacity(n);
    for _ in 0..n {
        let v = alive
            .iter()
            .min_by_key(|&v| (deg[v], v))
            .expect("alive vertices remain");
        alive.remove(v);
        for u in adj[v].iter() {
            if alive.contains(u) {
                deg[u] -= 1;
            }
        }
        removed.push(v);
    }
    removed.reverse();
    removed
}

/// Maximum clique of the graph with adjacency rows `adj` (symmetric,
/// irreflexive). `budget` caps the number of search nodes.
pub fn max_clique(adj: &[BitSet], budget: u64) -> MaxCliqueResult {
    let n = adj.len();
    if n == 0 {
        return MaxCliqueResult {
            clique: Vec::new(),
            exhaustive: true,
            nodes: 0,
            incumbents: Vec::new(),
        };
    }
    let order = degeneracy_order(adj);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let relabelled: Vec<BitSet> = order
        .iter()
        .map(|&v| BitSet::from_iter(n, adj[v].iter().map(|u| pos[u])))
        .collect();

    // greedy seed: walk the order, keep what stays a clique
    let mut seed = Vec::new();
    let mut cand = BitSet::full(n);
    while let Some(v) = cand.first() {
        seed.push(v);
        cand.remove(v);
        cand.intersect_with(&relabelled[v]);
    }

    let mut solver = Solver {
        adj: &relabelled,
        incumbents: vec![seed.len()],
        best: seed,
        nodes: 0,
        budget,
        aborted: false,
    };
    solver.expand(&mut Vec::new(), BitSet::full(n));
    let mut clique: Vec<usize> = solver.best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    MaxCliqueResult {
        clique,
        exhaustive: !solver.aborted,
        nodes: solver.nodes,
        incumbents: solver.incumbents,
    }
}
