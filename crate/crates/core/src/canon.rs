//! Canonical forms for small graphs.
//!
//! Colour refinement to an equitable ordered partition, then
//! individualisation of vertices of the first smallest non-singleton cell,
//! recursively, keeping the lexicographically least adjacency string over all
//! discrete leaves. Vertices of the target cell that are twins (same
//! neighbourhood apart from each other) lead to the same leaves, so only one
//! per twin class is branched on.

use crate::graph::Graph;

/// Largest vertex count accepted by the canonizer.
pub const MAX_CANON_N: usize = 64;

/// Byte string equal for two graphs exactly when they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

type Cells = Vec<Vec<usize>>;

fn refine(rows: &[u64], mut cells: Cells) -> Cells {
    let mut s = 0;
    while s < cells.len() {
        let splitter: u64 = cells[s].iter().fold(0, |m, &v| m | 1u64 << v);
        let mut changed = false;
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in cells.drain(..) {
            if cell.len() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: Vec<(u32, usize)> = cell
                .iter()
                .map(|&v| ((rows[v] & splitter).count_ones(), v))
                .collect();
            keyed.sort_unstable();
            if keyed[0].0 == keyed[keyed.len() - 1].0 {
                next.push(cell);
                continue;
            }
            changed = true;
            let mut group = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[1].0 != w[0].0 {
                    next.push(std::mem::take(&mut group));
                }
                group.push(w[1].1);
            }
            next.push(group);
        }
        cells = next;
        // a split can invalidate earlier splitters; restart
        s = if changed { 0 } else { s + 1 };
    }
    cells
}

fn leaf_code(rows: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut code = vec![0u64; nbits.div_ceil(64)];
    let mut k = 0;
    for j in 1..n {
        let row = rows[order[j]];
        for &oi in &order[..j] {
            if (row >> oi) & 1 == 1 {
                code[k / 64] |= 1u64 << (63 - k % 64);
            }
            k += 1;
        }
    }
    code
}

fn search(rows: &[u64], cells: Cells, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(ti) = target else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = leaf_code(rows, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = &cells[ti];
    let mut reps: Vec<usize> = Vec::new();
    for &v in cell {
        let twin = reps.iter().any(|&u| {
            let mask = !((1u64 << u) | (1u64 << v));
            rows[u] & mask == rows[v] & mask
        });
        if !twin {
            reps.push(v);
        }
    }
    for v in reps {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..ti]);
        next.push(vec![v]);
        next.push(cells[ti].iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[ti + 1..]);
        search(rows, refine(rows, next), best);
    }
}

/// Canonical vertex order for a graph given by `u64` adjacency rows:
/// position `i` of the result is the original vertex placed at `i`.
pub fn canonical_order_rows(rows: &[u64]) -> (Vec<u64>, Vec<usize>) {
    let n = rows.len();
    assert!(n <= MAX_CANON_N, "canonical form supports at most {MAX_CANON_N} vertices");
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut best = None;
    search(rows, refine(rows, vec![(0..n).collect()]), &mut best);
    let (code, order) = best.expect("search visits at least one leaf");
    (code, order)
}

/// Canonical form of a graph given by `u64` adjacency rows.
pub fn canonical_form_rows(rows: &[u64]) -> CanonicalForm {
    let (code, _) = canonical_order_rows(rows);
    let mut bytes = Vec::with_capacity(1 + code.len() * 8);
    bytes.push(rows.len() as u8);
    for w in code {
        bytes.extend_from_slice(&w.to_be_bytes());
    }
    CanonicalForm(bytes)
}

pub(crate) fn small_rows(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= MAX_CANON_N, "canonical form supports at most {MAX_CANON_N} vertices");
    g.rows().iter().map(|r| r.words().first().copied().unwrap_or(0)).collect()
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_form_rows(&small_rows(g))
}

/// The canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let rows = small_rows(g);
    let (_, order) = canonical_order_rows(&rows);
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    Graph::from_edges(g.n(), g.edges().into_iter().map(|(u, v)| (pos[u], pos[v])))
        .expect("relabelling preserves simplicity")
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_multipartite, disjoint_union, join, turan};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn all_graphs(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> =
            (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap()
            })
            .collect()
    }

    fn permuted(g: &Graph, perm: &[usize]) -> Graph {
        Graph::from_edges(g.n(), g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    #[test]
    fn paths_reversed() {
        let p = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let q = Graph::from_edges(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        let k3k1 = disjoint_union(&complete(3), &Graph::empty(1));
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_ne!(canonical_form(&k3k1), canonical_form(&p4));
    }

    #[test]
    fn class_counts() {
        for (n, want) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            let classes: HashSet<_> = all_graphs(n).iter().map(canonical_form).collect();
            assert_eq!(classes.len(), want, "n = {n}");
        }
    }

    #[test]
    fn random_relabelling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let p: f64 = rng.gen();
            let edges: Vec<(usize, usize)> = (1..n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let h = permuted(&g, &perm);
            assert_eq!(canonical_form(&g), canonical_form(&h));
            assert_eq!(canonical_graph(&g), canonical_graph(&h));
        }
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        for g in [
            Graph::empty(16),
            complete(16),
            turan(16, 4),
            join(&complete(3), &turan(12, 3)),
            complete_multipartite(&[2; 8]),
        ] {
            let f = canonical_form(&g);
            assert_eq!(f.as_bytes()[0] as usize, g.n());
        }
    }
}
