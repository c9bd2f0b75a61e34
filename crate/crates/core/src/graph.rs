//! Simple undirected graphs on dense bitset adjacency, and the named
//! extremal constructions built from join, disjoint union and blow-up.

use crate::bitset::BitSet;
use crate::{Error, IntersectSpec, Result};

/// Simple undirected graph on vertices `[0, n)`.
///
/// Adjacency is symmetric and irreflexive. Graphs are immutable once built;
/// every editing operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![BitSet::new(n); n],
        }
    }

    /// Builds a graph from an edge list. Self-loops and out-of-range
    /// endpoints are rejected; duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParams(format!(
                    "edge ({u},{v}) outside [0,{n})"
                )));
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds from adjacency rows; rows must already be symmetric and
    /// irreflexive.
    pub fn from_rows(rows: Vec<BitSet>) -> Result<Self> {
        let g = Graph { n: rows.len(), rows };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    /// Checks symmetry, irreflexivity and row bounds.
    pub fn validate(&self) -> Result<()> {
        let words = crate::bitset::words_for(self.n);
        for (u, row) in self.rows.iter().enumerate() {
            if row.words().len() != words {
                return Err(Error::InvalidParams(format!("row {u} has wrong width")));
            }
            if row.contains(u) {
                return Err(Error::InvalidParams(format!("self-loop at {u}")));
            }
            for v in row.iter() {
                if v >= self.n {
                    return Err(Error::InvalidParams(format!(
                        "row {u} has bit {v} outside [0,{})",
                        self.n
                    )));
                }
                if !self.rows[v].contains(u) {
                    return Err(Error::InvalidParams(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// `N_G(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn vertex_set(&self) -> BitSet {
        BitSet::full(self.n)
    }

    /// Whether `set` induces a complete subgraph.
    pub fn is_clique(&self, set: &BitSet) -> bool {
        set.iter().all(|v| {
            let mut rest = set.clone();
            rest.remove(v);
            rest.is_subset(&self.rows[v])
        })
    }

    /// `∩_{v ∈ set} N_G(v)`; the whole vertex set when `set` is empty.
    pub fn common_neighborhood(&self, set: &BitSet) -> BitSet {
        let mut acc = BitSet::full(self.n);
        for v in set.iter() {
            acc.intersect_with(&self.rows[v]);
        }
        acc
    }

    /// `G[S]`, relabelled to `[0, |S|)` in increasing order of the original
    /// labels. The second component maps new labels back to old ones.
    pub fn induced(&self, set: &BitSet) -> (Graph, Vec<usize>) {
        let map = set.to_vec();
        let mut g = Graph::empty(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        (g, map)
    }

    /// The graph with vertex `v` deleted, relabelled contiguously.
    pub fn remove_vertex(&self, v: usize) -> (Graph, Vec<usize>) {
        let mut keep = BitSet::full(self.n);
        keep.remove(v);
        self.induced(&keep)
    }

    /// Raw adjacency rows.
    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// `K_k`.
pub fn complete(k: usize) -> Graph {
    let mut g = Graph::empty(k);
    for u in 0..k {
        for v in u + 1..k {
            g.set_edge(u, v);
        }
    }
    g
}

/// `G + H`: disjoint union plus every cross edge, `G`'s vertices first.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let n = g.n + h.n;
    let mut out = Graph::empty(n);
    for (u, v) in g.edges() {
        out.set_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.set_edge(g.n + u, g.n + v);
    }
    for u in 0..g.n {
        for v in 0..h.n {
            out.set_edge(u, g.n + v);
        }
    }
    out
}

/// Vertex-disjoint union, `G`'s vertices first.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::empty(g.n + h.n);
    for (u, v) in g.edges() {
        out.set_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.set_edge(g.n + u, g.n + v);
    }
    out
}

/// `bG`: `b` vertex-disjoint copies of `G`.
pub fn disjoint_copies(b: usize, g: &Graph) -> Graph {
    let mut out = Graph::empty(b * g.n);
    let edges = g.edges();
    for c in 0..b {
        let off = c * g.n;
        for &(u, v) in &edges {
            out.set_edge(off + u, off + v);
        }
    }
    out
}

/// Part sizes of `T(n, t)`: the `n mod t` parts of size `⌈n/t⌉` come first.
pub fn turan_part_sizes(n: usize, t: usize) -> Vec<usize> {
    assert!(t >= 1, "Turán graph needs at least one part");
    let (q, a) = (n / t, n % t);
    (0..t).map(|i| if i < a { q + 1 } else { q }).collect()
}

/// Complete multipartite graph with the given part sizes, parts laid out
/// consecutively.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n = parts.iter().sum();
    let mut side = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        side.extend(std::iter::repeat_n(i, p));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] {
                g.set_edge(u, v);
            }
        }
    }
    g
}

/// Turán graph `T(n, t)`, the balanced complete `t`-partite graph.
pub fn turan(n: usize, t: usize) -> Graph {
    complete_multipartite(&turan_part_sizes(n, t))
}

/// `T̂(m, s, d)`: `T(m, s)` with each vertex replaced by a `K_d`.
///
/// Vertices are ordered by (side, copy, position); side sizes follow
/// [`turan_part_sizes`], so `blown_turan(m, s, 1) == turan(m, s)`.
pub fn blown_turan(m: usize, s: usize, d: usize) -> Graph {
    assert!(s >= 1 && d >= 1, "blow-up needs s ≥ 1 and d ≥ 1");
    let sides = turan_part_sizes(m, s);
    let n = m * d;
    // (side, copy) for each vertex
    let mut tag = Vec::with_capacity(n);
    let mut copy_id = 0;
    for (side, &copies) in sides.iter().enumerate() {
        for _ in 0..copies {
            tag.extend(std::iter::repeat_n((side, copy_id), d));
            copy_id += 1;
        }
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (su, cu) = tag[u];
            let (sv, cv) = tag[v];
            if su != sv || cu == cv {
                g.set_edge(u, v);
            }
        }
    }
    g
}

/// Parameters of the arithmetic-progression construction.
///
/// With `d` the common difference of `ℓ₁, …, ℓ_s, r`:
/// `n − ℓ₁ = m·d + λ` with `0 ≤ λ < d`, and `s₁ ≡ m (mod s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    pub n: usize,
    pub r: usize,
    pub ell1: usize,
    pub s: usize,
    pub d: usize,
    pub m: usize,
    pub lambda: usize,
    pub s1: usize,
}

impl ConstructionParams {
    pub fn new(n: usize, spec: &IntersectSpec) -> Result<Self> {
        let d = spec.ap_difference().ok_or_else(|| Error::NotArithmetic {
            r: spec.r(),
            l: spec.l().to_vec(),
        })?;
        let ell1 = spec.l()[0];
        let s = spec.s();
        if n < ell1 + s * d {
            return Err(Error::InvalidParams(format!(
                "n = {n} is below ℓ₁ + s·d = {}",
                ell1 + s * d
            )));
        }
        let m = (n - ell1) / d;
        let lambda = (n - ell1) % d;
        Ok(ConstructionParams {
            n,
            r: spec.r(),
            ell1,
            s,
            d,
            m,
            lambda,
            s1: m % s,
        })
    }
}

/// `G_{n,r,L} = K_{ℓ₁} + T̂(m, s, d)`, padded with `λ` isolated vertices so
/// the result has exactly `n` vertices.
pub fn extremal_ap(n: usize, spec: &IntersectSpec) -> Result<Graph> {
    let p = ConstructionParams::new(n, spec)?;
    let core = join(&complete(p.ell1), &blown_turan(p.m, p.s, p.d));
    let g = disjoint_union(&core, &Graph::empty(p.lambda));
    debug_assert_eq!(g.n(), n);
    Ok(g)
}

/// `K_{t+2} + T(n − t − 2, r − t − 1)`.
pub fn hm_extremal(n: usize, r: usize, t: usize) -> Result<Graph> {
    if t < 1 || r <= t + 1 || n < t + 2 {
        return Err(Error::InvalidParams(format!(
            "need n ≥ t+2, t ≥ 1 and r − t − 1 ≥ 1 (n={n}, r={r}, t={t})"
        )));
    }
    Ok(join(&complete(t + 2), &turan(n - t - 2, r - t - 1)))
}

/// `K_t + T(n − t, r − t)`, the trivially t-intersecting extremal graph.
pub fn ekr_extremal(n: usize, r: usize, t: usize) -> Result<Graph> {
    if t >= r || n < t {
        return Err(Error::InvalidParams(format!(
            "need r > t and n ≥ t (n={n}, r={r}, t={t})"
        )));
    }
    Ok(join(&complete(t), &turan(n - t, r - t)))
}

/// `K_ℓ + ⌊(n−ℓ)/(r−ℓ)⌋ K_{r−ℓ}` for a single allowed intersection size,
/// padded with isolated vertices to `n` vertices.
pub fn single_size_construction(n: usize, r: usize, ell: usize) -> Result<Graph> {
    if ell >= r || n < ell {
        return Err(Error::InvalidParams(format!(
            "need ℓ < r and n ≥ ℓ (n={n}, r={r}, ℓ={ell})"
        )));
    }
    let b = (n - ell) / (r - ell);
    let core = join(&complete(ell), &disjoint_copies(b, &complete(r - ell)));
    let pad = n - core.n();
    Ok(disjoint_union(&core, &Graph::empty(pad)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: usize, l: &str) -> IntersectSpec {
        IntersectSpec::parse(r, l).unwrap()
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(complete(0).n(), 0);
        assert_eq!(complete(1).edge_count(), 0);
        let k4 = complete(4);
        assert_eq!((k4.n(), k4.edge_count()), (4, 6));
        k4.validate().unwrap();
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&complete(1), &complete(1)), complete(2));
        let g = join(&complete(2), &Graph::empty(3));
        assert_eq!((g.n(), g.edge_count()), (5, 7));
        assert!(g.has_edge(0, 1) && g.has_edge(1, 4) && !g.has_edge(2, 3));
    }

    #[test]
    fn copies() {
        assert_eq!(disjoint_copies(0, &complete(3)).n(), 0);
        let g = disjoint_copies(3, &complete(2));
        assert_eq!((g.n(), g.edge_count()), (6, 3));
        assert_eq!(g.edges(), vec![(0, 1), (2, 3), (4, 5)]);
    }

    #[test]
    fn turan_graphs() {
        let g = turan(6, 3);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(turan_part_sizes(7, 3), vec![3, 2, 2]);
        // 21 − 3 − 1 − 1 by complement counting
        assert_eq!(turan(7, 3).edge_count(), 16);
        assert_eq!(turan(5, 1).edge_count(), 0);
        assert_eq!(turan(0, 3).n(), 0);
    }

    #[test]
    fn blown_turan_layout() {
        for (m, s) in [(0, 1), (4, 2), (7, 3), (5, 5)] {
            assert_eq!(blown_turan(m, s, 1), turan(m, s));
        }
        let g = blown_turan(4, 2, 2);
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 20);
        // side 0 = copies {0,1},{2,3}; side 1 = {4,5},{6,7}
        assert!(g.has_edge(0, 1) && !g.has_edge(1, 2) && g.has_edge(3, 4));
    }

    #[test]
    fn ap_params() {
        let p = ConstructionParams::new(9, &spec(5, "1,3")).unwrap();
        assert_eq!((p.d, p.m, p.lambda, p.s1), (2, 4, 0, 0));
        let p = ConstructionParams::new(12, &spec(5, "1,3")).unwrap();
        assert_eq!((p.m, p.lambda, p.s1), (5, 1, 1));
        assert_eq!(p.ell1 + p.m * p.d + p.lambda, p.n);
        assert!(ConstructionParams::new(9, &spec(3, "0,1")).is_err());
        assert!(ConstructionParams::new(3, &spec(4, "0,2")).is_err());
    }

    #[test]
    fn extremal_ap_shapes() {
        let g = extremal_ap(8, &spec(4, "0,2")).unwrap();
        assert_eq!(g, blown_turan(4, 2, 2));
        let g = extremal_ap(9, &spec(5, "1,3")).unwrap();
        assert_eq!(g, join(&complete(1), &blown_turan(4, 2, 2)));
        // λ = 1: one isolated vertex appended
        let g = extremal_ap(10, &spec(5, "1,3")).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.degree(9), 0);
        // d = 1 is the EKR graph
        let g = extremal_ap(9, &IntersectSpec::t_intersecting(4, 2).unwrap()).unwrap();
        assert_eq!(g, ekr_extremal(9, 4, 2).unwrap());
        assert!(matches!(
            extremal_ap(9, &spec(3, "0,1")),
            Err(Error::NotArithmetic { .. })
        ));
    }

    #[test]
    fn hm_shapes() {
        let g = hm_extremal(9, 3, 1).unwrap();
        assert_eq!(g, join(&complete(3), &Graph::empty(6)));
        let g = hm_extremal(3, 4, 1).unwrap();
        assert_eq!(g, complete(3));
        assert!(hm_extremal(9, 2, 1).is_err());
        assert!(hm_extremal(2, 4, 1).is_err());
    }

    #[test]
    fn single_size() {
        let g = single_size_construction(10, 4, 1).unwrap();
        assert_eq!(g.n(), 10);
        // apex + 3 triangles, one padding vertex
        assert_eq!(g.edge_count(), 9 + 9);
    }

    #[test]
    fn induced_and_remove() {
        let g = turan(6, 2);
        let (h, map) = g.remove_vertex(0);
        assert_eq!(h.n(), 5);
        assert_eq!(map, vec![1, 2, 3, 4, 5]);
        assert_eq!(h.edge_count(), 9 - 3);
        let s = BitSet::from_iter(6, [0, 1, 2]);
        assert!(!g.is_clique(&s));
        assert!(g.is_clique(&BitSet::from_iter(6, [0, 3])));
        assert_eq!(g.common_neighborhood(&BitSet::from_iter(6, [0, 1])).to_vec(), vec![3, 4, 5]);
    }

    #[test]
    fn from_edges_rejects_loops() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }
}
