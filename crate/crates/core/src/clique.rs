//! r-clique enumeration and counting.
//!
//! Cliques are listed by ordered extension: each clique is produced once,
//! from its smallest vertex upwards, with the candidate set kept as a bitset
//! restricted to higher-numbered common neighbours. This yields the
//! lexicographic order of sorted vertex lists directly.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::family::SetFamily;
use crate::graph::{turan_part_sizes, Graph};

/// Vertices of `[0, n)` strictly greater than `v`.
fn above(v: usize, n: usize) -> BitSet {
    let mut s = BitSet::new(n);
    for u in v + 1..n {
        s.insert(u);
    }
    s
}

fn extend(
    g: &Graph,
    need: usize,
    cand: &BitSet,
    cur: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if need == 0 {
        visit(cur);
        return;
    }
    let mut rest = cand.clone();
    while let Some(v) = rest.first() {
        rest.remove(v);
        let next = rest.intersection(g.neighbors(v));
        if next.len() + 1 < need {
            continue;
        }
        cur.push(v);
        extend(g, need - 1, &next, cur, visit);
        cur.pop();
    }
}

fn count_extend(g: &Graph, need: usize, cand: &BitSet) -> u128 {
    match need {
        0 => 1,
        1 => cand.len() as u128,
        _ => {
            let mut total = 0;
            let mut rest = cand.clone();
            while let Some(v) = rest.first() {
                rest.remove(v);
                let next = rest.intersection(g.neighbors(v));
                if next.len() + 1 >= need {
                    total += count_extend(g, need - 1, &next);
                }
            }
            total
        }
    }
}

/// Calls `visit` on every `r`-clique contained in `within`, in lexicographic
/// order. `r = 0` visits the empty clique once.
pub fn for_each_clique_in(g: &Graph, r: usize, within: &BitSet, mut visit: impl FnMut(&[usize])) {
    let mut cur = Vec::with_capacity(r);
    extend(g, r, within, &mut cur, &mut visit);
}

/// Vertex sets of all `r`-cliques inside `within`, lexicographically sorted.
pub fn cliques_in(g: &Graph, r: usize, within: &BitSet) -> Vec<BitSet> {
    let n = g.n();
    if r == 0 {
        return vec![BitSet::new(n)];
    }
    let firsts = within.to_vec();
    let per_branch: Vec<Vec<BitSet>> = firsts
        .par_iter()
        .map(|&v| {
            let cand = within.intersection(g.neighbors(v)).intersection(&above(v, n));
            let mut out = Vec::new();
            let mut cur = vec![v];
            extend(g, r - 1, &cand, &mut cur, &mut |c| {
                out.push(BitSet::from_iter(n, c.iter().copied()))
            });
            out
        })
        .collect();
    per_branch.into_iter().flatten().collect()
}

/// `H_G^r`, the associated r-graph: vertex sets of all `r`-cliques of `G`.
pub fn associated_r_graph(g: &Graph, r: usize) -> SetFamily {
    let edges = cliques_in(g, r, &g.vertex_set());
    SetFamily::from_sorted_unchecked(g.n(), r, edges)
}

/// Number of `r`-cliques inside `within`.
pub fn count_cliques_in(g: &Graph, r: usize, within: &BitSet) -> u128 {
    if r == 0 {
        return 1;
    }
    let n = g.n();
    within
        .to_vec()
        .par_iter()
        .map(|&v| {
            let cand = within.intersection(g.neighbors(v)).intersection(&above(v, n));
            count_extend(g, r - 1, &cand)
        })
        .sum()
}

/// `N(K_r, G)`; `r = 0` gives 1 and `r = 1` gives `n`.
pub fn count_cliques(g: &Graph, r: usize) -> BigUint {
    BigUint::from(count_cliques_in(g, r, &g.vertex_set()))
}

/// `{A ∈ H_G^r : T ⊆ A}`. Empty unless `T` is a clique.
pub fn cliques_containing(g: &Graph, r: usize, t: &BitSet) -> SetFamily {
    let n = g.n();
    let k = t.len();
    if k > r || !g.is_clique(t) {
        return SetFamily::empty(n, r);
    }
    let within = g.common_neighborhood(t).difference(t);
    let mut edges: Vec<BitSet> = cliques_in(g, r - k, &within)
        .into_iter()
        .map(|c| c.union(t))
        .collect();
    crate::family::sort_lex(&mut edges);
    SetFamily::from_sorted_unchecked(n, r, edges)
}

/// Number of `r`-cliques through each vertex.
pub fn clique_degrees(g: &Graph, r: usize) -> Vec<u128> {
    let n = g.n();
    (0..n)
        .into_par_iter()
        .map(|v| {
            if r == 0 {
                return 0;
            }
            count_cliques_in(g, r - 1, g.neighbors(v))
        })
        .collect()
}

/// `N(K_r, T(n, t))` by counting transversals of `r` parts:
/// `Σ_i C(a, i) C(t − a, r − i) ⌈n/t⌉^i ⌊n/t⌋^{r−i}` with `a = n mod t`.
pub fn turan_clique_count(n: usize, t: usize, r: usize) -> BigUint {
    assert!(t >= 1, "Turán graph needs at least one part");
    if r == 0 {
        return BigUint::one();
    }
    if r > t {
        return BigUint::zero();
    }
    let a = n % t;
    let hi = BigUint::from(n / t + 1);
    let lo = BigUint::from(n / t);
    let mut total = BigUint::zero();
    for i in 0..=r.min(a) {
        if r - i > t - a {
            continue;
        }
        let ways = binomial(BigUint::from(a), BigUint::from(i))
            * binomial(BigUint::from(t - a), BigUint::from(r - i));
        total += ways * hi.pow(i as u32) * lo.pow((r - i) as u32);
    }
    total
}

/// `N(K_r, ·)` of a complete multipartite graph with the given part sizes
/// (elementary symmetric polynomial of the sizes).
pub fn multipartite_clique_count(parts: &[usize], r: usize) -> BigUint {
    let mut e = vec![BigUint::zero(); r + 1];
    e[0] = BigUint::one();
    for &p in parts {
        let p = BigUint::from(p);
        for k in (1..=r).rev() {
            let add = &e[k - 1] * &p;
            e[k] += add;
        }
    }
    e.swap_remove(r)
}

/// Same value as [`turan_clique_count`], via the part-size polynomial.
pub fn turan_clique_count_by_parts(n: usize, t: usize, r: usize) -> BigUint {
    multipartite_clique_count(&turan_part_sizes(n, t), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{blown_turan, complete, hm_extremal, turan};

    fn naive_count(g: &Graph, r: usize) -> u128 {
        crate::family::all_subsets(g.n(), r)
            .into_iter()
            .filter(|s| {
                s.iter()
                    .enumerate()
                    .all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)))
            })
            .count() as u128
    }

    #[test]
    fn associated_graph_examples() {
        assert_eq!(associated_r_graph(&complete(5), 3).len(), 10);
        let h = associated_r_graph(&turan(6, 3), 3);
        assert_eq!(h.len(), 8);
        // every triple meets each part {0,1},{2,3},{4,5} once
        for e in h.edges() {
            let v = e.to_vec();
            assert_eq!(v.iter().map(|x| x / 2).collect::<Vec<_>>(), vec![0, 1, 2]);
        }
        assert!(associated_r_graph(&turan(6, 2), 3).is_empty());
    }

    #[test]
    fn lexicographic_order() {
        let h = associated_r_graph(&complete(5), 3);
        let lists = h.edge_lists();
        let mut sorted = lists.clone();
        sorted.sort();
        assert_eq!(lists, sorted);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_cliques(&blown_turan(4, 2, 2), 4), BigUint::from(4u32));
        assert_eq!(count_cliques(&hm_extremal(9, 3, 1).unwrap(), 3), BigUint::from(19u32));
        for n in 0..10 {
            for t in 1..5 {
                assert!(count_cliques(&turan(n, t), t + 1).is_zero());
            }
        }
        let g = turan(7, 3);
        assert_eq!(count_cliques(&g, 0), BigUint::one());
        assert_eq!(count_cliques(&g, 1), BigUint::from(7u32));
        assert_eq!(count_cliques(&g, 2), BigUint::from(16u32));
    }

    #[test]
    fn turan_formula() {
        assert_eq!(turan_clique_count(6, 3, 3), BigUint::from(8u32));
        assert_eq!(turan_clique_count(7, 3, 3), BigUint::from(12u32));
        assert!(turan_clique_count(9, 3, 4).is_zero());
        for n in 0..16 {
            for t in 1..6 {
                for r in 0..7 {
                    let c = turan_clique_count(n, t, r);
                    assert_eq!(c, turan_clique_count_by_parts(n, t, r));
                    assert_eq!(c, BigUint::from(naive_count(&turan(n, t), r)), "n={n} t={t} r={r}");
                }
            }
        }
    }

    #[test]
    fn containing() {
        let g = hm_extremal(9, 3, 1).unwrap();
        let f = cliques_containing(&g, 3, &BitSet::from_iter(9, [0, 1]));
        assert_eq!(f.len(), 7);
        assert_eq!(f.edge_lists()[0], vec![0, 1, 2]);
        let a = BitSet::from_iter(9, [0, 1, 5]);
        assert_eq!(cliques_containing(&g, 3, &a).edges(), &[a.clone()]);
        // 3 and 4 are non-adjacent outer vertices
        assert!(cliques_containing(&g, 3, &BitSet::from_iter(9, [3, 4])).is_empty());
        assert_eq!(
            cliques_containing(&g, 3, &BitSet::new(9)),
            associated_r_graph(&g, 3)
        );
    }

    #[test]
    fn degrees_sum() {
        let g = hm_extremal(9, 4, 1).unwrap();
        let deg = clique_degrees(&g, 4);
        let total: u128 = deg.iter().sum();
        assert_eq!(total, 4 * 33);
    }
}
