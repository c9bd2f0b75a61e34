//! Intersection-pattern predicates on set families.
//!
//! Every predicate reports a witness on failure. Pair scans pick the
//! lexicographically smallest violating pair `(i, j)` of edge indices, so
//! results do not depend on thread scheduling.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::family::SetFamily;
use crate::{Error, IntersectSpec, Result};

/// Outcome of a pairwise predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub holds: bool,
    /// First violating pair, as sorted vertex lists.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    /// The family has at most one edge, so the verdict holds vacuously.
    pub vacuous: bool,
}

impl PairVerdict {
    fn from_pair(f: &SetFamily, pair: Option<(usize, usize)>) -> Self {
        PairVerdict {
            holds: pair.is_none(),
            witness: pair.map(|(i, j)| (f.edges()[i].to_vec(), f.edges()[j].to_vec())),
            vacuous: f.len() <= 1,
        }
    }
}

/// `{|A ∩ B| : A ≠ B ∈ F}`.
pub fn intersection_spectrum(f: &SetFamily) -> BTreeSet<usize> {
    let edges = f.edges();
    (0..edges.len())
        .into_par_iter()
        .map(|i| {
            edges[i + 1..]
                .iter()
                .map(|b| edges[i].intersection_len(b))
                .collect::<BTreeSet<_>>()
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// First pair `(i, j)`, `i < j`, whose intersection size fails `ok`.
fn first_violation<F>(f: &SetFamily, ok: F) -> Option<(usize, usize)>
where
    F: Fn(usize) -> bool + Sync,
{
    let edges = f.edges();
    (0..edges.len()).into_par_iter().find_map_first(|i| {
        edges[i + 1..]
            .iter()
            .position(|b| !ok(edges[i].intersection_len(b)))
            .map(|k| (i, i + 1 + k))
    })
}

/// Whether every two distinct edges meet in a size from `L`.
pub fn is_l_intersecting(f: &SetFamily, spec: &IntersectSpec) -> Result<PairVerdict> {
    if f.r() != spec.r() {
        return Err(Error::UniformityMismatch {
            family: f.r(),
            expected: spec.r(),
        });
    }
    let pair = first_violation(f, |k| spec.contains(k));
    Ok(PairVerdict::from_pair(f, pair))
}

/// Whether every two distinct edges share at least `t` vertices.
pub fn is_t_intersecting(f: &SetFamily, t: usize) -> PairVerdict {
    PairVerdict::from_pair(f, first_violation(f, |k| k >= t))
}

/// `∩_{A ∈ F} A`; the whole ground set when `F` is empty.
pub fn common_intersection(f: &SetFamily) -> BitSet {
    let mut acc = BitSet::full(f.ground_n());
    for e in f.edges() {
        acc.intersect_with(e);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NontrivialVerdict {
    pub holds: bool,
    pub t_intersecting: PairVerdict,
    /// The common intersection of all edges.
    pub common: Vec<usize>,
}

/// t-intersecting with `|∩F| < t`.
pub fn is_nontrivial_t_intersecting(f: &SetFamily, t: usize) -> NontrivialVerdict {
    let ti = is_t_intersecting(f, t);
    let common = common_intersection(f);
    NontrivialVerdict {
        holds: ti.holds && common.len() < t,
        t_intersecting: ti,
        common: common.to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverVerdict {
    pub holds: bool,
    /// `(A, [B₁, …])` with `A ⊆ ∪ Bᵢ`, when the family is not cover-free.
    pub witness: Option<(Vec<usize>, Vec<Vec<usize>>)>,
}

/// Tries to cover `target` with at most `budget` edges from `pool`, always
/// branching on the smallest uncovered vertex.
fn cover_search(
    edges: &[BitSet],
    pool: &[usize],
    uncovered: &BitSet,
    budget: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(x) = uncovered.first() else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for &b in pool {
        if edges[b].contains(x) && !chosen.contains(&b) {
            chosen.push(b);
            if cover_search(edges, pool, &uncovered.difference(&edges[b]), budget - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Whether no edge lies inside the union of at most `t` other edges.
pub fn is_t_cover_free(f: &SetFamily, t: usize) -> CoverVerdict {
    let edges = f.edges();
    let found = (0..edges.len()).into_par_iter().find_map_first(|a| {
        let pool: Vec<usize> = (0..edges.len())
            .filter(|&b| b != a && !edges[a].is_disjoint(&edges[b]))
            .collect();
        let mut chosen = Vec::new();
        cover_search(edges, &pool, &edges[a], t, &mut chosen).then(|| {
            chosen.sort_unstable();
            (a, chosen)
        })
    });
    CoverVerdict {
        holds: found.is_none(),
        witness: found.map(|(a, bs)| {
            (
                edges[a].to_vec(),
                bs.into_iter().map(|b| edges[b].to_vec()).collect(),
            )
        }),
    }
}

/// Whether `|A ∩ B| mod q ∈ residues` for all distinct edges.
pub fn family_mod_q_ok(f: &SetFamily, q: usize, residues: &[usize]) -> PairVerdict {
    PairVerdict::from_pair(f, first_violation(f, |k| residues.contains(&(k % q))))
}
