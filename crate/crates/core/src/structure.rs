//! Structural reductions on clique families: sunflowers with a fixed core,
//! high-degree vertices, low-degree pruning, quotient graphs, atoms,
//! structure-theorem property checks and the covering families used for
//! non-trivial t-intersecting graphs.
//!
//! Thresholds that are asymptotic devices (`r²`, `r·n^{r−t−2}`) are always
//! explicit parameters; helpers return the default values.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::clique::{associated_r_graph, clique_degrees, count_cliques, count_cliques_in};
use crate::family::SetFamily;
use crate::graph::Graph;
use crate::intersect::intersection_spectrum;
use crate::maxclique::max_clique;
use crate::{Error, IntersectSpec, Result};

// ---------------------------------------------------------------------------
// Sunflowers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SunflowerResult {
    pub core: Vec<usize>,
    pub petals: Vec<Vec<usize>>,
}

impl SunflowerResult {
    /// Every petal contains the core and petals meet exactly in the core.
    pub fn is_valid(&self, ground_n: usize) -> bool {
        let core = BitSet::from_iter(ground_n, self.core.iter().copied());
        let sets: Vec<BitSet> = self
            .petals
            .iter()
            .map(|p| BitSet::from_iter(ground_n, p.iter().copied()))
            .collect();
        sets.iter().all(|p| core.is_subset(p))
            && sets.iter().enumerate().all(|(i, a)| {
                sets[i + 1..].iter().all(|b| a.intersection(b) == core)
            })
    }
}

/// A maximum sunflower in `F` whose core is exactly `core`: an exact maximum
/// packing of the sets `A ∖ C` over edges `A ⊇ C`.
pub fn max_sunflower_with_core(f: &SetFamily, core: &BitSet) -> SunflowerResult {
    let cands: Vec<&BitSet> = f.edges().iter().filter(|a| core.is_subset(a)).collect();
    let petals: Vec<BitSet> = cands.iter().map(|a| a.difference(core)).collect();
    let k = cands.len();
    let compat: Vec<BitSet> = (0..k)
        .map(|i| {
            BitSet::from_iter(
                k,
                (0..k).filter(|&j| j != i && petals[i].is_disjoint(&petals[j])),
            )
        })
        .collect();
    let best = max_clique(&compat, u64::MAX);
    SunflowerResult {
        core: core.to_vec(),
        petals: best.clique.iter().map(|&i| cands[i].to_vec()).collect(),
    }
}

/// Vertices lying in at least `threshold` edges.
pub fn high_degree_vertices(f: &SetFamily, threshold: usize) -> Vec<usize> {
    (0..f.ground_n())
        .filter(|&v| f.degree(v) >= threshold)
        .collect()
}

/// Default degree threshold `r²`.
pub fn default_sunflower_threshold(r: usize) -> usize {
    r * r
}

fn subsets_of(set: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(set: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - cur.len() {
                break;
            }
            cur.push(set[i]);
            rec(set, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(set, k, 0, &mut Vec::with_capacity(k), out);
}

/// All `ℓ`-subsets of edges, deduplicated and sorted.
fn edge_subsets(f: &SetFamily, ell: usize) -> Vec<Vec<usize>> {
    let mut all = BTreeSet::new();
    for e in f.edges() {
        let mut subs = Vec::new();
        subsets_of(&e.to_vec(), ell, &mut subs);
        all.extend(subs);
    }
    all.into_iter().collect()
}

/// `ℓ`-sets `C` (subsets of edges) whose maximum sunflower with core `C`
/// has at least `threshold` petals.
pub fn core_collection(f: &SetFamily, ell: usize, threshold: usize) -> Vec<SunflowerResult> {
    edge_subsets(f, ell)
        .into_iter()
        .map(|c| max_sunflower_with_core(f, &BitSet::from_iter(f.ground_n(), c)))
        .filter(|s| s.petals.len() >= threshold)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SunflowerClaims {
    pub high_degree: Vec<usize>,
    pub cores: Vec<Vec<usize>>,
    /// `U(G) = ∪ C(G)`.
    pub union_matches: bool,
    /// Members of `C(G)` are pairwise disjoint.
    pub cores_disjoint: bool,
    /// Every edge is a petal of `S_C` or misses `C`, for every `C ∈ C(G)`.
    pub petal_or_disjoint: bool,
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Evaluates the three structural properties of high-multiplicity cores
/// for a `{0, ℓ}`-intersecting family.
pub fn verify_sunflower_claims(f: &SetFamily, ell: usize, threshold: usize) -> SunflowerClaims {
    let high = high_degree_vertices(f, threshold);
    let cores = core_collection(f, ell, threshold);
    let mut union = BTreeSet::new();
    for c in &cores {
        union.extend(c.core.iter().copied());
    }
    let union_matches = union.into_iter().collect::<Vec<_>>() == high;
    let core_sets: Vec<BitSet> = cores
        .iter()
        .map(|c| BitSet::from_iter(f.ground_n(), c.core.iter().copied()))
        .collect();
    let cores_disjoint = core_sets
        .iter()
        .enumerate()
        .all(|(i, a)| core_sets[i + 1..].iter().all(|b| a.is_disjoint(b)));
    let mut witness = None;
    'outer: for (c, cs) in cores.iter().zip(&core_sets) {
        for e in f.edges() {
            let v = e.to_vec();
            if !e.is_disjoint(cs) && !c.petals.contains(&v) {
                witness = Some((v, c.core.clone()));
                break 'outer;
            }
        }
    }
    SunflowerClaims {
        high_degree: high,
        cores: cores.into_iter().map(|c| c.core).collect(),
        union_matches,
        cores_disjoint,
        petal_or_disjoint: witness.is_none(),
        witness,
    }
}

// ---------------------------------------------------------------------------
// Pruning
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PruneResult {
    /// Surviving graph, relabelled contiguously.
    #[serde(skip)]
    pub graph: Graph,
    /// Original labels of the surviving vertices.
    pub kept: Vec<usize>,
    /// Original labels of deleted vertices, in deletion order.
    pub deleted: Vec<usize>,
    pub initial_count: u128,
    pub final_count: u128,
}

/// Repeatedly deletes the lowest-labelled vertex lying in fewer than
/// `threshold` r-cliques of the current graph.
pub fn prune_low_degree(g: &Graph, r: usize, threshold: usize) -> PruneResult {
    let initial_count = count_cliques_in(g, r, &g.vertex_set());
    let mut cur = g.clone();
    let mut labels: Vec<usize> = (0..g.n()).collect();
    let mut deleted = Vec::new();
    loop {
        let deg = clique_degrees(&cur, r);
        let Some(v) = (0..cur.n()).find(|&v| deg[v] < threshold as u128) else {
            break;
        };
        deleted.push(labels[v]);
        labels.remove(v);
        cur = cur.remove_vertex(v).0;
    }
    let final_count = count_cliques_in(&cur, r, &cur.vertex_set());
    PruneResult {
        graph: cur,
        kept: labels,
        deleted,
        initial_count,
        final_count,
    }
}

// ---------------------------------------------------------------------------
// Partitions, quotients and atoms
// ---------------------------------------------------------------------------

/// Disjoint nonempty cells over `[0, ground_n)`; need not cover everything.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub ground_n: usize,
    pub cells: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(ground_n: usize, mut cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BitSet::new(ground_n);
        for c in &mut cells {
            c.sort_unstable();
            if c.is_empty() {
                return Err(Error::InvalidParams("empty cell".into()));
            }
            for &v in c.iter() {
                if v >= ground_n || seen.contains(v) {
                    return Err(Error::InvalidParams(format!(
                        "vertex {v} repeated or outside [0,{ground_n})"
                    )));
                }
                seen.insert(v);
            }
        }
        Ok(Partition { ground_n, cells })
    }

    pub fn union(&self) -> BitSet {
        BitSet::from_iter(self.ground_n, self.cells.iter().flatten().copied())
    }

    fn cell_sets(&self) -> Vec<BitSet> {
        self.cells
            .iter()
            .map(|c| BitSet::from_iter(self.ground_n, c.iter().copied()))
            .collect()
    }
}

/// One vertex per cell; two cells are adjacent when their union lies in
/// some r-clique of `G`.
pub fn quotient_graph(g: &Graph, r: usize, cells: &Partition) -> Result<Graph> {
    if cells.ground_n != g.n() {
        return Err(Error::InvalidParams("partition ground set differs from graph".into()));
    }
    let sets = cells.cell_sets();
    let mut q = Graph::empty(sets.len());
    for a in associated_r_graph(g, r).edges() {
        let inside: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].is_subset(a)).collect();
        for (x, &i) in inside.iter().enumerate() {
            for &j in &inside[x + 1..] {
                q.set_edge(i, j);
            }
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    /// Every r-clique is a disjoint union of cells.
    pub cliques_are_cell_unions: bool,
    pub ell_divides_r: bool,
    pub clique_count: String,
    pub quotient_count: String,
    /// `|H_G^r| = |H_{G'}^{r/ℓ}|`.
    pub counts_equal: bool,
    /// The quotient's `(r/ℓ)`-cliques pairwise share at most one vertex.
    pub quotient_01_intersecting: bool,
    pub clique_witness: Option<Vec<usize>>,
    pub quotient_witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl QuotientReport {
    pub fn all_hold(&self) -> bool {
        self.cliques_are_cell_unions && self.counts_equal && self.quotient_01_intersecting
    }
}

/// Checks that the quotient by equal-size cells preserves clique structure:
/// (a) cliques are unions of cells, (b) clique counts agree, (c) the
/// quotient is `(K_{r/ℓ}, {0,1})`-intersecting.
pub fn verify_quotient_claims(
    g: &Graph,
    r: usize,
    ell: usize,
    cells: &Partition,
) -> Result<QuotientReport> {
    let sizes: Vec<usize> = cells.cells.iter().map(Vec::len).collect();
    if sizes.iter().any(|&s| s != ell) {
        return Err(Error::UnequalCells(sizes));
    }
    if ell == 0 {
        return Err(Error::InvalidParams("cell size must be positive".into()));
    }
    let h = associated_r_graph(g, r);
    let sets = cells.cell_sets();
    let covered = cells.union();
    let clique_witness = h
        .edges()
        .iter()
        .find(|a| {
            !a.is_subset(&covered) || sets.iter().any(|c| !c.is_subset(a) && !c.is_disjoint(a))
        })
        .map(BitSet::to_vec);
    let cliques_are_cell_unions = clique_witness.is_none();
    let ell_divides_r = r % ell == 0;
    if cliques_are_cell_unions && !h.is_empty() {
        assert!(ell_divides_r, "a nonempty clique made of ℓ-cells forces ℓ | r");
    }
    let q = quotient_graph(g, r, cells)?;
    let (quotient_count, counts_equal, quotient_01, qwit) = if ell_divides_r {
        let hq = associated_r_graph(&q, r / ell);
        let qwit = hq.edges().iter().enumerate().find_map(|(i, a)| {
            hq.edges()[i + 1..]
                .iter()
                .find(|b| a.intersection_len(b) > 1)
                .map(|b| (a.to_vec(), b.to_vec()))
        });
        (hq.len().to_string(), hq.len() == h.len(), qwit.is_none(), qwit)
    } else {
        ("n/a".to_string(), false, false, None)
    };
    Ok(QuotientReport {
        cliques_are_cell_unions,
        ell_divides_r,
        clique_count: h.len().to_string(),
        quotient_count,
        counts_equal,
        quotient_01_intersecting: quotient_01,
        clique_witness,
        quotient_witness: qwit,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Atoms {
    /// Atoms (cells of size ≥ d), ordered by smallest vertex.
    pub atoms: Partition,
    /// Vertices outside every atom.
    pub x0: Vec<usize>,
    /// Union of the atoms.
    pub x1: Vec<usize>,
}

/// Inclusion-maximal vertex sets that every edge either contains or avoids,
/// computed by refining the ground set by each edge; cells of size ≥ `d`
/// are the atoms.
pub fn atoms(f: &SetFamily, d: usize) -> Atoms {
    let n = f.ground_n();
    let mut cells: Vec<BitSet> = if n == 0 { Vec::new() } else { vec![BitSet::full(n)] };
    for a in f.edges() {
        let mut next = Vec::with_capacity(cells.len() + 1);
        for c in cells {
            let inside = c.intersection(a);
            let outside = c.difference(a);
            if !inside.is_empty() {
                next.push(inside);
            }
            if !outside.is_empty() {
                next.push(outside);
            }
        }
        cells = next;
    }
    let mut kept: Vec<Vec<usize>> = cells
        .iter()
        .filter(|c| c.len() >= d)
        .map(BitSet::to_vec)
        .collect();
    kept.sort();
    let x1: BTreeSet<usize> = kept.iter().flatten().copied().collect();
    let x0 = (0..n).filter(|v| !x1.contains(v)).collect();
    Atoms {
        atoms: Partition {
            ground_n: n,
            cells: kept,
        },
        x0,
        x1: x1.into_iter().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomClaims {
    pub atoms_of_size_d: usize,
    pub x0_size: usize,
    pub lambda: usize,
    /// `|X₀| = λ` where `|V| = m·d + λ`.
    pub x0_is_lambda: bool,
    /// The atom graph `H′` has no `K_{s+1}`.
    pub atom_graph_ks1_free: bool,
    /// `N(K_{sd}, G[X₁]) = N(K_s, H′)`.
    pub counts_agree: bool,
    /// `N(K_s, H′) ≤ N(K_s, T(|S|, s))`.
    pub turan_bound_holds: bool,
    /// No `sd`-clique meets `X₀`.
    pub x0_uncovered: bool,
}

/// Checks the atom reduction on a graph whose `sd`-cliques should be
/// `{0, d, …, (s−1)d}`-intersecting.
pub fn verify_atom_claims(g: &Graph, s: usize, d: usize) -> Result<AtomClaims> {
    if s == 0 || d == 0 {
        return Err(Error::InvalidParams("need s ≥ 1 and d ≥ 1".into()));
    }
    let n = g.n();
    let h = associated_r_graph(g, s * d);
    let at = atoms(&h, d);
    let exact: Vec<Vec<usize>> = at.atoms.cells.iter().filter(|c| c.len() == d).cloned().collect();
    let part = Partition::new(n, exact.clone())?;
    let hprime = quotient_graph(g, s * d, &part)?;
    let x1 = part.union();
    let (gx1, _) = g.induced(&x1);
    let ks = count_cliques(&hprime, s);
    Ok(AtomClaims {
        atoms_of_size_d: exact.len(),
        x0_size: n - x1.len(),
        lambda: n % d,
        x0_is_lambda: n - x1.len() == n % d,
        atom_graph_ks1_free: count_cliques(&hprime, s + 1) == BigUint::from(0u32),
        counts_agree: count_cliques(&gx1, s * d) == ks,
        turan_bound_holds: ks <= crate::clique::turan_clique_count(exact.len(), s, s),
        x0_uncovered: h.edges().iter().all(|a| a.is_subset(&x1)),
    })
}

// ---------------------------------------------------------------------------
// Structure-theorem properties
// ---------------------------------------------------------------------------

/// A property evaluated under both readings of the intersection pattern
/// `I(F)`: `strict` includes `F ∩ F = F` itself, `proper` ranges over
/// `F′ ≠ F` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualVerdict {
    pub strict: bool,
    pub proper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FurediReport {
    pub isomorphic_patterns: DualVerdict,
    pub sunflower_cores: DualVerdict,
    pub closed_under_intersection: DualVerdict,
    pub sizes_in_l: DualVerdict,
    pub pairwise_in_l: DualVerdict,
    /// `(F, A)` for the first member `A ∈ I(F)` that is not the core of an
    /// `(r+1)`-sunflower, under the strict reading.
    pub sunflower_witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl FurediReport {
    pub fn all_proper(&self) -> bool {
        self.isomorphic_patterns.proper
            && self.sunflower_cores.proper
            && self.closed_under_intersection.proper
            && self.sizes_in_l.proper
            && self.pairwise_in_l.proper
    }
}

/// Local pattern of `F`: members of `I(F)` as bitmasks over the positions of
/// `F`'s sorted vertex list.
fn local_pattern(f: &BitSet, members: &BTreeSet<Vec<usize>>) -> BTreeSet<u32> {
    let verts = f.to_vec();
    members
        .iter()
        .map(|a| {
            a.iter().fold(0u32, |m, v| {
                m | 1 << verts.iter().position(|x| x == v).expect("member inside F")
            })
        })
        .collect()
}

fn map_mask(mask: u32, perm: &[usize]) -> u32 {
    (0..perm.len())
        .filter(|&i| mask >> i & 1 == 1)
        .fold(0, |m, i| m | 1 << perm[i])
}

/// Whether some bijection of positions carries pattern `a` onto pattern `b`.
fn patterns_isomorphic(a: &BTreeSet<u32>, b: &BTreeSet<u32>, r: usize) -> bool {
    fn rec(
        a: &BTreeSet<u32>,
        b: &BTreeSet<u32>,
        r: usize,
        perm: &mut Vec<usize>,
        used: u32,
    ) -> bool {
        let k = perm.len();
        let assigned = (1u32 << k) - 1;
        // every member inside the assigned prefix must land in b
        for &m in a {
            if m & !assigned == 0 && m >> (k.max(1) - 1) & 1 == 1 && !b.contains(&map_mask(m, perm)) {
                return false;
            }
        }
        if k == r {
            return a.iter().all(|&m| b.contains(&map_mask(m, perm)));
        }
        for img in 0..r {
            if used >> img & 1 == 0 {
                perm.push(img);
                if rec(a, b, r, perm, used | 1 << img) {
                    return true;
                }
                perm.pop();
            }
        }
        false
    }
    if a.len() != b.len() {
        return false;
    }
    let profile = |p: &BTreeSet<u32>| {
        let mut v: Vec<u32> = p.iter().map(|m| m.count_ones()).collect();
        v.sort_unstable();
        v
    };
    if profile(a) != profile(b) {
        return false;
    }
    rec(a, b, r, &mut Vec::with_capacity(r), 0)
}

/// Evaluates the five structure-theorem properties on `F*`.
pub fn check_furedi_properties(fstar: &SetFamily, spec: &IntersectSpec) -> FurediReport {
    let r = fstar.r();
    assert!(r <= 32, "pattern masks hold at most 32 positions");
    let edges = fstar.edges();
    let n = fstar.ground_n();
    let patterns = |proper: bool| -> Vec<BTreeSet<Vec<usize>>> {
        edges
            .iter()
            .enumerate()
            .map(|(i, f)| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| !proper || j != i)
                    .map(|(_, g)| f.intersection(g).to_vec())
                    .collect()
            })
            .collect()
    };
    let strict = patterns(false);
    let proper = patterns(true);

    let mut petal_cache: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut petals = |a: &Vec<usize>| -> usize {
        *petal_cache.entry(a.clone()).or_insert_with(|| {
            max_sunflower_with_core(fstar, &BitSet::from_iter(n, a.iter().copied()))
                .petals
                .len()
        })
    };

    let iso = |pats: &[BTreeSet<Vec<usize>>]| -> bool {
        let Some(first) = pats.first() else {
            return true;
        };
        let base = local_pattern(&edges[0], first);
        pats.iter()
            .enumerate()
            .skip(1)
            .all(|(i, p)| patterns_isomorphic(&local_pattern(&edges[i], p), &base, r))
    };
    let closed = |pats: &[BTreeSet<Vec<usize>>]| -> bool {
        pats.iter().all(|p| {
            p.iter().all(|a| {
                p.iter().all(|b| {
                    let meet: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
                    p.contains(&meet)
                })
            })
        })
    };
    let sizes = |pats: &[BTreeSet<Vec<usize>>]| -> bool {
        pats.iter().flatten().all(|a| spec.contains(a.len()))
    };
    let pairwise = |pats: &[BTreeSet<Vec<usize>>]| -> bool {
        let all: BTreeSet<&Vec<usize>> = pats.iter().flatten().collect();
        let all: Vec<&Vec<usize>> = all.into_iter().collect();
        all.iter().enumerate().all(|(i, a)| {
            all[i + 1..].iter().all(|b| {
                let k = a.iter().filter(|x| b.contains(x)).count();
                spec.contains(k)
            })
        })
    };

    let mut sunflower_witness = None;
    let mut cores_ok = |pats: &[BTreeSet<Vec<usize>>], record: bool| -> bool {
        for (i, p) in pats.iter().enumerate() {
            for a in p {
                if petals(a) < r + 1 {
                    if record {
                        sunflower_witness = Some((edges[i].to_vec(), a.clone()));
                    }
                    return false;
                }
            }
        }
        true
    };
    let sunflower_cores = DualVerdict {
        strict: cores_ok(&strict, true),
        proper: cores_ok(&proper, false),
    };

    FurediReport {
        isomorphic_patterns: DualVerdict {
            strict: iso(&strict),
            proper: iso(&proper),
        },
        sunflower_cores,
        closed_under_intersection: DualVerdict {
            strict: closed(&strict),
            proper: closed(&proper),
        },
        sizes_in_l: DualVerdict {
            strict: sizes(&strict),
            proper: sizes(&proper),
        },
        pairwise_in_l: DualVerdict {
            strict: pairwise(&strict),
            proper: pairwise(&proper),
        },
        sunflower_witness,
    }
}

// ---------------------------------------------------------------------------
// Covering families for non-trivial t-intersecting graphs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverFamilies {
    /// `T_j` for `j ∈ [t, r]`: `j`-sets inside some clique meeting every
    /// clique in at least `t` vertices.
    pub t_j: BTreeMap<usize, Vec<Vec<usize>>>,
    /// `T′_j` for `j ∈ [t+1, r]`: members of `T_j` with no proper subset in
    /// any `T_k`, `t ≤ k < j`.
    pub t_j_min: BTreeMap<usize, Vec<Vec<usize>>>,
    /// `T″_{t+1}`: members of `T′_{t+1}` inside more than `threshold` cliques.
    pub t_heavy: Vec<Vec<usize>>,
    pub threshold: u128,
}

/// Default heaviness threshold `⌊r·n^{r−t−2}⌋` (for `r = t+1`, `⌊r/n⌋`).
pub fn default_cover_threshold(n: usize, r: usize, t: usize) -> u128 {
    if r >= t + 2 {
        (r as u128).saturating_mul((n as u128).saturating_pow((r - t - 2) as u32))
    } else if n == 0 {
        0
    } else {
        (r / n) as u128
    }
}

pub fn cover_families(g: &Graph, r: usize, t: usize, threshold: u128) -> Result<CoverFamilies> {
    if !(r > t && t >= 1) {
        return Err(Error::InvalidParams(format!("need r > t ≥ 1 (r={r}, t={t})")));
    }
    let h = associated_r_graph(g, r);
    let n = g.n();
    let mut t_j = BTreeMap::new();
    for j in t..=r {
        let members: Vec<Vec<usize>> = edge_subsets(&h, j)
            .into_iter()
            .filter(|s| {
                let bs = BitSet::from_iter(n, s.iter().copied());
                h.edges().iter().all(|b| bs.intersection_len(b) >= t)
            })
            .collect();
        t_j.insert(j, members);
    }
    let mut t_j_min = BTreeMap::new();
    for j in t + 1..=r {
        let smaller: Vec<BitSet> = (t..j)
            .flat_map(|k| t_j[&k].iter())
            .map(|s| BitSet::from_iter(n, s.iter().copied()))
            .collect();
        let mins: Vec<Vec<usize>> = t_j[&j]
            .iter()
            .filter(|s| {
                let bs = BitSet::from_iter(n, s.iter().copied());
                !smaller.iter().any(|x| x.is_subset(&bs))
            })
            .cloned()
            .collect();
        t_j_min.insert(j, mins);
    }
    let t_heavy = t_j_min
        .get(&(t + 1))
        .map(|v| {
            v.iter()
                .filter(|s| {
                    let bs = BitSet::from_iter(n, s.iter().copied());
                    h.edges().iter().filter(|a| bs.is_subset(a)).count() as u128 > threshold
                })
                .cloned()
                .collect()
        })
        .unwrap_or_default();
    Ok(CoverFamilies {
        t_j,
        t_j_min,
        t_heavy,
        threshold,
    })
}

/// The union of the heavy family when it is exactly `binom(D, t+1)` for a
/// `(t+2)`-set `D`.
pub fn heavy_family_span(cf: &CoverFamilies, t: usize) -> Option<Vec<usize>> {
    let span: BTreeSet<usize> = cf.t_heavy.iter().flatten().copied().collect();
    if span.len() != t + 2 || cf.t_heavy.len() != t + 2 {
        return None;
    }
    let d: Vec<usize> = span.into_iter().collect();
    let mut expect = Vec::new();
    subsets_of(&d, t + 1, &mut expect);
    let got: HashSet<&Vec<usize>> = cf.t_heavy.iter().collect();
    expect.iter().all(|s| got.contains(s)).then_some(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodReduction {
    /// Common neighbourhood of `T`.
    pub neighborhood: Vec<usize>,
    /// `G[N]` is `(K_{r−t}, 1)`-intersecting.
    pub holds: bool,
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    /// `|{A ∈ H_G^r : T ⊆ A}| = N(K_{r−t−1}, G[N])`.
    pub containing_count: String,
}

/// For a `(t+1)`-clique `T` of a t-intersecting graph, checks that the
/// `(r−t)`-cliques of its common neighbourhood pairwise intersect.
pub fn common_neighborhood_reduction(
    g: &Graph,
    r: usize,
    t: usize,
    tset: &BitSet,
) -> Result<NeighborhoodReduction> {
    if tset.len() != t + 1 || !g.is_clique(tset) {
        return Err(Error::NotAClique(tset.to_vec()));
    }
    if r <= t {
        return Err(Error::InvalidParams("need r > t".into()));
    }
    let nb = g.common_neighborhood(tset);
    let (sub, map) = g.induced(&nb);
    let h = associated_r_graph(&sub, r - t);
    let witness = h.edges().iter().enumerate().find_map(|(i, a)| {
        h.edges()[i + 1..]
            .iter()
            .find(|b| a.is_disjoint(b))
            .map(|b| {
                (
                    a.iter().map(|v| map[v]).collect(),
                    b.iter().map(|v| map[v]).collect(),
                )
            })
    });
    Ok(NeighborhoodReduction {
        neighborhood: nb.to_vec(),
        holds: witness.is_none(),
        witness,
        containing_count: count_cliques(&sub, r - t - 1).to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HmDecomposition {
    pub d: Vec<usize>,
    pub n0: Vec<usize>,
    /// `(T_i, N^i)` for every `(t+1)`-subset `T_i` of `D`.
    pub n_i: Vec<(Vec<usize>, Vec<usize>)>,
    pub clique_count: String,
    pub n0_term: String,
    pub n_i_terms: Vec<String>,
    pub rhs: String,
    /// `N(K_r, G) ≤ N(K_{r−t−2}, G[N⁰]) + Σ N(K_{r−t−1}, G[N^i])`.
    pub bound_holds: bool,
    pub equality: bool,
    /// Every r-clique meets `D` in at least `t+1` vertices.
    pub all_meet_d: bool,
    /// An r-clique meeting `D` in at most `t` vertices.
    pub witness: Option<Vec<usize>>,
    /// `G[N^i]` has no `K_{r−t}`, per `i`.
    pub n_i_free: Vec<bool>,
}

pub fn hm_decomposition(g: &Graph, r: usize, t: usize, dset: &BitSet) -> Result<HmDecomposition> {
    if dset.len() != t + 2 || !g.is_clique(dset) {
        return Err(Error::NotAClique(dset.to_vec()));
    }
    if !(t >= 1 && r >= t + 2) {
        return Err(Error::InvalidParams(format!("need t ≥ 1 and r ≥ t + 2 (r={r}, t={t})")));
    }
    let n = g.n();
    let outside = g.vertex_set().difference(dset);
    let n0 = g.common_neighborhood(dset);
    let n0_term = count_cliques_in(g, r - t - 2, &n0);
    let mut subs = Vec::new();
    subsets_of(&dset.to_vec(), t + 1, &mut subs);
    let mut n_i = Vec::new();
    let mut terms = Vec::new();
    let mut free = Vec::new();
    for ti in subs {
        let tb = BitSet::from_iter(n, ti.iter().copied());
        let ni = g.common_neighborhood(&tb).intersection(&outside);
        terms.push(count_cliques_in(g, r - t - 1, &ni));
        free.push(count_cliques_in(g, r - t, &ni) == 0);
        n_i.push((ti, ni.to_vec()));
    }
    let h = associated_r_graph(g, r);
    let lhs = h.len() as u128;
    let rhs = n0_term + terms.iter().sum::<u128>();
    let witness = h
        .edges()
        .iter()
        .find(|a| a.intersection_len(dset) <= t)
        .map(BitSet::to_vec);
    Ok(HmDecomposition {
        d: dset.to_vec(),
        n0: n0.to_vec(),
        n_i,
        clique_count: lhs.to_string(),
        n0_term: n0_term.to_string(),
        n_i_terms: terms.iter().map(u128::to_string).collect(),
        rhs: rhs.to_string(),
        bound_holds: lhs <= rhs,
        equality: lhs == rhs,
        all_meet_d: witness.is_none(),
        witness,
        n_i_free: free,
    })
}

/// Spectrum helper re-exported for reports.
pub fn spectrum(f: &SetFamily) -> Vec<usize> {
    intersection_spectrum(f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        blown_turan, complete, disjoint_copies, disjoint_union, extremal_ap, hm_extremal, join,
        turan,
    };

    fn fam(n: usize, r: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_sets(n, r, sets.iter().map(|s| s.to_vec())).unwrap()
    }

    fn bs(n: usize, v: &[usize]) -> BitSet {
        BitSet::from_iter(n, v.iter().copied())
    }

    #[test]
    fn sunflower_examples() {
        let f = fam(7, 3, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        let s = max_sunflower_with_core(&f, &bs(7, &[0]));
        assert_eq!(s.petals.len(), 3);
        assert!(s.is_valid(7));
        let f = fam(4, 3, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3]]);
        assert_eq!(max_sunflower_with_core(&f, &bs(4, &[0])).petals.len(), 1);
        assert!(max_sunflower_with_core(&f, &bs(4, &[1, 2, 3])).petals.is_empty());
    }

    #[test]
    fn high_degree_examples() {
        let h = associated_r_graph(&join(&complete(1), &turan(12, 2)), 3);
        assert_eq!(high_degree_vertices(&h, 0).len(), 13);
        assert_eq!(high_degree_vertices(&h, 1).len(), 13);
        assert_eq!(high_degree_vertices(&h, 9), vec![0]);
        assert_eq!(h.degree(0), 36);
        assert_eq!(h.degree(5), 6);
    }

    #[test]
    fn core_collection_examples() {
        let g = join(&complete(1), &disjoint_copies(9, &complete(2)));
        let h = associated_r_graph(&g, 3);
        let cores = core_collection(&h, 1, 9);
        assert_eq!(cores.len(), 1);
        assert_eq!(cores[0].core, vec![0]);
        let all = core_collection(&h, 2, 1);
        assert_eq!(all.len(), 27);
        assert!(core_collection(&SetFamily::empty(5, 3), 1, 1).is_empty());

        let claims = verify_sunflower_claims(&h, 1, 9);
        assert!(claims.union_matches && claims.cores_disjoint && claims.petal_or_disjoint);
    }

    #[test]
    fn prune_examples() {
        let res = prune_low_degree(&complete(4), 4, 2);
        assert_eq!(res.graph.n(), 0);
        assert_eq!(res.deleted, vec![0, 1, 2, 3]);
        let res = prune_low_degree(&complete(4), 4, 1);
        assert_eq!(res.graph, complete(4));
        let g = extremal_ap(8, &IntersectSpec::parse(4, "0,2").unwrap()).unwrap();
        let res = prune_low_degree(&g, 4, 2);
        assert_eq!(res.graph, g);
        // K_4 plus a pendant triangle: the triangle's private vertices go first
        let g = disjoint_union(&complete(4), &complete(3));
        let res = prune_low_degree(&g, 3, 2);
        assert_eq!(res.deleted, vec![4, 5, 6]);
        assert!(res.initial_count - res.final_count <= 2 * res.deleted.len() as u128);
    }

    #[test]
    fn quotient_examples() {
        let g = blown_turan(4, 2, 2);
        let at = atoms(&associated_r_graph(&g, 4), 2);
        assert_eq!(at.atoms.cells, vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]]);
        let q = quotient_graph(&g, 4, &at.atoms).unwrap();
        assert_eq!(q.edges(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let rep = verify_quotient_claims(&g, 4, 2, &at.atoms).unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.clique_count, "4");

        let single = Partition::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(quotient_graph(&complete(3), 3, &single).unwrap().n(), 1);
        let cells = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(quotient_graph(&Graph::empty(4), 2, &cells).unwrap().edge_count(), 0);
        assert!(Partition::new(4, vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn quotient_claim_examples() {
        let singles = |n| Partition::new(n, (0..n).map(|v| vec![v]).collect()).unwrap();
        let rep = verify_quotient_claims(&complete(4), 4, 1, &singles(4)).unwrap();
        assert!(rep.all_hold());
        let rep = verify_quotient_claims(&complete(5), 4, 1, &singles(5)).unwrap();
        assert!(rep.cliques_are_cell_unions && rep.counts_equal);
        assert!(!rep.quotient_01_intersecting);
        assert!(rep.quotient_witness.is_some());
        let uneven = Partition::new(4, vec![vec![0], vec![1, 2]]).unwrap();
        assert!(matches!(
            verify_quotient_claims(&complete(4), 4, 1, &uneven),
            Err(Error::UnequalCells(_))
        ));
    }

    #[test]
    fn atom_examples() {
        let at = atoms(&SetFamily::empty(4, 2), 1);
        assert_eq!(at.atoms.cells, vec![vec![0, 1, 2, 3]]);
        let at = atoms(&fam(5, 3, &[&[0, 1, 2]]), 2);
        assert_eq!(at.atoms.cells, vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(at.x0.is_empty());
        let at = atoms(&fam(5, 3, &[&[0, 1, 2], &[2, 3, 4]]), 2);
        assert_eq!(at.atoms.cells, vec![vec![0, 1], vec![3, 4]]);
        assert_eq!(at.x0, vec![2]);
    }

    #[test]
    fn atom_claims_on_construction() {
        let g = blown_turan(5, 2, 3);
        let c = verify_atom_claims(&g, 2, 3).unwrap();
        assert_eq!(c.atoms_of_size_d, 5);
        assert!(c.x0_is_lambda && c.atom_graph_ks1_free && c.counts_agree);
        assert!(c.turan_bound_holds && c.x0_uncovered);
        let g = disjoint_union(&blown_turan(4, 2, 2), &Graph::empty(1));
        let c = verify_atom_claims(&g, 2, 2).unwrap();
        assert_eq!((c.x0_size, c.lambda), (1, 1));
    }

    #[test]
    fn furedi_disjoint_edges() {
        let r = 3;
        let sets: Vec<Vec<usize>> = (0..r + 2).map(|i| (i * r..(i + 1) * r).collect()).collect();
        let f = SetFamily::from_sets(r * (r + 2), r, sets).unwrap();
        let rep = check_furedi_properties(&f, &IntersectSpec::parse(r, "0").unwrap());
        assert!(rep.all_proper());
        assert!(rep.isomorphic_patterns.strict && rep.closed_under_intersection.strict);
        assert!(!rep.sizes_in_l.strict);
    }

    #[test]
    fn furedi_singleton() {
        let f = fam(4, 3, &[&[0, 1, 2]]);
        let rep = check_furedi_properties(&f, &IntersectSpec::parse(3, "0").unwrap());
        assert!(!rep.sunflower_cores.strict);
        assert_eq!(rep.sunflower_witness, Some((vec![0, 1, 2], vec![0, 1, 2])));
    }

    #[test]
    fn furedi_closure_through_atom() {
        let spec = IntersectSpec::parse(4, "0,2").unwrap();
        let g = extremal_ap(16, &spec).unwrap();
        let atom = bs(16, &[0, 1]);
        let f = associated_r_graph(&g, 4).filter(|a| atom.is_subset(a));
        assert_eq!(f.len(), 4);
        let rep = check_furedi_properties(&f, &spec);
        assert!(rep.closed_under_intersection.strict && rep.closed_under_intersection.proper);
        assert!(rep.isomorphic_patterns.proper && rep.sizes_in_l.proper && rep.pairwise_in_l.proper);
    }

    #[test]
    fn furedi_non_isomorphic_patterns() {
        // F0 meets the others in {0} and {1}; F3 meets only F0
        let f = fam(9, 3, &[&[0, 1, 2], &[0, 3, 4], &[1, 5, 6], &[2, 7, 8]]);
        let spec = IntersectSpec::parse(3, "0,1").unwrap();
        let rep = check_furedi_properties(&f, &spec);
        assert!(!rep.isomorphic_patterns.proper);
    }

    #[test]
    fn pattern_isomorphism_search() {
        let a: BTreeSet<u32> = [0b001, 0b011].into();
        let b: BTreeSet<u32> = [0b100, 0b110].into();
        let c: BTreeSet<u32> = [0b001, 0b110].into();
        assert!(patterns_isomorphic(&a, &b, 3));
        assert!(!patterns_isomorphic(&a, &c, 3));
    }

    #[test]
    fn cover_family_examples() {
        let g = hm_extremal(9, 3, 1).unwrap();
        let cf = cover_families(&g, 3, 1, 3).unwrap();
        assert!(cf.t_j[&1].is_empty());
        assert_eq!(cf.t_j[&2], vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(cf.t_heavy, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(cf.t_j_min[&3].is_empty());
        assert_eq!(heavy_family_span(&cf, 1), Some(vec![0, 1, 2]));

        let g = join(&complete(2), &turan(7, 2));
        let cf = cover_families(&g, 4, 2, 0).unwrap();
        assert_eq!(cf.t_j[&2], vec![vec![0, 1]]);

        let cf = cover_families(&Graph::empty(6), 3, 1, 0).unwrap();
        assert!(cf.t_j.values().all(Vec::is_empty));
        assert!(cf.t_heavy.is_empty());
        assert_eq!(default_cover_threshold(10, 5, 1), 500);
        assert_eq!(default_cover_threshold(10, 3, 2), 0);
    }

    #[test]
    fn hm_decomposition_examples() {
        let g = hm_extremal(9, 4, 1).unwrap();
        let rep = hm_decomposition(&g, 4, 1, &bs(9, &[0, 1, 2])).unwrap();
        assert!(rep.equality && rep.all_meet_d);
        assert_eq!(rep.clique_count, "33");
        assert_eq!(rep.n0_term, "6");
        assert_eq!(rep.n_i_terms, vec!["9", "9", "9"]);
        assert!(rep.n_i_free.iter().all(|&b| b));

        let g = hm_extremal(9, 3, 1).unwrap();
        let rep = hm_decomposition(&g, 3, 1, &bs(9, &[0, 1, 2])).unwrap();
        assert_eq!((rep.clique_count.as_str(), rep.rhs.as_str()), ("19", "19"));

        // add a triangle far from D
        let g = disjoint_union(&hm_extremal(6, 3, 1).unwrap(), &complete(3));
        let rep = hm_decomposition(&g, 3, 1, &bs(9, &[0, 1, 2])).unwrap();
        assert!(!rep.equality && !rep.bound_holds);
        assert_eq!(rep.witness, Some(vec![6, 7, 8]));

        assert!(matches!(
            hm_decomposition(&g, 3, 1, &bs(9, &[0, 1, 6])),
            Err(Error::NotAClique(_))
        ));
    }

    #[test]
    fn neighborhood_reduction() {
        let g = hm_extremal(10, 4, 1).unwrap();
        let rep = common_neighborhood_reduction(&g, 4, 1, &bs(10, &[0, 1])).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.neighborhood, (2..10).collect::<Vec<_>>());
    }
}
