//! Exact small-case values by exhaustive search.
//!
//! Graph searches grow graphs one vertex at a time. Level `k` holds one
//! representative per isomorphism class of feasible `k`-vertex graphs; level
//! `k+1` extends every representative by a new vertex with every possible
//! neighbourhood, drops infeasible children and deduplicates the rest by
//! canonical form. Both constraints are inherited by induced subgraphs, so a
//! violation found in a prefix rules out every extension.
//!
//! Set-family values are maximum cliques of a compatibility graph.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::canon::canonical_order_rows;
use crate::clique::associated_r_graph;
use crate::family::{all_subsets, SetFamily};
use crate::graph::Graph;
use crate::intersect::{is_l_intersecting, is_t_cover_free};
use crate::maxclique::max_clique;
use crate::{graph6, Error, IntersectSpec, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Largest vertex count accepted by graph searches.
    pub max_graph_n: usize,
    /// Largest number of r-subsets accepted by family searches.
    pub max_family_subsets: usize,
    /// Node budget; a graph search stops before a level that would exceed it.
    pub budget: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_graph_n: 10,
            max_family_subsets: 5000,
            budget: 500_000_000,
            threads: None,
        }
    }
}

/// Switches for the graph engine; both on in normal use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Keep one representative per isomorphism class at each level.
    pub dedup: bool,
    /// Drop children that already violate the constraint.
    pub prune: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            dedup: true,
            prune: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Graph(Graph),
    Family(SetFamily),
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Witness::Graph(g) => {
                let mut st = ser.serialize_struct("Witness", 4)?;
                st.serialize_field("kind", "graph")?;
                st.serialize_field("n", &g.n())?;
                st.serialize_field("graph6", &graph6::encode(g))?;
                st.serialize_field("edges", &g.edges())?;
                st.end()
            }
            Witness::Family(f) => {
                let mut st = ser.serialize_struct("Witness", 4)?;
                st.serialize_field("kind", "family")?;
                st.serialize_field("n", &f.ground_n())?;
                st.serialize_field("r", &f.r())?;
                st.serialize_field("edges", &f.edge_lists())?;
                st.end()
            }
        }
    }
}

fn big_as_string<S: Serializer>(v: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

fn duration_as_secs<S: Serializer>(d: &Duration, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    #[serde(serialize_with = "big_as_string")]
    pub value: BigUint,
    pub witness: Witness,
    /// The whole isomorphism-reduced space was covered.
    pub exhaustive: bool,
    pub nodes_explored: u64,
    #[serde(serialize_with = "duration_as_secs")]
    pub elapsed: Duration,
    /// Graph searches: representatives kept per level. Family searches:
    /// sizes of successive incumbent families.
    pub trail: Vec<usize>,
}

impl SearchResult {
    pub fn witness_graph(&self) -> Option<&Graph> {
        match &self.witness {
            Witness::Graph(g) => Some(g),
            Witness::Family(_) => None,
        }
    }

    pub fn witness_family(&self) -> Option<&SetFamily> {
        match &self.witness {
            Witness::Family(f) => Some(f),
            Witness::Graph(_) => None,
        }
    }
}

fn in_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(0) => Err(Error::InvalidParams("thread count must be positive".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::InvalidParams(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

// ---------------------------------------------------------------------------
// Graph engine
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum Constraint {
    /// Bit `k` set when intersection size `k` is allowed.
    Sizes(u64),
    CoverFree(usize),
}

fn cliques_within(rows: &[u64], cand: u64, need: usize, acc: u64, out: &mut Vec<u64>) {
    if need == 0 {
        out.push(acc);
        return;
    }
    let mut c = cand;
    while c != 0 {
        if (c.count_ones() as usize) < need {
            return;
        }
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        cliques_within(rows, c & rows[v], need - 1, acc | 1 << v, out);
    }
}

fn all_cliques(rows: &[u64], r: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let full = if rows.len() == 64 { u64::MAX } else { (1u64 << rows.len()) - 1 };
    cliques_within(rows, full, r, 0, &mut out);
    out
}

fn covered(fam: &[u64], pool: &[usize], uncovered: u64, budget: usize) -> bool {
    if uncovered == 0 {
        return true;
    }
    if budget == 0 {
        return false;
    }
    let x = uncovered & uncovered.wrapping_neg();
    pool.iter()
        .any(|&b| fam[b] & x != 0 && covered(fam, pool, uncovered & !fam[b], budget - 1))
}

fn cover_free(fam: &[u64], t: usize) -> bool {
    (0..fam.len()).all(|a| {
        let pool: Vec<usize> = (0..fam.len())
            .filter(|&b| b != a && fam[a] & fam[b] != 0)
            .collect();
        !covered(fam, &pool, fam[a], t)
    })
}

impl Constraint {
    fn family_ok(self, fam: &[u64]) -> bool {
        match self {
            Constraint::Sizes(mask) => fam.iter().enumerate().all(|(i, a)| {
                fam[i + 1..]
                    .iter()
                    .all(|b| mask >> (a & b).count_ones() & 1 == 1)
            }),
            Constraint::CoverFree(t) => cover_free(fam, t),
        }
    }

    /// Assumes `old` is feasible on its own.
    fn extension_ok(self, old: &[u64], new: &[u64]) -> bool {
        if new.is_empty() {
            return true;
        }
        match self {
            Constraint::Sizes(mask) => new.iter().enumerate().all(|(i, a)| {
                old.iter()
                    .chain(&new[..i])
                    .all(|b| mask >> (a & b).count_ones() & 1 == 1)
            }),
            Constraint::CoverFree(t) => {
                let mut all = old.to_vec();
                all.extend_from_slice(new);
                cover_free(&all, t)
            }
        }
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

fn extend_rows(rows: &[u64], s: u64) -> Vec<u64> {
    let k = rows.len();
    let mut child = rows.to_vec();
    for v in bits(s) {
        child[v] |= 1 << k;
    }
    child.push(s);
    child
}

fn relabel(rows: &[u64], order: &[usize]) -> Vec<u64> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| bits(rows[v]).fold(0u64, |m, u| m | 1 << pos[u]))
        .collect()
}

fn rows_to_graph(rows: &[u64], n: usize) -> Graph {
    let edges = rows
        .iter()
        .enumerate()
        .flat_map(|(u, &row)| bits(row).filter(move |&v| v > u).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("search rows form a simple graph")
}

struct Engine {
    n: usize,
    r: usize,
    constraint: Constraint,
    opts: EngineOptions,
}

impl Engine {
    fn new_cliques(&self, rows: &[u64], s: u64) -> Vec<u64> {
        let k = rows.len();
        let mut out = Vec::new();
        cliques_within(rows, s, self.r - 1, 1 << k, &mut out);
        out
    }

    fn feasible(&self, old: &[u64], new: &[u64]) -> bool {
        if self.opts.prune {
            self.constraint.extension_ok(old, new)
        } else {
            let mut all = old.to_vec();
            all.extend_from_slice(new);
            self.constraint.family_ok(&all)
        }
    }

    /// Children of one representative, keyed by canonical code.
    fn children(&self, rows: &[u64]) -> Vec<(Vec<u64>, Vec<u64>)> {
        let k = rows.len();
        let old = all_cliques(rows, self.r);
        let mut out = Vec::new();
        for s in 0..1u64 << k {
            if self.opts.prune {
                let new = self.new_cliques(rows, s);
                if !self.constraint.extension_ok(&old, &new) {
                    continue;
                }
            }
            let child = extend_rows(rows, s);
            if self.opts.dedup {
                let (code, order) = canonical_order_rows(&child);
                out.push((code, relabel(&child, &order)));
            } else {
                out.push((Vec::new(), child));
            }
        }
        out
    }

    /// Best feasible final child `(value, s)` of one representative.
    fn best_final(&self, rows: &[u64]) -> Option<(usize, u64)> {
        let old = all_cliques(rows, self.r);
        let mut best: Option<(usize, u64)> = None;
        for s in 0..1u64 << rows.len() {
            let new = self.new_cliques(rows, s);
            if self.feasible(&old, &new) {
                let v = old.len() + new.len();
                if best.is_none_or(|(b, _)| v > b) {
                    best = Some((v, s));
                }
            }
        }
        best
    }

    fn run(&self, budget: u64) -> (usize, Graph, bool, u64, Vec<usize>) {
        let n = self.n;
        let mut level: Vec<Vec<u64>> = vec![Vec::new()];
        let mut nodes = 0u64;
        let mut trail = vec![1];
        if n == 0 {
            return (0, Graph::empty(0), true, 0, trail);
        }
        for k in 0..n {
            let planned = (level.len() as u64).saturating_mul(1u64 << k);
            if nodes.saturating_add(planned) > budget {
                let (value, g) = self.best_in_level(&level);
                return (value, g, false, nodes, trail);
            }
            nodes += planned;
            if k + 1 == n {
                let best = level
                    .par_iter()
                    .enumerate()
                    .filter_map(|(i, rows)| self.best_final(rows).map(|(v, s)| (v, i, s)))
                    .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
                let (value, i, s) = best.expect("the empty extension keeps a feasible graph");
                let g = rows_to_graph(&extend_rows(&level[i], s), n);
                trail.push(level.len());
                return (value, g, true, nodes, trail);
            }
            let mut next: Vec<(Vec<u64>, Vec<u64>)> =
                level.par_iter().flat_map_iter(|rows| self.children(rows)).collect();
            if self.opts.dedup {
                next.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
                next.dedup_by(|a, b| a.0 == b.0);
            }
            level = next.into_iter().map(|(_, rows)| rows).collect();
            trail.push(level.len());
        }
        unreachable!("the last level returns")
    }

    /// Best feasible graph of an unfinished level, padded with isolated
    /// vertices.
    fn best_in_level(&self, level: &[Vec<u64>]) -> (usize, Graph) {
        let (value, rows) = level
            .iter()
            .filter_map(|rows| {
                let c = all_cliques(rows, self.r);
                self.constraint.family_ok(&c).then_some((c.len(), rows))
            })
            .fold((0, &level[0]), |best, cur| if cur.0 > best.0 { cur } else { best });
        (value, rows_to_graph(rows, self.n))
    }
}

fn graph_search(
    n: usize,
    r: usize,
    constraint: Constraint,
    cfg: &SearchConfig,
    opts: EngineOptions,
    verify: impl Fn(&SetFamily) -> bool,
) -> Result<SearchResult> {
    if n > cfg.max_graph_n || n > 64 {
        return Err(Error::OverCap(format!(
            "n = {n} exceeds the graph search cap {}",
            cfg.max_graph_n.min(64)
        )));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be positive".into()));
    }
    let start = Instant::now();
    let engine = Engine {
        n,
        r,
        constraint,
        opts,
    };
    let (value, g, exhaustive, nodes, trail) = in_pool(cfg.threads, || engine.run(cfg.budget))?;
    let h = associated_r_graph(&g, r);
    assert_eq!(h.len(), value, "witness clique count differs from the search value");
    assert!(verify(&h), "search witness fails its constraint");
    Ok(SearchResult {
        value: BigUint::from(value),
        witness: Witness::Graph(g),
        exhaustive,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        trail,
    })
}

fn size_mask(spec: &IntersectSpec) -> u64 {
    spec.l().iter().fold(0u64, |m, &k| m | 1 << k)
}

/// Largest r-clique count of an n-vertex graph whose r-cliques are
/// L-intersecting.
pub fn exact_psi(n: usize, spec: &IntersectSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    exact_psi_with(n, spec, cfg, EngineOptions::default())
}

pub fn exact_psi_with(
    n: usize,
    spec: &IntersectSpec,
    cfg: &SearchConfig,
    opts: EngineOptions,
) -> Result<SearchResult> {
    if spec.r() > 64 {
        return Err(Error::OverCap("r above 64".into()));
    }
    graph_search(n, spec.r(), Constraint::Sizes(size_mask(spec)), cfg, opts, |h| {
        is_l_intersecting(h, spec).is_ok_and(|v| v.holds)
    })
}

/// Largest r-clique count of an n-vertex graph whose r-cliques are
/// t-cover-free.
pub fn exact_cover_free(n: usize, r: usize, t: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    exact_cover_free_with(n, r, t, cfg, EngineOptions::default())
}

pub fn exact_cover_free_with(
    n: usize,
    r: usize,
    t: usize,
    cfg: &SearchConfig,
    opts: EngineOptions,
) -> Result<SearchResult> {
    if t == 0 {
        return Err(Error::InvalidParams("t must be positive".into()));
    }
    graph_search(n, r, Constraint::CoverFree(t), cfg, opts, |h| {
        is_t_cover_free(h, t).holds
    })
}

/// Largest L-intersecting family of r-subsets of `[0, n)`.
pub fn exact_phi(n: usize, spec: &IntersectSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    let r = spec.r();
    let subsets = all_subsets(n, r);
    if subsets.len() > cfg.max_family_subsets {
        return Err(Error::OverCap(format!(
            "{} subsets exceed the family search cap {}",
            subsets.len(),
            cfg.max_family_subsets
        )));
    }
    let start = Instant::now();
    let sets: Vec<BitSet> = subsets
        .iter()
        .map(|s| BitSet::from_iter(n, s.iter().copied()))
        .collect();
    let m = sets.len();
    let adj: Vec<BitSet> = in_pool(cfg.threads, || {
        (0..m)
            .into_par_iter()
            .map(|i| {
                BitSet::from_iter(
                    m,
                    (0..m).filter(|&j| j != i && spec.contains(sets[i].intersection_len(&sets[j]))),
                )
            })
            .collect()
    })?;
    // permutations of [0, n) act transitively on r-subsets, so some maximum
    // family contains the first subset
    let (clique, res) = if m == 0 {
        (Vec::new(), max_clique(&adj, cfg.budget))
    } else {
        let nb: Vec<usize> = adj[0].iter().collect();
        let sub: Vec<BitSet> = nb
            .iter()
            .map(|&i| BitSet::from_iter(nb.len(), (0..nb.len()).filter(|&j| adj[i].contains(nb[j]))))
            .collect();
        let mut res = max_clique(&sub, cfg.budget);
        res.incumbents.iter_mut().for_each(|k| *k += 1);
        if res.incumbents.is_empty() {
            res.incumbents.push(1);
        }
        let mut clique: Vec<usize> = res.clique.iter().map(|&j| nb[j]).collect();
        clique.insert(0, 0);
        (clique, res)
    };
    let fam = SetFamily::from_sets(n, r, clique.iter().map(|&i| subsets[i].clone()))?;
    assert!(
        is_l_intersecting(&fam, spec)?.holds,
        "search witness fails its constraint"
    );
    Ok(SearchResult {
        value: BigUint::from(fam.len()),
        witness: Witness::Family(fam),
        exhaustive: res.exhaustive,
        nodes_explored: res.nodes,
        elapsed: start.elapsed(),
        trail: res.incumbents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::complete;
    use num_integer::binomial;

    fn spec(r: usize, l: &str) -> IntersectSpec {
        IntersectSpec::parse(r, l).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    /// Maximum over all labelled graphs on `n` vertices.
    fn brute_force(n: usize, r: usize, ok: impl Fn(&SetFamily) -> bool) -> usize {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                let g = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                associated_r_graph(&g, r)
            })
            .filter(|h| ok(h))
            .map(|h| h.len())
            .max()
            .unwrap()
    }

    #[test]
    fn psi_examples() {
        let res = exact_psi(5, &spec(3, "1,2"), &cfg()).unwrap();
        assert_eq!(res.value, BigUint::from(10u32));
        assert!(res.exhaustive);
        assert!(is_isomorphic(res.witness_graph().unwrap(), &complete(5)));
        for n in 3..=6 {
            let res = exact_psi(n, &IntersectSpec::unrestricted(3).unwrap(), &cfg()).unwrap();
            assert_eq!(res.value, BigUint::from(binomial(n, 3)));
        }
        assert_eq!(exact_psi(0, &spec(2, "0"), &cfg()).unwrap().value, BigUint::from(0u32));
        assert_eq!(exact_psi(2, &spec(3, "0"), &cfg()).unwrap().value, BigUint::from(0u32));
    }

    #[test]
    fn psi_matches_labelled_brute_force() {
        for (n, r, l) in [(5, 3, "0"), (5, 3, "1"), (5, 2, "0"), (5, 3, "0,2"), (4, 3, "0,1")] {
            let sp = spec(r, l);
            let want = brute_force(n, r, |h| is_l_intersecting(h, &sp).unwrap().holds);
            assert_eq!(
                exact_psi(n, &sp, &cfg()).unwrap().value,
                BigUint::from(want),
                "n={n} r={r} L={l}"
            );
        }
    }

    #[test]
    fn cover_free_matches_brute_force() {
        for (n, r, t) in [(5, 2, 1), (5, 2, 2), (5, 3, 2), (4, 2, 3)] {
            let want = brute_force(n, r, |h| is_t_cover_free(h, t).holds);
            assert_eq!(exact_cover_free(n, r, t, &cfg()).unwrap().value, BigUint::from(want));
        }
        for n in 3..=6 {
            assert_eq!(
                exact_cover_free(n, 3, 1, &cfg()).unwrap().value,
                BigUint::from(binomial(n, 3))
            );
        }
    }

    #[test]
    fn engine_switches_agree() {
        let sp = spec(3, "0,1");
        let base = exact_psi(5, &sp, &cfg()).unwrap().value;
        for (dedup, prune) in [(false, true), (true, false), (false, false)] {
            let opts = EngineOptions { dedup, prune };
            assert_eq!(exact_psi_with(5, &sp, &cfg(), opts).unwrap().value, base);
        }
    }

    #[test]
    fn budget_stops_early() {
        let c = SearchConfig {
            budget: 40,
            ..cfg()
        };
        let res = exact_psi(7, &IntersectSpec::unrestricted(3).unwrap(), &c).unwrap();
        assert!(!res.exhaustive);
        assert!(res.nodes_explored <= 40);
        assert_eq!(res.witness_graph().unwrap().n(), 7);
        let over = SearchConfig {
            max_graph_n: 4,
            ..cfg()
        };
        assert!(matches!(exact_psi(5, &spec(3, "1"), &over), Err(Error::OverCap(_))));
    }

    #[test]
    fn phi_examples() {
        let res = exact_phi(5, &spec(3, "1,2"), &cfg()).unwrap();
        assert_eq!(res.value, BigUint::from(10u32));
        let res = exact_phi(7, &spec(3, "1,2"), &cfg()).unwrap();
        assert_eq!(res.value, BigUint::from(15u32));
        assert!(res.exhaustive);
        let res = exact_phi(6, &IntersectSpec::unrestricted(3).unwrap(), &cfg()).unwrap();
        assert_eq!(res.value, BigUint::from(20u32));
        // pairwise disjoint triples
        assert_eq!(exact_phi(7, &spec(3, "0"), &cfg()).unwrap().value, BigUint::from(2u32));
        let small = SearchConfig {
            max_family_subsets: 10,
            ..cfg()
        };
        assert!(matches!(exact_phi(6, &spec(3, "1"), &small), Err(Error::OverCap(_))));
    }

    #[test]
    fn thread_count_does_not_change_value() {
        let sp = spec(4, "0,2");
        let one = SearchConfig {
            threads: Some(1),
            ..cfg()
        };
        let four = SearchConfig {
            threads: Some(4),
            ..cfg()
        };
        let a = exact_psi(7, &sp, &one).unwrap();
        let b = exact_psi(7, &sp, &four).unwrap();
        assert_eq!((a.value, a.exhaustive, a.trail), (b.value, b.exhaustive, b.trail));
    }

    #[test]
    fn mask_helpers() {
        assert!(cover_free(&[0b011, 0b110], 1));
        assert!(!cover_free(&[0b011, 0b110, 0b101], 2));
        let rows = relabel(&[0b10, 0b01, 0], &[2, 0, 1]);
        assert_eq!(rows, vec![0, 0b100, 0b010]);
    }
}
