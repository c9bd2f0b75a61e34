//! Uniform set families (r-graphs) and their text format.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::bitset::BitSet;
use crate::{Error, Result};

/// An r-uniform family of distinct subsets of `[0, ground_n)`.
///
/// Edges are kept in lexicographic order of their sorted vertex lists.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground_n: usize,
    r: usize,
    edges: Vec<BitSet>,
}

impl SetFamily {
    pub fn empty(ground_n: usize, r: usize) -> Self {
        SetFamily {
            ground_n,
            r,
            edges: Vec::new(),
        }
    }

    /// Builds a family from vertex lists, checking uniformity, range and
    /// distinctness, and sorting the edges.
    pub fn from_sets<I, S>(ground_n: usize, r: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let mut edges = Vec::new();
        for set in sets {
            let mut e = BitSet::new(ground_n);
            for v in set {
                if v >= ground_n {
                    return Err(Error::FamilyFormat(format!(
                        "vertex {v} outside [0,{ground_n})"
                    )));
                }
                e.insert(v);
            }
            edges.push(e);
        }
        Self::from_edges(ground_n, r, edges)
    }

    pub fn from_edges(ground_n: usize, r: usize, mut edges: Vec<BitSet>) -> Result<Self> {
        for e in &edges {
            if e.len() != r {
                return Err(Error::FamilyFormat(format!(
                    "edge {:?} has size {} but family is {r}-uniform",
                    e.to_vec(),
                    e.len()
                )));
            }
        }
        sort_lex(&mut edges);
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::FamilyFormat("duplicate edge".into()));
        }
        Ok(SetFamily { ground_n, r, edges })
    }

    /// Trusted constructor for edges already sorted, distinct and r-uniform.
    pub(crate) fn from_sorted_unchecked(ground_n: usize, r: usize, edges: Vec<BitSet>) -> Self {
        debug_assert!(edges.iter().all(|e| e.len() == r));
        SetFamily { ground_n, r, edges }
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[BitSet] {
        &self.edges
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(BitSet::to_vec).collect()
    }

    pub fn contains(&self, e: &BitSet) -> bool {
        self.edges.iter().any(|x| x == e)
    }

    /// Subfamily selected by a predicate; order is preserved.
    pub fn filter<F: FnMut(&BitSet) -> bool>(&self, mut keep: F) -> SetFamily {
        SetFamily {
            ground_n: self.ground_n,
            r: self.r,
            edges: self.edges.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    /// Subfamily by edge indices.
    pub fn subfamily(&self, idx: &[usize]) -> SetFamily {
        let mut edges: Vec<BitSet> = idx.iter().map(|&i| self.edges[i].clone()).collect();
        sort_lex(&mut edges);
        edges.dedup();
        SetFamily {
            ground_n: self.ground_n,
            r: self.r,
            edges,
        }
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Union of all edges.
    pub fn support(&self) -> BitSet {
        let mut s = BitSet::new(self.ground_n);
        for e in &self.edges {
            s.union_with(e);
        }
        s
    }

    /// Text format: a header line `n r m` followed by `m` lines of sorted,
    /// space-separated vertex indices.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.ground_n, self.r, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::FamilyFormat("missing header line".into()))?;
        let nums = parse_nums(header)?;
        let [n, r, m] = nums[..] else {
            return Err(Error::FamilyFormat(format!(
                "header must be `n r m`, got {header:?}"
            )));
        };
        let mut sets = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            let set = parse_nums(line)?;
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::FamilyFormat(format!(
                    "edge line {line:?} is not strictly increasing"
                )));
            }
            sets.push(set);
        }
        if sets.len() != m {
            return Err(Error::FamilyFormat(format!(
                "header announces {m} edges, found {}",
                sets.len()
            )));
        }
        if lines.next().is_some() {
            return Err(Error::FamilyFormat("trailing lines after edges".into()));
        }
        Self::from_sets(n, r, sets)
    }
}

fn parse_nums(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::FamilyFormat(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

pub(crate) fn sort_lex(edges: &mut [BitSet]) {
    edges.sort_by_cached_key(BitSet::to_vec);
}

impl std::fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SetFamily")
            .field("ground_n", &self.ground_n)
            .field("r", &self.r)
            .field("edges", &self.edge_lists())
            .finish()
    }
}

/// Which of Frankl's two extremal non-trivial t-intersecting families to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FranklVariant {
    /// `{A : S₁ ⊂ A, A ∩ S₂ ≠ ∅} ∪ {A : S₂ ⊂ A, |A ∩ S₁| ≥ t − 1}` with
    /// `S₁ = [0, t)` and `S₂ = [t, r]`.
    Star,
    /// `{A : |A ∩ S| ≥ t + 1}` with `S = [0, t+2)`.
    Ball,
}

fn for_each_subset(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < r - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, r, cur, f);
            cur.pop();
        }
    }
    rec(0, n, r, &mut Vec::with_capacity(r), &mut f);
}

/// All `r`-subsets of `[0, n)` in lexicographic order.
pub fn all_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(n, r, |s| out.push(s.to_vec()));
    out
}

/// Frankl's extremal non-trivial t-intersecting families on `[0, n)`.
pub fn frankl_family(n: usize, r: usize, t: usize, variant: FranklVariant) -> Result<SetFamily> {
    if t < 1 || t >= r {
        return Err(Error::InvalidParams(format!("need 1 ≤ t < r (r={r}, t={t})")));
    }
    let mut keep: Vec<Vec<usize>> = Vec::new();
    match variant {
        FranklVariant::Star => {
            if n < r + 1 {
                return Err(Error::InvalidParams(format!("need n ≥ r+1 (n={n}, r={r})")));
            }
            let s1: HashSet<usize> = (0..t).collect();
            let s2: HashSet<usize> = (t..=r).collect();
            for_each_subset(n, r, |a| {
                let in1 = a.iter().filter(|v| s1.contains(v)).count();
                let in2 = a.iter().filter(|v| s2.contains(v)).count();
                let first = in1 == t && in2 > 0;
                let second = in2 == s2.len() && in1 + 1 >= t;
                if first || second {
                    keep.push(a.to_vec());
                }
            });
        }
        FranklVariant::Ball => {
            if n < t + 2 {
                return Err(Error::InvalidParams(format!("need n ≥ t+2 (n={n}, t={t})")));
            }
            for_each_subset(n, r, |a| {
                if a.iter().filter(|&&v| v < t + 2).count() > t {
                    keep.push(a.to_vec());
                }
            });
        }
    }
    SetFamily::from_sets(n, r, keep)
}
