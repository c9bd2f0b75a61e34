use std::collections::BTreeSet;

use cliquefam::clique::{associated_r_graph, clique_degrees, count_cliques};
use cliquefam::intersect::{intersection_spectrum, is_l_intersecting, is_t_cover_free};
use cliquefam::structure::{atoms, max_sunflower_with_core};
use cliquefam::{BitSet, Graph, IntersectSpec, SetFamily};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.3..0.95);
    let edges: Vec<(usize, usize)> = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, r: usize, m: usize) -> SetFamily {
    let mut sets = BTreeSet::new();
    for _ in 0..m {
        let mut s: Vec<usize> = (0..n).collect();
        for i in 0..r {
            let j = rng.gen_range(i..n);
            s.swap(i, j);
        }
        let mut s = s[..r].to_vec();
        s.sort_unstable();
        sets.insert(s);
    }
    SetFamily::from_sets(n, r, sets).unwrap()
}

fn naive_cliques(g: &Graph, r: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.iter().all(|&u| s.iter().all(|&v| u == v || g.has_edge(u, v))))
        .collect()
}

#[test]
fn clique_enumeration_matches_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..200 {
        let n = rng.gen_range(1..=10);
        let r = rng.gen_range(1..=5);
        let g = random_graph(&mut rng, n);
        let naive = naive_cliques(&g, r);
        let h = associated_r_graph(&g, r);
        let mut got = h.edge_lists();
        got.sort();
        let mut want = naive.clone();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(count_cliques(&g, r), BigUint::from(naive.len()));
        let deg = clique_degrees(&g, r);
        for v in 0..n {
            assert_eq!(deg[v], naive.iter().filter(|c| c.contains(&v)).count() as u128);
        }
    }
}

#[test]
fn l_intersecting_matches_pair_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..300 {
        let r = rng.gen_range(2..=4);
        let n = rng.gen_range(r + 1..=9);
        let m = rng.gen_range(1..12);
        let f = random_family(&mut rng, n, r, m);
        let l: Vec<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
        let Ok(spec) = IntersectSpec::new(r, l) else { continue };
        let lists = f.edge_lists();
        let naive = lists.iter().enumerate().all(|(i, a)| {
            lists[i + 1..]
                .iter()
                .all(|b| spec.contains(a.iter().filter(|x| b.contains(x)).count()))
        });
        let v = is_l_intersecting(&f, &spec).unwrap();
        assert_eq!(v.holds, naive);
        if let Some((a, b)) = v.witness {
            assert!(!spec.contains(a.iter().filter(|x| b.contains(x)).count()));
        }
        let spectrum = intersection_spectrum(&f);
        assert_eq!(naive, spectrum.iter().all(|&k| spec.contains(k)));
    }
}

#[test]
fn cover_free_matches_subset_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..200 {
        let r = rng.gen_range(2..=3);
        let n = rng.gen_range(r + 1..=7);
        let m = rng.gen_range(1..9);
        let f = random_family(&mut rng, n, r, m);
        let t = rng.gen_range(1..=3);
        let e = f.edges();
        let m = e.len();
        let naive = (0..m).all(|a| {
            (0u32..1 << m).all(|mask| {
                mask >> a & 1 == 1
                    || mask.count_ones() as usize > t
                    || !e[a].is_subset(&(0..m).filter(|b| mask >> b & 1 == 1).fold(
                        BitSet::new(n),
                        |acc, b| acc.union(&e[b]),
                    ))
            })
        });
        assert_eq!(is_t_cover_free(&f, t).holds, naive);
    }
}

#[test]
fn sunflower_matches_subset_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..150 {
        let n = rng.gen_range(5..=9);
        let m = rng.gen_range(1..=14);
        let f = random_family(&mut rng, n, 3, m);
        let core = BitSet::from_iter(n, [rng.gen_range(0..n)]);
        let cands: Vec<&BitSet> = f.edges().iter().filter(|a| core.is_subset(a)).collect();
        let k = cands.len();
        let best = (0u32..1 << k)
            .filter(|&mask| {
                (0..k).all(|i| {
                    mask >> i & 1 == 0
                        || (i + 1..k).all(|j| mask >> j & 1 == 0 || cands[i].intersection(cands[j]) == core)
                })
            })
            .map(u32::count_ones)
            .max()
            .unwrap_or(0);
        let s = max_sunflower_with_core(&f, &core);
        assert_eq!(s.petals.len(), best as usize);
        assert!(s.is_valid(n));
    }
}

#[test]
fn atoms_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for _ in 0..100 {
        let n = rng.gen_range(3..=10);
        let m = rng.gen_range(0..6);
        let f = random_family(&mut rng, n, 3.min(n), m);
        let d = rng.gen_range(1..=3);
        let ok: Vec<u32> = (1u32..1 << n)
            .filter(|m| m.count_ones() as usize >= d)
            .filter(|&m| {
                let s = BitSet::from_iter(n, (0..n).filter(|v| m >> v & 1 == 1));
                f.edges().iter().all(|a| s.is_subset(a) || s.is_disjoint(a))
            })
            .collect();
        let want: BTreeSet<Vec<usize>> = ok
            .iter()
            .filter(|&&m| !ok.iter().any(|&o| o != m && o & m == m))
            .map(|&m| (0..n).filter(|v| m >> v & 1 == 1).collect())
            .collect();
        let got: BTreeSet<Vec<usize>> = atoms(&f, d).atoms.cells.into_iter().collect();
        assert_eq!(got, want);
    }
}
