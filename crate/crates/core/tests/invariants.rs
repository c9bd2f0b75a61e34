use cliquefam::canon::{canonical_form, is_isomorphic};
use cliquefam::clique::{associated_r_graph, count_cliques, turan_clique_count};
use cliquefam::graph::{blown_turan, complete_multipartite, join, turan, turan_part_sizes};
use cliquefam::intersect::{is_l_intersecting, is_t_cover_free};
use cliquefam::{graph6, Graph, IntersectSpec, SetFamily};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (1..n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn permute(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().into_iter().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(62)) {
        let text = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&text).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(11), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_form(&g), canonical_form(&permute(&g, &perm)));
    }

    #[test]
    fn join_is_associative(a in graph_strategy(4), b in graph_strategy(4), c in graph_strategy(4)) {
        prop_assert!(is_isomorphic(&join(&join(&a, &b), &c), &join(&a, &join(&b, &c))));
    }

    #[test]
    fn turan_count_formula(n in 0usize..16, t in 1usize..6, r in 0usize..6) {
        prop_assert_eq!(count_cliques(&turan(n, t), r), turan_clique_count(n, t, r));
        let sizes = turan_part_sizes(n, t);
        prop_assert_eq!(sizes.iter().sum::<usize>(), n);
        prop_assert!(sizes.iter().max().unwrap_or(&0) - sizes.iter().min().unwrap_or(&0) <= 1);
    }

    #[test]
    fn blow_up_of_multiplicity_one_is_turan(m in 0usize..12, s in 1usize..5) {
        prop_assert_eq!(blown_turan(m, s, 1), turan(m, s));
        prop_assert_eq!(complete_multipartite(&turan_part_sizes(m, s)), turan(m, s));
    }

    #[test]
    fn subfamilies_inherit_l_intersection(g in graph_strategy(9), keep in any::<u64>()) {
        let h = associated_r_graph(&g, 3);
        let spec = IntersectSpec::parse(3, "0,1").unwrap();
        let idx: Vec<usize> = (0..h.len()).filter(|i| keep >> (i % 64) & 1 == 1).collect();
        let sub = h.subfamily(&idx);
        if is_l_intersecting(&h, &spec).unwrap().holds {
            prop_assert!(is_l_intersecting(&sub, &spec).unwrap().holds);
        }
    }

    #[test]
    fn cover_free_is_monotone_in_t(g in graph_strategy(8)) {
        let h = associated_r_graph(&g, 3);
        let verdicts: Vec<bool> = (1..=4).map(|t| is_t_cover_free(&h, t).holds).collect();
        for w in verdicts.windows(2) {
            prop_assert!(w[0] || !w[1]);
        }
    }

    #[test]
    fn family_text_round_trip(g in graph_strategy(9), r in 1usize..4) {
        let h = associated_r_graph(&g, r);
        prop_assert_eq!(SetFamily::from_text(&h.to_text()).unwrap(), h);
    }
}
