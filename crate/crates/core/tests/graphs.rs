mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;

use combinorm::families::{IdSet, Poset};
use combinorm::graphs::canon::{canonical_form, from_graph6, to_graph6};
use combinorm::graphs::io::{parse_dimacs, parse_graph, to_dimacs};
use combinorm::graphs::{
    comparability, corpus, find_odd_antihole, find_odd_hole, find_odd_hole_with_limit, is_perfect, perfection,
    Graph, Method, Obstruction,
};
use combinorm::Error;

#[test]
fn clique_examples() {
    let k3 = Graph::complete(3);
    assert!(k3.cliques().contains(&set(&[1, 2, 3])));
    let anti = k3.anticliques().members(&k3.vertex_set()).unwrap();
    assert_eq!(anti.len(), 4);

    let c5 = Graph::cycle(5);
    let mut max = c5.maximal_cliques();
    max.sort();
    let mut edges: Vec<IdSet> = c5.edges().into_iter().map(|(a, b)| set(&[a, b])).collect();
    edges.sort();
    assert_eq!(max, edges);

    let e4 = Graph::empty(4);
    assert!(subsets(e4.vertices()).iter().all(|s| e4.anticliques().contains(&set(s))));
}

#[test]
fn comparability_examples() {
    assert_eq!(comparability(&Poset::chain(3)), Graph::complete(3));
    assert_eq!(comparability(&Poset::antichain(4)), Graph::empty(4));
    let p = Poset::product_order(2);
    let g = comparability(&p);
    for &a in p.elements() {
        for &b in p.elements() {
            if a != b {
                assert_eq!(g.has_edge(a, b), p.leq(a, b) || p.leq(b, a));
            }
        }
    }
    assert!(!g.has_edge(Poset::product_id(2, 1, 2), Poset::product_id(2, 2, 1)));
}

#[test]
fn odd_hole_examples() {
    assert_eq!(find_odd_hole(&Graph::cycle(5)).unwrap(), Some(vec![1, 2, 3, 4, 5]));

    let c7c = Graph::cycle(7).complement();
    assert_eq!(find_odd_hole(&c7c).unwrap(), None);
    let anti = find_odd_antihole(&c7c).unwrap().expect("antihole");
    assert_eq!(anti.iter().copied().collect::<BTreeSet<_>>(), (1..=7).collect());
    // Consecutive antihole vertices are non-adjacent.
    for i in 0..7 {
        assert!(!c7c.has_edge(anti[i], anti[(i + 1) % 7]));
    }

    for n in [4, 6, 8] {
        assert_eq!(find_odd_hole(&Graph::cycle(n)).unwrap(), None);
    }
    let bip = Graph::new(1..=6, [(1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 4)]).unwrap();
    assert_eq!(find_odd_hole(&bip).unwrap(), None);
    assert!(matches!(
        find_odd_hole_with_limit(&Graph::cycle(13), 12),
        Err(Error::SizeLimitExceeded { size: 13, limit: 12 })
    ));
}

#[test]
fn perfection_examples() {
    for m in [Method::Spgt, Method::ChiOmega, Method::Both] {
        assert!(!is_perfect(&Graph::cycle(5), m).unwrap());
        assert!(is_perfect(&comparability(&Poset::product_order(3)), m).unwrap());
        assert!(!is_perfect(&Graph::cycle(7).complement(), m).unwrap());
    }
    let v = perfection(&Graph::cycle(5), Method::ChiOmega).unwrap();
    assert!(matches!(v.witness, Some(Obstruction::ChiOmega { chi: 3, omega: 2, .. })));
}

#[test]
fn corpus_counts() {
    let graphs = corpus::shipped().unwrap();
    let mut counts = [0usize; 8];
    for g in &graphs {
        counts[g.order()] += 1;
        assert_eq!(&canonical_form(g), g);
    }
    assert_eq!(counts[1..], [1, 2, 4, 11, 34, 156, 1044]);
    let codes: BTreeSet<String> = graphs.iter().map(to_graph6).collect();
    assert_eq!(codes.len(), graphs.len());
    assert_eq!(corpus::render(&corpus::generate(7)), corpus::shipped_text());
}

/// Isomorphism classes counted by trying every permutation on every
/// labelled graph.
#[test]
fn class_counts_by_permutation() {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
        let ps = perms(n);
        let mut classes = BTreeSet::new();
        for m in 0u32..1 << pairs.len() {
            let best = ps
                .iter()
                .map(|p| {
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| m >> k & 1 == 1)
                        .fold(0u32, |acc, (_, &(a, b))| acc | 1 << index(p[a], p[b]))
                })
                .min()
                .unwrap();
            classes.insert(best);
        }
        let shipped = corpus::shipped().unwrap().iter().filter(|g| g.order() == n).count();
        assert_eq!(classes.len(), shipped, "n = {n}");
    }
}

#[test]
fn perfection_matches_brute_force_on_corpus() {
    for g in corpus::shipped().unwrap() {
        let want = brute_is_perfect(&g);
        assert_eq!(is_perfect(&g, Method::Spgt).unwrap(), want, "{}", to_graph6(&g));
        assert_eq!(is_perfect(&g, Method::ChiOmega).unwrap(), want, "{}", to_graph6(&g));
    }
}

#[test]
fn io_examples() {
    let g = parse_dimacs("c path\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();
    assert_eq!(g, Graph::path(4));
    assert_eq!(parse_graph(&to_dimacs(&Graph::cycle(6))).unwrap(), Graph::cycle(6));
    let json = serde_json::to_string(&Graph::cycle(5)).unwrap();
    assert_eq!(parse_graph(&json).unwrap(), Graph::cycle(5));
    assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
    assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
}

fn relabel(g: &Graph, perm: &[u32]) -> Graph {
    let n = g.order() as u32;
    Graph::new(1..=n, g.edges().into_iter().map(|(a, b)| (perm[a as usize - 1], perm[b as usize - 1]))).unwrap()
}

fn arb_poset(max_n: u32) -> impl Strategy<Value = Poset> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = (n * (n - 1) / 2).max(1) as usize;
        proptest::collection::vec(proptest::bool::weighted(0.3), pairs).prop_map(move |bits| {
            let mut cover = Vec::new();
            let mut k = 0;
            for i in 1..=n {
                for j in i + 1..=n {
                    if bits[k] {
                        cover.push((i, j));
                    }
                    k += 1;
                }
            }
            Poset::from_cover(1..=n, cover).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_cliques_are_anticliques(g in arb_graph(8)) {
        let h = g.complement();
        for s in subsets(g.vertices()) {
            let s = set(&s);
            prop_assert_eq!(h.cliques().contains(&s), g.anticliques().contains(&s));
        }
    }

    #[test]
    fn comparability_graphs_are_perfect(p in arb_poset(8)) {
        let g = comparability(&p);
        prop_assert!(is_perfect(&g, Method::Both).unwrap());
        prop_assert!(is_perfect(&g.complement(), Method::Both).unwrap());
    }

    #[test]
    fn canonical_form_is_invariant(g in arb_graph(7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<u32> = (1..=g.order() as u32).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = relabel(&g, &perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn chi_and_omega_match_brute_force(g in arb_graph(8)) {
        let (omega, chi) = brute_omega_chi(&g);
        let full = (1usize << g.order()) - 1;
        prop_assert_eq!(g.clique_number() as u32, omega[full]);
        prop_assert_eq!(g.chromatic_number() as u32, chi[full]);
        prop_assert_eq!(is_perfect(&g, Method::Both).unwrap(), omega == chi);
    }
}
