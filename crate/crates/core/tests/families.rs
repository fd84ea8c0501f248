mod common;

use common::*;
use proptest::prelude::*;

use combinorm::families::{sign_vectors, Family, IdSet, Ordinal, Poset, Universe, Variant};
use combinorm::graphs::{comparability, Graph};
use combinorm::Error;

fn schreier(alpha: Ordinal, variant: Variant, n: u32) -> Family {
    Family::schreier(alpha, variant, n).unwrap()
}

fn s(k: u32, n: u32) -> Family {
    schreier(Ordinal::finite(k), Variant::Standard, n)
}

fn sets(v: &[&[u32]]) -> Vec<IdSet> {
    v.iter().map(|s| set(s)).collect()
}

fn all_sets(n: u32) -> Vec<IdSet> {
    subsets(&(1..=n).collect::<Vec<_>>()).iter().map(|s| set(s)).collect()
}

#[test]
fn perp_examples() {
    let s1 = s(1, 10);
    let p = s1.perp(10).unwrap();
    assert!(!p.contains(&set(&[2, 3])));
    assert!(p.contains(&set(&[1, 7])));
    assert!(!p.contains(&set(&[1, 2, 7])));
    assert!(matches!(p.check(&set(&[1, 11])), Err(Error::OutsideUniverse(11))));
    // S^⊥ = [N]^{<=1} ∪ {{1, n}}
    for e in all_sets(8) {
        let want = e.len() <= 1 || (e.len() == 2 && e.first() == Some(1));
        assert_eq!(p.contains(&e), want, "{e:?}");
    }

    let c0 = Family::up_to(Universe::Bounded(6), 1);
    let c0p = c0.perp(6).unwrap();
    assert!(all_sets(6).iter().all(|e| c0p.contains(e)));
}

#[test]
fn graph_generated_examples() {
    let (ok, witness) = s(1, 6).is_graph_generated(6).unwrap();
    assert!(!ok);
    assert_eq!(witness, Some(set(&[2, 3, 4])));
    // Brute force: the colex-first clique of the pair graph outside S.
    let s1 = s(1, 6);
    let pair = |a: u32, b: u32| s1.contains(&set(&[a, b]));
    let first = all_sets(6)
        .into_iter()
        .filter(|e| e.pairs().all(|(a, b)| pair(a, b)) && !s1.contains(e))
        .min();
    assert_eq!(first, Some(set(&[2, 3, 4])));

    assert!(Family::cliques(Graph::cycle(5)).is_graph_generated(5).unwrap().0);
    assert!(Family::all(Universe::Bounded(8)).is_graph_generated(8).unwrap().0);
    let explicit = Family::explicit(set(&[1, 2, 3]), sets(&[&[1, 2], &[2, 3], &[1, 3]])).unwrap();
    assert_eq!(explicit.is_graph_generated(3).unwrap(), (false, Some(set(&[1, 2, 3]))));
}

#[test]
fn max_elements_examples() {
    let g = set(&[1, 2, 3]);
    assert_eq!(
        Family::up_to(Universe::Explicit(g.clone()), 1).max_elements(&g).unwrap(),
        sets(&[&[1], &[2], &[3]])
    );
    let p3 = Family::cliques(Graph::path(3));
    assert_eq!(p3.max_elements(&g).unwrap(), sets(&[&[1, 2], &[2, 3]]));
    assert_eq!(
        s(1, 10).max_elements(&set(&[1, 2, 3, 4])).unwrap(),
        sets(&[&[1], &[2, 3], &[2, 4], &[3, 4]])
    );
}

#[test]
fn sign_vector_examples() {
    assert_eq!(sign_vectors(&sets(&[&[1]])).len(), 2);
    assert_eq!(sign_vectors(&sets(&[&[1, 2]])).len(), 4);
    let anti = Graph::cycle(5).maximal_anticliques();
    assert_eq!(anti.len(), 5);
    let w = sign_vectors(&anti);
    assert_eq!(w.len(), 20);
    assert!(w.iter().all(|v| v.iter().all(|(_, s)| s == 1 || s == -1)));
}

#[test]
fn schreier_examples() {
    let s1 = s(1, 20);
    assert!(s1.contains(&set(&[3, 4, 5])));
    assert!(!s1.contains(&set(&[2, 3, 4])));
    assert!(s(2, 20).contains(&set(&[2, 3, 4, 5, 6, 7])));
    assert!(brute_schreier(2, &[2, 3, 4, 5, 6, 7]));
    for alpha in [Ordinal::finite(0), Ordinal::finite(3), Ordinal::omega()] {
        for v in [Variant::Standard, Variant::Star] {
            assert!(schreier(alpha.clone(), v, 5).contains(&IdSet::empty()));
        }
    }
    let bare = Ordinal::limit("γ", None);
    assert!(matches!(
        Family::schreier(bare, Variant::Standard, 5),
        Err(Error::LadderMissing(_))
    ));
}

#[test]
fn schreier_matches_split_oracle() {
    let n = 9;
    let families = [
        (s(0, n), Box::new(|e: &[u32]| brute_schreier(0, e)) as Box<dyn Fn(&[u32]) -> bool>),
        (s(1, n), Box::new(|e: &[u32]| brute_schreier(1, e))),
        (s(2, n), Box::new(|e: &[u32]| brute_schreier(2, e))),
        (s(3, n), Box::new(|e: &[u32]| brute_schreier(3, e))),
        (schreier(Ordinal::omega(), Variant::Standard, n), Box::new(brute_schreier_omega)),
        (schreier(Ordinal::omega(), Variant::Star, n), Box::new(brute_schreier_star_omega)),
    ];
    for e in all_sets(n) {
        for (i, (f, oracle)) in families.iter().enumerate() {
            assert_eq!(f.contains(&e), oracle(e.as_slice()), "family {i}, {e:?}");
        }
    }
}

#[test]
fn farah_and_union_examples() {
    let part = |a: u32, b: u32| {
        let g = set(&[a, b]);
        (g.clone(), Family::up_to(Universe::Explicit(g), 1))
    };
    let fh = Family::farah(vec![part(1, 2), part(3, 4)]).unwrap();
    assert!(fh.contains(&set(&[1, 3])));
    assert!(!fh.contains(&set(&[1, 2])));
    let un = Family::union(vec![part(1, 2), part(3, 4)]).unwrap();
    assert!(!un.contains(&set(&[1, 3])));
    assert!(un.contains(&set(&[4])));
    assert!(matches!(
        Family::farah(vec![part(1, 2), part(2, 3)]),
        Err(Error::OverlappingParts(2))
    ));
}

/// `Fh(Q)^⊥ = ⋃ Q^⊥` on every subset of `{1..6}`.
#[test]
fn farah_perp_is_union_of_perps() {
    let grounds = [set(&[1, 2]), set(&[3, 4, 5]), set(&[6])];
    let fams = [
        Family::up_to(Universe::Explicit(grounds[0].clone()), 1),
        Family::cliques(Graph::path(5).induced(&grounds[1])),
        Family::all(Universe::Explicit(grounds[2].clone())),
    ];
    let q: Vec<(IdSet, Family)> = grounds.iter().cloned().zip(fams.iter().cloned()).collect();
    let qp: Vec<(IdSet, Family)> = grounds
        .iter()
        .zip(&fams)
        .map(|(g, f)| (g.clone(), f.perp_on(g).unwrap()))
        .collect();
    let lhs = Family::farah(q).unwrap().perp(6).unwrap();
    let rhs = Family::union(qp).unwrap();
    for e in all_sets(6) {
        assert_eq!(lhs.contains(&e), rhs.contains(&e), "{e:?}");
    }
}

#[test]
fn poset_examples() {
    let total = Poset::chain(3);
    let ch = Family::chains(total.clone());
    assert!(all_sets(3).iter().all(|e| ch.contains(e)));

    let p = Poset::product_order(3);
    let id = |i, j| Poset::product_id(3, i, j);
    let anti = Family::antichains(p.clone());
    assert!(anti.contains(&set(&[id(1, 3), id(2, 2), id(3, 1)])));
    assert!(!anti.contains(&set(&[id(1, 1), id(2, 2)])));

    let chains = Family::chains(p.clone());
    let ground = set(p.elements());
    for e in chains.members(&ground).unwrap() {
        if anti.contains(&e) {
            assert!(e.len() <= 1);
        }
    }

    assert!(matches!(Poset::new([1, 2], [(1, 1)]), Err(Error::NotAPoset(_))));
    assert!(matches!(
        Poset::new([1, 2], [(1, 1), (2, 2), (1, 2), (2, 1)]),
        Err(Error::NotAPoset(_))
    ));
    assert!(matches!(
        Poset::new([1, 2, 3], [(1, 1), (2, 2), (3, 3), (1, 2), (2, 3)]),
        Err(Error::NotAPoset(_))
    ));
}

#[test]
fn schreier_ladder_is_increasing() {
    let n = 12;
    let ground = IdSet::range(1, n);
    for k in 0..4 {
        let lo = s(k, n).members(&ground).unwrap();
        let hi = s(k + 1, n);
        assert!(lo.iter().all(|e| hi.contains(e)), "S_{k} ⊄ S_{}", k + 1);
    }
}

#[test]
fn schreier_sandwich() {
    let n = 11;
    let ground = IdSet::range(1, n);
    for alpha in [Ordinal::finite(1), Ordinal::finite(2), Ordinal::omega()] {
        let std = schreier(alpha.clone(), Variant::Standard, n);
        let star = schreier(alpha.clone(), Variant::Star, n);
        let plus = schreier(alpha.plus_ladder(), Variant::Standard, n);
        for e in star.members(&ground).unwrap() {
            assert!(plus.contains(&e), "{alpha:?}: {e:?}");
        }
        for e in std.members(&ground).unwrap() {
            assert!(star.contains(&e), "{alpha:?}: {e:?}");
        }
    }
}

#[test]
fn constructed_families_are_hereditary() {
    let ground = IdSet::range(1, 9);
    let fams = [
        s(2, 9),
        schreier(Ordinal::omega(), Variant::Star, 9),
        schreier(Ordinal::omega_mul_add(1, 1), Variant::Standard, 9),
        s(1, 9).perp(9).unwrap(),
        Family::antichains(Poset::product_order(3)),
        Family::cliques(comparability(&Poset::product_order(3))),
    ];
    for f in &fams {
        f.check_hereditary(&ground).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cliques_perp_are_anticliques(g in arb_graph(6)) {
        let ground = g.vertex_set();
        let p = Family::cliques(g.clone()).perp_on(&ground).unwrap();
        let a = g.anticliques();
        for e in subsets(g.vertices()) {
            let e = set(&e);
            prop_assert_eq!(p.contains(&e), a.contains(&e));
        }
    }

    #[test]
    fn triple_perp_is_perp(members in proptest::collection::vec(proptest::collection::vec(1u32..=6, 0..=3), 0..6)) {
        let ground = IdSet::range(1, 6);
        let sets: Vec<IdSet> = members.into_iter().map(IdSet::new).chain((1..=6).map(IdSet::singleton)).collect();
        let f = Family::explicit(ground.clone(), sets).unwrap();
        let p1 = f.perp(6).unwrap();
        let p3 = p1.perp(6).unwrap().perp(6).unwrap();
        for e in subsets(ground.as_slice()) {
            let e = set(&e);
            prop_assert_eq!(p1.contains(&e), p3.contains(&e));
        }
        prop_assert!(f.check_hereditary(&ground).is_ok());
        prop_assert!(p1.check_hereditary(&ground).is_ok());
    }

    #[test]
    fn clique_families_are_graph_generated(g in arb_graph(7)) {
        let f = Family::explicit(g.vertex_set(), g.cliques().members(&g.vertex_set()).unwrap()).unwrap();
        prop_assert_eq!(f.is_graph_generated(g.order()).unwrap(), (true, None));
    }

    #[test]
    fn max_elements_match_enumeration(g in arb_graph(7)) {
        let ground = g.vertex_set();
        let f = g.cliques();
        let members = f.members(&ground).unwrap();
        let mut want: Vec<IdSet> = members
            .iter()
            .filter(|m| !members.iter().any(|o| o.len() > m.len() && m.is_subset(o)))
            .cloned()
            .collect();
        want.sort();
        let mut got = f.max_elements(&ground).unwrap();
        got.sort();
        prop_assert_eq!(got, want);
    }
}
