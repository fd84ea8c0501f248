mod common;

use common::*;
use proptest::prelude::*;

use combinorm::emulations::{
    dstar_transform, emulation_norm, emulation_weighted_norm, farah_shift, schreier_emulation, schreier_transform,
    search_emulation, star_omega_emulation, union_shift, verify_emulation, Block, Emulation,
};
use combinorm::exact::RatVector;
use combinorm::families::{Family, IdSet, Ordinal, Universe, Variant};
use combinorm::graphs::Graph;
use combinorm::norms::family_norm;
use combinorm::Error;

fn schreier(alpha: Ordinal, variant: Variant, n: u32) -> Family {
    Family::schreier(alpha, variant, n).unwrap()
}

fn s(k: u32, n: u32) -> Family {
    schreier(Ordinal::finite(k), Variant::Standard, n)
}

fn emulation(blocks: &[(u32, u32)], theta: &[i64]) -> Emulation {
    let b = blocks.iter().map(|&(label, size)| Block { label, size }).collect();
    Emulation::new(b, theta.iter().map(|&v| ri(v)).collect()).unwrap()
}

/// The family an emulation induces on its labels.
fn induced_family(e: &Emulation) -> Family {
    let e2 = e.clone();
    Family::custom("induced", Universe::Explicit(e.labels()), move |s| {
        emulation_norm(&e2, s).unwrap() as usize == s.len()
    })
}

fn verify(e: &Emulation, f: &Family, k: usize) -> bool {
    let v = verify_emulation(e, f, k).unwrap();
    assert!(v.ok, "counterexample {:?}", v.counterexample);
    true
}

#[test]
fn norm_examples() {
    let one = emulation(&[(1, 3)], &[3, 2, 1]);
    assert_eq!(emulation_norm(&one, &set(&[1])).unwrap(), 1);
    let two = emulation(&[(1, 2), (2, 2)], &[2, 1, 4, 3]);
    assert_eq!(emulation_norm(&two, &set(&[1, 2])).unwrap(), 2);

    let s1 = schreier_emulation(1, 8).unwrap();
    for e in [&[3, 4, 5][..], &[2, 3, 4]] {
        let want = brute_emulation_norm(&s1, e);
        assert_eq!(ri(emulation_norm(&s1, &set(e)).unwrap() as i64), want);
    }
    assert_eq!(emulation_norm(&s1, &set(&[3, 4, 5])).unwrap(), 3);
    assert_eq!(emulation_norm(&s1, &set(&[2, 3, 4])).unwrap(), 2);
    assert!(matches!(emulation_norm(&s1, &set(&[9])), Err(Error::UnknownLabel(9))));
}

#[test]
fn invalid_emulations() {
    let b = |v: &[(u32, u32)]| v.iter().map(|&(label, size)| Block { label, size }).collect::<Vec<_>>();
    let t = |v: &[i64]| v.iter().map(|&x| ri(x)).collect::<Vec<_>>();
    assert!(Emulation::new(b(&[(1, 2)]), t(&[1, 2])).is_err());
    assert!(Emulation::new(b(&[(1, 2)]), t(&[2])).is_err());
    assert!(Emulation::new(b(&[(1, 1), (1, 1)]), t(&[1, 2])).is_err());
    assert!(Emulation::new(b(&[(1, 1), (2, 1)]), t(&[1, 1])).is_err());
    assert!(Emulation::new(b(&[(1, 0)]), t(&[])).is_err());
    let unordered = emulation(&[(2, 1), (1, 1)], &[1, 2]);
    assert!(matches!(schreier_transform(&unordered), Err(Error::InvalidEmulation(_))));
}

#[test]
fn verification_examples() {
    let n = 6;
    let c0 = Family::up_to(Universe::Bounded(n), 1);
    let l1 = Family::all(Universe::Bounded(n));
    assert!(verify(&Emulation::decreasing(n), &c0, 6));
    assert!(verify(&Emulation::increasing(n), &l1, 6));
    let v = verify_emulation(&Emulation::increasing(n), &c0, 6).unwrap();
    assert!(!v.ok);
    assert_eq!(v.counterexample, Some(set(&[1, 2])));
    assert!(matches!(
        verify_emulation(&Emulation::decreasing(7), &c0, 3),
        Err(Error::OutsideUniverse(7))
    ));
}

#[test]
fn schreier_transform_examples() {
    let s1 = schreier_transform(&Emulation::decreasing(8)).unwrap();
    assert_eq!(s1.blocks().iter().map(|b| b.size).collect::<Vec<_>>(), (1..=8).collect::<Vec<_>>());
    assert!(verify(&s1, &s(1, 8), 8));

    let s2 = schreier_transform(&s1).unwrap();
    let sizes: Vec<u32> = s2.blocks().iter().map(|b| b.size).collect();
    let want: Vec<u32> = s1.blocks().iter().map(|b| b.label * b.size).collect();
    assert_eq!(sizes, want);
    let s2 = schreier_emulation(2, 7).unwrap();
    assert!(verify(&s2, &s(2, 7), 7));
    assert!(s2.is_ordered());
}

#[test]
fn dstar_examples() {
    let base: Vec<Emulation> = (0..8).map(|_| Emulation::decreasing(8)).collect();
    let d = dstar_transform(&base).unwrap();
    assert!(verify(&d, &s(1, 8), 8));
    // With a single part only block 1 is complete.
    let single = dstar_transform(&base[..1]).unwrap();
    assert_eq!(single.blocks(), &[Block { label: 1, size: 1 }]);
    assert_eq!(single.labels(), schreier_transform(&Emulation::decreasing(1)).unwrap().labels());

    let star = star_omega_emulation(6).unwrap();
    assert!(verify(&star, &schreier(Ordinal::omega(), Variant::Star, 6), 5));
    assert!(dstar_transform(&[]).is_err());
}

#[test]
fn shift_examples() {
    let a = emulation(&[(1, 1), (2, 1)], &[2, 1]);
    let b = emulation(&[(3, 1), (4, 1)], &[2, 1]);
    let part = |x: u32, y: u32| {
        let g = set(&[x, y]);
        (g.clone(), Family::up_to(Universe::Explicit(g), 1))
    };
    let un = union_shift(&[a.clone(), b.clone()]).unwrap();
    let union = Family::union(vec![part(1, 2), part(3, 4)]).unwrap();
    assert!(verify(&un, &union, 4));
    let fh = farah_shift(&[a.clone(), b]).unwrap();
    let farah = Family::farah(vec![part(1, 2), part(3, 4)]).unwrap();
    assert!(verify(&fh, &farah, 4));
    // One part: the same order type.
    let one = union_shift(&[a.clone()]).unwrap();
    assert_eq!(one.labels(), a.labels());
    for e in a.labels().subsets() {
        assert_eq!(emulation_norm(&one, &e).unwrap(), emulation_norm(&a, &e).unwrap());
    }
}

#[test]
fn search_examples() {
    let c5 = Family::cliques(Graph::cycle(5));
    assert_eq!(search_emulation(&c5, 2).unwrap(), None);
    let p3 = Family::cliques(Graph::path(3));
    let e = search_emulation(&p3, 2).unwrap().expect("P3 is emulated");
    assert!(verify(&e, &p3, 3));
    let c0 = Family::up_to(Universe::Explicit(IdSet::range(1, 3)), 1);
    let e = search_emulation(&c0, 1).unwrap().expect("decreasing");
    assert!(verify(&e, &c0, 3));
    let big = Family::all(Universe::Explicit(IdSet::range(1, 7)));
    assert!(matches!(search_emulation(&big, 1), Err(Error::SearchSpaceExceeded(_))));
}

#[test]
fn emulation_json_round_trip() {
    let e = schreier_emulation(1, 4).unwrap();
    let text = serde_json::to_string(&e).unwrap();
    assert!(text.contains("\"theta\""));
    let back: Emulation = serde_json::from_str(&text).unwrap();
    assert_eq!(back, e);
    assert!(serde_json::from_str::<Emulation>(r#"{"blocks":[{"label":1,"size":2}],"theta":["1","2"]}"#).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_matches_position_oracle(e in arb_emulation(5, 3), pick in proptest::collection::vec(any::<bool>(), 5)) {
        let labels: Vec<u32> = e.labels().iter().copied().filter(|&l| pick[l as usize - 1]).collect();
        prop_assert_eq!(ri(emulation_norm(&e, &set(&labels)).unwrap() as i64), brute_emulation_norm(&e, &labels));
    }

    /// Equal norms on 0/1 vectors and on rational coefficient vectors.
    #[test]
    fn emulated_norm_equals_family_norm(k in 1u32..=2, a in arb_vector((1..=6).collect(), 20, 7), drop in proptest::collection::vec(any::<bool>(), 6)) {
        let e = schreier_emulation(k, 6).unwrap();
        let f = s(k, 6);
        let a = RatVector::from_pairs(a.iter().filter(|&(i, _)| drop[i as usize - 1]).map(|(i, v)| (i, v.clone())));
        for sub in a.support().subsets() {
            prop_assert_eq!(emulation_norm(&e, &sub).unwrap() as usize == sub.len(), f.contains(&sub));
        }
        let got = emulation_weighted_norm(&e, &a).unwrap();
        prop_assert_eq!(&got, &family_norm(&f, &a));
        if k == 1 && a.len() <= 4 {
            prop_assert_eq!(got, brute_emulation_weighted(&e, &a));
        }
    }

    /// An ordered emulation emulates its induced family `F`, so its
    /// transform must emulate `S(F)`.
    #[test]
    fn transform_emulates_schreier_of_family(e in arb_emulation(5, 3)) {
        let f = induced_family(&e);
        f.check_hereditary(&e.labels()).unwrap();
        let t = schreier_transform(&e).unwrap();
        prop_assert!(t.is_ordered());
        let f2 = f.clone();
        let sf = Family::custom("S(F)", Universe::Explicit(e.labels()), move |s| {
            brute_schreier_op(s.as_slice(), &|b: &[u32]| f2.contains(&set(b)))
        });
        let v = verify_emulation(&t, &sf, 5).unwrap();
        prop_assert!(v.ok, "{:?}", v.counterexample);
        // Transforms compose.
        prop_assert!(schreier_transform(&t).is_ok());
    }

    #[test]
    fn dstar_emulates_diagonal(parts in proptest::collection::vec(arb_emulation(4, 2), 1..=4)) {
        let Ok(d) = dstar_transform(&parts) else {
            // Only possible when part 1 is empty, which the strategy excludes.
            return Err(TestCaseError::fail("no output block"));
        };
        let fams: Vec<Family> = parts.iter().map(induced_family).collect();
        let labels = d.labels();
        let df = Family::custom("D*", Universe::Explicit(labels.clone()), move |s| {
            brute_dstar(s.as_slice(), &|k, b: &[u32]| fams[k as usize - 1].universe().contains(*b.last().unwrap()) && fams[k as usize - 1].contains(&set(b)))
        });
        let v = verify_emulation(&d, &df, 4).unwrap();
        prop_assert!(v.ok, "{:?}", v.counterexample);
    }
}
