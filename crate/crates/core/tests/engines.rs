//! The scanning engine against the full cube.

use std::collections::BTreeSet;

use khcore::chain::{bigraded_homology, filtration_level, homology_by_degree, BigradedDims};
use khcore::kh::{complex_with, khovanov_homology, lee_generator, s_invariant, Deformation, Engine, Frobenius, KhOptions};
use khcore::link::{braid_closure, negative_five_two, negative_trefoil, parse_pd, BraidWord, LinkDiagram};
use khcore::PrimeField;
use proptest::prelude::*;

fn fr(p: u32, d: Deformation) -> Frobenius {
    Frobenius::new(PrimeField::new(p).unwrap(), d).unwrap()
}

fn opts(engine: Engine) -> KhOptions {
    KhOptions { engine, ..KhOptions::default() }
}

fn closure(s: &str) -> LinkDiagram {
    braid_closure(&s.parse::<BraidWord>().unwrap()).unwrap()
}

fn same_homology(d: &LinkDiagram, frob: Frobenius) {
    let (a, _) = complex_with(d, frob, &[], &opts(Engine::Scan)).unwrap();
    let (b, _) = complex_with(d, frob, &[], &opts(Engine::Cube)).unwrap();
    a.check_d2().unwrap();
    if frob.deformation == Deformation::Khovanov {
        assert_eq!(bigraded_homology(&a).unwrap(), bigraded_homology(&b).unwrap(), "{:?}", d.crossings());
    } else {
        assert_eq!(homology_by_degree(&a).unwrap(), homology_by_degree(&b).unwrap(), "{} on {:?}", frob.deformation, d.crossings());
    }
}

fn same_generators(d: &LinkDiagram, frob: Frobenius) {
    let n = d.num_components();
    for mask in 0..1usize << n {
        let flip: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let (a, x) = lee_generator(d, frob, &flip, &opts(Engine::Scan)).unwrap();
        let (b, y) = lee_generator(d, frob, &flip, &opts(Engine::Cube)).unwrap();
        assert!(a.apply(&x).is_empty(), "scanned generator is not a cycle");
        assert_eq!(filtration_level(&a, &x).unwrap(), filtration_level(&b, &y).unwrap(), "flip {flip:?}");
    }
}

const ALL: [Deformation; 3] = [Deformation::Khovanov, Deformation::Lee, Deformation::BarNatan];

#[test]
fn small_knots_agree() {
    let ds = [
        closure("2: 1 1 1"),
        closure("2: -1 -1 -1"),
        closure("3: 1 -2 1 -2"),
        closure("3: 1 1 2 -1 2"),
        negative_five_two(),
        parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]").unwrap(),
    ];
    for d in &ds {
        for def in ALL {
            for p in [3, 5] {
                same_homology(d, fr(p, def));
            }
        }
        same_generators(d, fr(3, Deformation::Lee));
        same_generators(d, fr(2, Deformation::BarNatan));
    }
}

#[test]
fn links_and_loops_agree() {
    let ds = [closure("2: 1 1"), closure("3: 1 2"), closure("3: 1 -1"), closure("2: 1 1 1 1").disjoint_union_unknot(), closure("4: 1 -3")];
    for d in &ds {
        for def in ALL {
            same_homology(d, fr(3, def));
        }
        same_generators(d, fr(3, Deformation::Lee));
        same_generators(d, fr(3, Deformation::BarNatan));
    }
}

#[test]
fn known_s_invariants() {
    for def in [Deformation::Lee, Deformation::BarNatan] {
        for e in [Engine::Scan, Engine::Cube] {
            let o = opts(e);
            assert_eq!(s_invariant(&negative_trefoil(), fr(3, def), &o).unwrap(), -2);
            assert_eq!(s_invariant(&closure("2: 1 1 1"), fr(3, def), &o).unwrap(), 2);
            assert_eq!(s_invariant(&negative_five_two(), fr(3, def), &o).unwrap(), -2);
            // figure eight
            assert_eq!(s_invariant(&closure("3: 1 -2 1 -2"), fr(3, def), &o).unwrap(), 0);
        }
    }
}

#[test]
fn reidemeister_pairs() {
    let f = PrimeField::new(3).unwrap();
    let o = opts(Engine::Scan);
    let pairs = [
        // R1
        ("1:", "2: 1"),
        ("2: 1 1 1", "3: 1 1 1 -2"),
        // R2
        ("3: 1 1 1 2", "3: 1 2 -2 1 1 2"),
        ("3: 1 -2 1 -2", "3: 1 -2 1 1 -1 -2"),
        // R3
        ("3: 1 2 1 2", "3: 2 1 2 2"),
        ("4: 1 2 1 3 -2", "4: 2 1 2 3 -2"),
    ];
    for (a, b) in pairs {
        assert_eq!(khovanov_homology(&closure(a), f, &o).unwrap(), khovanov_homology(&closure(b), f, &o).unwrap(), "{a} vs {b}");
    }
}

#[test]
fn mirror_negates_s() {
    let o = opts(Engine::Scan);
    for d in [negative_trefoil(), negative_five_two(), closure("2: 1 1 1 1 1")] {
        assert_eq!(d.num_components(), 1);
        for p in [3, 5] {
            let lee = fr(p, Deformation::Lee);
            assert_eq!(s_invariant(&d.mirror(), lee, &o).unwrap(), -s_invariant(&d, lee, &o).unwrap());
        }
    }
}

#[test]
fn split_unknot_tensors() {
    let f = PrimeField::new(5).unwrap();
    let o = opts(Engine::Scan);
    for d in [closure("2: 1 1 1"), closure("2: 1 1"), negative_five_two(), closure("3: 1 -2 1 -2")] {
        let kh = khovanov_homology(&d, f, &o).unwrap();
        let with_u = khovanov_homology(&d.disjoint_union_unknot(), f, &o).unwrap();
        assert_eq!(with_u, kh.tensor_unknot());
        let mut by_hand = BigradedDims::new();
        for ((h, q), n) in kh.iter() {
            by_hand.add(h, q - 1, n);
            by_hand.add(h, q + 1, n);
        }
        assert_eq!(with_u, by_hand);
        let lee = fr(5, Deformation::Lee);
        let total: usize = homology_by_degree(&complex_with(&d.disjoint_union_unknot(), lee, &[], &o).unwrap().0).unwrap().values().sum();
        assert_eq!(total, 2 << d.num_components());
    }
}

fn braid_strategy() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|n| {
        let letter = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(letter, 0..=8).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_closures_agree(w in braid_strategy(), def in prop_oneof![Just(Deformation::Khovanov), Just(Deformation::Lee), Just(Deformation::BarNatan)]) {
        let d = braid_closure(&w).unwrap();
        same_homology(&d, fr(3, def));
        if def != Deformation::Khovanov && d.num_components() <= 3 {
            same_generators(&d, fr(3, def));
        }
    }
}
