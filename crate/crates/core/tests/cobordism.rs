//! Crossing cones, skein triangles and band maps.

use std::collections::BTreeSet;

use khcore::chain::{homology_by_degree, Complex};
use khcore::cobordism::{band_is_orientable, bands, insert_band, BandMap, LeeImage, MarkedCone, Sides, SkeinTriangle, TriangleKind, Tracked};
use khcore::kh::{complex_with, khovanov_homology, Deformation, Engine, Frobenius, KhOptions};
use khcore::link::{braid_closure, negative_five_two, BraidWord, Letter, LinkDiagram};
use khcore::PrimeField;

fn fr(p: u32, d: Deformation) -> Frobenius {
    Frobenius::new(PrimeField::new(p).unwrap(), d).unwrap()
}

fn opts(engine: Engine) -> KhOptions {
    KhOptions { engine, ..KhOptions::default() }
}

fn closure(s: &str) -> LinkDiagram {
    braid_closure(&s.parse::<BraidWord>().unwrap()).unwrap()
}

fn suite() -> Vec<LinkDiagram> {
    vec![
        closure("2: 1 1 1"),
        closure("2: -1 -1 -1"),
        closure("3: 1 -2 1 -2"),
        closure("2: 1 1"),
        closure("3: 1 1 2 -1 2"),
        closure("3: 1 2 -1 2 2"),
        negative_five_two(),
    ]
}

fn ranks(c: &MarkedCone) -> Vec<usize> {
    (-12..12).map(|h| c.connecting_rank(h)).collect()
}

fn dims(c: &Complex) -> Vec<(i32, usize)> {
    homology_by_degree(c).unwrap().into_iter().collect()
}

#[test]
fn marked_cone_matches_cube() {
    for d in suite() {
        for frob in [fr(3, Deformation::Khovanov), fr(3, Deformation::Lee), fr(5, Deformation::BarNatan)] {
            for x in 0..d.num_crossings() {
                let a = MarkedCone::new(&d, x, frob, &[], &opts(Engine::Scan)).unwrap();
                let b = MarkedCone::new(&d, x, frob, &[], &opts(Engine::Cube)).unwrap();
                assert_eq!(a.raw_homology().unwrap(), b.raw_homology().unwrap());
                assert_eq!(ranks(&a), ranks(&b), "{frob:?} crossing {x}");
            }
        }
    }
}

#[test]
fn layers_are_the_resolutions() {
    let frob = fr(3, Deformation::Khovanov);
    for d in suite() {
        for x in 0..d.num_crossings() {
            let c = MarkedCone::new(&d, x, frob, &[], &opts(Engine::Scan)).unwrap();
            for s in 0..2u8 {
                let flip = c.sides.agreeing(s).unwrap_or_default();
                let (layer, _) = c.side(s, &flip);
                let sd = c.sides.side_diagram(s, &flip);
                let (direct, _) = complex_with(&sd, frob, &[], &opts(Engine::Cube)).unwrap();
                assert_eq!(dims(&layer), dims(&direct));
            }
            assert_eq!(dims(&c.normalized(&BTreeSet::new())), dims(&complex_with(&d, frob, &[], &opts(Engine::Cube)).unwrap().0));
        }
    }
}

#[test]
fn triangles_are_exact() {
    for d in suite() {
        for frob in [fr(3, Deformation::Khovanov), fr(3, Deformation::Lee), fr(5, Deformation::Khovanov), fr(5, Deformation::Lee)] {
            for x in 0..d.num_crossings() {
                let sides = Sides::new(&d, x).unwrap();
                let u_flip = sides.unoriented_orientations().first().map(|p| p.1.clone());
                let t = SkeinTriangle::new(&d, x, frob, u_flip, &opts(Engine::Scan)).unwrap();
                let check = t.check(&opts(Engine::Scan)).unwrap();
                assert!(check.ok(), "{:?}", check.mismatches);
            }
        }
    }
}

#[test]
fn trefoil_hopf_unknot() {
    let d = closure("2: 1 1 1");
    let t = SkeinTriangle::new(&d, 2, fr(3, Deformation::Khovanov), None, &opts(Engine::Scan)).unwrap();
    assert_eq!(t.kind(), TriangleKind::Split);
    assert_eq!(t.l_o().num_components(), 2);
    assert_eq!(t.l_o().num_crossings(), 2);
    let field = PrimeField::new(3).unwrap();
    let u = khovanov_homology(&t.l_u(), field, &opts(Engine::Scan)).unwrap();
    assert_eq!(u.by_h(), [(0, 2)].into());
    // both kinks of the unoriented resolution are negative
    assert_eq!(t.degree(), -3);
}

#[test]
fn generators_give_the_shift() {
    for d in suite() {
        for p in [3, 5] {
            let frob = fr(p, Deformation::Lee);
            for x in (0..d.num_crossings()).filter(|&x| d.sign(x) > 0) {
                let sides = Sides::new(&d, x).unwrap();
                let choices = sides.unoriented_orientations();
                assert!(!choices.is_empty());
                for (_, u) in choices {
                    let t = SkeinTriangle::new(&d, x, frob, Some(u), &opts(Engine::Scan)).unwrap();
                    let g = t.generator_degree().unwrap();
                    assert!(g.coefficient.is_some(), "crossing {x}: {g:?}");
                    assert_eq!(g.degree, t.degree(), "crossing {x}");
                }
            }
        }
    }
}

#[test]
fn tracked_elements_match_cube() {
    let frob = fr(5, Deformation::Lee);
    for d in suite() {
        for x in 0..d.num_crossings() {
            let sides = Sides::new(&d, x).unwrap();
            let f0 = sides.agreeing(0).unwrap_or_default();
            let tracked = [Tracked::Side(0, f0.clone()), Tracked::Whole(BTreeSet::new())];
            let a = MarkedCone::new(&d, x, frob, &tracked, &opts(Engine::Scan)).unwrap();
            let b = MarkedCone::new(&d, x, frob, &tracked, &opts(Engine::Cube)).unwrap();
            for c in [&a, &b] {
                for z in &c.elements {
                    assert!(c.complex.apply(z).is_empty() || c.complex.gen(z[0].0).layer == 0);
                }
                assert!(c.complex.apply(&c.elements[1]).is_empty());
            }
            let (la, ia) = a.complex.layer(0);
            let (lb, ib) = b.complex.layer(0);
            let za = MarkedCone::restrict(&a.elements[0], &ia);
            let zb = MarkedCone::restrict(&b.elements[0], &ib);
            use khcore::chain::filtration_level;
            assert_eq!(filtration_level(&la, &za).unwrap(), filtration_level(&lb, &zb).unwrap());
        }
    }
}

#[test]
fn band_insertion_keeps_the_diagram() {
    let field = PrimeField::new(3).unwrap();
    for d in suite() {
        let kh = khovanov_homology(&d, field, &opts(Engine::Scan)).unwrap();
        for band in bands(&d) {
            let bc = insert_band(&d, &band).unwrap();
            let sides = Sides::new(&bc.diagram, bc.crossing).unwrap();
            let f = sides.side_flip_from(0, &bc.directions(&d, &BTreeSet::new())).unwrap();
            let back = sides.side_diagram(0, &f);
            assert_eq!(back.writhe(), d.writhe());
            assert_eq!(khovanov_homology(&back, field, &opts(Engine::Scan)).unwrap(), kh);
            assert_eq!(sides.induced_flip(0, &f, 1).is_some(), band_is_orientable(&d, &band), "{band:?}");
        }
    }
}

fn orientations(n: usize) -> Vec<BTreeSet<usize>> {
    (0..1usize << n).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

#[test]
fn band_maps_on_lee_generators() {
    let frob = fr(3, Deformation::Lee);
    for d in [closure("2: 1 1 1"), closure("3: 1 -2 1 -2"), closure("2: 1 1"), closure("2: 1")] {
        for band in bands(&d).into_iter().step_by(2) {
            let somewhere = orientations(d.num_components()).iter().any(|f| band_is_orientable(&d.reoriented(f), &band));
            for flip in orientations(d.num_components()) {
                let m = BandMap::from_band(&d, &band, &flip, frob, &opts(Engine::Scan)).unwrap();
                assert_eq!(m.is_orientable(), band_is_orientable(&d.reoriented(&flip), &band));
                if m.is_orientable() {
                    assert_eq!(m.degree(), (0, -1));
                    assert!(matches!(m.lee_image().unwrap(), LeeImage::Multiple(_)), "{band:?}");
                } else {
                    assert_eq!(m.lee_image().unwrap(), LeeImage::Zero, "{band:?}");
                }
                if !somewhere {
                    assert_eq!(m.total_rank(), 0, "{band:?}");
                }
            }
        }
    }
}

#[test]
fn merging_two_unknots() {
    let b = khcore::link::closure(2, &[Letter::Band { i: 1, zero_is_original: true }]).unwrap();
    let x = b.letter_crossings[0] as usize;
    let sides = Sides::new(&b.diagram, x).unwrap();
    assert_eq!(sides.res[0].diagram.num_components(), 2);
    assert_eq!(sides.res[1].diagram.num_components(), 1);
    let mut seen = 0;
    for flip in orientations(2) {
        let m = BandMap::new(&b.diagram, x, &flip, fr(5, Deformation::Lee), &opts(Engine::Scan)).unwrap();
        if m.is_orientable() {
            seen += 1;
            assert!(matches!(m.lee_image().unwrap(), LeeImage::Multiple(_)));
        } else {
            assert_eq!(m.lee_image().unwrap(), LeeImage::Zero);
        }
    }
    assert_eq!(seen, 2);
}

#[test]
fn half_twisted_band_on_the_unknot() {
    let d = closure("2: 1");
    let mut found = false;
    for band in bands(&d) {
        if band_is_orientable(&d, &band) {
            continue;
        }
        let m = BandMap::from_band(&d, &band, &BTreeSet::new(), fr(3, Deformation::Lee), &opts(Engine::Scan)).unwrap();
        assert_eq!(m.cone.sides.res[1].diagram.num_components(), 1);
        assert_eq!(m.total_rank(), 0);
        found = true;
    }
    assert!(found);
}
