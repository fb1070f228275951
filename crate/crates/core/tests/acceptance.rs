//! Acceptance criteria, one test each. Every test prints a single `criterion N: PASS|FAIL`
//! line with the numbers it compared (run with `--nocapture` to see them).

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use khcore::chain::{bigraded_homology, homology_by_degree, BigradedDims};
use khcore::cobordism::{band_is_orientable, bands, BandMap, LeeImage, Sides, SkeinTriangle};
use khcore::induction::{
    cable_crossings, verify_main_lemma, verify_theorem_sinv, EntryStatus, Harness, HarnessOptions, KnotInput,
};
use khcore::kh::{complex_with, khovanov_homology, lee_generator, s_invariant, Deformation, Engine, Frobenius, KhOptions};
use khcore::link::{braid_closure, negative_five_two, negative_trefoil, unknot, BraidWord, LinkDiagram};
use khcore::PrimeField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u32; 2] = [3, 5];
const ALL: [Deformation; 3] = [Deformation::Khovanov, Deformation::Lee, Deformation::BarNatan];
const BUDGET: usize = 60;

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn fr(p: u32, d: Deformation) -> Frobenius {
    Frobenius::new(field(p), d).unwrap()
}

fn scan() -> KhOptions {
    KhOptions::default()
}

fn cube() -> KhOptions {
    KhOptions { engine: Engine::Cube, ..KhOptions::default() }
}

fn closure(s: &str) -> LinkDiagram {
    braid_closure(&s.parse::<BraidWord>().unwrap()).unwrap()
}

fn report(n: usize, ok: bool, detail: String) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn orientations(n: usize) -> Vec<BTreeSet<usize>> {
    (0..1usize << n).map(|m| (0..n).filter(|k| m >> k & 1 == 1).collect()).collect()
}

/// Knots and links with at most ten crossings, some with split unknots.
fn suite() -> Vec<(&'static str, LinkDiagram)> {
    vec![
        ("unknot", unknot()),
        ("kinked unknot", closure("2: 1")),
        ("positive trefoil", closure("2: 1 1 1")),
        ("negative trefoil", negative_trefoil()),
        ("figure eight", closure("3: 1 -2 1 -2")),
        ("5_2", negative_five_two()),
        ("Hopf link", closure("2: 1 1")),
        ("T(2,4)", closure("2: 1 1 1 1")),
        ("Whitehead-like closure", closure("3: 1 1 -2 1 -2")),
        ("three-component chain", closure("3: 1 1 2 2")),
        ("trefoil + U", negative_trefoil().disjoint_union_unknot()),
        ("Hopf + U", closure("2: -1 -1").disjoint_union_unknot()),
    ]
}

fn random_closure(rng: &mut ChaCha8Rng, max_letters: usize) -> LinkDiagram {
    let n = rng.gen_range(1..=5usize);
    let len = if n == 1 { 0 } else { rng.gen_range(0..=max_letters) };
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) { i } else { -i }
        })
        .collect();
    let d = braid_closure(&BraidWord::new(n, letters).unwrap()).unwrap();
    if rng.gen_bool(0.15) {
        d.disjoint_union_unknot()
    } else {
        d
    }
}

#[test]
fn criterion_1_known_values() {
    let mut slow = vec![];
    let mut timed = |name: &str, f: &mut dyn FnMut() -> bool| {
        let t = Instant::now();
        let ok = f();
        if t.elapsed() >= Duration::from_secs(1) {
            slow.push(name.to_string());
        }
        ok
    };
    let mut ok = true;
    for p in PRIMES {
        let f = field(p);
        ok &= timed("unknot", &mut || khovanov_homology(&unknot(), f, &scan()).unwrap() == BigradedDims::from(vec![(0, -1, 1), (0, 1, 1)]));
        for d in [negative_trefoil(), closure("2: 1 1 1"), closure("2: 1 1"), closure("2: -1 -1")] {
            ok &= timed("cube oracle", &mut || {
                let k = fr(p, Deformation::Khovanov);
                bigraded_homology(&complex_with(&d, k, &[], &scan()).unwrap().0).unwrap()
                    == bigraded_homology(&complex_with(&d, k, &[], &cube()).unwrap().0).unwrap()
            });
        }
        let lee = fr(p, Deformation::Lee);
        ok &= timed("s(unknot)", &mut || s_invariant(&unknot(), lee, &scan()).unwrap() == 0);
        ok &= timed("s(3_1)", &mut || s_invariant(&negative_trefoil(), lee, &scan()).unwrap() == -2);
        ok &= timed("s(5_2)", &mut || s_invariant(&negative_five_two(), lee, &scan()).unwrap() == -2);
    }
    report(1, ok && slow.is_empty(), format!("p = 3, 5; exact values; over 1 s: {slow:?}"));
}

#[test]
fn criterion_2_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b68);
    let mut bad = vec![];
    let n = 200;
    for k in 0..n {
        let d = random_closure(&mut rng, 10);
        for def in ALL {
            let frob = fr(PRIMES[k % 2], def);
            let (a, _) = complex_with(&d, frob, &[], &scan()).unwrap();
            let (b, _) = complex_with(&d, frob, &[], &cube()).unwrap();
            let same = if def == Deformation::Khovanov {
                bigraded_homology(&a).unwrap() == bigraded_homology(&b).unwrap()
            } else {
                homology_by_degree(&a).unwrap() == homology_by_degree(&b).unwrap()
            };
            if !same {
                bad.push(format!("{def} on {:?}", d.crossings()));
            }
        }
    }
    let t = start.elapsed();
    report(2, bad.is_empty() && t < Duration::from_secs(300), format!("{n} diagrams x 3 algebras, {:.1}s, mismatches {bad:?}", t.as_secs_f64()));
}

#[test]
fn criterion_3_lee_structure() {
    let mut bad = vec![];
    let mut pairs = 0;
    for (name, d) in suite() {
        for p in PRIMES {
            for def in [Deformation::Lee, Deformation::BarNatan] {
                let total: usize = homology_by_degree(&complex_with(&d, fr(p, def), &[], &scan()).unwrap().0).unwrap().values().sum();
                if total != 1 << d.num_components() {
                    bad.push(format!("{name}: {def} total {total}"));
                }
            }
            let lee = fr(p, Deformation::Lee);
            let os = orientations(d.num_components());
            let gr: Vec<i32> = os
                .iter()
                .map(|o| {
                    let (c, x) = lee_generator(&d, lee, o, &scan()).unwrap();
                    c.gen(x[0].0).h
                })
                .collect();
            for (i, o) in os.iter().enumerate() {
                for (j, o2) in os.iter().enumerate() {
                    pairs += 1;
                    let w = |f: &BTreeSet<usize>| d.reoriented(f).writhe();
                    // L_+ is where o and o' agree; linking measured in o'
                    let plus: BTreeSet<usize> = (0..d.num_components()).filter(|c| o.contains(c) == o2.contains(c)).collect();
                    let lk2 = if plus.is_empty() || plus.len() == d.num_components() {
                        0
                    } else {
                        2 * d.reoriented(o2).linking_number(&plus).unwrap()
                    };
                    let diff = gr[i] - gr[j];
                    if diff != (w(o2) - w(o)) / 2 || diff != lk2 {
                        bad.push(format!("{name} p={p}: {o:?} vs {o2:?}: {diff}, {}, {lk2}", (w(o2) - w(o)) / 2));
                    }
                }
            }
        }
    }
    report(3, bad.is_empty(), format!("{} diagrams, {pairs} orientation pairs, mismatches {bad:?}", suite().len()));
}

#[test]
fn criterion_4_band_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xba4d);
    let (mut orientable, mut other, mut bad) = (0, 0, vec![]);
    while orientable + other < 60 || orientable < 20 || other < 20 {
        let d = random_closure(&mut rng, 6);
        let bs = bands(&d);
        if bs.is_empty() {
            continue;
        }
        let band = bs[rng.gen_range(0..bs.len())];
        let os = orientations(d.num_components());
        let flip = &os[rng.gen_range(0..os.len())];
        let p = PRIMES[rng.gen_range(0..2)];
        let m = BandMap::from_band(&d, &band, flip, fr(p, Deformation::Lee), &scan()).unwrap();
        let image = m.lee_image().unwrap();
        if m.is_orientable() != band_is_orientable(&d.reoriented(flip), &band) {
            bad.push(format!("orientability of {band:?} on {:?}", d.crossings()));
        }
        if m.is_orientable() {
            orientable += 1;
            if !matches!(image, LeeImage::Multiple(_)) || m.degree() != (0, -1) {
                bad.push(format!("{image:?}, degree {:?} on {:?}", m.degree(), d.crossings()));
            }
        } else {
            other += 1;
            if image != LeeImage::Zero {
                bad.push(format!("nonorientable band gives {image:?} on {:?}", d.crossings()));
            }
        }
    }
    report(4, bad.is_empty(), format!("{orientable} orientable, {other} nonorientable instances, failures {bad:?}"));
}

#[test]
fn criterion_5_skein_exactness() {
    let mut bad = vec![];
    let mut count = 0;
    for (name, d) in suite() {
        for p in PRIMES {
            for def in ALL {
                let frob = fr(p, def);
                for x in 0..d.num_crossings() {
                    let sides = Sides::new(&d, x).unwrap();
                    let u_flip = sides.unoriented_orientations().first().map(|c| c.1.clone());
                    let t = SkeinTriangle::new(&d, x, frob, u_flip, &scan()).unwrap();
                    let check = t.check(&scan()).unwrap();
                    count += 1;
                    if !check.ok() {
                        bad.push(format!("{name}, {def}, p={p}, crossing {x}: {:?}", check.mismatches));
                    }
                }
            }
        }
    }
    report(5, bad.is_empty(), format!("{count} triangles, failures {bad:?}"));
}

#[test]
fn criterion_6_induction() {
    let start = Instant::now();
    let mut lines = vec![];
    let mut ok = true;
    for (name, d, expect) in [("unknot", unknot(), 10), ("3_1", negative_trefoil(), 40)] {
        for p in PRIMES {
            let mut opts = HarnessOptions::new(field(p));
            opts.budget_crossings = BUDGET;
            let h = Harness::new(KnotInput::new(name, d.clone()).unwrap(), opts);
            let r = h.run(1).unwrap();
            for e in &r.entries {
                if let EntryStatus::Failed(why) = &e.status {
                    println!("  {name} p={p} {}: {why:?}", e.entry);
                }
            }
            let d_min = r.entries.iter().filter_map(|e| e.triangle()).map(|t| (t.d_triangle, t.d_crossings)).collect::<Vec<_>>();
            ok &= r.entries.len() == expect && r.verified() == expect && d_min.iter().all(|&(a, b)| a == Some(b));
            lines.push(format!("{name} p={p}: {}/{} verified, {} skipped", r.verified(), r.entries.len(), r.skipped()));
        }
    }
    report(6, ok, format!("{}; {:.0}s", lines.join("; "), start.elapsed().as_secs_f64()));
}

/// `s` of the 1-framed 3-strand cable of the negative trefoil over F_p.
fn trefoil_cable_s(p: u32) -> i32 {
    static S: [OnceLock<i32>; 2] = [OnceLock::new(), OnceLock::new()];
    *S[(p == 5) as usize].get_or_init(|| {
        let k = KnotInput::new("3_1", negative_trefoil()).unwrap();
        let r = verify_theorem_sinv(&k, 1, field(p), &scan(), BUDGET).unwrap().expect("51 crossings fit the budget");
        r.s_cable
    })
}

#[test]
fn criterion_7_s_invariant_of_cables() {
    let mut ok = true;
    let mut parts = vec![];
    for p in PRIMES {
        let s = trefoil_cable_s(p);
        ok &= s == -4;
        parts.push(format!("s(3_1 cable) = {s} over F_{p}"));
    }
    ok &= cable_crossings(&negative_trefoil(), 1) == 51;
    let five_two = KnotInput::new("5_2", negative_five_two()).unwrap();
    match verify_theorem_sinv(&five_two, 1, field(3), &scan(), BUDGET).unwrap() {
        Some(r) => {
            ok &= r.holds();
            parts.push(format!("s(5_2 cable) = {}", r.s_cable));
        }
        None => parts.push(format!("5_2 n=1 skipped: {} crossings over the budget of {BUDGET}", cable_crossings(&five_two.diagram, 1))),
    }
    report(7, ok, parts.join("; "));
}

#[test]
fn criterion_8_band_map_injective() {
    let mut ok = true;
    let mut parts = vec![];
    for (name, d) in [("unknot", unknot()), ("3_1", negative_trefoil())] {
        let k = KnotInput::new(name, d).unwrap();
        for p in PRIMES {
            let r = verify_main_lemma(&k, 0, field(p), &scan(), name == "unknot").unwrap();
            ok &= r.holds() && r.injective();
            parts.push(format!("{name} p={p}: rank {} on dim {}", r.rank, r.source_dim));
        }
    }
    report(8, ok, parts.join("; "));
}

#[test]
fn criterion_9_euler_characteristic_arithmetic() {
    // Only the inequality between s-values and the Euler characteristic -2n of the
    // punctured sphere is checked; the 4-dimensional argument producing that surface is not.
    let lee = fr(3, Deformation::Lee);
    let s52 = s_invariant(&negative_five_two(), lee, &scan()).unwrap();
    let mut ok = s52 == -2;
    for n in 0..=3 {
        let s = s52 - 2 * n;
        ok &= s < -2 * n;
    }
    let s31 = trefoil_cable_s(3);
    ok &= s31 < -2;
    report(9, ok, format!("s(5_2) = {s52}, s(5_2)-2n < -2n for n <= 3; s(3_1 cable) = {s31} < -2; the 4-manifold conclusion is not machine-checked"));
}
