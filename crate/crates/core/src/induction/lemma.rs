//! The band map `φ: Kh⁰(K_m¹ ⊔ U) -> Kh⁰(K_{m+1}¹)` and the resulting s-invariants.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ind::KnotInput;
use crate::chain::homology_by_degree;
use crate::cobordism::{BandMap, LeeImage, Sides};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::kh::{deformed_homology, khovanov_homology, s_invariant, Deformation, Frobenius, KhOptions};
use crate::link::{cable, BoxedDiagram, EdgeImage, Letter, LinkDiagram, StrandStart};

/// Components of side `s` to reverse so that exactly the strands in `reversed` run
/// against the knot.
fn strand_flip(b: &BoxedDiagram, sides: &Sides, s: u8, reversed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let res = &sides.res[s as usize];
    let mut out = BTreeSet::new();
    for (j, start) in b.strand_start.iter().enumerate() {
        let (c, fwd) = match *start {
            StrandStart::Edge(e) => match res.image[e as usize] {
                EdgeImage::Edge(ne, fwd) => (res.diagram.edge_component(ne), fwd),
                EdgeImage::Loop(i, fwd) => (res.diagram.loop_component(i), fwd),
            },
            StrandStart::Loop(i) => (res.diagram.loop_component(i), true),
        };
        if fwd == reversed.contains(&j) {
            out.insert(c);
        }
    }
    out
}

/// The `(2n+1)`-strand 1-framed cable of `knot` with `n` strands parallel to it.
pub fn oriented_cable(knot: &LinkDiagram, n: usize) -> Result<LinkDiagram> {
    let b = cable(knot, 2 * n + 1, 1, &[])?;
    let flip: BTreeSet<usize> = (0..=2 * n).step_by(2).map(|j| b.strand_component[j]).collect();
    Ok(b.diagram.reoriented(&flip))
}

/// Number of crossings of `K_n¹`.
pub fn cable_crossings(knot: &LinkDiagram, n: usize) -> usize {
    let k = 2 * n + 1;
    let twists = (1 - knot.writhe()).unsigned_abs() as usize;
    knot.num_crossings() * k * k + twists * k * (k - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub m: usize,
    pub prime: u32,
    /// Crossings of the diagram of `K_{m+1}¹` with the band drawn as a crossing.
    pub crossings: usize,
    /// `dim Kh⁰(K_m¹)` and `dim Kh⁰_Lee(K_m¹)`.
    pub kh0: usize,
    pub lee0: usize,
    /// `dim Kh⁰(K_m¹ ⊔ U)` and the rank of `φ` on it.
    pub source_dim: usize,
    pub rank: usize,
    pub degree: (i32, i32),
    /// Whether the Lee generator goes to a nonzero multiple of the Lee generator.
    pub lee_multiple: bool,
    /// `s(K_m¹)` and `s(K_{m+1}¹)`, when computed.
    pub s: Option<(i32, i32)>,
}

impl LemmaReport {
    pub fn injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn holds(&self) -> bool {
        self.kh0 == self.lee0
            && self.injective()
            && self.degree == (0, -1)
            && self.lee_multiple
            && self.s.is_none_or(|(a, b)| b == a - 2)
    }
}

/// Computes `φ` for `K_m¹` explicitly. With `with_s` the s-invariants of both cables are
/// computed too.
pub fn verify_main_lemma(knot: &KnotInput, m: usize, field: PrimeField, opts: &KhOptions, with_s: bool) -> Result<LemmaReport> {
    let k = &knot.diagram;
    let b = cable(k, 2 * m + 3, 1, &[Letter::Band { i: 1, zero_is_original: false }])?;
    let x = b.letter_crossings[0] as usize;
    let sides = Sides::new(&b.diagram, x)?;
    // strands 0 and 1 close up into the split unknot on side 0
    let reversed: BTreeSet<usize> = (1..2 * m + 3).step_by(2).collect();
    let target = strand_flip(&b, &sides, 1, &reversed);
    let source = sides.induced_flip(1, &target, 0).ok_or_else(|| Error::OutOfRange("band joins parallel strands".into()))?;

    let kh = Frobenius::new(field, Deformation::Khovanov)?;
    let lee = Frobenius::new(field, Deformation::Lee)?;
    let phi = BandMap::new(&b.diagram, x, &source, kh, opts)?;
    if phi.target_flip.as_ref() != Some(&target) {
        return Err(Error::OutOfRange("band map does not reach the chosen orientation".into()));
    }
    let raw0 = sides.raw_degree(0, &source, 0);
    let source_dim = homology_by_degree(&phi.cone.complex.layer(0).0)?.get(&raw0).copied().unwrap_or(0);
    let rank = phi.rank(0);
    let lee_phi = BandMap::new(&b.diagram, x, &source, lee, opts)?;
    let lee_multiple = matches!(lee_phi.lee_image()?, LeeImage::Multiple(_));

    let km = oriented_cable(k, m)?;
    let kh0 = khovanov_homology(&km, field, opts)?.at_h(0);
    let lee0 = deformed_homology(&km, lee, opts)?.get(&0).copied().unwrap_or(0);
    let s = if with_s {
        Some((s_invariant(&km, lee, opts)?, s_invariant(&oriented_cable(k, m + 1)?, lee, opts)?))
    } else {
        None
    };
    Ok(LemmaReport {
        m,
        prime: field.p(),
        crossings: b.diagram.num_crossings(),
        kh0,
        lee0,
        source_dim,
        rank,
        degree: phi.degree(),
        lee_multiple,
        s,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinvReport {
    pub n: usize,
    pub crossings: usize,
    pub s_knot: i32,
    pub s_cable: i32,
}

impl SinvReport {
    pub fn holds(&self) -> bool {
        self.s_cable == self.s_knot - 2 * self.n as i32
    }
}

/// `s(K_n¹)` against `s(K) - 2n`. `None` when the cable is over `budget` crossings.
pub fn verify_theorem_sinv(knot: &KnotInput, n: usize, field: PrimeField, opts: &KhOptions, budget: usize) -> Result<Option<SinvReport>> {
    let crossings = cable_crossings(&knot.diagram, n);
    if crossings > budget {
        return Ok(None);
    }
    let lee = Frobenius::new(field, Deformation::Lee)?;
    let s_knot = s_invariant(&knot.diagram, lee, opts)?;
    let d = oriented_cable(&knot.diagram, n)?;
    debug_assert_eq!(d.num_crossings(), crossings);
    Ok(Some(SinvReport { n, crossings, s_knot, s_cable: s_invariant(&d, lee, opts)? }))
}
