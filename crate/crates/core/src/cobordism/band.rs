//! Bands. A band is attached along two darts bounding a common face and is realized as
//! an extra crossing inside that face: its 0-smoothing gives back the diagram, its
//! 1-smoothing is the result of the band move, and the cone map between the two is the
//! band cobordism map.

use std::collections::BTreeSet;

use super::cone::{MarkedCone, Sides, Tracked};
use crate::chain::{class_coordinates, is_boundary, SparseVec};
use crate::error::{Error, Result};
use crate::kh::{Frobenius, KhOptions};
use crate::link::{Edge, LinkDiagram, Port};

/// Two darts (crossing, slot), each leaving its crossing with the same face on the left.
/// The band is attached to the first half of each dart's edge. Equal darts attach both
/// ends of the band to the same edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BandSpec {
    pub darts: [Port; 2],
}

/// A diagram with one extra crossing realizing a band.
#[derive(Clone, Debug)]
pub struct BandCone {
    pub diagram: LinkDiagram,
    pub crossing: usize,
    /// Original edge of each edge of `diagram`, and whether their directions agree.
    pub origin: Vec<(u32, bool)>,
}

impl BandCone {
    /// Edge and loop directions of the cone diagram (as in [`Sides::side_directions`])
    /// for the original diagram `d` with components `flip` reversed.
    pub fn directions(&self, d: &LinkDiagram, flip: &BTreeSet<usize>) -> Vec<bool> {
        let mut v: Vec<bool> = self.origin.iter().map(|&(e, agree)| agree != flip.contains(&d.edge_component(e))).collect();
        v.extend((0..d.num_loops()).map(|i| !flip.contains(&d.loop_component(i))));
        v
    }
}

fn across(d: &LinkDiagram, p: Port) -> Port {
    let e = d.edge(d.edge_at(p.0 as usize, p.1));
    if e.tail == p {
        e.head
    } else {
        e.tail
    }
}

/// Every band with both ends on one face, up to order of the darts.
pub fn bands(d: &LinkDiagram) -> Vec<BandSpec> {
    let darts: Vec<Port> = (0..d.num_crossings() as u32).flat_map(|x| (0..4u8).map(move |k| (x, k))).collect();
    let mut out = vec![];
    for (i, &p) in darts.iter().enumerate() {
        for &q in &darts[i..] {
            if d.dart_face(p) != d.dart_face(q) {
                continue;
            }
            if p != q && d.edge_at(p.0 as usize, p.1) == d.edge_at(q.0 as usize, q.1) {
                continue;
            }
            out.push(BandSpec { darts: [p, q] });
        }
    }
    out
}

/// Whether the band respects the orientation of `d`.
pub fn band_is_orientable(d: &LinkDiagram, band: &BandSpec) -> bool {
    let fwd = |p: Port| d.edge(d.edge_at(p.0 as usize, p.1)).tail == p;
    fwd(band.darts[0]) == fwd(band.darts[1])
}

/// The diagram with the band's crossing added (as the last crossing).
pub fn insert_band(d: &LinkDiagram, band: &BandSpec) -> Result<BandCone> {
    let [p1, p2] = band.darts;
    for p in [p1, p2] {
        if p.0 as usize >= d.num_crossings() || p.1 > 3 {
            return Err(Error::InvalidBand(format!("no dart {p:?}")));
        }
    }
    if d.dart_face(p1) != d.dart_face(p2) {
        return Err(Error::InvalidBand("darts do not bound a common face".into()));
    }
    let (e1, e2) = (d.edge_at(p1.0 as usize, p1.1), d.edge_at(p2.0 as usize, p2.1));
    if p1 != p2 && e1 == e2 {
        return Err(Error::InvalidBand("both darts run along the same edge".into()));
    }
    let x = d.num_crossings() as u32;
    // compass slots of the new crossing: SE, NE, NW, SW
    let [se, ne, nw, sw]: [Port; 4] = [(x, 0), (x, 1), (x, 2), (x, 3)];
    let mut crossings = d.crossings().to_vec();
    crossings.push([u32::MAX; 4]);
    let mut edges = d.edges().to_vec();
    let mut origin: Vec<(u32, bool)> = (0..edges.len() as u32).map(|e| (e, true)).collect();
    let mut piece = |from: Port, to: Port, orig: u32, fwd: bool, reuse: bool| {
        let id = if reuse {
            orig
        } else {
            edges.push(Edge { tail: from, head: to });
            origin.push((orig, true));
            edges.len() as u32 - 1
        };
        edges[id as usize] = Edge { tail: from, head: to };
        origin[id as usize] = (orig, fwd);
        crossings[from.0 as usize][from.1 as usize] = id;
        crossings[to.0 as usize][to.1 as usize] = id;
    };
    let fwd = |p: Port| d.edge(d.edge_at(p.0 as usize, p.1)).tail == p;
    if p1 == p2 {
        let (f, end) = (fwd(p1), across(d, p1));
        piece(p1, se, e1, f, true);
        piece(ne, nw, e1, f, false);
        piece(sw, end, e1, f, false);
    } else {
        piece(p1, se, e1, fwd(p1), true);
        piece(ne, across(d, p1), e1, fwd(p1), false);
        piece(p2, nw, e2, fwd(p2), true);
        piece(sw, across(d, p2), e2, fwd(p2), false);
    }
    let mut flipped = vec![false; edges.len()];
    crate::link::reorient(&crossings, &mut edges, &mut flipped);
    for (o, f) in origin.iter_mut().zip(&flipped) {
        o.1 ^= *f;
    }
    let mut roots = d.full_roots();
    if d.dart_piece(p1) != d.dart_piece(p2) {
        let gone = d.dart_piece(p2);
        roots.retain(|&(p, _)| d.dart_piece(p) != gone);
    }
    let diagram = LinkDiagram::from_parts(crossings, edges, d.loops().to_vec(), roots)?;
    Ok(BandCone { diagram, crossing: x as usize, origin })
}

/// Where the band map sends the Lee generator of the source orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeeImage {
    /// A nonzero multiple of the Lee generator of the induced target orientation.
    Multiple(u32),
    /// Zero in homology.
    Zero,
    /// Neither of the above.
    Other,
}

/// The map from the 0-side to the 1-side of a marked crossing, with the Lee generators
/// of a source orientation and of the induced target orientation (if any) tracked.
#[derive(Clone, Debug)]
pub struct BandMap {
    pub cone: MarkedCone,
    pub source_flip: BTreeSet<usize>,
    pub target_flip: Option<BTreeSet<usize>>,
}

impl BandMap {
    /// `source_flip` orients the 0-resolution of crossing `x` of `d`.
    pub fn new(d: &LinkDiagram, x: usize, source_flip: &BTreeSet<usize>, frob: Frobenius, opts: &KhOptions) -> Result<Self> {
        let sides = Sides::new(d, x)?;
        let target_flip = sides.induced_flip(0, source_flip, 1);
        let mut tracked = vec![];
        if frob.is_deformed() {
            tracked.push(Tracked::Side(0, source_flip.clone()));
            if let Some(t) = &target_flip {
                tracked.push(Tracked::Side(1, t.clone()));
            }
        }
        let cone = MarkedCone::from_sides(sides, frob, &tracked, opts)?;
        Ok(BandMap { cone, source_flip: source_flip.clone(), target_flip })
    }

    /// The band `band` on `d` (with components `flip` reversed) as a map out of `d`.
    pub fn from_band(d: &LinkDiagram, band: &BandSpec, flip: &BTreeSet<usize>, frob: Frobenius, opts: &KhOptions) -> Result<Self> {
        let bc = insert_band(d, band)?;
        let sides = Sides::new(&bc.diagram, bc.crossing)?;
        let source = sides
            .side_flip_from(0, &bc.directions(d, flip))
            .expect("the 0-smoothing of a band crossing is the original diagram");
        Self::new(&bc.diagram, bc.crossing, &source, frob, opts)
    }

    pub fn is_orientable(&self) -> bool {
        self.target_flip.is_some()
    }

    /// Bidegree `(h, q)` in normalized gradings (the target uses its drawn orientation
    /// when the band is not orientable).
    pub fn degree(&self) -> (i32, i32) {
        let empty = BTreeSet::new();
        let s = self.cone.sides.side_diagram(0, &self.source_flip);
        let t = self.cone.sides.side_diagram(1, self.target_flip.as_ref().unwrap_or(&empty));
        let shift = |d: &LinkDiagram| d.n_plus() as i32 - 2 * d.n_minus() as i32;
        (s.n_minus() as i32 - t.n_minus() as i32, shift(&t) - shift(&s) - 1)
    }

    /// Rank of the induced map out of normalized source degree `h`.
    pub fn rank(&self, h: i32) -> usize {
        self.cone.connecting_rank(self.cone.sides.raw_degree(0, &self.source_flip, h))
    }

    /// Sum of the ranks over all degrees.
    pub fn total_rank(&self) -> usize {
        let mut hs: Vec<i32> = self.cone.complex.gens().iter().filter(|g| g.layer == 0).map(|g| g.h).collect();
        hs.sort_unstable();
        hs.dedup();
        hs.into_iter().map(|h| self.cone.connecting_rank(h)).sum()
    }

    /// Image of the tracked source Lee generator, as a chain of the target layer.
    pub fn image_of_generator(&self) -> Result<SparseVec> {
        let z = self.cone.elements.first().ok_or_else(|| Error::Deformation("no Lee generators for an undeformed algebra".into()))?;
        let (_, idx) = self.cone.complex.layer(1);
        Ok(MarkedCone::restrict(&self.cone.connecting(z), &idx))
    }

    pub fn lee_image(&self) -> Result<LeeImage> {
        let img = self.image_of_generator()?;
        let (layer, idx) = self.cone.complex.layer(1);
        if self.target_flip.is_none() {
            return Ok(if is_boundary(&layer, &img)? { LeeImage::Zero } else { LeeImage::Other });
        }
        let x = MarkedCone::restrict(&self.cone.elements[1], &idx);
        Ok(match class_coordinates(&layer, &img, &[x])? {
            Some(v) if v[0] != 0 => LeeImage::Multiple(v[0]),
            Some(_) => LeeImage::Zero,
            None => LeeImage::Other,
        })
    }
}
