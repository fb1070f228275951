//! The complex of a diagram filtered by the smoothing of one crossing: a mapping
//! cone from the 0-resolution to the 1-resolution.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{homology_by_degree, induced_rank, Complex, SparseVec};
use crate::error::{Error, Result};
use crate::kh::{scan, CubeComplex, ElementSpec, Engine, Frobenius, KhOptions, ScanOptions};
use crate::link::{EdgeImage, LinkDiagram, Resolution};

/// A cycle to carry through the computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tracked {
    /// Lee generator of the whole diagram with these components reversed.
    Whole(BTreeSet<usize>),
    /// Lee generator of one resolution (with these of its components reversed),
    /// as a chain in that layer.
    Side(u8, BTreeSet<usize>),
}

/// A crossing of a diagram with both of its smoothings.
#[derive(Clone, Debug)]
pub struct Sides {
    pub diagram: LinkDiagram,
    pub crossing: usize,
    pub res: [Resolution; 2],
}

#[derive(Clone, Debug)]
pub struct MarkedCone {
    pub sides: Sides,
    pub frob: Frobenius,
    /// Unnormalized gradings; the layer of a generator is its smoothing at the crossing.
    pub complex: Complex,
    pub elements: Vec<SparseVec>,
}
/// Element spec on `d` for the Lee generator of `res` (its crossing smoothed by `s`) with
/// the components `flip` of the resolved diagram reversed.
pub fn side_spec(d: &LinkDiagram, res: &Resolution, s: u8, flip: &BTreeSet<usize>) -> ElementSpec {
    let od = res.diagram.reoriented(flip);
    let smoothing = (0..d.num_crossings())
        .map(|y| match res.crossing_image(y) {
            Some(z) => od.oriented_smoothing(z),
            None => s,
        })
        .collect();
    let edge_label = res
        .image
        .iter()
        .map(|im| match *im {
            EdgeImage::Edge(ne, _) => od.left_color(ne),
            EdgeImage::Loop(i, _) => od.loops()[i],
        })
        .collect();
    let loop_label = od.loops()[..d.num_loops()].to_vec();
    ElementSpec { smoothing, edge_label, loop_label }
}

impl MarkedCone {
    pub fn new(d: &LinkDiagram, x: usize, frob: Frobenius, tracked: &[Tracked], opts: &KhOptions) -> Result<Self> {
        Self::from_sides(Sides::new(d, x)?, frob, tracked, opts)
    }

    pub fn from_sides(sides: Sides, frob: Frobenius, tracked: &[Tracked], opts: &KhOptions) -> Result<Self> {
        let (d, x) = (&sides.diagram, sides.crossing);
        let specs: Vec<ElementSpec> = tracked
            .iter()
            .map(|t| match t {
                Tracked::Whole(f) => ElementSpec::reoriented(d, f),
                Tracked::Side(s, f) => side_spec(d, &sides.res[*s as usize], *s, f),
            })
            .collect();
        let (complex, elements) = match opts.engine {
            Engine::Scan => {
                let r = scan(d, frob, &specs, &ScanOptions { marked: Some(x), budget: opts.budget })?;
                (r.complex, r.elements)
            }
            Engine::Cube => {
                let c = CubeComplex::new(d, frob, opts.cube_limit)?;
                let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
                let els = specs.iter().map(|s| c.element(s)).collect::<Result<Vec<_>>>()?;
                (c.marked(x).shifted(nm, 2 * nm - np), els)
            }
        };
        Ok(MarkedCone { sides, frob, complex, elements })
    }

    /// The whole complex in the normalized gradings of the diagram with `flip` reversed.
    pub fn normalized(&self, flip: &BTreeSet<usize>) -> Complex {
        let od = self.sides.diagram.reoriented(flip);
        let (np, nm) = (od.n_plus() as i32, od.n_minus() as i32);
        self.complex.shifted(-nm, np - 2 * nm)
    }

    /// Layer `s` in the normalized gradings of its resolution, with the index map into
    /// the cone.
    pub fn side(&self, s: u8, flip: &BTreeSet<usize>) -> (Complex, Vec<usize>) {
        let od = self.sides.side_diagram(s, flip);
        let (np, nm) = (od.n_plus() as i32, od.n_minus() as i32);
        let (c, idx) = self.complex.layer(s);
        let s = s as i32;
        (c.shifted(-s - nm, -s + np - 2 * nm), idx)
    }

    /// Restricts a cone vector to the generators listed in `idx`, renumbered.
    pub fn restrict(v: &[(usize, u32)], idx: &[usize]) -> SparseVec {
        v.iter().filter_map(|&(i, c)| idx.binary_search(&i).ok().map(|k| (k, c))).collect()
    }

    /// The layer-1 part of the differential of the layer-0 part of `z`.
    pub fn connecting(&self, z: &[(usize, u32)]) -> SparseVec {
        let z0: SparseVec = z.iter().copied().filter(|&(i, _)| self.complex.gen(i).layer == 0).collect();
        self.complex.apply(&z0).into_iter().filter(|&(i, _)| self.complex.gen(i).layer == 1).collect()
    }

    /// Rank of the connecting map `H(layer 0) -> H(layer 1)` out of unnormalized degree `h`.
    pub fn connecting_rank(&self, h: i32) -> usize {
        induced_rank(&self.complex, 0, 1, h)
    }

    /// Homology of each layer and of the whole cone, by unnormalized degree.
    pub fn raw_homology(&self) -> Result<[BTreeMap<i32, usize>; 3]> {
        Ok([
            homology_by_degree(&self.complex.layer(0).0)?,
            homology_by_degree(&self.complex.layer(1).0)?,
            homology_by_degree(&self.complex)?,
        ])
    }
}

impl Sides {
    pub fn new(d: &LinkDiagram, x: usize) -> Result<Self> {
        Ok(Sides { diagram: d.clone(), crossing: x, res: [d.resolve_crossing(x, 0)?, d.resolve_crossing(x, 1)?] })
    }

    /// Oriented resolution diagram of side `s` with components `flip` reversed.
    pub fn side_diagram(&self, s: u8, flip: &BTreeSet<usize>) -> LinkDiagram {
        self.res[s as usize].diagram.reoriented(flip)
    }

    /// Homological degree `h` of side `s` (normalized for `flip`) as an unnormalized cone degree.
    pub fn raw_degree(&self, s: u8, flip: &BTreeSet<usize>, h: i32) -> i32 {
        h + s as i32 + self.side_diagram(s, flip).n_minus() as i32
    }

    /// Orientation of side `s` in which every edge and free loop of the diagram runs as
    /// `desired` says (see [`Self::side_directions`]). `None` if some component would
    /// need both directions.
    pub fn side_flip_from(&self, s: u8, desired: &[bool]) -> Option<BTreeSet<usize>> {
        let res = &self.res[s as usize];
        let mut want: BTreeMap<usize, bool> = BTreeMap::new();
        for (e, im) in res.image.iter().enumerate() {
            let (comp, fwd) = match *im {
                EdgeImage::Edge(ne, fwd) => (res.diagram.edge_component(ne), fwd),
                EdgeImage::Loop(i, fwd) => (res.diagram.loop_component(i), fwd),
            };
            let flip = fwd != desired[e];
            if *want.entry(comp).or_insert(flip) != flip {
                return None;
            }
        }
        let ne = self.diagram.num_edges();
        for i in 0..self.diagram.num_loops() {
            want.insert(res.diagram.loop_component(i), !desired[ne + i]);
        }
        Some(want.into_iter().filter(|&(_, f)| f).map(|(c, _)| c).collect())
    }

    /// Direction of every edge, then of every free loop, of the diagram (true: as drawn)
    /// under an orientation of side `s`.
    pub fn side_directions(&self, s: u8, flip: &BTreeSet<usize>) -> Vec<bool> {
        let res = &self.res[s as usize];
        let mut v: Vec<bool> = (0..self.diagram.num_edges() as u32).map(|e| res.old_edge_agrees(e, flip)).collect();
        v.extend((0..self.diagram.num_loops()).map(|i| !flip.contains(&res.diagram.loop_component(i))));
        v
    }

    /// Orientation of side `to` agreeing away from the crossing with side `from` oriented
    /// by `flip`; `None` when the band between them is not orientable.
    pub fn induced_flip(&self, from: u8, flip: &BTreeSet<usize>, to: u8) -> Option<BTreeSet<usize>> {
        self.side_flip_from(to, &self.side_directions(from, flip))
    }

    /// Orientation of the whole diagram agreeing with side `from`; `None` if there is none.
    pub fn whole_flip_from(&self, from: u8, flip: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
        let dirs = self.side_directions(from, flip);
        let d = &self.diagram;
        let mut out = BTreeSet::new();
        for c in 0..d.num_components() {
            let edges = d.component_edges(c);
            if edges.is_empty() {
                continue;
            }
            let f = !dirs[edges[0] as usize];
            if edges.iter().any(|&e| !dirs[e as usize] != f) {
                return None;
            }
            if f {
                out.insert(c);
            }
        }
        let ne = d.num_edges();
        out.extend((0..d.num_loops()).filter(|&i| !dirs[ne + i]).map(|i| d.loop_component(i)));
        Some(out)
    }
}

pub(crate) fn not_positive(x: usize) -> Error {
    Error::OutOfRange(format!("crossing {x} is not positive"))
}
