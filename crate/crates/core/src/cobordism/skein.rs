//! The exact triangle of a crossing: `L`, its oriented resolution `L_o` and its
//! unoriented resolution `L_u`.
//!
//! At a positive crossing `L_o` is the 0-side (a quotient complex) and `L_u` the 1-side
//! (a subcomplex), giving `Kh^{h+d}(L_u) -> Kh^h(L) -> Kh^h(L_o) -> Kh^{h+d+1}(L_u)`.
//! At a negative crossing the roles swap and `L -> L_u` is the quotient map.

use std::collections::{BTreeMap, BTreeSet};

use super::cone::{not_positive, MarkedCone, Sides, Tracked};
use crate::chain::{class_coordinates, homology_by_degree};
use crate::error::{Error, Result};
use crate::kh::{complex_with, Frobenius, KhOptions};
use crate::link::LinkDiagram;

/// Whether the oriented resolution merges two components of `L` or splits one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    Merge,
    Split,
}

#[derive(Clone, Debug)]
pub struct SkeinTriangle {
    pub cone: MarkedCone,
    pub o_side: u8,
    /// Orientation of `L_o` agreeing with `L`.
    pub o_flip: BTreeSet<usize>,
    /// Chosen orientation of `L_u`.
    pub u_flip: BTreeSet<usize>,
    /// Orientation `J` carried by the Lee generators (components of `L` for a merge, of
    /// `L_o` relative to `o_flip` for a split), when tracked.
    pub j_flip: Option<BTreeSet<usize>>,
}

/// Outcome of comparing the triangle with independently computed homology.
#[derive(Clone, Debug, Default)]
pub struct TriangleCheck {
    /// Normalized dimensions of `L`, `L_o`, `L_u`.
    pub dims: [BTreeMap<i32, usize>; 3],
    /// Rank of the connecting map out of each unnormalized degree.
    pub ranks: BTreeMap<i32, usize>,
    pub mismatches: Vec<String>,
}

impl TriangleCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Lee generator comparison at a positive crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDegree {
    pub kind: TriangleKind,
    pub j: BTreeSet<usize>,
    /// `x_{L_u}` (merge) or the image of `x_{L_o}^J` (split) as a multiple of the other
    /// generator; `None` if it is not one.
    pub coefficient: Option<u32>,
    /// The shift `d` read off from the gradings of the two generators.
    pub degree: i32,
}

fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0..1u64 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

impl Sides {
    /// Orientation of side `s` agreeing with the drawn orientation of the diagram.
    pub fn agreeing(&self, s: u8) -> Option<BTreeSet<usize>> {
        self.side_flip_from(s, &vec![true; self.diagram.num_edges() + self.diagram.num_loops()])
    }

    /// All orientations of `L_u` that come with an orientable band to or from an
    /// orientation of the diagram, as `(J, o_u)`; `J` is as in [`SkeinTriangle::j_flip`].
    pub fn unoriented_orientations(&self) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
        let d = &self.diagram;
        let o = d.oriented_smoothing(self.crossing);
        let u = 1 - o;
        let (a, b) = d.crossing_components(self.crossing);
        let mut out = vec![];
        if a != b {
            for j in subsets(d.num_components()) {
                if j.contains(&a) == j.contains(&b) {
                    continue;
                }
                let dirs: Vec<bool> = (0..d.num_edges() as u32)
                    .map(|e| !j.contains(&d.edge_component(e)))
                    .chain((0..d.num_loops()).map(|i| !j.contains(&d.loop_component(i))))
                    .collect();
                if let Some(f) = self.side_flip_from(u, &dirs) {
                    out.push((j, f));
                }
            }
        } else {
            let base = self.agreeing(o).expect("oriented smoothing");
            for j in subsets(self.res[o as usize].diagram.num_components()) {
                let flips: BTreeSet<usize> = base.symmetric_difference(&j).copied().collect();
                if let Some(f) = self.induced_flip(o, &flips, u) {
                    out.push((j, f));
                }
            }
        }
        out
    }
}

impl SkeinTriangle {
    /// `u_flip` orients `L_u` (drawn orientation if `None`). With a deformed algebra at
    /// a positive crossing, the Lee generators relating `L_u` to `L` or `L_o` are tracked;
    /// this needs `u_flip` to come from [`Sides::unoriented_orientations`].
    pub fn new(d: &LinkDiagram, c: usize, frob: Frobenius, u_flip: Option<BTreeSet<usize>>, opts: &KhOptions) -> Result<Self> {
        let sides = Sides::new(d, c)?;
        let o_side = d.oriented_smoothing(c);
        let u = 1 - o_side;
        let o_flip = sides.agreeing(o_side).expect("oriented smoothing");
        let u_flip = u_flip.unwrap_or_default();
        let mut tracked = vec![];
        let mut j_flip = None;
        if frob.is_deformed() && d.sign(c) > 0 {
            let j = match Self::kind_of(d, c) {
                TriangleKind::Merge => sides.whole_flip_from(u, &u_flip),
                TriangleKind::Split => sides
                    .induced_flip(u, &u_flip, o_side)
                    .map(|f| f.symmetric_difference(&o_flip).copied().collect()),
            }
            .ok_or_else(|| Error::OutOfRange("orientation of the unoriented resolution is not induced by a band".into()))?;
            tracked.push(Tracked::Side(u, u_flip.clone()));
            tracked.push(match Self::kind_of(d, c) {
                TriangleKind::Merge => Tracked::Whole(j.clone()),
                TriangleKind::Split => Tracked::Side(o_side, j.symmetric_difference(&o_flip).copied().collect()),
            });
            j_flip = Some(j);
        }
        let cone = MarkedCone::from_sides(sides, frob, &tracked, opts)?;
        Ok(SkeinTriangle { cone, o_side, o_flip, u_flip, j_flip })
    }

    fn kind_of(d: &LinkDiagram, c: usize) -> TriangleKind {
        let (a, b) = d.crossing_components(c);
        if a == b {
            TriangleKind::Split
        } else {
            TriangleKind::Merge
        }
    }

    pub fn kind(&self) -> TriangleKind {
        Self::kind_of(&self.cone.sides.diagram, self.cone.sides.crossing)
    }

    pub fn is_positive(&self) -> bool {
        self.cone.sides.diagram.sign(self.cone.sides.crossing) > 0
    }

    pub fn u_side(&self) -> u8 {
        1 - self.o_side
    }

    pub fn l_o(&self) -> LinkDiagram {
        self.cone.sides.side_diagram(self.o_side, &self.o_flip)
    }

    pub fn l_u(&self) -> LinkDiagram {
        self.cone.sides.side_diagram(self.u_side(), &self.u_flip)
    }

    /// The shift `d`: `Kh^{h+d}(L_u) -> Kh^h(L)` at a positive crossing,
    /// `Kh^h(L) -> Kh^{h+d}(L_u)` at a negative one.
    pub fn degree(&self) -> i32 {
        let nl = self.cone.sides.diagram.n_minus() as i32;
        let nu = self.l_u().n_minus() as i32;
        if self.is_positive() {
            nl - nu - 1
        } else {
            nl - nu
        }
    }

    /// Compares the cone with separately computed homology of `L`, `L_o`, `L_u`, and checks
    /// that the dimensions fit the long exact sequence with the cone's connecting ranks.
    pub fn check(&self, opts: &KhOptions) -> Result<TriangleCheck> {
        let frob = self.cone.frob;
        let sides = &self.cone.sides;
        let l = &sides.diagram;
        let (lo, lu) = (self.l_o(), self.l_u());
        let indep = |d: &LinkDiagram| -> Result<BTreeMap<i32, usize>> { homology_by_degree(&complex_with(d, frob, &[], opts)?.0) };
        let dims = [indep(l)?, indep(&lo)?, indep(&lu)?];
        // unnormalized dims of layer 0, layer 1, whole
        let raw = |m: &BTreeMap<i32, usize>, shift: i32| -> BTreeMap<i32, usize> { m.iter().map(|(&h, &n)| (h + shift, n)).collect() };
        let side_shift = |s: u8, dd: &LinkDiagram| s as i32 + dd.n_minus() as i32;
        let mut by_side = [BTreeMap::new(), BTreeMap::new()];
        by_side[self.o_side as usize] = raw(&dims[1], side_shift(self.o_side, &lo));
        by_side[self.u_side() as usize] = raw(&dims[2], side_shift(self.u_side(), &lu));
        let whole = raw(&dims[0], l.n_minus() as i32);
        let cone_raw = self.cone.raw_homology()?;
        let mut mismatches = vec![];
        for (name, ours, theirs) in [("layer 0", &cone_raw[0], &by_side[0]), ("layer 1", &cone_raw[1], &by_side[1]), ("cone", &cone_raw[2], &whole)] {
            if ours != theirs {
                mismatches.push(format!("{name}: cone gives {ours:?}, separate computation {theirs:?}"));
            }
        }
        let mut hs: BTreeSet<i32> = by_side.iter().chain([&whole]).flat_map(|m| m.keys().copied()).collect();
        let lo_h = hs.first().copied().unwrap_or(0) - 1;
        let hi_h = hs.last().copied().unwrap_or(0) + 1;
        hs.extend(lo_h..=hi_h);
        let ranks: BTreeMap<i32, usize> = hs.iter().map(|&h| (h, self.cone.connecting_rank(h))).collect();
        let get = |m: &BTreeMap<i32, usize>, h: i32| m.get(&h).copied().unwrap_or(0) as i64;
        for &h in &hs {
            let r = |h: i32| ranks.get(&h).copied().unwrap_or(0) as i64;
            let expect = get(&by_side[1], h) - r(h - 1) + get(&by_side[0], h) - r(h);
            if get(&whole, h) != expect {
                mismatches.push(format!("degree {h}: dim {} but exactness needs {expect}", get(&whole, h)));
            }
        }
        Ok(TriangleCheck { dims, ranks, mismatches })
    }

    /// Reads the shift `d` off the Lee generators (positive crossings only).
    pub fn generator_degree(&self) -> Result<GeneratorDegree> {
        let sides = &self.cone.sides;
        if !self.is_positive() {
            return Err(not_positive(sides.crossing));
        }
        let j = self.j_flip.clone().ok_or_else(|| Error::Deformation("Lee generators were not tracked".into()))?;
        let [xu, other] = [&self.cone.elements[0], &self.cone.elements[1]];
        let gr = |v: &[(usize, u32)]| self.cone.complex.gen(v[0].0).h;
        match self.kind() {
            TriangleKind::Merge => {
                let c = self.cone.normalized(&BTreeSet::new());
                let coefficient = class_coordinates(&c, other, &[xu.clone()])?.and_then(|v| (v[0] != 0).then_some(v[0]));
                let h = gr(other) - sides.diagram.n_minus() as i32;
                Ok(GeneratorDegree { kind: TriangleKind::Merge, j, coefficient, degree: -h })
            }
            TriangleKind::Split => {
                let (layer, idx) = self.cone.complex.layer(self.u_side());
                let img = MarkedCone::restrict(&self.cone.connecting(other), &idx);
                let x = MarkedCone::restrict(xu, &idx);
                let coefficient = class_coordinates(&layer, &img, &[x])?.and_then(|v| (v[0] != 0).then_some(v[0]));
                let h = gr(other) - self.l_o().n_minus() as i32;
                Ok(GeneratorDegree { kind: TriangleKind::Split, j, coefficient, degree: -1 - h })
            }
        }
    }
}
