use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(crossing, slot)`. Slots are numbered counterclockwise; slots 0 and 2 carry the
/// under strand, slots 1 and 3 the over strand.
pub type Port = (u32, u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: Port,
    pub head: Port,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawDiagram {
    crossings: Vec<[u32; 4]>,
    edges: Vec<Edge>,
    loops: Vec<u8>,
    roots: Vec<(Port, u8)>,
}

/// An oriented planar link diagram.
///
/// Edges join two crossing slots and carry the orientation. Crossingless components
/// are stored as free loops, each recorded only by the checkerboard color of the
/// region on its left. `roots` pins the coloring: a dart together with the color of
/// the face on its left, at most one per connected piece (pieces without a root get
/// color 0 on their first dart).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct LinkDiagram {
    raw: RawDiagram,
    comp_of_edge: Vec<usize>,
    comp_edges: Vec<Vec<u32>>,
    face_of_dart: Vec<u32>,
    face_color: Vec<u8>,
    piece_of_face: Vec<usize>,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw
    }
}

impl Eq for LinkDiagram {}

impl TryFrom<RawDiagram> for LinkDiagram {
    type Error = Error;

    fn try_from(raw: RawDiagram) -> Result<Self> {
        LinkDiagram::from_parts(raw.crossings, raw.edges, raw.loops, raw.roots)
    }
}

impl From<LinkDiagram> for RawDiagram {
    fn from(d: LinkDiagram) -> Self {
        d.raw
    }
}

#[inline]
fn dart(p: Port) -> usize {
    4 * p.0 as usize + p.1 as usize
}

impl LinkDiagram {
    pub fn from_parts(crossings: Vec<[u32; 4]>, edges: Vec<Edge>, loops: Vec<u8>, roots: Vec<(Port, u8)>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if edges.len() != 2 * crossings.len() {
            return bad(format!("{} crossings need {} edges, got {}", crossings.len(), 2 * crossings.len(), edges.len()));
        }
        if loops.iter().any(|&c| c > 1) {
            return bad("loop colors are 0 or 1".into());
        }
        let mut used = vec![0u8; edges.len()];
        for (x, c) in crossings.iter().enumerate() {
            for (k, &e) in c.iter().enumerate() {
                let Some(edge) = edges.get(e as usize) else {
                    return bad(format!("crossing {x} names missing edge {e}"));
                };
                let p = (x as u32, k as u8);
                if edge.tail != p && edge.head != p {
                    return bad(format!("edge {e} does not end at slot {k} of crossing {x}"));
                }
                used[e as usize] += 1;
            }
        }
        if let Some(e) = used.iter().position(|&u| u != 2) {
            return bad(format!("edge {e} is not attached at both ends"));
        }
        let mut raw = RawDiagram { crossings, edges, loops, roots };
        for x in 0..raw.crossings.len() as u32 {
            for k in 0..2u8 {
                let a = raw.edges[raw.crossings[x as usize][k as usize] as usize].head == (x, k);
                let b = raw.edges[raw.crossings[x as usize][k as usize + 2] as usize].head == (x, k + 2);
                if a == b {
                    return bad(format!("strand through crossing {x} is not consistently oriented"));
                }
            }
        }
        raw.roots.sort();
        raw.roots.dedup();
        for &(p, c) in &raw.roots {
            if p.0 as usize >= raw.crossings.len() || p.1 > 3 || c > 1 {
                return bad(format!("bad root {p:?}"));
            }
        }
        let mut d = LinkDiagram { raw, comp_of_edge: vec![], comp_edges: vec![], face_of_dart: vec![], face_color: vec![], piece_of_face: vec![] };
        d.trace_components();
        d.trace_faces()?;
        Ok(d)
    }

    fn trace_components(&mut self) {
        let n = self.raw.edges.len();
        self.comp_of_edge = vec![usize::MAX; n];
        for start in 0..n {
            if self.comp_of_edge[start] != usize::MAX {
                continue;
            }
            let id = self.comp_edges.len();
            let mut list = vec![];
            let mut e = start;
            while self.comp_of_edge[e] == usize::MAX {
                self.comp_of_edge[e] = id;
                list.push(e as u32);
                e = self.next_edge(e as u32) as usize;
            }
            self.comp_edges.push(list);
        }
    }

    /// The other end of the edge leaving `p`.
    fn across(&self, p: Port) -> Port {
        let e = &self.raw.edges[self.raw.crossings[p.0 as usize][p.1 as usize] as usize];
        if e.tail == p {
            e.head
        } else {
            e.tail
        }
    }

    fn trace_faces(&mut self) -> Result<()> {
        let nd = 4 * self.raw.crossings.len();
        self.face_of_dart = vec![u32::MAX; nd];
        let mut nfaces = 0u32;
        for s in 0..nd {
            if self.face_of_dart[s] != u32::MAX {
                continue;
            }
            let mut p: Port = ((s / 4) as u32, (s % 4) as u8);
            while self.face_of_dart[dart(p)] == u32::MAX {
                self.face_of_dart[dart(p)] = nfaces;
                let (y, j) = self.across(p);
                p = (y, (j + 3) % 4);
            }
            nfaces += 1;
        }
        // face adjacency across each edge
        let mut adj: Vec<Vec<u32>> = vec![vec![]; nfaces as usize];
        for e in &self.raw.edges {
            let (a, b) = (self.face_of_dart[dart(e.tail)], self.face_of_dart[dart(e.head)]);
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        let mut color = vec![u8::MAX; nfaces as usize];
        let mut piece_of_face = vec![usize::MAX; nfaces as usize];
        let mut seeds: Vec<(u32, u8, bool)> = self.raw.roots.iter().map(|&(p, c)| (self.face_of_dart[dart(p)], c, true)).collect();
        seeds.extend((0..nfaces).map(|f| (f, 0, false)));
        let mut piece_faces = vec![];
        for (f, c, is_root) in seeds {
            if color[f as usize] != u8::MAX {
                if is_root && color[f as usize] != c {
                    return Err(Error::InvalidDiagram("inconsistent roots".into()));
                }
                continue;
            }
            let piece = piece_faces.len();
            let mut stack = vec![f];
            color[f as usize] = c;
            piece_of_face[f as usize] = piece;
            let mut count = 0;
            while let Some(g) = stack.pop() {
                count += 1;
                for &h in &adj[g as usize] {
                    if color[h as usize] == u8::MAX {
                        color[h as usize] = 1 - color[g as usize];
                        piece_of_face[h as usize] = piece;
                        stack.push(h);
                    } else if color[h as usize] == color[g as usize] {
                        return Err(Error::InvalidDiagram("faces do not admit a checkerboard coloring".into()));
                    }
                }
            }
            piece_faces.push(count);
        }
        // each piece must be a sphere: F = V + 2
        let mut piece_crossings = vec![0usize; piece_faces.len()];
        for x in 0..self.raw.crossings.len() {
            piece_crossings[piece_of_face[self.face_of_dart[4 * x] as usize]] += 1;
        }
        if piece_faces.iter().zip(&piece_crossings).any(|(&f, &v)| f != v + 2) {
            return Err(Error::InvalidDiagram("diagram is not planar".into()));
        }
        self.piece_of_face = piece_of_face;
        self.face_color = color;
        Ok(())
    }

    pub fn num_crossings(&self) -> usize {
        self.raw.crossings.len()
    }

    pub fn num_edges(&self) -> usize {
        self.raw.edges.len()
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.raw.crossings
    }

    pub fn crossing(&self, x: usize) -> [u32; 4] {
        self.raw.crossings[x]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.raw.edges
    }

    pub fn edge(&self, e: u32) -> Edge {
        self.raw.edges[e as usize]
    }

    /// Left-face colors of the free loops.
    pub fn loops(&self) -> &[u8] {
        &self.raw.loops
    }

    pub fn roots(&self) -> &[(Port, u8)] {
        &self.raw.roots
    }

    pub fn num_loops(&self) -> usize {
        self.raw.loops.len()
    }

    /// Edge attached at slot `k` of crossing `x`.
    pub fn edge_at(&self, x: usize, k: u8) -> u32 {
        self.raw.crossings[x][k as usize]
    }

    /// Whether the strand at slot `k` of crossing `x` runs into the crossing.
    pub fn enters(&self, x: usize, k: u8) -> bool {
        self.raw.edges[self.edge_at(x, k) as usize].head == (x as u32, k)
    }

    /// The edge following `e` along the orientation.
    pub fn next_edge(&self, e: u32) -> u32 {
        let (y, j) = self.raw.edges[e as usize].head;
        self.raw.crossings[y as usize][((j + 2) % 4) as usize]
    }

    /// `+1` or `-1`.
    pub fn sign(&self, x: usize) -> i32 {
        if self.enters(x, 0) != self.enters(x, 1) {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i32 {
        (0..self.num_crossings()).map(|x| self.sign(x)).sum()
    }

    pub fn n_plus(&self) -> usize {
        (0..self.num_crossings()).filter(|&x| self.sign(x) > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        (0..self.num_crossings()).filter(|&x| self.sign(x) < 0).count()
    }

    /// The smoothing that follows the orientation: 0 at positive crossings, 1 at negative ones.
    pub fn oriented_smoothing(&self, x: usize) -> u8 {
        if self.sign(x) > 0 {
            0
        } else {
            1
        }
    }

    /// Components: those through crossings first (ordered by smallest edge), then free loops.
    pub fn num_components(&self) -> usize {
        self.comp_edges.len() + self.raw.loops.len()
    }

    pub fn edge_component(&self, e: u32) -> usize {
        self.comp_of_edge[e as usize]
    }

    pub fn loop_component(&self, i: usize) -> usize {
        self.comp_edges.len() + i
    }

    /// Edges of a component in orientation order (empty for a free loop).
    pub fn component_edges(&self, c: usize) -> &[u32] {
        self.comp_edges.get(c).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Components of the under and over strands at a crossing.
    pub fn crossing_components(&self, x: usize) -> (usize, usize) {
        (self.edge_component(self.edge_at(x, 0)), self.edge_component(self.edge_at(x, 1)))
    }

    /// Linking number between a sublink and its complement.
    pub fn linking_number(&self, part: &BTreeSet<usize>) -> Result<i32> {
        let n = self.num_components();
        if part.is_empty() || part.len() >= n || part.iter().any(|&c| c >= n) {
            return Err(Error::ImproperSubset);
        }
        let mut s = 0;
        for x in 0..self.num_crossings() {
            let (u, o) = self.crossing_components(x);
            if part.contains(&u) != part.contains(&o) {
                s += self.sign(x);
            }
        }
        debug_assert_eq!(s % 2, 0);
        Ok(s / 2)
    }

    /// Checkerboard color of the face on the left of dart `p` (leaving `p.0` through slot `p.1`).
    pub fn dart_color(&self, p: Port) -> u8 {
        self.face_color[self.face_of_dart[dart(p)] as usize]
    }

    /// Face id on the left of a dart.
    pub fn dart_face(&self, p: Port) -> u32 {
        self.face_of_dart[dart(p)]
    }

    /// Connected piece of the diagram containing a dart.
    pub(crate) fn dart_piece(&self, p: Port) -> usize {
        self.piece_of_face[self.face_of_dart[dart(p)] as usize]
    }

    pub fn num_faces(&self) -> usize {
        self.face_color.len()
    }

    /// Color of the face on the left of an edge, following its orientation.
    pub fn left_color(&self, e: u32) -> u8 {
        self.dart_color(self.raw.edges[e as usize].tail)
    }

    /// The same diagram with the given components reversed.
    pub fn reoriented(&self, flip: &BTreeSet<usize>) -> LinkDiagram {
        let mut raw = self.raw.clone();
        for (e, edge) in raw.edges.iter_mut().enumerate() {
            if flip.contains(&self.comp_of_edge[e]) {
                std::mem::swap(&mut edge.tail, &mut edge.head);
            }
        }
        for (i, c) in raw.loops.iter_mut().enumerate() {
            if flip.contains(&self.loop_component(i)) {
                *c = 1 - *c;
            }
        }
        LinkDiagram::from_parts(raw.crossings, raw.edges, raw.loops, raw.roots).expect("reorienting keeps validity")
    }

    /// Roots pinning the current coloring of every piece, so that derived diagrams
    /// keep the same planar picture.
    pub(crate) fn full_roots(&self) -> Vec<(Port, u8)> {
        let mut seen = BTreeSet::new();
        let mut roots = vec![];
        for x in 0..self.num_crossings() as u32 {
            if seen.insert(self.piece_of_face[self.face_of_dart[dart((x, 0))] as usize]) {
                roots.push(((x, 0), self.dart_color((x, 0))));
            }
        }
        roots
    }
}
