use super::braid::BraidWord;
use super::diagram::{Edge, LinkDiagram, Port};
use crate::error::{Error, Result};

/// Incremental construction of a diagram: crossings are created empty and edges are
/// added by joining an outgoing slot to an incoming one.
#[derive(Clone, Debug, Default)]
pub struct DiagramBuilder {
    slots: Vec<[Option<u32>; 4]>,
    edges: Vec<Edge>,
    loops: Vec<u8>,
    roots: Vec<(Port, u8)>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_crossing(&mut self) -> u32 {
        self.slots.push([None; 4]);
        (self.slots.len() - 1) as u32
    }

    /// Adds an edge oriented from `from` to `to` and returns its id.
    pub fn connect(&mut self, from: Port, to: Port) -> Result<u32> {
        let e = self.edges.len() as u32;
        for p in [from, to] {
            let slot = self
                .slots
                .get_mut(p.0 as usize)
                .and_then(|c| c.get_mut(p.1 as usize))
                .ok_or_else(|| Error::InvalidDiagram(format!("no slot {p:?}")))?;
            if slot.is_some() {
                return Err(Error::InvalidDiagram(format!("slot {p:?} used twice")));
            }
            *slot = Some(e);
        }
        self.edges.push(Edge { tail: from, head: to });
        Ok(e)
    }

    pub fn add_loop(&mut self, left_color: u8) {
        self.loops.push(left_color);
    }

    pub fn add_root(&mut self, p: Port, color: u8) {
        self.roots.push((p, color));
    }

    pub fn build(self) -> Result<LinkDiagram> {
        let crossings = self
            .slots
            .iter()
            .enumerate()
            .map(|(x, c)| {
                let mut out = [0; 4];
                for k in 0..4 {
                    out[k] = c[k].ok_or_else(|| Error::InvalidDiagram(format!("slot {k} of crossing {x} is open")))?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        LinkDiagram::from_parts(crossings, self.edges, self.loops, self.roots)
    }
}

/// A letter of a braid box: strands run north, positions are numbered from the west.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `σ_i^{±1}` (1-based `i`, sign gives the exponent).
    Sigma(i32),
    /// A band between positions `i` and `i+1` (1-based), drawn as a crossing whose
    /// 0-smoothing is either the two parallel strands or their surgery.
    Band { i: usize, zero_is_original: bool },
}

impl Letter {
    fn position(self) -> usize {
        match self {
            Letter::Sigma(i) => i.unsigned_abs() as usize - 1,
            Letter::Band { i, .. } => i - 1,
        }
    }

    /// Slots for `(west in, east in, west out, east out)`.
    fn slots(self) -> (u8, u8, u8, u8) {
        match self {
            // slots [SE, NE, NW, SW]
            Letter::Sigma(i) if i > 0 => (3, 0, 2, 1),
            Letter::Band { zero_is_original: true, .. } => (3, 0, 2, 1),
            // slots [SW, SE, NE, NW]
            Letter::Sigma(_) => (0, 1, 3, 2),
            // slots [NE, NW, SW, SE]
            Letter::Band { zero_is_original: false, .. } => (2, 3, 1, 0),
        }
    }
}

pub fn letters_of(word: &BraidWord) -> Vec<Letter> {
    word.letters().iter().map(|&l| Letter::Sigma(l)).collect()
}

/// Lays out a braid box. `open[p]` is the port feeding position `p` (or `None` while the
/// strand has not started); `first[p]` receives the first incoming slot on a strand that
/// had no feed. Returns the crossing of each letter.
fn braid_box(b: &mut DiagramBuilder, letters: &[Letter], open: &mut [Option<Port>], first: &mut [Option<Port>]) -> Result<Vec<u32>> {
    let mut ids = vec![];
    for &l in letters {
        let p = l.position();
        if p + 1 >= open.len() {
            return Err(Error::BraidIndex { index: p as i32 + 1, strands: open.len() });
        }
        let x = b.add_crossing();
        let (wi, ei, wo, eo) = l.slots();
        for (pos, slot_in, slot_out) in [(p, wi, wo), (p + 1, ei, eo)] {
            match open[pos] {
                Some(o) => {
                    b.connect(o, (x, slot_in))?;
                }
                None => first[pos] = Some((x, slot_in)),
            }
            open[pos] = Some((x, slot_out));
        }
        ids.push(x);
    }
    Ok(ids)
}

/// A diagram built from a braid-like description, with bookkeeping about its strands.
#[derive(Clone, Debug)]
pub struct BoxedDiagram {
    pub diagram: LinkDiagram,
    /// Crossing id of each letter of the distinguished word, in order.
    pub letter_crossings: Vec<u32>,
    /// Component of the strand at each box position.
    pub strand_component: Vec<usize>,
    /// Where the strand at each box position enters the box.
    pub strand_start: Vec<StrandStart>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrandStart {
    Edge(u32),
    /// A strand that meets no letter is a free loop.
    Loop(usize),
}

/// Closure of a braid box on `strands` strands, closing arcs running around the east side.
pub fn closure(strands: usize, letters: &[Letter]) -> Result<BoxedDiagram> {
    let mut b = DiagramBuilder::new();
    let mut open = vec![None; strands];
    let mut first = vec![None; strands];
    let ids = braid_box(&mut b, letters, &mut open, &mut first)?;
    let mut loop_of = vec![None; strands];
    let mut entry = vec![None; strands];
    for p in 0..strands {
        match (open[p], first[p]) {
            (Some(o), Some(i)) => {
                let e = b.connect(o, i)?;
                entry[p] = Some(e);
                // the closing arc at position p is nested inside p earlier arcs
                b.add_root(o, (p % 2) as u8);
            }
            _ => {
                loop_of[p] = Some(b.loops.len());
                b.add_loop((p % 2) as u8);
            }
        }
    }
    let diagram = b.build()?;
    let strand_start: Vec<StrandStart> = (0..strands)
        .map(|p| match (entry[p], loop_of[p]) {
            (Some(e), _) => StrandStart::Edge(e),
            (None, Some(i)) => StrandStart::Loop(i),
            _ => unreachable!(),
        })
        .collect();
    let strand_component = strand_start
        .iter()
        .map(|s| match *s {
            StrandStart::Edge(e) => diagram.edge_component(e),
            StrandStart::Loop(i) => diagram.loop_component(i),
        })
        .collect();
    Ok(BoxedDiagram { diagram, letter_crossings: ids, strand_component, strand_start })
}

pub fn braid_closure(word: &BraidWord) -> Result<LinkDiagram> {
    Ok(closure(word.strands(), &letters_of(word))?.diagram)
}

/// Blackboard `n`-strand cable of a knot diagram with `(framing - writhe)` full twists
/// followed by `pattern` inserted on the first edge. Letter crossings refer to `pattern`.
pub fn cable(knot: &LinkDiagram, n: usize, framing: i32, pattern: &[Letter]) -> Result<BoxedDiagram> {
    if knot.num_components() != 1 {
        return Err(Error::NotAKnot(knot.num_components()));
    }
    if n == 0 {
        return Err(Error::OutOfRange("a cable needs at least one strand".into()));
    }
    let twists = letters_of(&BraidWord::full_twist(n, framing - knot.writhe()));
    let mut word = twists.clone();
    word.extend_from_slice(pattern);
    if knot.num_crossings() == 0 {
        let mut c = closure(n, &word)?;
        c.letter_crossings.drain(..twists.len());
        return Ok(c);
    }

    let mut b = DiagramBuilder::new();
    // in_ports[x][slot] / out_ports[x][slot]: one port per copy, ordered from the left
    let mut in_ports = vec![vec![vec![]; 4]; knot.num_crossings()];
    let mut out_ports = vec![vec![vec![]; 4]; knot.num_crossings()];
    for x in 0..knot.num_crossings() {
        let s = if knot.enters(x, 0) { 0 } else { 2 };
        let (e_slot, n_slot, w_slot) = ((s + 1) % 4, (s + 2) % 4, (s + 3) % 4);
        let east = knot.enters(x, w_slot);
        let grid: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| b.add_crossing()).collect()).collect();
        // local slots: 0 south (under in), 1 east, 2 north, 3 west
        for j in 0..n {
            let rows: Vec<usize> = if east { (0..n).rev().collect() } else { (0..n).collect() };
            for w in rows.windows(2) {
                b.connect((grid[j][w[0]], 2), (grid[j][w[1]], 0))?;
            }
            in_ports[x][s as usize].push((grid[j][rows[0]], 0));
            out_ports[x][n_slot as usize].push((grid[j][rows[n - 1]], 2));
        }
        for k in 0..n {
            let cols: Vec<usize> = if east { (0..n).collect() } else { (0..n).rev().collect() };
            let (si, so) = if east { (3, 1) } else { (1, 3) };
            for w in cols.windows(2) {
                b.connect((grid[w[0]][k], so), (grid[w[1]][k], si))?;
            }
            let (ki, ko) = if east { (w_slot, e_slot) } else { (e_slot, w_slot) };
            in_ports[x][ki as usize].push((grid[cols[0]][k], si));
            out_ports[x][ko as usize].push((grid[cols[n - 1]][k], so));
        }
    }
    let mut ids = vec![];
    let mut feed = vec![];
    for (e, edge) in knot.edges().iter().enumerate() {
        let src = &out_ports[edge.tail.0 as usize][edge.tail.1 as usize];
        let dst = &in_ports[edge.head.0 as usize][edge.head.1 as usize];
        let mut open: Vec<Option<Port>> = src.iter().map(|&p| Some(p)).collect();
        if e == 0 {
            feed = src.clone();
            let mut first = vec![None; n];
            ids = braid_box(&mut b, &word, &mut open, &mut first)?;
        }
        for p in 0..n {
            b.connect(open[p].unwrap(), dst[p])?;
        }
    }
    let diagram = b.build()?;
    let strand_start: Vec<StrandStart> = feed.iter().map(|&(x, k)| StrandStart::Edge(diagram.edge_at(x as usize, k))).collect();
    let strand_component = strand_start
        .iter()
        .map(|s| match *s {
            StrandStart::Edge(e) => diagram.edge_component(e),
            StrandStart::Loop(i) => diagram.loop_component(i),
        })
        .collect();
    ids.drain(..twists.len());
    Ok(BoxedDiagram { diagram, letter_crossings: ids, strand_component, strand_start })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_closure() {
        let w: BraidWord = "2: 1 1 1".parse().unwrap();
        let d = braid_closure(&w).unwrap();
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.writhe(), 3);
        assert_eq!(d.num_faces(), 5);
    }

    #[test]
    fn identity_braid_is_unlink() {
        let d = braid_closure(&BraidWord::identity(3)).unwrap();
        assert_eq!(d.num_components(), 3);
        assert_eq!(d.loops(), &[0, 1, 0]);
    }

    #[test]
    fn hopf_linking() {
        let d = braid_closure(&"2: -1 -1".parse().unwrap()).unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.linking_number(&[0].into()).unwrap(), -1);
    }

    #[test]
    fn cable_of_trefoil() {
        let t = braid_closure(&"2: -1 -1 -1".parse().unwrap()).unwrap();
        let c = cable(&t, 3, 0, &[]).unwrap();
        assert_eq!(c.diagram.num_crossings(), 27 + 18);
        assert_eq!(c.diagram.num_components(), 3);
        // parallel copies with framing 0 are pairwise unlinked
        for s in 0..3 {
            assert_eq!(c.diagram.linking_number(&[c.strand_component[s]].into()).unwrap(), 0);
        }
        let c = cable(&t, 3, 1, &letters_of(&"3: 1 2".parse().unwrap())).unwrap();
        assert_eq!(c.diagram.num_crossings(), 27 + 24 + 2);
        assert_eq!(c.diagram.num_components(), 1);
        assert_eq!(c.letter_crossings.len(), 2);
    }
}
