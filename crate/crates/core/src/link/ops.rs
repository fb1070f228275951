use std::collections::BTreeSet;

use super::diagram::{Edge, LinkDiagram, Port};
use crate::error::{Error, Result};

impl LinkDiagram {
    /// Every crossing switched; the planar picture is unchanged.
    pub fn mirror(&self) -> LinkDiagram {
        let rot = |p: Port| (p.0, (p.1 + 3) % 4);
        let crossings = self.crossings().iter().map(|c| [c[1], c[2], c[3], c[0]]).collect();
        let edges = self.edges().iter().map(|e| Edge { tail: rot(e.tail), head: rot(e.head) }).collect();
        let roots = self.full_roots().into_iter().map(|(p, c)| (rot(p), c)).collect();
        LinkDiagram::from_parts(crossings, edges, self.loops().to_vec(), roots).expect("mirror keeps validity")
    }

    /// Orientation of every component reversed.
    pub fn reverse_all(&self) -> LinkDiagram {
        self.reoriented(&(0..self.num_components()).collect())
    }

    /// Disjoint union with a counterclockwise unknot placed in the unbounded region.
    pub fn disjoint_union_unknot(&self) -> LinkDiagram {
        let mut loops = self.loops().to_vec();
        loops.push(1);
        LinkDiagram::from_parts(self.crossings().to_vec(), self.edges().to_vec(), loops, self.full_roots()).unwrap()
    }

    /// Disjoint union of two diagrams, side by side in the unbounded region.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let (nx, ne) = (self.num_crossings() as u32, self.num_edges() as u32);
        let shift = |p: Port| (p.0 + nx, p.1);
        let mut crossings = self.crossings().to_vec();
        crossings.extend(other.crossings().iter().map(|c| c.map(|e| e + ne)));
        let mut edges = self.edges().to_vec();
        edges.extend(other.edges().iter().map(|e| Edge { tail: shift(e.tail), head: shift(e.head) }));
        let mut loops = self.loops().to_vec();
        loops.extend_from_slice(other.loops());
        let mut roots = self.full_roots();
        roots.extend(other.full_roots().into_iter().map(|(p, c)| (shift(p), c)));
        LinkDiagram::from_parts(crossings, edges, loops, roots).unwrap()
    }

    /// Smoothing of one crossing. Strands that are forced head to head by an
    /// unoriented smoothing are reversed until the result is consistently oriented;
    /// each resulting component keeps the orientation of its lowest old edge.
    pub fn resolve_crossing(&self, c: usize, smoothing: u8) -> Result<Resolution> {
        if c >= self.num_crossings() {
            return Err(Error::OutOfRange(format!("no crossing {c}")));
        }
        let pair: [u8; 4] = if smoothing == 0 { [1, 0, 3, 2] } else { [3, 2, 1, 0] };
        let cu = c as u32;
        let new_x = |x: u32| if x > cu { x - 1 } else { x };
        let other = |p: Port| -> Port {
            let e = self.edge(self.edge_at(p.0 as usize, p.1));
            if e.tail == p {
                e.head
            } else {
                e.tail
            }
        };

        // walk from each slot of a surviving crossing through the smoothed crossing
        let mut edges: Vec<Edge> = vec![];
        let mut image: Vec<Option<EdgeImage>> = vec![None; self.num_edges()];
        let mut done = vec![false; 4 * self.num_crossings()];
        let idx = |p: Port| 4 * p.0 as usize + p.1 as usize;
        for x in 0..self.num_crossings() as u32 {
            if x == cu {
                continue;
            }
            for k in 0..4u8 {
                let start = (x, k);
                if done[idx(start)] {
                    continue;
                }
                let ne = edges.len() as u32;
                let mut p = start;
                let mut walked = vec![];
                let end = loop {
                    let e = self.edge_at(p.0 as usize, p.1);
                    walked.push((e, self.edge(e).tail == p));
                    done[idx(p)] = true;
                    let q = other(p);
                    done[idx(q)] = true;
                    if q.0 != cu {
                        break q;
                    }
                    p = (cu, pair[q.1 as usize]);
                };
                for &(e, fwd) in &walked {
                    image[e as usize] = Some(EdgeImage::Edge(ne, fwd == walked[0].1));
                }
                let (s, t) = ((new_x(start.0), start.1), (new_x(end.0), end.1));
                edges.push(if walked[0].1 { Edge { tail: s, head: t } } else { Edge { tail: t, head: s } });
            }
        }
        let mut loops = self.loops().to_vec();
        for k in 0..4u8 {
            if done[idx((cu, k))] {
                continue;
            }
            let li = loops.len();
            let e0 = self.edge_at(c, k);
            loops.push(self.left_color(e0));
            // orient the loop along e0
            let mut p = if self.edge(e0).tail == (cu, k) { (cu, k) } else { other((cu, k)) };
            loop {
                let e = self.edge_at(p.0 as usize, p.1);
                let forward = self.edge(e).tail == p;
                image[e as usize] = Some(EdgeImage::Loop(li, forward));
                done[idx(p)] = true;
                let q = other(p);
                done[idx(q)] = true;
                p = (cu, pair[q.1 as usize]);
                if done[idx(p)] {
                    break;
                }
            }
        }

        let crossings: Vec<[u32; 4]> = self
            .crossings()
            .iter()
            .enumerate()
            .filter(|&(x, _)| x != c)
            .map(|(x, _)| {
                let mut out = [0; 4];
                for k in 0..4u8 {
                    let p = (new_x(x as u32), k);
                    out[k as usize] = edges.iter().position(|e| e.tail == p || e.head == p).unwrap() as u32;
                }
                out
            })
            .collect();
        // an edge may start and end at the same port only if it is a loop through c;
        // those became free loops above, so every edge has two distinct ends here
        let mut flip = vec![false; edges.len()];
        reorient(&crossings, &mut edges, &mut flip);
        for im in image.iter_mut().flatten() {
            if let EdgeImage::Edge(ne, fwd) = im {
                if flip[*ne as usize] {
                    *fwd = !*fwd;
                }
            }
        }
        let roots = (0..self.num_crossings() as u32)
            .filter(|&x| x != cu)
            .map(|x| ((new_x(x), 0), self.dart_color((x, 0))))
            .collect();
        let diagram = LinkDiagram::from_parts(crossings, edges, loops, roots)?;
        Ok(Resolution { diagram, image: image.into_iter().map(|i| i.unwrap()).collect(), removed: c })
    }
}

/// Where an old edge went after smoothing a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeImage {
    /// New edge id, and whether the old edge's orientation agrees with it.
    Edge(u32, bool),
    /// New free loop (index among the result's loops), and whether orientations agree.
    Loop(usize, bool),
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub diagram: LinkDiagram,
    pub image: Vec<EdgeImage>,
    pub removed: usize,
}

impl Resolution {
    /// Crossing id in the resolved diagram.
    pub fn crossing_image(&self, x: usize) -> Option<usize> {
        match x.cmp(&self.removed) {
            std::cmp::Ordering::Less => Some(x),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(x - 1),
        }
    }

    /// Whether old edge `e` points the same way as its image once the components
    /// `flip` of the result are reversed.
    pub fn old_edge_agrees(&self, e: u32, flip: &BTreeSet<usize>) -> bool {
        match self.image[e as usize] {
            EdgeImage::Edge(ne, fwd) => fwd != flip.contains(&self.diagram.edge_component(ne)),
            EdgeImage::Loop(i, fwd) => fwd != flip.contains(&self.diagram.loop_component(i)),
        }
    }
}

/// Makes every strand consistently oriented, keeping the direction of the lowest edge
/// of each component. `flip[e]` records reversed edges.
pub(crate) fn reorient(crossings: &[[u32; 4]], edges: &mut [Edge], flip: &mut [bool]) {
    let n = edges.len();
    let mut seen = vec![false; n];
    let slot_edge = |p: Port| crossings[p.0 as usize][p.1 as usize];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut e = start as u32;
        while !seen[e as usize] {
            seen[e as usize] = true;
            let (y, j) = edges[e as usize].head;
            let q = (y, (j + 2) % 4);
            let next = slot_edge(q);
            if edges[next as usize].tail != q {
                let ed = &mut edges[next as usize];
                std::mem::swap(&mut ed.tail, &mut ed.head);
                flip[next as usize] = !flip[next as usize];
            }
            e = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::link::{braid_closure, BraidWord};

    fn closure(s: &str) -> crate::link::LinkDiagram {
        braid_closure(&s.parse::<BraidWord>().unwrap()).unwrap()
    }

    #[test]
    fn mirror_flips_writhe() {
        let d = closure("2: 1 1 1");
        assert_eq!(d.mirror().writhe(), -3);
        assert_eq!(d.reverse_all().writhe(), 3);
    }

    #[test]
    fn resolving_trefoil() {
        let d = closure("2: 1 1 1");
        // oriented smoothing of a positive crossing leaves the closure of σ1²
        let r = d.resolve_crossing(2, 0).unwrap();
        assert_eq!(r.diagram.num_components(), 2);
        assert_eq!(r.diagram.writhe(), 2);
        // the other smoothing leaves a one-component diagram with two kinks
        let r = d.resolve_crossing(2, 1).unwrap();
        assert_eq!(r.diagram.num_components(), 1);
        assert_eq!(r.diagram.num_crossings(), 2);
    }

    #[test]
    fn resolving_a_curl_frees_a_loop() {
        let d = closure("2: 1");
        let r = d.resolve_crossing(0, 0).unwrap();
        assert_eq!(r.diagram.num_crossings(), 0);
        assert_eq!(r.diagram.num_components(), 2);
        let r = d.resolve_crossing(0, 1).unwrap();
        assert_eq!(r.diagram.num_components(), 1);
    }

    #[test]
    fn union_with_unknot() {
        let d = closure("2: 1 1 1").disjoint_union_unknot();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.linking_number(&[1].into()).unwrap(), 0);
    }
}
