//! The full cube of resolutions. Exponential in the number of crossings; used as an
//! independent check of the scanning engine on small diagrams.

use std::collections::BTreeSet;

use super::frobenius::{Elem, Frobenius};
use super::scan::ElementSpec;
use crate::chain::{Complex, Gen, SparseVec};
use crate::error::{Error, Result};
use crate::link::LinkDiagram;

pub const CUBE_LIMIT: usize = 14;

pub struct CubeComplex {
    diagram: LinkDiagram,
    frob: Frobenius,
    /// Circle of each edge, per state.
    circles: Vec<Vec<u32>>,
    ncircles: Vec<usize>,
    offset: Vec<usize>,
    complex: Complex,
}

fn find(p: &mut [u32], mut x: u32) -> u32 {
    while p[x as usize] != x {
        p[x as usize] = p[p[x as usize] as usize];
        x = p[x as usize];
    }
    x
}

/// Circle id of every edge in the resolution `state`, numbered by smallest edge,
/// followed by the free loops.
fn resolve(d: &LinkDiagram, state: u32) -> (Vec<u32>, usize) {
    let n = d.num_edges();
    let mut p: Vec<u32> = (0..n as u32).collect();
    for (x, c) in d.crossings().iter().enumerate() {
        let pairs = if state >> x & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
        for (i, j) in pairs {
            let (a, b) = (find(&mut p, c[i]), find(&mut p, c[j]));
            p[a.max(b) as usize] = a.min(b);
        }
    }
    let mut id = vec![u32::MAX; n];
    let mut ids = vec![0u32; n];
    let mut k = 0;
    for e in 0..n {
        let r = find(&mut p, e as u32) as usize;
        if id[r] == u32::MAX {
            id[r] = k;
            k += 1;
        }
        ids[e] = id[r];
    }
    (ids, k as usize + d.num_loops())
}

impl CubeComplex {
    pub fn new(d: &LinkDiagram, frob: Frobenius, limit: usize) -> Result<Self> {
        let n = d.num_crossings();
        if n > limit {
            return Err(Error::CubeLimit { crossings: n, limit });
        }
        let f = frob.field;
        let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
        let nstates = 1usize << n;
        let mut circles = vec![];
        let mut ncircles = vec![];
        let mut offset = vec![0];
        for s in 0..nstates as u32 {
            let (c, k) = resolve(d, s);
            circles.push(c);
            ncircles.push(k);
            offset.push(offset.last().unwrap() + (1usize << k));
        }
        let mut gens = vec![];
        for s in 0..nstates {
            let r = s.count_ones() as i32;
            for lab in 0..1u64 << ncircles[s] {
                let xs = lab.count_ones() as i32;
                let deg = ncircles[s] as i32 - 2 * xs;
                gens.push(Gen { h: r - nm, q: deg + r + np - 2 * nm, layer: 0 });
            }
        }
        let mut entries = vec![];
        let loops0 = |s: usize| ncircles[s] - d.num_loops();
        for s in 0..nstates {
            for x in 0..n {
                if s >> x & 1 == 1 {
                    continue;
                }
                let t = s | 1 << x;
                let sign = if (s & ((1 << x) - 1)).count_ones() % 2 == 0 { 1 } else { f.neg(1) };
                let c = d.crossing(x);
                let (cs, ct) = (&circles[s], &circles[t]);
                // where each circle of s goes in t (free loops keep their place)
                let mut cmap = vec![0; ncircles[s]];
                for e in 0..cs.len() {
                    cmap[cs[e] as usize] = ct[e] as usize;
                }
                for i in loops0(s)..ncircles[s] {
                    cmap[i] = i - loops0(s) + loops0(t);
                }
                let map_circle = |i: usize| cmap[i];
                let (a, b) = (cs[c[0] as usize] as usize, cs[c[2] as usize] as usize);
                for lab in 0..1u64 << ncircles[s] {
                    let mut base = 0u64;
                    for i in 0..ncircles[s] {
                        if i != a && i != b && lab >> i & 1 == 1 {
                            base |= 1 << map_circle(i);
                        }
                    }
                    let terms: Vec<(u64, u32)> = if a != b {
                        let m = map_circle(a);
                        let ea: Elem = if lab >> a & 1 == 1 { (0, 1) } else { (1, 0) };
                        let eb: Elem = if lab >> b & 1 == 1 { (0, 1) } else { (1, 0) };
                        let prod = frob.mul(ea, eb);
                        [(0u64, prod.0), (1u64 << m, prod.1)].into_iter().filter(|t| t.1 != 0).collect()
                    } else {
                        let c1 = ct[c[0] as usize] as usize;
                        let c2 = ct[c[1] as usize] as usize;
                        let ea: Elem = if lab >> a & 1 == 1 { (0, 1) } else { (1, 0) };
                        frob.expand(ea, 2)
                            .into_iter()
                            .map(|(m, v)| (((m & 1) << c1) | ((m >> 1 & 1) << c2), v))
                            .collect()
                    };
                    for (m, v) in terms {
                        entries.push((offset[s] + lab as usize, offset[t] + (base | m) as usize, f.mul(sign, v)));
                    }
                }
            }
        }
        let complex = Complex::from_entries(f, gens, entries)?;
        Ok(CubeComplex { diagram: d.clone(), frob, circles, ncircles, offset, complex })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    /// The Lee-type cycle of the orientation obtained by reversing the components `flip`.
    pub fn lee_generator(&self, flip: &BTreeSet<usize>) -> Result<SparseVec> {
        self.element(&ElementSpec::reoriented(&self.diagram, flip))
    }

    /// The chain described by `spec`: one resolution, circles labelled `a` or `b`.
    pub fn element(&self, spec: &ElementSpec) -> Result<SparseVec> {
        let labels = self.frob.labels()?;
        let d = &self.diagram;
        if spec.smoothing.len() != d.num_crossings() || spec.edge_label.len() != d.num_edges() || spec.loop_label.len() != d.num_loops() {
            return Err(Error::OutOfRange("element spec does not match the diagram".into()));
        }
        let state = spec.smoothing.iter().enumerate().fold(0usize, |s, (x, &b)| s | (b as usize) << x);
        let cs = &self.circles[state];
        let k = self.ncircles[state];
        let nl = d.num_loops();
        let mut elems: Vec<Option<Elem>> = vec![None; k];
        for e in 0..d.num_edges() {
            elems[cs[e] as usize].get_or_insert(labels[spec.edge_label[e] as usize]);
        }
        for (i, &c) in spec.loop_label.iter().enumerate() {
            elems[k - nl + i] = Some(labels[c as usize]);
        }
        let f = self.frob.field;
        let mut v: Vec<(u64, u32)> = vec![(0, 1)];
        for (i, e) in elems.iter().enumerate() {
            let e = e.unwrap();
            let mut next = vec![];
            for &(m, c) in &v {
                if e.0 != 0 {
                    next.push((m, f.mul(c, e.0)));
                }
                if e.1 != 0 {
                    next.push((m | 1 << i, f.mul(c, e.1)));
                }
            }
            v = next;
        }
        let mut out: SparseVec = v.into_iter().map(|(m, c)| (self.offset[state] + m as usize, c)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// The complex with each generator's layer set to its smoothing at crossing `x`.
    pub fn marked(&self, x: usize) -> Complex {
        let mut gens = self.complex.gens().to_vec();
        for s in 0..self.ncircles.len() {
            for i in self.offset[s]..self.offset[s + 1] {
                gens[i].layer = (s >> x & 1) as u8;
            }
        }
        Complex::from_entries(self.frob.field, gens, self.complex.entries()).expect("same entries")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{bigraded_homology, BigradedDims};
    use crate::field::PrimeField;
    use crate::kh::Deformation;
    use crate::link::{braid_closure, BraidWord};

    fn fr(d: Deformation) -> Frobenius {
        Frobenius::new(PrimeField::new(3).unwrap(), d).unwrap()
    }

    #[test]
    fn positive_trefoil() {
        let d = braid_closure(&"2: 1 1 1".parse::<BraidWord>().unwrap()).unwrap();
        let c = CubeComplex::new(&d, fr(Deformation::Khovanov), CUBE_LIMIT).unwrap();
        c.complex().check_d2().unwrap();
        let h = bigraded_homology(c.complex()).unwrap();
        assert_eq!(h, BigradedDims::from(vec![(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]));
    }

    #[test]
    fn lee_generator_is_cycle() {
        let d = braid_closure(&"3: 1 -2 1 -2".parse::<BraidWord>().unwrap()).unwrap();
        for def in [Deformation::Lee, Deformation::BarNatan] {
            let c = CubeComplex::new(&d, fr(def), CUBE_LIMIT).unwrap();
            c.complex().check_d2().unwrap();
            let z = c.lee_generator(&BTreeSet::new()).unwrap();
            assert!(!z.is_empty());
            assert!(c.complex().apply(&z).is_empty());
        }
    }

    #[test]
    fn limit() {
        let d = braid_closure(&BraidWord::new(2, vec![1; 16]).unwrap()).unwrap();
        assert!(matches!(CubeComplex::new(&d, fr(Deformation::Khovanov), CUBE_LIMIT), Err(Error::CubeLimit { .. })));
    }
}
