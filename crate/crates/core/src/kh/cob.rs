//! Crossingless tangles and dotted cobordisms between them.
//!
//! A tangle on `n` boundary positions is a perfect matching, stored as the partner of
//! each position. Between two tangles `A` and `B` on the same boundary, `A ∪ B̄` is a
//! union of circles ("cycles"); after neck cutting every cobordism `A -> B` is a sum of
//! disjoint disks, one per cycle, each with or without a dot. A morphism is therefore
//! a sparse vector indexed by bit masks over the cycles (bit set = dotted disk).

use std::collections::HashMap;
use std::hash::BuildHasherDefault;

use super::frobenius::{Elem, Frobenius};
use crate::field::PrimeField;

pub(crate) type Hasher = BuildHasherDefault<std::collections::hash_map::DefaultHasher>;
pub(crate) type Map<K, V> = HashMap<K, V, Hasher>;

pub(crate) type Matching = Box<[u16]>;

/// Sorted by mask, coefficients nonzero.
pub(crate) type Mor = Vec<(u64, u32)>;

pub(crate) const MAX_CYCLES: usize = 64;

/// Cycle id of every position in `a ∪ b̄`, numbered in order of first position.
pub(crate) fn cycles(a: &[u16], b: &[u16]) -> (Vec<u16>, usize) {
    let n = a.len();
    let mut id = vec![u16::MAX; n];
    let mut k = 0u16;
    for s in 0..n {
        if id[s] != u16::MAX {
            continue;
        }
        let mut p = s;
        loop {
            id[p] = k;
            let q = a[p] as usize;
            id[q] = k;
            p = b[q] as usize;
            if p == s {
                break;
            }
        }
        k += 1;
    }
    (id, k as usize)
}

pub(crate) fn add_into(f: PrimeField, acc: &mut Map<u64, u32>, m: u64, c: u32) {
    if c == 0 {
        return;
    }
    let e = acc.entry(m).or_insert(0);
    *e = f.add(*e, c);
    if *e == 0 {
        acc.remove(&m);
    }
}

pub(crate) fn finish(acc: Map<u64, u32>) -> Mor {
    let mut v: Mor = acc.into_iter().collect();
    v.sort_unstable();
    v
}

pub(crate) fn scale(f: PrimeField, m: &Mor, c: u32) -> Mor {
    if c == 0 {
        return vec![];
    }
    m.iter().map(|&(k, v)| (k, f.mul(v, c))).collect()
}

/// `a + b`
pub(crate) fn add(f: PrimeField, a: &Mor, b: &Mor) -> Mor {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            let c = f.add(a[i].1, b[j].1);
            if c != 0 {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A surface assembled from disks glued along intervals, with some boundary circles
/// kept as outputs and the rest to be capped.
#[derive(Clone, Debug)]
pub(crate) struct Surface {
    /// Component of each disk.
    pub comp: Vec<u16>,
    pub genus: Vec<u32>,
    /// Output boundary circles of each component.
    pub bounds: Vec<Vec<u16>>,
}

impl Surface {
    /// `outputs[j]` and `capped[j]` give a disk on each boundary circle.
    pub fn new(ndisks: usize, intervals: &[(usize, usize)], outputs: &[usize], capped: &[usize]) -> Surface {
        let mut p: Vec<usize> = (0..ndisks).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in intervals {
            let (ra, rb) = (find(&mut p, a), find(&mut p, b));
            p[ra.max(rb)] = ra.min(rb);
        }
        let mut cid = vec![u16::MAX; ndisks];
        let mut comp = vec![0u16; ndisks];
        let mut k = 0;
        for d in 0..ndisks {
            let r = find(&mut p, d);
            if cid[r] == u16::MAX {
                cid[r] = k;
                k += 1;
            }
            comp[d] = cid[r];
        }
        let k = k as usize;
        let mut chi = vec![0i64; k];
        for d in 0..ndisks {
            chi[comp[d] as usize] += 1;
        }
        for &(a, _) in intervals {
            chi[comp[a] as usize] -= 1;
        }
        let mut bounds = vec![vec![]; k];
        let mut nb = vec![0i64; k];
        for (j, &d) in outputs.iter().enumerate() {
            bounds[comp[d] as usize].push(j as u16);
            nb[comp[d] as usize] += 1;
        }
        for &d in capped {
            nb[comp[d] as usize] += 1;
        }
        let genus = (0..k)
            .map(|c| {
                let twice = 2 - chi[c] - nb[c];
                debug_assert!(twice >= 0 && twice % 2 == 0, "bad surface: chi {} b {}", chi[c], nb[c]);
                (twice / 2) as u32
            })
            .collect();
        Surface { comp, genus, bounds }
    }

    pub fn num_components(&self) -> usize {
        self.genus.len()
    }
}

/// The algebra together with a cache of expanded component values.
pub(crate) struct Algebra {
    pub frob: Frobenius,
    cache: Map<(u32, u32, usize), Vec<(u64, u32)>>,
}

impl Algebra {
    pub fn new(frob: Frobenius) -> Self {
        Algebra { frob, cache: Map::default() }
    }

    pub fn field(&self) -> PrimeField {
        self.frob.field
    }

    /// Value of a connected surface of genus `g` with `dots` dots and `b` boundary
    /// circles, as dotted disks on those circles.
    fn component(&mut self, dots: u32, g: u32, b: usize) -> &[(u64, u32)] {
        let frob = self.frob;
        self.cache.entry((dots, g, b)).or_insert_with(|| frob.expand(frob.decoration(dots, g), b))
    }

    /// Adds `coeff ·` (the surface with `dots[c]` dots on component `c`) to `acc`.
    pub fn eval(&mut self, s: &Surface, dots: &[u32], coeff: u32, acc: &mut Map<u64, u32>) {
        let f = self.field();
        let mut terms: Vec<(u64, u32)> = vec![(0, coeff)];
        for c in 0..s.num_components() {
            let bounds = &s.bounds[c];
            let vals = self.component(dots[c], s.genus[c], bounds.len()).to_vec();
            if vals.is_empty() {
                return;
            }
            if bounds.is_empty() {
                let v = vals[0].1;
                for t in terms.iter_mut() {
                    t.1 = f.mul(t.1, v);
                }
                continue;
            }
            let mut next = Vec::with_capacity(terms.len() * vals.len());
            for &(m, c0) in &terms {
                for &(lm, v) in &vals {
                    let mut out = m;
                    for (i, &j) in bounds.iter().enumerate() {
                        if lm >> i & 1 == 1 {
                            out |= 1 << j;
                        }
                    }
                    next.push((out, f.mul(c0, v)));
                }
            }
            terms = next;
        }
        for (m, c) in terms {
            add_into(f, acc, m, c);
        }
    }
}

/// Topology of the composite `A -> B -> C`.
pub(crate) struct Triple {
    n_ab: usize,
    surface: Surface,
}

impl Triple {
    pub fn new(a: &[u16], b: &[u16], c: &[u16]) -> Triple {
        let (cab, n_ab) = cycles(a, b);
        let (cbc, n_bc) = cycles(b, c);
        let (cac, n_ac) = cycles(a, c);
        let intervals: Vec<(usize, usize)> = (0..b.len())
            .filter(|&p| p < b[p] as usize)
            .map(|p| (cab[p] as usize, n_ab + cbc[p] as usize))
            .collect();
        let mut outputs = vec![usize::MAX; n_ac];
        for p in 0..a.len() {
            if outputs[cac[p] as usize] == usize::MAX {
                outputs[cac[p] as usize] = cab[p] as usize;
            }
        }
        Triple { n_ab, surface: Surface::new(n_ab + n_bc, &intervals, &outputs, &[]) }
    }

    /// `g ∘ f` for `f: A -> B` and `g: B -> C`.
    pub fn compose(&self, alg: &mut Algebra, f: &Mor, g: &Mor) -> Mor {
        let fld = alg.field();
        let mut acc = Map::default();
        let nc = self.surface.num_components();
        let mut dots = vec![0u32; nc];
        for &(m1, c1) in f {
            for &(m2, c2) in g {
                dots.iter_mut().for_each(|d| *d = 0);
                let mut m = m1;
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    dots[self.surface.comp[i] as usize] += 1;
                    m &= m - 1;
                }
                let mut m = m2;
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    dots[self.surface.comp[self.n_ab + i] as usize] += 1;
                    m &= m - 1;
                }
                alg.eval(&self.surface, &dots, fld.mul(c1, c2), &mut acc);
            }
        }
        finish(acc)
    }
}

/// Expansion of a product of cap elements: `(mask over caps, coefficient)`.
pub(crate) fn cap_terms(f: PrimeField, caps: &[Elem]) -> Vec<(u64, u32)> {
    let mut terms = vec![(0u64, 1u32)];
    for (i, e) in caps.iter().enumerate() {
        let mut next = vec![];
        for &(m, c) in &terms {
            if e.0 != 0 {
                next.push((m, f.mul(c, e.0)));
            }
            if e.1 != 0 {
                next.push((m | 1 << i, f.mul(c, e.1)));
            }
        }
        terms = next;
    }
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kh::Deformation;

    fn alg(d: Deformation) -> Algebra {
        Algebra::new(Frobenius::new(PrimeField::new(5).unwrap(), d).unwrap())
    }

    const S0: [u16; 4] = [1, 0, 3, 2];
    const S1: [u16; 4] = [3, 2, 1, 0];

    #[test]
    fn cycle_counts() {
        assert_eq!(cycles(&S0, &S0).1, 2);
        assert_eq!(cycles(&S0, &S1).1, 1);
    }

    #[test]
    fn identity_is_neutral() {
        let mut a = alg(Deformation::Lee);
        let t = Triple::new(&S0, &S0, &S1);
        let f: Mor = vec![(0, 1)];
        let g: Mor = vec![(0, 2), (1, 3)];
        assert_eq!(t.compose(&mut a, &f, &g), g);
        let t = Triple::new(&S0, &S1, &S1);
        assert_eq!(t.compose(&mut a, &g, &f), g);
    }

    #[test]
    fn saddle_twice_is_neck_cut_tube() {
        // S0 -> S1 -> S0 gives a tube joining the two arcs: 1⊗X + X⊗1 - h 1⊗1
        for d in [Deformation::Khovanov, Deformation::BarNatan] {
            let mut a = alg(d);
            let t = Triple::new(&S0, &S1, &S0);
            let r = t.compose(&mut a, &vec![(0, 1)], &vec![(0, 1)]);
            let h = a.frob.h;
            let mut expect: Mor = vec![(1, 1), (2, 1)];
            if h != 0 {
                expect.insert(0, (0, a.field().neg(h)));
            }
            assert_eq!(r, expect);
        }
    }
}
