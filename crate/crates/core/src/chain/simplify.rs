use std::collections::{HashMap, HashSet};

use super::{Complex, Gen, SparseVec};

/// Which differential entries may be cancelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationRule {
    /// Only entries between generators of equal quantum degree (filtered homotopy type kept).
    Filtered,
    /// Same as `Filtered`, and never across layers (keeps a mapping cone triangular).
    FilteredLayered,
    /// Any nonzero entry (homology dimensions only).
    Any,
}

impl EliminationRule {
    fn allows(self, a: &Gen, b: &Gen) -> bool {
        match self {
            EliminationRule::Filtered => a.q == b.q,
            EliminationRule::FilteredLayered => a.q == b.q && a.layer == b.layer,
            EliminationRule::Any => true,
        }
    }
}

/// Result of a simplification: the smaller complex and where each old generator went.
pub struct Simplified {
    pub complex: Complex,
    /// `old index -> new index` for generators that survived.
    pub kept: Vec<Option<usize>>,
}

pub fn simplify(c: &Complex, rule: EliminationRule) -> Simplified {
    simplify_with(c, rule, &mut [])
}

/// Gaussian elimination of invertible entries, transporting `vectors` along the
/// projection onto the reduced complex. Vectors are re-indexed in place.
pub fn simplify_with(c: &Complex, rule: EliminationRule, vectors: &mut [SparseVec]) -> Simplified {
    let f = c.field();
    let n = c.len();
    let mut out: Vec<HashMap<usize, u32>> = (0..n).map(|i| c.row(i).iter().copied().collect()).collect();
    let mut inn: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    for (s, t, _) in c.entries() {
        inn[t].insert(s);
    }
    let mut alive = vec![true; n];
    let mut vecs: Vec<HashMap<usize, u32>> = vectors.iter().map(|v| v.iter().copied().collect()).collect();

    let mut progress = true;
    while progress {
        progress = false;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            // pick the pivot with the least fill-in
            let ga = c.gen(a);
            let best = out[a]
                .iter()
                .filter(|(&b, _)| rule.allows(&ga, &c.gen(b)))
                .map(|(&b, &v)| (inn[b].len() * out[a].len(), b, v))
                .min();
            let Some((_, b, v)) = best else { continue };
            let vinv = f.inv(v);

            let targets: Vec<(usize, u32)> = out[a].iter().filter(|(&w, _)| w != b).map(|(&w, &x)| (w, x)).collect();
            let sources: Vec<(usize, u32)> = inn[b]
                .iter()
                .filter(|&&z| z != a)
                .map(|&z| (z, out[z][&b]))
                .collect();

            for &(z, zb) in &sources {
                let k = f.neg(f.mul(zb, vinv));
                for &(w, aw) in &targets {
                    let e = out[z].entry(w).or_insert(0);
                    *e = f.add(*e, f.mul(k, aw));
                    if *e == 0 {
                        out[z].remove(&w);
                        inn[w].remove(&z);
                    } else {
                        inn[w].insert(z);
                    }
                }
            }
            for vec in vecs.iter_mut() {
                if let Some(&vb) = vec.get(&b) {
                    let k = f.neg(f.mul(vb, vinv));
                    for &(w, aw) in &targets {
                        let e = vec.entry(w).or_insert(0);
                        *e = f.add(*e, f.mul(k, aw));
                        if *e == 0 {
                            vec.remove(&w);
                        }
                    }
                }
                vec.remove(&a);
                vec.remove(&b);
            }
            for x in [a, b] {
                for (w, _) in std::mem::take(&mut out[x]) {
                    inn[w].remove(&x);
                }
                for z in std::mem::take(&mut inn[x]) {
                    out[z].remove(&x);
                }
                alive[x] = false;
            }
            progress = true;
        }
    }

    let mut kept = vec![None; n];
    let mut gens = vec![];
    for i in 0..n {
        if alive[i] {
            kept[i] = Some(gens.len());
            gens.push(c.gen(i));
        }
    }
    let d = (0..n)
        .filter(|&i| alive[i])
        .map(|i| {
            let mut r: SparseVec = out[i].iter().map(|(&j, &x)| (kept[j].unwrap(), x)).collect();
            r.sort_unstable();
            r
        })
        .collect();
    for (dst, src) in vectors.iter_mut().zip(vecs) {
        let mut v: SparseVec = src.into_iter().map(|(j, x)| (kept[j].expect("vector left the complex"), x)).collect();
        v.sort_unstable();
        *dst = v;
    }
    Simplified { complex: Complex::from_parts(f, gens, d), kept }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn g(h: i32, q: i32) -> Gen {
        Gen { h, q, layer: 0 }
    }

    #[test]
    fn zero_differential_unchanged() {
        let f = PrimeField::new(3).unwrap();
        let c = Complex::from_entries(f, vec![g(0, 1), g(1, 3)], []).unwrap();
        let s = simplify(&c, EliminationRule::Filtered);
        assert_eq!(s.complex.len(), 2);
    }

    #[test]
    fn identity_two_term_vanishes() {
        let f = PrimeField::new(3).unwrap();
        let c = Complex::from_entries(f, vec![g(0, 1), g(1, 1)], [(0, 1, 1)]).unwrap();
        let s = simplify(&c, EliminationRule::Filtered);
        assert!(s.complex.is_empty());
    }

    #[test]
    fn filtered_rule_keeps_degree_raising_entries() {
        let f = PrimeField::new(3).unwrap();
        let c = Complex::from_entries(f, vec![g(0, 1), g(1, 3)], [(0, 1, 2)]).unwrap();
        assert_eq!(simplify(&c, EliminationRule::Filtered).complex.len(), 2);
        assert_eq!(simplify(&c, EliminationRule::Any).complex.len(), 0);
    }

    #[test]
    fn vectors_follow_projection() {
        // a -> b (1), a -> w (1): the cycle b is homologous to -w.
        let f = PrimeField::new(5).unwrap();
        let c = Complex::from_entries(f, vec![g(0, 0), g(1, 0), g(1, 0)], [(0, 1, 1), (0, 2, 1)]).unwrap();
        let mut v = vec![vec![(1, 1)]];
        let s = simplify_with(&c, EliminationRule::Filtered, &mut v);
        assert_eq!(s.complex.len(), 1);
        assert_eq!(v[0], vec![(0, 4)]);
    }
}
