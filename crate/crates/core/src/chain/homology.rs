use std::collections::BTreeMap;

use super::linalg::{solve, Mat};
use super::{simplify, BigradedDims, Complex, EliminationRule};
use crate::error::{Error, Result};

/// Bigraded homology of a complex whose differential preserves the quantum degree.
pub fn bigraded_homology(c: &Complex) -> Result<BigradedDims> {
    c.check_d2()?;
    if !c.is_graded() {
        return Err(Error::Deformation("complex is filtered, not graded".into()));
    }
    let s = simplify(c, EliminationRule::Any);
    debug_assert_eq!(s.complex.num_entries(), 0);
    let mut d = BigradedDims::new();
    for g in s.complex.gens() {
        d.add(g.h, g.q, 1);
    }
    Ok(d)
}

/// Homology dimensions per homological degree, ignoring quantum data.
pub fn homology_by_degree(c: &Complex) -> Result<BTreeMap<i32, usize>> {
    c.check_d2()?;
    let s = simplify(c, EliminationRule::Any);
    let mut m = BTreeMap::new();
    for g in s.complex.gens() {
        *m.entry(g.h).or_insert(0) += 1;
    }
    Ok(m)
}

/// Quantum filtration level of a homology class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationLevel {
    Level(i32),
    /// The cycle is a boundary.
    Null,
}

impl FiltrationLevel {
    pub fn level(self) -> Option<i32> {
        match self {
            FiltrationLevel::Level(k) => Some(k),
            FiltrationLevel::Null => None,
        }
    }
}

fn degree_of(c: &Complex, z: &[(usize, u32)]) -> Result<Option<i32>> {
    let mut h = None;
    for &(i, _) in z {
        let gh = c.gen(i).h;
        match h {
            None => h = Some(gh),
            Some(x) if x != gh => return Err(Error::NotACycle),
            _ => {}
        }
    }
    Ok(h)
}

/// Boundaries landing in degree `h`, as dense columns over `targets`.
fn boundary_columns(c: &Complex, h: i32, targets: &[usize]) -> Vec<Vec<u32>> {
    let mut pos = vec![usize::MAX; c.len()];
    for (k, &i) in targets.iter().enumerate() {
        pos[i] = k;
    }
    c.indices_at(h - 1)
        .into_iter()
        .map(|s| {
            let mut col = vec![0; targets.len()];
            for &(t, v) in c.row(s) {
                col[pos[t]] = v;
            }
            col
        })
        .collect()
}

fn dense(c: &Complex, z: &[(usize, u32)], targets: &[usize]) -> Vec<u32> {
    let mut v = vec![0; targets.len()];
    for &(i, x) in z {
        let k = targets.iter().position(|&t| t == i).expect("support outside degree");
        v[k] = x;
    }
    let _ = c;
    v
}

/// Whether the cycle `z` is a boundary.
pub fn is_boundary(c: &Complex, z: &[(usize, u32)]) -> Result<bool> {
    Ok(class_coordinates(c, z, &[])?.is_some())
}

/// Writes the class of `z` as a combination of the classes of `basis` (all of one degree):
/// returns `λ` with `z - Σ λ_i b_i` a boundary, or `None` if no such combination exists.
pub fn class_coordinates(c: &Complex, z: &[(usize, u32)], basis: &[Vec<(usize, u32)>]) -> Result<Option<Vec<u32>>> {
    if !c.apply(z).is_empty() {
        return Err(Error::NotACycle);
    }
    let mut h = degree_of(c, z)?;
    for b in basis {
        if let Some(bh) = degree_of(c, b)? {
            if h.is_some_and(|x| x != bh) {
                return Err(Error::NotACycle);
            }
            h = Some(bh);
        }
    }
    let Some(h) = h else { return Ok(Some(vec![0; basis.len()])) };
    let f = c.field();
    let targets = c.indices_at(h);
    let mut cols: Vec<Vec<u32>> = basis.iter().map(|b| dense(c, b, &targets)).collect();
    cols.extend(boundary_columns(c, h, &targets));
    let a = Mat::from_columns(targets.len(), &cols);
    let rhs = dense(c, z, &targets);
    Ok(solve(f, &a, &rhs).map(|x| x[..basis.len()].to_vec()))
}

/// The largest `k` such that `[z]` has a representative supported in quantum degrees `≥ k`.
pub fn filtration_level(c: &Complex, z: &[(usize, u32)]) -> Result<FiltrationLevel> {
    if !c.apply(z).is_empty() {
        return Err(Error::NotACycle);
    }
    let Some(h) = degree_of(c, z)? else { return Ok(FiltrationLevel::Null) };
    let f = c.field();
    let targets = c.indices_at(h);
    let bcols = boundary_columns(c, h, &targets);
    let zd = dense(c, z, &targets);

    let in_span = |keep: &dyn Fn(usize) -> bool| -> bool {
        let rows: Vec<usize> = (0..targets.len()).filter(|&k| keep(k)).collect();
        let cols: Vec<Vec<u32>> = bcols.iter().map(|col| rows.iter().map(|&r| col[r]).collect()).collect();
        let a = Mat::from_columns(rows.len(), &cols);
        let rhs: Vec<u32> = rows.iter().map(|&r| zd[r]).collect();
        solve(f, &a, &rhs).is_some()
    };

    if in_span(&|_| true) {
        return Ok(FiltrationLevel::Null);
    }
    let mut levels: Vec<i32> = targets.iter().map(|&i| c.gen(i).q).collect();
    levels.sort();
    levels.dedup();
    for &k in levels.iter().rev() {
        // z lies in F_k + B iff its part below k is a boundary part below k
        if in_span(&|r| c.gen(targets[r]).q < k) {
            return Ok(FiltrationLevel::Level(k));
        }
    }
    unreachable!("lowest level always admits a representative")
}

/// Rank of the map on homology `H^h(src) -> H^{h+1}(dst)` induced by the entries of a
/// two-layer mapping cone that go from layer `src` to layer `dst`.
pub fn induced_rank(cone: &Complex, src: u8, dst: u8, h: i32) -> usize {
    let f = cone.field();
    let s_idx: Vec<usize> = cone.indices_at(h).into_iter().filter(|&i| cone.gen(i).layer == src).collect();
    let t_idx: Vec<usize> = cone.indices_at(h + 1).into_iter().filter(|&i| cone.gen(i).layer == dst).collect();
    let s_next: Vec<usize> = cone.indices_at(h + 1).into_iter().filter(|&i| cone.gen(i).layer == src).collect();
    let t_prev: Vec<usize> = cone.indices_at(h).into_iter().filter(|&i| cone.gen(i).layer == dst).collect();
    let col_of = |i: usize, over: &[usize]| -> Vec<u32> {
        let mut col = vec![0; over.len()];
        for &(t, v) in cone.row(i) {
            if let Some(k) = over.iter().position(|&x| x == t) {
                col[k] = v;
            }
        }
        col
    };
    // cycles of the source layer
    let dsrc = Mat::from_columns(s_next.len(), &s_idx.iter().map(|&i| col_of(i, &s_next)).collect::<Vec<_>>());
    let cycles = dsrc.kernel(f);
    let cross = Mat::from_columns(t_idx.len(), &s_idx.iter().map(|&i| col_of(i, &t_idx)).collect::<Vec<_>>());
    let bounds: Vec<Vec<u32>> = t_prev.iter().map(|&i| col_of(i, &t_idx)).collect();
    let rb = Mat::from_columns(t_idx.len(), &bounds).rank(f);
    let mut all = bounds;
    all.extend(cycles.iter().map(|z| cross.mul_vec(f, z)));
    Mat::from_columns(t_idx.len(), &all).rank(f) - rb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Gen;
    use crate::field::PrimeField;

    fn g(h: i32, q: i32) -> Gen {
        Gen { h, q, layer: 0 }
    }

    #[test]
    fn empty_and_single() {
        let f = PrimeField::new(3).unwrap();
        let c = Complex::new(f);
        assert!(bigraded_homology(&c).unwrap().is_empty());
        let c = Complex::from_entries(f, vec![g(0, 1)], []).unwrap();
        assert_eq!(bigraded_homology(&c).unwrap(), BigradedDims::from(vec![(0, 1, 1)]));
    }

    #[test]
    fn detects_nonzero_square() {
        let f = PrimeField::new(3).unwrap();
        let c = Complex::from_entries(f, vec![g(0, 0), g(1, 0), g(2, 0)], [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(matches!(bigraded_homology(&c), Err(Error::NotAComplex(0))));
    }

    #[test]
    fn level_of_plain_generator() {
        let f = PrimeField::new(3).unwrap();
        let c = Complex::from_entries(f, vec![g(0, 5)], []).unwrap();
        assert_eq!(filtration_level(&c, &[(0, 1)]).unwrap(), FiltrationLevel::Level(5));
    }

    #[test]
    fn level_uses_best_representative() {
        // z = a (q=-1) is homologous to b (q=3) via the boundary of s.
        let f = PrimeField::new(3).unwrap();
        let c = Complex::from_entries(f, vec![g(-1, -1), g(0, -1), g(0, 3)], [(0, 1, 1), (0, 2, 1)]).unwrap();
        assert_eq!(filtration_level(&c, &[(1, 1)]).unwrap(), FiltrationLevel::Level(3));
        let b = c.apply(&[(0, 1)]);
        assert_eq!(filtration_level(&c, &b).unwrap(), FiltrationLevel::Null);
        assert!(matches!(filtration_level(&c, &[(0, 1)]), Err(Error::NotACycle)));
    }
}
