//! Finite (co)chain complexes of graded vector spaces over a prime field.
//!
//! A [`Complex`] is a flat list of basis generators, each carrying a homological
//! degree, a quantum degree and a layer tag, with a sparse differential that
//! raises the homological degree by one. The quantum degree is a grading when
//! every differential entry preserves it and a filtration when entries only
//! raise it.

mod dims;
pub mod linalg;
mod simplify;
mod homology;

pub use dims::BigradedDims;
pub use homology::{
    bigraded_homology, class_coordinates, filtration_level, homology_by_degree, induced_rank,
    is_boundary, FiltrationLevel,
};
pub use simplify::{simplify, simplify_with, EliminationRule, Simplified};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Sorted sparse vector: `(index, nonzero coefficient)`.
pub type SparseVec = Vec<(usize, u32)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gen {
    pub h: i32,
    pub q: i32,
    /// Free tag used to keep a mapping cone upper triangular during simplification.
    pub layer: u8,
}

#[derive(Clone, Debug)]
pub struct Complex {
    field: PrimeField,
    gens: Vec<Gen>,
    /// Outgoing entries of the differential, sorted by target.
    d: Vec<SparseVec>,
}

impl Complex {
    pub fn new(field: PrimeField) -> Self {
        Complex { field, gens: vec![], d: vec![] }
    }

    /// Builds a complex from generators and a list of `(source, target, coefficient)` entries.
    /// Entries with equal endpoints are summed.
    pub fn from_entries(field: PrimeField, gens: Vec<Gen>, entries: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self> {
        let mut rows: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); gens.len()];
        for (s, t, c) in entries {
            if s >= gens.len() || t >= gens.len() {
                return Err(Error::InvalidDiagram(format!("entry ({s}, {t}) out of range")));
            }
            if gens[t].h != gens[s].h + 1 {
                return Err(Error::NotAComplex(gens[s].h));
            }
            let e = rows[s].entry(t).or_insert(0);
            *e = field.add(*e, c % field.p());
        }
        let d = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|&(_, c)| c != 0).collect())
            .collect();
        Ok(Complex { field, gens, d })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> Gen {
        self.gens[i]
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.d
            .iter()
            .enumerate()
            .flat_map(|(s, r)| r.iter().map(move |&(t, c)| (s, t, c)))
    }

    pub fn num_entries(&self) -> usize {
        self.d.iter().map(|r| r.len()).sum()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut hs: Vec<i32> = self.gens.iter().map(|g| g.h).collect();
        hs.sort();
        hs.dedup();
        hs
    }

    pub fn indices_at(&self, h: i32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.gens[i].h == h).collect()
    }

    /// True when every entry preserves the quantum degree.
    pub fn is_graded(&self) -> bool {
        self.entries().all(|(s, t, _)| self.gens[s].q == self.gens[t].q)
    }

    /// True when no entry lowers the quantum degree.
    pub fn is_filtered(&self) -> bool {
        self.entries().all(|(s, t, _)| self.gens[s].q <= self.gens[t].q)
    }

    /// Applies the differential to a sparse vector.
    pub fn apply(&self, v: &[(usize, u32)]) -> SparseVec {
        let f = self.field;
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for &(i, c) in v {
            for &(j, e) in &self.d[i] {
                let x = acc.entry(j).or_insert(0);
                *x = f.add(*x, f.mul(c, e));
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Checks `d∘d = 0`, reporting the first offending source degree.
    pub fn check_d2(&self) -> Result<()> {
        for i in 0..self.len() {
            if !self.apply(&self.d[i]).is_empty() {
                return Err(Error::NotAComplex(self.gens[i].h));
            }
        }
        Ok(())
    }

    /// Shifts all homological and quantum degrees.
    pub fn shifted(&self, dh: i32, dq: i32) -> Complex {
        let mut c = self.clone();
        for g in &mut c.gens {
            g.h += dh;
            g.q += dq;
        }
        c
    }

    /// The subcomplex spanned by one layer, together with the index map into `self`.
    pub fn layer(&self, layer: u8) -> (Complex, Vec<usize>) {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.gens[i].layer == layer).collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let gens = keep.iter().map(|&i| self.gens[i]).collect();
        let d = keep
            .iter()
            .map(|&i| {
                self.d[i]
                    .iter()
                    .filter(|&&(j, _)| pos[j] != usize::MAX)
                    .map(|&(j, c)| (pos[j], c))
                    .collect()
            })
            .collect();
        (Complex { field: self.field, gens, d }, keep)
    }

    /// Tensor product with the complex of a crossingless unknot: two copies in q±1.
    pub fn tensor_unknot(&self) -> Complex {
        let n = self.len();
        let mut gens = Vec::with_capacity(2 * n);
        for g in &self.gens {
            gens.push(Gen { q: g.q + 1, ..*g });
        }
        for g in &self.gens {
            gens.push(Gen { q: g.q - 1, ..*g });
        }
        let mut d = self.d.clone();
        d.extend(self.d.iter().map(|r| r.iter().map(|&(j, c)| (j + n, c)).collect::<SparseVec>()));
        Complex { field: self.field, gens, d }
    }

    pub(crate) fn from_parts(field: PrimeField, gens: Vec<Gen>, d: Vec<SparseVec>) -> Self {
        Complex { field, gens, d }
    }
}
