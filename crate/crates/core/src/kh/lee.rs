use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::cube::{CubeComplex, CUBE_LIMIT};
use super::frobenius::{Deformation, Frobenius};
use super::scan::{scan, ElementSpec, ScanOptions};
use crate::chain::{bigraded_homology, filtration_level, homology_by_degree, BigradedDims, Complex, FiltrationLevel, SparseVec};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::link::LinkDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Scan,
    Cube,
}

#[derive(Clone, Debug)]
pub struct KhOptions {
    pub engine: Engine,
    /// Generator budget of the scanning engine.
    pub budget: usize,
    pub cube_limit: usize,
}

impl Default for KhOptions {
    fn default() -> Self {
        KhOptions { engine: Engine::Scan, budget: ScanOptions::default().budget, cube_limit: CUBE_LIMIT }
    }
}

/// Shifts an unnormalized complex of `d` to the usual gradings
/// `h - n₋` and `q + n₊ - 2n₋`.
pub fn normalize(c: &Complex, d: &LinkDiagram) -> Complex {
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    c.shifted(-nm, np - 2 * nm)
}

/// The complex of `d` in normalized gradings, together with the cycles described by `specs`.
pub fn complex_with(d: &LinkDiagram, frob: Frobenius, specs: &[ElementSpec], opts: &KhOptions) -> Result<(Complex, Vec<SparseVec>)> {
    match opts.engine {
        Engine::Scan => {
            let r = scan(d, frob, specs, &ScanOptions { marked: None, budget: opts.budget })?;
            Ok((normalize(&r.complex, d), r.elements))
        }
        Engine::Cube => {
            let c = CubeComplex::new(d, frob, opts.cube_limit)?;
            let els = specs.iter().map(|s| c.element(s)).collect::<Result<Vec<_>>>()?;
            Ok((c.complex().clone(), els))
        }
    }
}

/// Khovanov homology (undeformed) with bigraded dimensions.
pub fn khovanov_homology(d: &LinkDiagram, field: PrimeField, opts: &KhOptions) -> Result<BigradedDims> {
    let frob = Frobenius::new(field, Deformation::Khovanov)?;
    let (c, _) = complex_with(d, frob, &[], opts)?;
    bigraded_homology(&c)
}

/// Homology of a deformed complex per homological degree.
pub fn deformed_homology(d: &LinkDiagram, frob: Frobenius, opts: &KhOptions) -> Result<BTreeMap<i32, usize>> {
    let (c, _) = complex_with(d, frob, &[], opts)?;
    homology_by_degree(&c)
}

/// The Lee-type cycle of the orientation with components `flip` reversed, in the
/// normalized complex of `d` (whose own orientation fixes the gradings).
pub fn lee_generator(d: &LinkDiagram, frob: Frobenius, flip: &BTreeSet<usize>, opts: &KhOptions) -> Result<(Complex, SparseVec)> {
    let (c, mut els) = complex_with(d, frob, &[ElementSpec::reoriented(d, flip)], opts)?;
    Ok((c, els.pop().unwrap()))
}

/// Quantum filtration level of the class of the oriented generator.
pub fn generator_level(d: &LinkDiagram, frob: Frobenius, opts: &KhOptions) -> Result<i32> {
    let (c, x) = lee_generator(d, frob, &BTreeSet::new(), opts)?;
    match filtration_level(&c, &x)? {
        FiltrationLevel::Level(k) => Ok(k),
        FiltrationLevel::Null => Err(Error::Deformation("the oriented generator is a boundary".into())),
    }
}

/// A Lee-type generator `x_o` with its gradings in the normalized complex of `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeClass {
    /// Components of `d` reversed in `o`.
    pub orientation: BTreeSet<usize>,
    pub cycle: SparseVec,
    pub h: i32,
    /// Quantum filtration level of the class.
    pub level: i32,
}

pub fn lee_class(d: &LinkDiagram, frob: Frobenius, flip: &BTreeSet<usize>, opts: &KhOptions) -> Result<LeeClass> {
    let (c, x) = lee_generator(d, frob, flip, opts)?;
    let h = c.gen(x.first().ok_or(Error::NotACycle)?.0).h;
    let level = match filtration_level(&c, &x)? {
        FiltrationLevel::Level(k) => k,
        FiltrationLevel::Null => return Err(Error::Deformation("the generator is a boundary".into())),
    };
    Ok(LeeClass { orientation: flip.clone(), cycle: x, h, level })
}

/// Lee dimensions as predicted by the generators alone: the orientation `o` contributes
/// one dimension in degree `(w(d) - w(d, o))/2`.
pub fn orientation_census(d: &LinkDiagram) -> BTreeMap<i32, usize> {
    let n = d.num_components();
    let mut out = BTreeMap::new();
    for mask in 0..1usize << n {
        let flip: BTreeSet<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        *out.entry((d.writhe() - d.reoriented(&flip).writhe()) / 2).or_insert(0) += 1;
    }
    out
}

/// The s-invariant of an oriented link: one more than the filtration level of its
/// oriented generator.
pub fn s_invariant(d: &LinkDiagram, frob: Frobenius, opts: &KhOptions) -> Result<i32> {
    if !frob.is_deformed() {
        return Err(Error::Deformation(format!("{} has no Lee generators over F_{}", frob.deformation, frob.field.p())));
    }
    Ok(generator_level(d, frob, opts)? + 1)
}
