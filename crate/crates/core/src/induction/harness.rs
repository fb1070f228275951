//! Computes every entry of the induction and checks the statements and lemmas on it.
//!
//! Entries are computed independently (in parallel); the checks that relate an entry
//! to earlier ones run afterwards, in order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ind::{ind_entries, q_term, reorientation_shift, target, IndEntry, KnotInput, Renormalized};
use crate::chain::{bigraded_homology, homology_by_degree, BigradedDims};
use crate::cobordism::{MarkedCone, Sides, SkeinTriangle};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::kh::{deformed_homology, khovanov_homology, Deformation, Frobenius, KhOptions};
use crate::link::{d_braid, satellite, BoxedDiagram, Satellite, StrandStart};

#[derive(Clone, Debug)]
pub struct HarnessOptions {
    pub field: PrimeField,
    pub kh: KhOptions,
    /// Entries whose cable has more crossings are skipped.
    pub budget_crossings: usize,
    pub parallel: bool,
}

impl HarnessOptions {
    pub fn new(field: PrimeField) -> Self {
        HarnessOptions { field, kh: KhOptions::default(), budget_crossings: 60, parallel: true }
    }
}

/// `L_u` as a cable: the candidate, which of its components are reversed to match the
/// orientation of `L_u`, and the resulting renormalization shift of `L_u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub cable: Satellite,
    pub flip: BTreeSet<usize>,
    /// `gr_h` of the Lee generator of that orientation minus that of the standard one.
    pub delta: i32,
    pub shift: i32,
}

/// Identity relating the Lee generators of `L^J` and of the full twist cable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub strands: BTreeSet<usize>,
    /// `2 lk(L^J, L - L^J) + #Cr`
    pub lhs: i32,
    /// `2 lk(C^J, C - C^J)` with `C = K_{m,2m,2m}^f`
    pub cable: i32,
    /// `(f+1)((2m+1)² - (2m+1-2|J|)²)/2`
    pub closed_form: i32,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.cable && self.cable == self.closed_form
    }
}

/// The map `G: Kh̄^d(L_u) -> Kh̄^0(L)` when `a = 2m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GCheck {
    /// `dim Kh̄^d(L_u)` as seen in the crossing cone.
    pub source: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleStep {
    /// Whether `L -> L_o` merges two components.
    pub merge: bool,
    /// Input strands reversed in the Lee generator paired with `x_{L_u}`.
    pub strands: BTreeSet<usize>,
    pub identification: Option<Identification>,
    /// Whether the Lee generators are related by a nonzero multiple.
    pub generators_related: bool,
    /// `d` read off the Lee generators, renormalized.
    pub d_triangle: Option<i32>,
    /// `d` from `#Cr` and the framing.
    pub d_crossings: i32,
    pub cr: i32,
    pub identities: Vec<IdentityCheck>,
    pub g: Option<GCheck>,
    pub l_u: Option<Renormalized>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    Base,
    Isotopy { predecessor: IndEntry },
    Triangle(Box<TriangleStep>),
}

/// What was computed for one entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryData {
    pub entry: IndEntry,
    pub crossings: usize,
    /// Normalized Khovanov homology.
    pub kh: BigradedDims,
    pub renormalized: Renormalized,
    pub step: Step,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntryStatus {
    Verified,
    Failed(Vec<String>),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub entry: IndEntry,
    pub crossings: usize,
    pub status: EntryStatus,
    pub data: Option<EntryData>,
}

impl EntryReport {
    pub fn statement_a(&self) -> Option<bool> {
        self.data.as_ref().map(|d| d.renormalized.statement_a())
    }

    pub fn statement_b(&self) -> Option<bool> {
        self.data.as_ref().map(|d| d.renormalized.statement_b())
    }

    pub fn triangle(&self) -> Option<&TriangleStep> {
        match &self.data.as_ref()?.step {
            Step::Triangle(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionReport {
    pub knot: String,
    pub writhe: i32,
    pub prime: u32,
    pub max_m: usize,
    pub entries: Vec<EntryReport>,
}

impl InductionReport {
    pub fn verified(&self) -> usize {
        self.entries.iter().filter(|e| e.status == EntryStatus::Verified).count()
    }

    pub fn failed(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.status, EntryStatus::Failed(_))).count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.iter().filter(|e| matches!(e.status, EntryStatus::Skipped(_))).count()
    }
}

pub struct Harness {
    pub knot: KnotInput,
    pub opts: HarnessOptions,
    cables: Mutex<HashMap<Satellite, BigradedDims>>,
}

fn subsets_of(items: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    (0..1usize << items.len())
        .map(|m| (0..items.len()).filter(|k| m >> k & 1 == 1).flat_map(|k| items[k].iter().copied()).collect())
        .collect()
}

/// `2 lk` between the components hit by `strands` and the rest (0 if either side is empty).
fn twice_lk(b: &BoxedDiagram, strands: &BTreeSet<usize>) -> Result<i32> {
    let comps: BTreeSet<usize> = strands.iter().map(|&j| b.strand_component[j]).collect();
    if comps.is_empty() || comps.len() == b.diagram.num_components() {
        return Ok(0);
    }
    Ok(2 * b.diagram.linking_number(&comps)?)
}

impl Harness {
    pub fn new(knot: KnotInput, opts: HarnessOptions) -> Self {
        Harness { knot, opts, cables: Mutex::new(HashMap::new()) }
    }

    fn frob(&self, d: Deformation) -> Result<Frobenius> {
        Frobenius::new(self.opts.field, d)
    }

    pub fn cable(&self, s: &Satellite) -> Result<BoxedDiagram> {
        satellite(&self.knot.diagram, s)
    }

    /// Khovanov homology of a cable in its own orientation, cached.
    pub fn cable_homology(&self, s: &Satellite) -> Result<BigradedDims> {
        let mut base = s.clone();
        base.extra_unknot = false;
        let cached = self.cables.lock().unwrap().get(&base).cloned();
        let kh = match cached {
            Some(kh) => kh,
            None => {
                let kh = khovanov_homology(&self.cable(&base)?.diagram, self.opts.field, &self.opts.kh)?;
                self.cables.lock().unwrap().insert(base, kh.clone());
                kh
            }
        };
        Ok(if s.extra_unknot { kh.tensor_unknot() } else { kh })
    }

    /// Finds a cable with `m'` strands-parameter and framing `f` (possibly flipped, possibly
    /// with a split unknot) whose homology in some orientation equals `kh`.
    pub fn identify(&self, kh: &BigradedDims, components: usize, m: usize, f: i32) -> Result<Option<Identification>> {
        for a in 0..=2 * m {
            for i in 0..=2 * m {
                for flipped in [false, true] {
                    if flipped && m == 0 {
                        continue;
                    }
                    for extra_unknot in [false, true] {
                        let cand = Satellite { m, framing: f, a, i, flipped, extra_unknot };
                        if cand.crossing_count(&self.knot.diagram) > self.opts.budget_crossings {
                            continue;
                        }
                        let d = self.cable(&cand)?.diagram;
                        if d.num_components() != components {
                            continue;
                        }
                        let base = self.cable_homology(&cand)?;
                        for mask in 0..1usize << components {
                            let flip: BTreeSet<usize> = (0..components).filter(|k| mask >> k & 1 == 1).collect();
                            let (dh, dq) = reorientation_shift(&d, &flip);
                            if base.shifted(dh, dq) == *kh {
                                let delta = (d.writhe() - d.reoriented(&flip).writhe()) / 2;
                                return Ok(Some(Identification { cable: cand, flip, delta, shift: target(m) + delta }));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Everything computed for one entry, or the reason it was skipped.
    pub fn compute(&self, e: IndEntry) -> Result<std::result::Result<EntryData, String>> {
        let sat = e.satellite();
        let crossings = sat.crossing_count(&self.knot.diagram);
        if crossings > self.opts.budget_crossings {
            return Ok(Err(format!("{crossings} crossings over the budget of {}", self.opts.budget_crossings)));
        }
        let b = self.cable(&sat)?;
        let l = &b.diagram;
        let lee = self.frob(Deformation::Lee)?;
        let w = self.knot.writhe();
        if e.i == 0 {
            let kh = khovanov_homology(l, self.opts.field, &self.opts.kh)?;
            let lee_dims = deformed_homology(l, lee, &self.opts.kh)?;
            let step = match e.isotopic_predecessor(w) {
                Some(p) => Step::Isotopy { predecessor: p },
                None => Step::Base,
            };
            let renormalized = Renormalized::new(&kh, &lee_dims, target(e.m));
            return Ok(Ok(EntryData { entry: e, crossings, kh, renormalized, step }));
        }
        let step = self.triangle_step(e, &b)?;
        let (kh, lee_dims) = step.1;
        let renormalized = Renormalized::new(&kh, &lee_dims, target(e.m));
        Ok(Ok(EntryData { entry: e, crossings, kh, renormalized, step: Step::Triangle(Box::new(step.0)) }))
    }

    /// Strands (box positions) of `b` lying on the given components of side `s` of the cone.
    fn strands_of(b: &BoxedDiagram, sides: &Sides, s: u8, comps: &BTreeSet<usize>) -> BTreeSet<usize> {
        let res = &sides.res[s as usize];
        (0..b.strand_start.len())
            .filter(|&j| {
                let c = match b.strand_start[j] {
                    StrandStart::Edge(e) => match res.image[e as usize] {
                        crate::link::EdgeImage::Edge(ne, _) => res.diagram.edge_component(ne),
                        crate::link::EdgeImage::Loop(i, _) => res.diagram.loop_component(i),
                    },
                    StrandStart::Loop(i) => res.diagram.loop_component(i),
                };
                comps.contains(&c)
            })
            .collect()
    }

    fn triangle_step(&self, e: IndEntry, b: &BoxedDiagram) -> Result<(TriangleStep, (BigradedDims, BTreeMap<i32, usize>))> {
        let (kh_frob, lee) = (self.frob(Deformation::Khovanov)?, self.frob(Deformation::Lee)?);
        let l = &b.diagram;
        let c = *b.letter_crossings.last().expect("i >= 1") as usize;
        let sides = Sides::new(l, c)?;
        let o = l.oriented_smoothing(c);
        let u = 1 - o;
        let merge = l.crossing_components(c).0 != l.crossing_components(c).1;
        let o_flip = sides.agreeing(o).expect("oriented smoothing");
        // (J as strands, o_u), smaller J first
        let mut choices: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = sides
            .unoriented_orientations()
            .into_iter()
            .map(|(j, ou)| {
                let strands: BTreeSet<usize> = if merge {
                    (0..b.strand_component.len()).filter(|&k| j.contains(&b.strand_component[k])).collect()
                } else {
                    let comps: BTreeSet<usize> = j.symmetric_difference(&o_flip).copied().collect();
                    let flipped_now: BTreeSet<usize> = Self::strands_of(b, &sides, o, &comps);
                    // strands whose orientation differs from L
                    let base: BTreeSet<usize> = Self::strands_of(b, &sides, o, &o_flip);
                    flipped_now.symmetric_difference(&base).copied().collect()
                };
                (strands, ou)
            })
            .filter(|(s, _)| s.len() <= e.m)
            .collect();
        choices.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
        if choices.is_empty() {
            return Err(Error::OutOfRange(format!("no band-compatible orientation of L_u at {e}")));
        }
        let lu_base = &sides.res[u as usize].diagram;
        let kh_u_base = khovanov_homology(lu_base, self.opts.field, &self.opts.kh)?;
        let mut pick = (choices[0].clone(), None);
        for (strands, ou) in &choices {
            let (dh, dq) = reorientation_shift(lu_base, ou);
            let ident = self.identify(&kh_u_base.shifted(dh, dq), lu_base.num_components(), e.m - strands.len(), e.f)?;
            if ident.is_some() {
                pick = ((strands.clone(), ou.clone()), ident);
                break;
            }
        }
        let ((strands, o_u), identification) = pick;
        info!("{e}: J = {strands:?}, L_u = {:?}", identification.as_ref().map(|i| i.cable.to_string()));

        let tri = SkeinTriangle::new(l, c, lee, Some(o_u.clone()), &self.opts.kh)?;
        let gen = tri.generator_degree()?;
        let lee_dims = homology_by_degree(&tri.cone.normalized(&BTreeSet::new()))?;
        let kh_cone = MarkedCone::new(l, c, kh_frob, &[], &self.opts.kh)?;
        let kh = bigraded_homology(&kh_cone.normalized(&BTreeSet::new()))?;

        // #Cr against the full twist
        let i_prev = if merge { e.i } else { e.i - 1 };
        let full = d_braid(e.m, 2 * e.m, 2 * e.m, false)?;
        let ours = d_braid(e.m, e.a, i_prev, false)?;
        let cr = full.count_inter_crossings(&strands)? as i32 - ours.count_inter_crossings(&strands)? as i32;
        let q = q_term(e.m, strands.len());
        let d_crossings = cr - e.f * q / 2 - if merge { 0 } else { 1 };

        // identity over every sublink of the closure
        let cbox = self.cable(&Satellite::new(e.m, e.f, 2 * e.m, 2 * e.m))?;
        let word = d_braid(e.m, e.a, e.i, false)?;
        let mut identities = vec![];
        for js in subsets_of(&word.closure_orbits()) {
            let cr_j = full.count_inter_crossings(&js)? as i32 - word.count_inter_crossings(&js)? as i32;
            identities.push(IdentityCheck {
                lhs: twice_lk(b, &js)? + cr_j,
                cable: twice_lk(&cbox, &js)?,
                closed_form: (e.f + 1) * q_term(e.m, js.len()) / 2,
                strands: js,
            });
        }

        let mut l_u = None;
        let mut g = None;
        let mut d_triangle = None;
        if let Some(id) = &identification {
            let d = gen.degree + id.shift - target(e.m);
            d_triangle = Some(d);
            let ou_diag = lu_base.reoriented(&o_u);
            let (dh, dq) = reorientation_shift(lu_base, &o_u);
            let lee_u = deformed_homology(&ou_diag, lee, &self.opts.kh)?;
            l_u = Some(Renormalized::new(&kh_u_base.shifted(dh, dq), &lee_u, id.shift));
            // G out of Kh̄^d(L_u) into Kh̄^0(L), through the unnormalized cone degree
            let raw = -target(e.m) + l.n_minus() as i32;
            let layer = homology_by_degree(&kh_cone.complex.layer(u).0)?;
            let source = layer.get(&raw).copied().unwrap_or(0);
            let rank = source - kh_cone.connecting_rank(raw - 1).min(source);
            g = Some(GCheck { source, rank });
        }
        let step = TriangleStep {
            merge,
            strands,
            identification,
            generators_related: gen.coefficient.is_some(),
            d_triangle,
            d_crossings,
            cr,
            identities,
            g,
            l_u,
        };
        Ok((step, (kh, lee_dims)))
    }

    /// Computes and checks all entries with `m <= max_m`.
    pub fn run(&self, max_m: usize) -> Result<InductionReport> {
        let entries = ind_entries(self.knot.writhe(), max_m);
        let computed: Vec<Result<std::result::Result<EntryData, String>>> = if self.opts.parallel {
            entries.par_iter().map(|&e| self.compute(e)).collect()
        } else {
            entries.iter().map(|&e| self.compute(e)).collect()
        };
        let mut data: BTreeMap<IndEntry, std::result::Result<EntryData, String>> = BTreeMap::new();
        for (e, r) in entries.iter().zip(computed) {
            data.insert(*e, r?);
        }
        let mut reports = vec![];
        for e in &entries {
            let crossings = e.satellite().crossing_count(&self.knot.diagram);
            let report = match &data[e] {
                Err(why) => EntryReport { entry: *e, crossings, status: EntryStatus::Skipped(why.clone()), data: None },
                Ok(d) => {
                    let problems = self.check(d, &data);
                    let status = if problems.is_empty() { EntryStatus::Verified } else { EntryStatus::Failed(problems) };
                    EntryReport { entry: *e, crossings, status, data: Some(d.clone()) }
                }
            };
            reports.push(report);
        }
        Ok(InductionReport { knot: self.knot.name.clone(), writhe: self.knot.writhe(), prime: self.opts.field.p(), max_m, entries: reports })
    }

    fn check(&self, d: &EntryData, all: &BTreeMap<IndEntry, std::result::Result<EntryData, String>>) -> Vec<String> {
        let e = d.entry;
        let r = &d.renormalized;
        let mut bad = vec![];
        if !r.statement_a() {
            bad.push(format!("statement A fails: {:?}", r.kh.by_h()));
        }
        if !r.statement_b() {
            bad.push(format!("statement B fails: Kh {} vs Lee {}", r.kh_at(0), r.lee_at(0)));
        }
        match &d.step {
            Step::Base => {}
            Step::Isotopy { predecessor } => match all.get(predecessor) {
                Some(Ok(p)) if p.kh == d.kh => {}
                Some(Ok(_)) => bad.push(format!("homology differs from the isotopic entry {predecessor}")),
                _ => bad.push(format!("isotopic entry {predecessor} was not computed")),
            },
            Step::Triangle(t) => {
                let Some(id) = &t.identification else {
                    bad.push("unoriented resolution not identified with a smaller cable".into());
                    return bad;
                };
                if id.cable.m + t.strands.len() != e.m {
                    bad.push(format!("|J| = {} but m' = {}", t.strands.len(), id.cable.m));
                }
                if !t.generators_related {
                    bad.push("Lee generators are not related by a nonzero multiple".into());
                }
                let dd = t.d_triangle.unwrap_or(i32::MIN);
                if dd != t.d_crossings {
                    bad.push(format!("d = {dd} from the triangle but {} from #Cr", t.d_crossings));
                }
                if dd < 0 || (e.a < 2 * e.m && dd < 1) {
                    bad.push(format!("d = {dd} with a = {}, m = {}", e.a, e.m));
                }
                if !t.merge && t.cr < 1 {
                    bad.push("#Cr = 0 in the split case".into());
                }
                let q = q_term(e.m, t.strands.len());
                if (e.f + 1) * q / 2 > q / 2 {
                    bad.push("inequality (f+1)Q/2 <= Q/2 fails".into());
                }
                for ic in t.identities.iter().filter(|ic| !ic.holds()) {
                    bad.push(format!("identity fails for J = {:?}: {} / {} / {}", ic.strands, ic.lhs, ic.cable, ic.closed_form));
                }
                let lu = t.l_u.as_ref().expect("identified");
                if !lu.statement_a() || !lu.statement_b() {
                    bad.push("statements fail for L_u".into());
                }
                let lo_entry = IndEntry::new(e.f, e.m, e.a, e.i - 1);
                let lo = match all.get(&lo_entry) {
                    Some(Ok(lo)) => &lo.renormalized,
                    _ => {
                        bad.push(format!("oriented resolution {lo_entry} was not computed"));
                        return bad;
                    }
                };
                let g = t.g.as_ref().expect("identified");
                if g.source != lu.kh_at(dd) {
                    bad.push(format!("cone sees dim {} for Kh̄^d(L_u), direct computation {}", g.source, lu.kh_at(dd)));
                }
                if e.a == 2 * e.m {
                    let chain = [
                        r.lee_at(0),
                        r.kh_at(0),
                        lu.kh_at(dd) + lo.kh_at(0) - (g.source - g.rank),
                        lu.kh_at(dd) + lo.kh_at(0),
                        lu.lee_at(dd) + lo.lee_at(0),
                        r.lee_at(0),
                    ];
                    if chain.windows(2).any(|w| w[0] != w[1]) {
                        bad.push(format!("equality chain breaks: {chain:?}"));
                    }
                    if g.rank != g.source {
                        bad.push(format!("G is not injective: rank {} on dim {}", g.rank, g.source));
                    }
                }
            }
        }
        bad
    }
}
