//! Tangle scanning: the complex is built one crossing at a time as a complex over
//! crossingless tangles, delooping closed circles and cancelling isomorphisms as soon
//! as they appear, so the size tracks the current boundary instead of the whole cube.

use std::collections::BTreeSet;

use log::debug;

use super::cob::{add, cap_terms, cycles, finish, scale, Algebra, Map, Matching, Mor, Surface, Triple, MAX_CYCLES};
use super::frobenius::{Elem, Frobenius};
use crate::chain::{Complex, Gen, SparseVec};
use crate::error::{Error, Result};
use crate::link::LinkDiagram;

/// Which resolution and labels make up a tracked cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSpec {
    /// Smoothing (0 or 1) at every crossing.
    pub smoothing: Vec<u8>,
    /// Label of every edge: 0 for `a = X - u`, 1 for `b = X - v`.
    pub edge_label: Vec<u8>,
    /// Label of every free loop.
    pub loop_label: Vec<u8>,
}

impl ElementSpec {
    /// The Lee-type generator of the diagram's own orientation: oriented resolution,
    /// each circle labelled by the colour of the region on its left.
    pub fn oriented(d: &LinkDiagram) -> Self {
        ElementSpec {
            smoothing: (0..d.num_crossings()).map(|x| d.oriented_smoothing(x)).collect(),
            edge_label: (0..d.num_edges() as u32).map(|e| d.left_color(e)).collect(),
            loop_label: d.loops().to_vec(),
        }
    }

    /// Same for the orientation obtained by reversing the components in `flip`.
    pub fn reoriented(d: &LinkDiagram, flip: &BTreeSet<usize>) -> Self {
        Self::oriented(&d.reoriented(flip))
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Crossing whose smoothing is recorded as the layer of each generator.
    pub marked: Option<usize>,
    /// Generator budget; exceeding it aborts with [`Error::MemoryBudget`].
    pub budget: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { marked: None, budget: 2_000_000 }
    }
}

/// The complex in unnormalized gradings: `h` counts 1-smoothings and `q` is the
/// algebra degree plus `h`.
#[derive(Clone, Debug)]
pub struct ScanResult {
    pub complex: Complex,
    pub elements: Vec<SparseVec>,
    pub max_boundary: usize,
    pub max_gens: usize,
}

#[derive(Clone, Copy, Debug)]
struct TGen {
    obj: u32,
    h: i32,
    q: i32,
    layer: u8,
}

#[derive(Default)]
struct Objs {
    list: Vec<Matching>,
    index: Map<Matching, u32>,
}

impl Objs {
    fn intern(&mut self, m: Matching) -> u32 {
        if let Some(&i) = self.index.get(&m) {
            return i;
        }
        let i = self.list.len() as u32;
        self.list.push(m.clone());
        self.index.insert(m, i);
        i
    }
}

struct TElem {
    src: u32,
    entries: Map<usize, Mor>,
}

struct State {
    boundary: Vec<u32>,
    objs: Objs,
    gens: Vec<TGen>,
    out: Vec<Map<usize, Mor>>,
    inn: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    elems: Vec<TElem>,
}

const LOCAL: [[u16; 4]; 2] = [[1, 0, 3, 2], [3, 2, 1, 0]];

struct Glued {
    obj: u32,
    /// A combined position on each closed loop.
    loops: Vec<usize>,
}

struct GlueTopo {
    surface: Surface,
    n_ab: usize,
    src_caps: Vec<u16>,
    tgt_caps: Vec<u16>,
}

/// Everything about attaching one crossing to the current boundary.
struct Step {
    np: usize,
    /// Partner of each combined position across a join.
    join: Vec<Option<usize>>,
    /// New position of each combined position that stays on the boundary.
    newpos: Vec<Option<u16>>,
    /// Edge through each combined position.
    edge: Vec<u32>,
    joins: Vec<(usize, usize)>,
    new_boundary: Vec<u32>,
}

impl Step {
    fn new(d: &LinkDiagram, x: usize, boundary: &[u32]) -> Step {
        let np = boundary.len();
        let mut join = vec![None; np + 4];
        let mut joins = vec![];
        let mut edge: Vec<u32> = boundary.to_vec();
        let c = d.crossing(x);
        edge.extend_from_slice(&c);
        for k in 0..4 {
            let e = c[k];
            if let Some(k2) = (0..4).find(|&k2| k2 != k && c[k2] == e) {
                if k < k2 {
                    joins.push((np + k, np + k2));
                }
            } else if let Ok(p) = boundary.binary_search(&e) {
                joins.push((p, np + k));
            }
        }
        for &(i, j) in &joins {
            join[i] = Some(j);
            join[j] = Some(i);
        }
        let mut kept: Vec<(u32, usize)> = (0..np + 4).filter(|&i| join[i].is_none()).map(|i| (edge[i], i)).collect();
        kept.sort_unstable();
        let mut newpos = vec![None; np + 4];
        for (k, &(_, i)) in kept.iter().enumerate() {
            newpos[i] = Some(k as u16);
        }
        let new_boundary = kept.iter().map(|&(e, _)| e).collect();
        Step { np, join, newpos, edge, joins, new_boundary }
    }

    fn partner(&self, a: &[u16], s: u8, i: usize) -> usize {
        if i < self.np {
            a[i] as usize
        } else {
            self.np + LOCAL[s as usize][i - self.np] as usize
        }
    }

    fn glue(&self, a: &[u16], s: u8, objs: &mut Objs) -> Glued {
        let n = self.new_boundary.len();
        let mut m = vec![0u16; n];
        let mut seen = vec![false; self.np + 4];
        for i in 0..self.np + 4 {
            let Some(r) = self.newpos[i] else { continue };
            let mut cur = i;
            let end = loop {
                seen[cur] = true;
                let o = self.partner(a, s, cur);
                seen[o] = true;
                match self.join[o] {
                    Some(j) => cur = j,
                    None => break o,
                }
            };
            m[r as usize] = self.newpos[end].unwrap();
        }
        let mut loops = vec![];
        for i in 0..self.np + 4 {
            if seen[i] || self.join[i].is_none() {
                continue;
            }
            loops.push(i);
            let mut cur = i;
            loop {
                seen[cur] = true;
                let o = self.partner(a, s, cur);
                seen[o] = true;
                cur = self.join[o].unwrap();
                if cur == i {
                    break;
                }
            }
        }
        Glued { obj: objs.intern(m.into_boxed_slice()), loops }
    }

    /// Surface of `f ⊔ g` for `f: A -> B` on the old boundary and the local identity or
    /// saddle `σ_s -> σ_t`, with the closed loops of both ends to be capped.
    fn topo(&self, a: &[u16], b: &[u16], s: u8, t: u8, ga: &Glued, gb: &Glued, objs: &Objs) -> GlueTopo {
        let (cab, n_ab) = cycles(a, b);
        let (cst, n_st) = cycles(&LOCAL[s as usize], &LOCAL[t as usize]);
        let disk = |i: usize| if i < self.np { cab[i] as usize } else { n_ab + cst[i - self.np] as usize };
        let intervals: Vec<(usize, usize)> = self.joins.iter().map(|&(i, j)| (disk(i), disk(j))).collect();
        let (na, nb) = (&objs.list[ga.obj as usize], &objs.list[gb.obj as usize]);
        let (cout, nout) = cycles(na, nb);
        let mut outputs = vec![usize::MAX; nout];
        for i in 0..self.np + 4 {
            if let Some(r) = self.newpos[i] {
                let c = cout[r as usize] as usize;
                if outputs[c] == usize::MAX {
                    outputs[c] = disk(i);
                }
            }
        }
        let capped: Vec<usize> = ga.loops.iter().chain(&gb.loops).map(|&i| disk(i)).collect();
        let surface = Surface::new(n_ab + n_st, &intervals, &outputs, &capped);
        let src_caps = ga.loops.iter().map(|&i| surface.comp[disk(i)]).collect();
        let tgt_caps = gb.loops.iter().map(|&i| surface.comp[disk(i)]).collect();
        GlueTopo { surface, n_ab, src_caps, tgt_caps }
    }
}

impl GlueTopo {
    /// The glued morphism with the given cap elements on source and target loops.
    /// The local part is always undotted.
    fn eval(&self, alg: &mut Algebra, f: &Mor, src: &[Elem], tgt: &[Elem]) -> Mor {
        let fld = alg.field();
        let st = cap_terms(fld, src);
        let tt = cap_terms(fld, tgt);
        let nc = self.surface.num_components();
        let mut acc = Map::default();
        let mut dots = vec![0u32; nc];
        for &(m, c) in f {
            for &(sm, sc) in &st {
                for &(tm, tc) in &tt {
                    dots.iter_mut().for_each(|d| *d = 0);
                    let mut r = m;
                    while r != 0 {
                        let i = r.trailing_zeros() as usize;
                        debug_assert!(i < self.n_ab);
                        dots[self.surface.comp[i] as usize] += 1;
                        r &= r - 1;
                    }
                    for (k, &cc) in self.src_caps.iter().enumerate() {
                        dots[cc as usize] += (sm >> k & 1) as u32;
                    }
                    for (k, &cc) in self.tgt_caps.iter().enumerate() {
                        dots[cc as usize] += (tm >> k & 1) as u32;
                    }
                    alg.eval(&self.surface, &dots, fld.mul(c, fld.mul(sc, tc)), &mut acc);
                }
            }
        }
        finish(acc)
    }
}

fn choose_order(d: &LinkDiagram) -> Vec<usize> {
    let n = d.num_crossings();
    let mut done = vec![false; n];
    let mut open: BTreeSet<u32> = BTreeSet::new();
    // step at which each open edge appeared
    let mut born: Map<u32, usize> = Map::default();
    let mut order = vec![];
    for step in 0..n {
        let mut best: Option<((i32, usize), usize)> = None;
        for x in 0..n {
            if done[x] {
                continue;
            }
            let c = d.crossing(x);
            let mut score = 0;
            let mut recent = 0;
            for k in 0..4 {
                if open.contains(&c[k]) || (0..4).any(|k2| k2 != k && c[k2] == c[k]) {
                    score += 1;
                }
                if let Some(&b) = born.get(&c[k]) {
                    recent = recent.max(b + 1);
                }
            }
            // closing edges shrinks the boundary, new ones grow it; ties go to the
            // crossing next to the most recent work
            let key = (2 * score - 4, recent);
            if best.map_or(true, |(g, _)| key > g) {
                best = Some((key, x));
            }
        }
        let x = best.unwrap().1;
        done[x] = true;
        for &e in &d.crossing(x) {
            if open.remove(&e) {
                born.remove(&e);
            } else {
                open.insert(e);
                born.insert(e, step);
            }
        }
        order.push(x);
    }
    order
}

/// Plus/minus projections `p_+ = X - h`, `p_- = 1`, as cap elements.
fn proj(frob: &Frobenius, minus: bool) -> Elem {
    if minus {
        (1, 0)
    } else {
        (frob.field.neg(frob.h), 1)
    }
}

/// Inclusions `e_+ = 1`, `e_- = X`.
fn incl(minus: bool) -> Elem {
    if minus {
        (0, 1)
    } else {
        (1, 0)
    }
}

fn labels_of(frob: &Frobenius, specs: &[ElementSpec]) -> Result<[Elem; 2]> {
    if specs.is_empty() {
        Ok([(0, 0); 2])
    } else {
        frob.labels()
    }
}

pub fn scan(d: &LinkDiagram, frob: Frobenius, specs: &[ElementSpec], opts: &ScanOptions) -> Result<ScanResult> {
    let fld = frob.field;
    let labels = labels_of(&frob, specs)?;
    for s in specs {
        if s.smoothing.len() != d.num_crossings() || s.edge_label.len() != d.num_edges() || s.loop_label.len() != d.num_loops() {
            return Err(Error::OutOfRange("element spec does not match the diagram".into()));
        }
    }
    let mut alg = Algebra::new(frob);
    let mut objs = Objs::default();
    let empty = objs.intern(Box::new([]));
    let mut st = State {
        boundary: vec![],
        objs,
        gens: vec![TGen { obj: empty, h: 0, q: 0, layer: 0 }],
        out: vec![Map::default()],
        inn: vec![BTreeSet::new()],
        alive: vec![true],
        elems: specs
            .iter()
            .map(|_| TElem { src: empty, entries: [(0usize, vec![(0u64, 1u32)])].into_iter().collect() })
            .collect(),
    };
    let mut max_boundary = 0;
    let mut max_gens = 1;
    let order = choose_order(d);
    for (done, &x) in order.iter().enumerate() {
        st = attach(d, x, st, &mut alg, specs, labels, opts)?;
        eliminate(&mut st, &mut alg, opts.marked.is_some());
        let live = st.alive.iter().filter(|&&a| a).count();
        max_boundary = max_boundary.max(st.boundary.len());
        max_gens = max_gens.max(live);
        debug!("crossing {x} ({}/{}): boundary {}, generators {live}", done + 1, order.len(), st.boundary.len());
        if live > opts.budget {
            return Err(Error::MemoryBudget { budget: opts.budget, processed: done + 1, girth: st.boundary.len() });
        }
    }
    debug_assert!(st.boundary.is_empty());

    // scalars on the empty tangle, then one tensor factor per free loop
    let alive: Vec<usize> = (0..st.gens.len()).filter(|&i| st.alive[i]).collect();
    let mut index = vec![usize::MAX; st.gens.len()];
    for (k, &i) in alive.iter().enumerate() {
        index[i] = k;
    }
    let nl = d.num_loops();
    let w = 1usize << nl;
    let mut gens = vec![];
    for &i in &alive {
        let g = st.gens[i];
        for eps in 0..w {
            let shift = nl as i32 - 2 * eps.count_ones() as i32;
            gens.push(Gen { h: g.h, q: g.q + shift, layer: g.layer });
        }
    }
    let mut entries = vec![];
    for &i in &alive {
        for (&j, m) in &st.out[i] {
            let c = scalar(m);
            for eps in 0..w {
                entries.push((index[i] * w + eps, index[j] * w + eps, c));
            }
        }
    }
    let complex = Complex::from_entries(fld, gens, entries)?;
    let mut elements = vec![];
    for (el, spec) in st.elems.iter().zip(specs) {
        // coordinates of each loop label in the ± basis
        let coords: Vec<[u32; 2]> = spec
            .loop_label
            .iter()
            .map(|&l| {
                let y = labels[l as usize];
                [frob.counit(frob.mul(proj(&frob, false), y)), frob.counit(y)]
            })
            .collect();
        let mut v: SparseVec = vec![];
        for (&i, m) in &el.entries {
            let c = scalar(m);
            for eps in 0..w {
                let mut k = c;
                for (l, cc) in coords.iter().enumerate() {
                    k = fld.mul(k, cc[eps >> l & 1]);
                }
                if k != 0 {
                    v.push((index[i] * w + eps, k));
                }
            }
        }
        v.sort_unstable();
        elements.push(v);
    }
    Ok(ScanResult { complex, elements, max_boundary, max_gens })
}

fn scalar(m: &Mor) -> u32 {
    match m.as_slice() {
        [] => 0,
        [(0, c)] => *c,
        _ => unreachable!("morphisms between empty tangles are scalars"),
    }
}

fn attach(
    d: &LinkDiagram,
    x: usize,
    st: State,
    alg: &mut Algebra,
    specs: &[ElementSpec],
    labels: [Elem; 2],
    opts: &ScanOptions,
) -> Result<State> {
    let frob = alg.frob;
    let step = Step::new(d, x, &st.boundary);
    if step.new_boundary.len() > 2 * MAX_CYCLES {
        return Err(Error::OutOfRange(format!("boundary of {} points is too wide", step.new_boundary.len())));
    }
    let marked = opts.marked == Some(x);
    let mut objs = Objs::default();
    let mut glued: Map<(u32, u8), Glued> = Map::default();
    let mut need: Vec<(u32, u8)> = vec![];
    for i in 0..st.gens.len() {
        if st.alive[i] {
            need.push((st.gens[i].obj, 0));
            need.push((st.gens[i].obj, 1));
        }
    }
    for (el, spec) in st.elems.iter().zip(specs) {
        need.push((el.src, spec.smoothing[x]));
    }
    for key in need {
        if !glued.contains_key(&key) {
            let g = step.glue(&st.objs.list[key.0 as usize], key.1, &mut objs);
            glued.insert(key, g);
        }
    }

    // new generators
    let mut base: Map<(usize, u8), usize> = Map::default();
    let mut gens = vec![];
    for i in 0..st.gens.len() {
        if !st.alive[i] {
            continue;
        }
        let g = st.gens[i];
        for s in 0..2u8 {
            let Glued { obj, ref loops } = glued[&(g.obj, s)];
            let nl = loops.len();
            base.insert((i, s), gens.len());
            for eps in 0..1usize << nl {
                let shift = nl as i32 - 2 * eps.count_ones() as i32;
                let layer = if marked { s } else { g.layer };
                gens.push(TGen { obj, h: g.h + s as i32, q: g.q + s as i32 + shift, layer });
            }
        }
    }
    let n = gens.len();
    let mut out: Vec<Map<usize, Mor>> = (0..n).map(|_| Map::default()).collect();
    let mut topo: Map<(u32, u32, u8, u8), GlueTopo> = Map::default();
    let fld = frob.field;
    let push = |out: &mut Vec<Map<usize, Mor>>, from: usize, to: usize, m: Mor| {
        if m.is_empty() {
            return;
        }
        let e = out[from].entry(to).or_default();
        *e = add(fld, e, &m);
        if e.is_empty() {
            out[from].remove(&to);
        }
    };

    for i in 0..st.gens.len() {
        if !st.alive[i] {
            continue;
        }
        let gi = st.gens[i];
        // d ⊗ id
        for (&j, f) in &st.out[i] {
            let gj = st.gens[j];
            for s in 0..2u8 {
                let tp = topo_entry(&mut topo, &step, &glued, &st.objs, &objs, (gi.obj, gj.obj, s, s));
                let (ls, lt) = (tp.src_caps.len(), tp.tgt_caps.len());
                for e1 in 0..1usize << ls {
                    let src: Vec<Elem> = (0..ls).map(|k| incl(e1 >> k & 1 == 1)).collect();
                    for e2 in 0..1usize << lt {
                        let tgt: Vec<Elem> = (0..lt).map(|k| proj(&frob, e2 >> k & 1 == 1)).collect();
                        let m = tp.eval(alg, f, &src, &tgt);
                        push(&mut out, base[&(i, s)] + e1, base[&(j, s)] + e2, m);
                    }
                }
            }
        }
        // (-1)^h id ⊗ saddle
        let tp = topo_entry(&mut topo, &step, &glued, &st.objs, &objs, (gi.obj, gi.obj, 0, 1));
        let sign = if gi.h % 2 == 0 { 1 } else { fld.neg(1) };
        let id: Mor = vec![(0, sign)];
        let (ls, lt) = (tp.src_caps.len(), tp.tgt_caps.len());
        for e1 in 0..1usize << ls {
            let src: Vec<Elem> = (0..ls).map(|k| incl(e1 >> k & 1 == 1)).collect();
            for e2 in 0..1usize << lt {
                let tgt: Vec<Elem> = (0..lt).map(|k| proj(&frob, e2 >> k & 1 == 1)).collect();
                let m = tp.eval(alg, &id, &src, &tgt);
                push(&mut out, base[&(i, 0)] + e1, base[&(i, 1)] + e2, m);
            }
        }
    }

    // elements
    let mut elems = vec![];
    for (el, spec) in st.elems.iter().zip(specs) {
        let s = spec.smoothing[x];
        let gsrc = &glued[&(el.src, s)];
        let src_obj = gsrc.obj;
        let src: Vec<Elem> = gsrc.loops.iter().map(|&p| labels[spec.edge_label[step.edge[p] as usize] as usize]).collect();
        let mut entries: Map<usize, Mor> = Map::default();
        for (&i, f) in &el.entries {
            let gi = st.gens[i];
            let tp = topo_entry(&mut topo, &step, &glued, &st.objs, &objs, (el.src, gi.obj, s, s));
            let lt = tp.tgt_caps.len();
            for e2 in 0..1usize << lt {
                let tgt: Vec<Elem> = (0..lt).map(|k| proj(&frob, e2 >> k & 1 == 1)).collect();
                let m = tp.eval(alg, f, &src, &tgt);
                if !m.is_empty() {
                    let e = entries.entry(base[&(i, s)] + e2).or_default();
                    *e = add(fld, e, &m);
                }
            }
        }
        entries.retain(|_, m| !m.is_empty());
        elems.push(TElem { src: src_obj, entries });
    }

    let mut inn = vec![BTreeSet::new(); n];
    for (i, row) in out.iter().enumerate() {
        for &j in row.keys() {
            inn[j].insert(i);
        }
    }
    Ok(State { boundary: step.new_boundary.clone(), objs, gens, out, inn, alive: vec![true; n], elems })
}

fn topo_entry<'a>(
    topo: &'a mut Map<(u32, u32, u8, u8), GlueTopo>,
    step: &Step,
    glued: &Map<(u32, u8), Glued>,
    old: &Objs,
    objs: &Objs,
    key: (u32, u32, u8, u8),
) -> &'a GlueTopo {
    let (a, b, s, t) = key;
    topo.entry(key).or_insert_with(|| {
        step.topo(&old.list[a as usize], &old.list[b as usize], s, t, &glued[&(a, s)], &glued[&(b, t)], objs)
    })
}

fn eliminate(st: &mut State, alg: &mut Algebra, layered: bool) {
    let fld = alg.field();
    let mut triples: Map<(u32, u32, u32), Triple> = Map::default();
    let State { objs, gens, out, inn, alive, elems, .. } = st;
    let n = gens.len();
    let mut progress = true;
    while progress {
        progress = false;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            let ga = gens[a];
            let best = out[a]
                .iter()
                .filter(|(&b, m)| {
                    let gb = gens[b];
                    gb.obj == ga.obj && gb.q == ga.q && (!layered || gb.layer == ga.layer) && m.len() == 1 && m[0].0 == 0
                })
                .map(|(&b, m)| (inn[b].len() * out[a].len(), b, m[0].1))
                .min();
            let Some((_, b, v)) = best else { continue };
            let k = fld.neg(fld.inv(v));
            let obj = ga.obj;
            let targets: Vec<(usize, Mor)> = out[a].iter().filter(|(&w, _)| w != b).map(|(&w, m)| (w, m.clone())).collect();
            let sources: Vec<(usize, Mor)> = inn[b].iter().filter(|&&z| z != a).map(|&z| (z, out[z][&b].clone())).collect();
            let mut compose = |z_obj: u32, w_obj: u32, f: &Mor, g: &Mor, alg: &mut Algebra| -> Mor {
                let key = (z_obj, obj, w_obj);
                let t = triples.entry(key).or_insert_with(|| {
                    Triple::new(&objs.list[z_obj as usize], &objs.list[obj as usize], &objs.list[w_obj as usize])
                });
                t.compose(alg, f, g)
            };
            for (z, zb) in &sources {
                for (w, aw) in &targets {
                    let m = scale(fld, &compose(gens[*z].obj, gens[*w].obj, zb, aw, alg), k);
                    if m.is_empty() {
                        continue;
                    }
                    let e = out[*z].entry(*w).or_default();
                    *e = add(fld, e, &m);
                    if e.is_empty() {
                        out[*z].remove(w);
                        inn[*w].remove(z);
                    } else {
                        inn[*w].insert(*z);
                    }
                }
            }
            for el in elems.iter_mut() {
                if let Some(eb) = el.entries.get(&b).cloned() {
                    for (w, aw) in &targets {
                        let m = scale(fld, &compose(el.src, gens[*w].obj, &eb, aw, alg), k);
                        if m.is_empty() {
                            continue;
                        }
                        let e = el.entries.entry(*w).or_default();
                        *e = add(fld, e, &m);
                        if e.is_empty() {
                            el.entries.remove(w);
                        }
                    }
                }
                el.entries.remove(&a);
                el.entries.remove(&b);
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
}
