//! The poset of cable parameters and the grading bookkeeping around it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::BigradedDims;
use crate::error::{Error, Result};
use crate::link::{LinkDiagram, Satellite};

/// A knot given by a diagram with only negative crossings.
#[derive(Clone, Debug)]
pub struct KnotInput {
    pub name: String,
    pub diagram: LinkDiagram,
}

impl KnotInput {
    pub fn new(name: impl Into<String>, diagram: LinkDiagram) -> Result<Self> {
        if diagram.num_components() != 1 {
            return Err(Error::NotAKnot(diagram.num_components()));
        }
        if diagram.n_plus() > 0 {
            return Err(Error::InvalidDiagram(format!("{} positive crossings; a negative diagram is needed", diagram.n_plus())));
        }
        Ok(KnotInput { name: name.into(), diagram })
    }

    pub fn writhe(&self) -> i32 {
        self.diagram.writhe()
    }
}

/// `(f, m, a, i)` with `w <= f <= 0` and `0 <= a, i <= 2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndEntry {
    pub f: i32,
    pub m: usize,
    pub a: usize,
    pub i: usize,
}

impl IndEntry {
    pub fn new(f: i32, m: usize, a: usize, i: usize) -> Self {
        IndEntry { f, m, a, i }
    }

    pub fn satellite(&self) -> Satellite {
        Satellite::new(self.m, self.f, self.a, self.i)
    }

    /// The entry whose diagram is isotopic to this one when `i = 0`, if any.
    pub fn isotopic_predecessor(&self, w: i32) -> Option<IndEntry> {
        if self.i != 0 {
            return None;
        }
        if self.a >= 1 {
            Some(IndEntry::new(self.f, self.m, self.a - 1, 2 * self.m))
        } else if self.f > w {
            Some(IndEntry::new(self.f - 1, self.m, 2 * self.m, 2 * self.m))
        } else {
            None
        }
    }
}

impl fmt::Display for IndEntry {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "({}, {}, {}, {})", self.f, self.m, self.a, self.i)
    }
}

/// All entries with `m <= max_m`, in lexicographic order.
pub fn ind_entries(w: i32, max_m: usize) -> Vec<IndEntry> {
    let mut out = vec![];
    for f in w..=0 {
        for m in 0..=max_m {
            for a in 0..=2 * m {
                for i in 0..=2 * m {
                    out.push(IndEntry::new(f, m, a, i));
                }
            }
        }
    }
    out
}

/// Homological grading of the Lee generator of a `(2m+1)`-strand insertion after
/// renormalization, `-(2m+1)²/2 + 1/2`.
pub fn target(m: usize) -> i32 {
    -2 * (m * (m + 1)) as i32
}

/// `gr_h(x_{o_p}) - gr_h(x_{o_q})` on an `f`-framed `(2m+1)`-cable, where `o_p` keeps
/// `p` strands parallel to the knot.
pub fn orientation_grading(f: i32, m: usize, p: usize, q: usize) -> i32 {
    let n = 2 * m as i32 + 1;
    let sq = |k: usize| (n - 2 * k as i32).pow(2);
    f * (sq(q) - sq(p)) / 2
}

/// `(2m+1)² - (2m+1-2j)²`.
pub fn q_term(m: usize, j: usize) -> i32 {
    let n = 2 * m as i32 + 1;
    n * n - (n - 2 * j as i32).pow(2)
}

/// Shift of normalized gradings `(h, q)` when the components `flip` of `d` are reversed:
/// `Kh(d reoriented) = Kh(d)` shifted by the returned amounts.
pub fn reorientation_shift(d: &LinkDiagram, flip: &BTreeSet<usize>) -> (i32, i32) {
    let o = d.reoriented(flip);
    let qs = |x: &LinkDiagram| x.n_plus() as i32 - 2 * x.n_minus() as i32;
    (d.n_minus() as i32 - o.n_minus() as i32, qs(&o) - qs(d))
}

/// Khovanov and Lee dimensions with homological gradings shifted by `shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Renormalized {
    pub shift: i32,
    pub kh: BigradedDims,
    pub lee: BTreeMap<i32, usize>,
}

impl Renormalized {
    pub fn new(kh: &BigradedDims, lee: &BTreeMap<i32, usize>, shift: i32) -> Self {
        Renormalized { shift, kh: kh.shifted(shift, 0), lee: lee.iter().map(|(&h, &n)| (h + shift, n)).collect() }
    }

    pub fn kh_at(&self, h: i32) -> usize {
        self.kh.at_h(h)
    }

    pub fn lee_at(&self, h: i32) -> usize {
        self.lee.get(&h).copied().unwrap_or(0)
    }

    /// Statement A: nothing in positive degree.
    pub fn statement_a(&self) -> bool {
        self.kh.iter().all(|((h, _), n)| h <= 0 || n == 0)
    }

    /// Statement B: Khovanov and Lee agree in degree 0.
    pub fn statement_b(&self) -> bool {
        self.kh_at(0) == self.lee_at(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_size() {
        let e = ind_entries(-3, 1);
        assert_eq!(e.len(), 4 * 10);
        assert!(e.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ind_entries(0, 1).len(), 10);
    }

    #[test]
    fn targets() {
        assert_eq!(target(0), 0);
        assert_eq!(target(1), -4);
        // -(2m+1)²/2 + 1/2
        for m in 0..6 {
            let n = 2 * m as i32 + 1;
            assert_eq!(2 * target(m), 1 - n * n);
        }
    }

    #[test]
    fn orientation_formula() {
        assert_eq!(orientation_grading(1, 1, 1, 3), 4);
        assert_eq!(orientation_grading(0, 2, 1, 4), 0);
        assert_eq!(orientation_grading(-2, 1, 2, 2), 0);
        assert_eq!(q_term(1, 1), 8);
    }

    #[test]
    fn predecessors() {
        assert_eq!(IndEntry::new(-1, 1, 2, 0).isotopic_predecessor(-3), Some(IndEntry::new(-1, 1, 1, 2)));
        assert_eq!(IndEntry::new(-1, 1, 0, 0).isotopic_predecessor(-3), Some(IndEntry::new(-2, 1, 2, 2)));
        assert_eq!(IndEntry::new(-3, 1, 0, 0).isotopic_predecessor(-3), None);
        assert_eq!(IndEntry::new(0, 1, 0, 1).isotopic_predecessor(0), None);
    }
}
