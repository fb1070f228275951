use serde::{Deserialize, Serialize};

use super::braid::{d_braid, BraidWord};
use super::builder::{braid_closure, cable, letters_of, BoxedDiagram};
use super::diagram::LinkDiagram;
use super::pd::parse_pd;
use crate::error::Result;

/// The cable of a knot with `2m+1` strands, framing `f` and pattern `d_braid(m, a, i)`,
/// possibly with a split unknot added.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Satellite {
    pub m: usize,
    pub framing: i32,
    pub a: usize,
    pub i: usize,
    #[serde(default)]
    pub flipped: bool,
    #[serde(default)]
    pub extra_unknot: bool,
}

impl Satellite {
    pub fn new(m: usize, framing: i32, a: usize, i: usize) -> Self {
        Satellite { m, framing, a, i, flipped: false, extra_unknot: false }
    }

    pub fn strands(&self) -> usize {
        2 * self.m + 1
    }

    pub fn pattern(&self) -> Result<BraidWord> {
        d_braid(self.m, self.a, self.i, self.flipped)
    }

    /// Number of crossings of the diagram built by [`satellite`].
    pub fn crossing_count(&self, knot: &LinkDiagram) -> usize {
        let n = self.strands();
        let twists = (self.framing - knot.writhe()).unsigned_abs() as usize * n * (n - 1);
        knot.num_crossings() * n * n + twists + 2 * self.m * self.a + self.i
    }
}

impl std::fmt::Display for Satellite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K_{{{},{},{}}}^{}", self.m, self.a, self.i, self.framing)?;
        if self.flipped {
            f.write_str(" (flipped)")?;
        }
        if self.extra_unknot {
            f.write_str(" + U")?;
        }
        Ok(())
    }
}

pub fn satellite(knot: &LinkDiagram, s: &Satellite) -> Result<BoxedDiagram> {
    let pattern = s.pattern()?;
    let mut b = cable(knot, s.strands(), s.framing, &letters_of(&pattern))?;
    if s.extra_unknot {
        b.diagram = b.diagram.disjoint_union_unknot();
    }
    Ok(b)
}

pub fn unknot() -> LinkDiagram {
    braid_closure(&BraidWord::identity(1)).unwrap()
}

/// Left-handed trefoil as the closure of `σ_1^{-3}`.
pub fn negative_trefoil() -> LinkDiagram {
    braid_closure(&BraidWord::new(2, vec![-1, -1, -1]).unwrap()).unwrap()
}

/// The five-crossing twist knot with all crossings negative.
pub fn negative_five_two() -> LinkDiagram {
    parse_pd("X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]").unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_counts() {
        let t = negative_trefoil();
        for (f, expect) in [(0, 45), (1, 51)] {
            let s = Satellite::new(1, f, 0, 0);
            assert_eq!(s.crossing_count(&t), expect);
            assert_eq!(satellite(&t, &s).unwrap().diagram.num_crossings(), expect);
        }
        let k = negative_five_two();
        assert_eq!(k.writhe(), -5);
        assert_eq!(Satellite::new(1, 1, 0, 0).crossing_count(&k), 81);
        let s = Satellite { m: 1, framing: -2, a: 1, i: 2, flipped: true, extra_unknot: true };
        let d = satellite(&t, &s).unwrap();
        assert_eq!(d.diagram.num_crossings(), s.crossing_count(&t));
        assert_eq!(d.diagram.num_components(), 2);
    }

    #[test]
    fn unknot_cable_is_closure() {
        let s = Satellite::new(1, 0, 1, 2);
        let d = satellite(&unknot(), &s).unwrap();
        assert_eq!(d.diagram.num_crossings(), 4);
        assert_eq!(d.diagram.num_components(), 1);
    }
}
