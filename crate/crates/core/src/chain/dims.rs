use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Dimensions indexed by `(homological degree, quantum degree)`.
///
/// Only nonzero dimensions are stored, so two values compare equal exactly
/// when they describe the same bigraded vector space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(i32, i32, usize)>", into = "Vec<(i32, i32, usize)>")]
pub struct BigradedDims(BTreeMap<(i32, i32), usize>);

impl BigradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, h: i32, q: i32, n: usize) {
        if n == 0 {
            return;
        }
        *self.0.entry((h, q)).or_insert(0) += n;
    }

    pub fn get(&self, h: i32, q: i32) -> usize {
        self.0.get(&(h, q)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i32, i32), usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Total dimension in homological degree `h`.
    pub fn at_h(&self, h: i32) -> usize {
        self.0.iter().filter(|((hh, _), _)| *hh == h).map(|(_, &v)| v).sum()
    }

    pub fn by_h(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for (&(h, _), &v) in &self.0 {
            *m.entry(h).or_insert(0) += v;
        }
        m
    }

    pub fn shifted(&self, dh: i32, dq: i32) -> BigradedDims {
        BigradedDims(self.0.iter().map(|(&(h, q), &v)| ((h + dh, q + dq), v)).collect())
    }

    /// Graded Euler characteristic: `q -> Σ_h (-1)^h dim`.
    pub fn euler(&self) -> BTreeMap<i32, i64> {
        let mut m = BTreeMap::new();
        for (&(h, q), &v) in &self.0 {
            let s = if h.rem_euclid(2) == 0 { 1 } else { -1 };
            *m.entry(q).or_insert(0) += s * v as i64;
        }
        m.retain(|_, v| *v != 0);
        m
    }

    /// Tensor product with the homology of the unknot (`q^{±1}` in degree 0).
    pub fn tensor_unknot(&self) -> BigradedDims {
        let mut out = BigradedDims::new();
        for (&(h, q), &v) in &self.0 {
            out.add(h, q + 1, v);
            out.add(h, q - 1, v);
        }
        out
    }

    /// Poincaré polynomial in `t` (homological) and `q`, monomials ordered by `h` then `q`.
    pub fn poincare(&self) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        self.0
            .iter()
            .map(|(&(h, q), &v)| {
                let c = if v == 1 { String::new() } else { v.to_string() };
                format!("{c}t^{h}q^{q}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl From<Vec<(i32, i32, usize)>> for BigradedDims {
    fn from(v: Vec<(i32, i32, usize)>) -> Self {
        let mut d = BigradedDims::new();
        for (h, q, n) in v {
            d.add(h, q, n);
        }
        d
    }
}

impl From<BigradedDims> for Vec<(i32, i32, usize)> {
    fn from(d: BigradedDims) -> Self {
        d.0.into_iter().map(|((h, q), v)| (h, q, v)).collect()
    }
}

impl fmt::Display for BigradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poincare())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poincare_order() {
        let d = BigradedDims::from(vec![(2, 5, 1), (0, 3, 1), (0, 1, 2)]);
        assert_eq!(d.poincare(), "2t^0q^1 + t^0q^3 + t^2q^5");
        assert_eq!(BigradedDims::new().poincare(), "0");
    }

    #[test]
    fn euler_of_trefoil() {
        let d = BigradedDims::from(vec![(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]);
        let e = d.euler();
        assert_eq!(e[&9], -1);
        assert_eq!(e[&5], 1);
    }
}
