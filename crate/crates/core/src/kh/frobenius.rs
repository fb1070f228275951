use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Which rank-two Frobenius algebra `F[X]/(X² - hX - t)` is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deformation {
    /// `h = t = 0`
    Khovanov,
    /// `h = 0, t = 1`
    Lee,
    /// `h = 1, t = 0`
    BarNatan,
}

impl Deformation {
    pub fn params(self) -> (u32, u32) {
        match self {
            Deformation::Khovanov => (0, 0),
            Deformation::Lee => (0, 1),
            Deformation::BarNatan => (1, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Deformation::Khovanov => "khovanov",
            Deformation::Lee => "lee",
            Deformation::BarNatan => "bar-natan",
        }
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Deformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "khovanov" | "kh" => Ok(Deformation::Khovanov),
            "lee" => Ok(Deformation::Lee),
            "bar-natan" | "barnatan" | "bn" => Ok(Deformation::BarNatan),
            _ => Err(Error::Parse(format!("unknown deformation {s:?}"))),
        }
    }
}

/// Element `c0 + c1 X` of the algebra.
pub type Elem = (u32, u32);

/// The algebra with its structure maps, over a fixed prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frobenius {
    pub field: PrimeField,
    pub deformation: Deformation,
    pub h: u32,
    pub t: u32,
}

impl Frobenius {
    pub fn new(field: PrimeField, deformation: Deformation) -> Result<Self> {
        if deformation == Deformation::Lee && field.p() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let (h, t) = deformation.params();
        Ok(Frobenius { field, deformation, h: field.reduce(h as i64), t: field.reduce(t as i64) })
    }

    /// Roots `(u, v)` of `X² - hX - t`, when it splits.
    pub fn roots(&self) -> Option<(u32, u32)> {
        self.field.roots(self.h, self.t)
    }

    /// Whether the roots are distinct, so that the Lee-type generators exist.
    pub fn is_deformed(&self) -> bool {
        self.roots().is_some_and(|(u, v)| u != v)
    }

    /// Label elements `a = X - u` and `b = X - v`.
    pub fn labels(&self) -> Result<[Elem; 2]> {
        let (u, v) = self.roots().ok_or_else(|| Error::Deformation("X² - hX - t does not split".into()))?;
        if u == v {
            return Err(Error::Deformation(format!("{} has a repeated root; no Lee generators", self.deformation)));
        }
        let f = self.field;
        Ok([(f.neg(u), 1), (f.neg(v), 1)])
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let f = self.field;
        // (a + bX)(c + dX) = ac + (ad + bc) X + bd (hX + t)
        let bd = f.mul(x.1, y.1);
        (f.add(f.mul(x.0, y.0), f.mul(bd, self.t)), f.add(f.add(f.mul(x.0, y.1), f.mul(x.1, y.0)), f.mul(bd, self.h)))
    }

    /// `X^k (2X - h)^g`.
    pub fn decoration(&self, dots: u32, genus: u32) -> Elem {
        let f = self.field;
        let mut e: Elem = (1, 0);
        for _ in 0..dots {
            e = self.mul(e, (0, 1));
        }
        let handle = (f.neg(self.h), f.reduce(2));
        for _ in 0..genus {
            e = self.mul(e, handle);
        }
        e
    }

    pub fn counit(&self, x: Elem) -> u32 {
        x.1
    }

    /// Iterated comultiplication of `x` into `n` factors, as `(mask, coeff)` where bit `i`
    /// set means factor `i` is `X` (otherwise `1`). For `n = 0` this is the counit.
    pub fn expand(&self, x: Elem, n: usize) -> Vec<(u64, u32)> {
        let f = self.field;
        if n == 0 {
            let c = self.counit(x);
            return if c == 0 { vec![] } else { vec![(0, c)] };
        }
        let mut terms: Vec<(u64, u32)> = [(0u64, x.0), (1u64, x.1)].into_iter().filter(|t| t.1 != 0).collect();
        for k in 1..n {
            // split factor 0 into factors 0 and k
            let mut next: Vec<(u64, u32)> = vec![];
            let mut push = |m: u64, c: u32| {
                if c != 0 {
                    next.push((m, c));
                }
            };
            for &(m, c) in &terms {
                let bit = 1u64 << k;
                if m & 1 == 0 {
                    // Δ(1) = 1⊗X + X⊗1 - h 1⊗1
                    push(m | bit, c);
                    push(m | 1, c);
                    push(m, f.neg(f.mul(c, self.h)));
                } else {
                    // Δ(X) = X⊗X + t 1⊗1
                    push(m | bit, c);
                    push(m & !1, f.mul(c, self.t));
                }
            }
            next.sort_unstable();
            terms = merge_sorted(f, next);
        }
        terms
    }
}

fn merge_sorted(f: PrimeField, v: Vec<(u64, u32)>) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = f.add(last.1, c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(p: u32, d: Deformation) -> Frobenius {
        Frobenius::new(PrimeField::new(p).unwrap(), d).unwrap()
    }

    #[test]
    fn roots_and_labels() {
        let l = fr(3, Deformation::Lee);
        let (u, v) = l.roots().unwrap();
        assert_ne!(u, v);
        let [a, b] = l.labels().unwrap();
        // a·b = 0 and a² = (v - u) a
        assert_eq!(l.mul(a, b), (0, 0));
        let f = l.field;
        let s = f.sub(v, u);
        assert_eq!(l.mul(a, a), (f.mul(s, a.0), f.mul(s, a.1)));
        assert!(fr(3, Deformation::Khovanov).labels().is_err());
        assert!(Frobenius::new(PrimeField::new(2).unwrap(), Deformation::Lee).is_err());
        assert!(fr(2, Deformation::BarNatan).labels().is_ok());
    }

    #[test]
    fn expand_is_coassociative_counital() {
        for d in [Deformation::Khovanov, Deformation::Lee, Deformation::BarNatan] {
            let a = fr(5, d);
            // (ε ⊗ id) Δ = id
            for x in [(1, 0), (0, 1), (2, 3)] {
                let t = a.expand(x, 2);
                let mut back = (0, 0);
                for (m, c) in t {
                    // apply ε to factor 1
                    if m & 2 != 0 {
                        if m & 1 == 0 {
                            back.0 = a.field.add(back.0, c);
                        } else {
                            back.1 = a.field.add(back.1, c);
                        }
                    }
                }
                assert_eq!(back, x);
            }
        }
    }

    #[test]
    fn handle() {
        let a = fr(3, Deformation::Khovanov);
        // a closed torus evaluates to 2
        assert_eq!(a.counit(a.decoration(0, 1)), 2);
        assert_eq!(a.counit(a.decoration(0, 0)), 0);
        assert_eq!(a.counit(a.decoration(1, 0)), 1);
    }
}
