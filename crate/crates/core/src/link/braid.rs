use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A braid word on a fixed number of strands. Letter `±i` is `σ_i^{±1}`, a crossing
/// between positions `i` and `i+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::OutOfRange("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::BraidIndex { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: vec![] }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::OutOfRange("strand counts differ".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// `(σ_1 ⋯ σ_{n-1})^n` raised to `power` (negative powers use inverse letters).
    pub fn full_twist(strands: usize, power: i32) -> BraidWord {
        let mut letters = vec![];
        let sign = power.signum();
        for _ in 0..power.unsigned_abs() {
            for _ in 0..strands {
                if sign > 0 {
                    letters.extend(1..strands as i32);
                } else {
                    letters.extend((1..strands as i32).rev().map(|i| -i));
                }
            }
        }
        BraidWord { strands: strands.max(1), letters }
    }

    /// `perm[s]` is the output position of the strand entering at position `s` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // position -> strand
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    /// Orbits of the closure permutation: the components of the closure, as sets of
    /// 0-based input strands, ordered by smallest member.
    pub fn closure_orbits(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut orbits = vec![];
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![];
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = perm[x];
            }
            orbit.sort();
            orbits.push(orbit);
        }
        orbits
    }

    /// Whether a set of 0-based input strands is a union of closure orbits.
    pub fn is_orbit_closed(&self, strands: &BTreeSet<usize>) -> bool {
        let perm = self.permutation();
        strands.iter().all(|&s| s < self.strands && strands.contains(&perm[s]))
    }

    /// Number of letters that swap a strand of `strands` with a strand outside it.
    /// Strands are 0-based input strands; the set must close up to a sublink.
    pub fn count_inter_crossings(&self, strands: &BTreeSet<usize>) -> Result<usize> {
        if !self.is_orbit_closed(strands) {
            return Err(Error::NotOrbitClosed);
        }
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut count = 0;
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            if strands.contains(&at[i]) != strands.contains(&at[i + 1]) {
                count += 1;
            }
            at.swap(i, i + 1);
        }
        Ok(count)
    }

    /// Input strands (0-based) swapped by each letter, in word order.
    pub fn letter_strands(&self) -> Vec<(usize, usize)> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        self.letters
            .iter()
            .map(|&l| {
                let i = l.unsigned_abs() as usize - 1;
                let pair = (at[i], at[i + 1]);
                at.swap(i, i + 1);
                pair
            })
            .collect()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }
}

/// The positive word `(σ_1⋯σ_{2m})^a σ_1⋯σ_i` on `2m+1` strands, or its flip
/// `σ_{2m+1-i}⋯σ_{2m} (σ_1⋯σ_{2m})^a`.
pub fn d_braid(m: usize, a: usize, i: usize, flipped: bool) -> Result<BraidWord> {
    if a > 2 * m || i > 2 * m {
        return Err(Error::OutOfRange(format!("(m, a, i) = ({m}, {a}, {i}) needs a, i <= 2m")));
    }
    let n = 2 * m + 1;
    let block: Vec<i32> = (1..=2 * m as i32).collect();
    let mut letters = vec![];
    if flipped {
        letters.extend((2 * m + 1 - i) as i32..=2 * m as i32);
        for _ in 0..a {
            letters.extend_from_slice(&block);
        }
    } else {
        for _ in 0..a {
            letters.extend_from_slice(&block);
        }
        letters.extend(1..=i as i32);
    }
    BraidWord::new(n, letters)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses `"3: 1 2 -1"` (strand count, then signed letters).
    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("braid word needs 'strands:' prefix: {s:?}")))?;
        let strands: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad strand count {n:?}")))?;
        let letters = rest
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(format!("bad letter {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }
}
