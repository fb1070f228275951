//! Dense linear algebra over `F_p` for the small complexes left after simplification.

use crate::field::PrimeField;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    /// Matrix whose columns are the given vectors (of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: PrimeField) -> Vec<usize> {
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let k = self.get(i, c);
                if k == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(k, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the null space `{x : A x = 0}`.
    pub fn kernel(&self, f: PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0; self.cols];
                x[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(m.get(r, fc));
                }
                x
            })
            .collect()
    }

    pub fn mul_vec(&self, f: PrimeField, x: &[u32]) -> Vec<u32> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), x[j]))))
            .collect()
    }
}

/// Solves `A x = b`, returning one solution if it exists.
pub fn solve(f: PrimeField, a: &Mat, b: &[u32]) -> Option<Vec<u32>> {
    let mut aug = Mat::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, a.cols, b[i]);
    }
    let pivots = aug.rref(f);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![0; a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, a.cols);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let f = PrimeField::new(3).unwrap();
        let m = Mat { rows: 2, cols: 3, data: vec![1, 2, 0, 2, 1, 0] };
        // second row = 2 * first row mod 3
        assert_eq!(m.rank(f), 1);
        let k = m.kernel(f);
        assert_eq!(k.len(), 2);
        for x in k {
            assert!(m.mul_vec(f, &x).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = PrimeField::new(5).unwrap();
        let a = Mat { rows: 2, cols: 2, data: vec![1, 1, 0, 0] };
        assert!(solve(f, &a, &[3, 0]).is_some());
        assert!(solve(f, &a, &[3, 1]).is_none());
    }
}
