//! Dense matrices over the base alphabet F_q.

use serde::Serialize;

use crate::field::{BaseField, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl MatrixFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFq { rows, cols, data: vec![0; rows * cols] }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        MatrixFq { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn vstack(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatrixFq { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// `self * other^T`
    pub fn mul_transpose(&self, f: &BaseField, other: &MatrixFq) -> MatrixFq {
        assert_eq!(self.cols, other.cols);
        let mut out = MatrixFq::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = self.row(i);
            for j in 0..other.rows {
                let b = other.row(j);
                let s = a.iter().zip(b).fold(0u32, |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
                out.set(i, j, s);
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &BaseField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(&self.get(r, c)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = f.mul(&self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let t = self.get(i, c);
                if i == r || t == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(&self.get(i, j), &f.mul(&t, &self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &BaseField) -> usize {
        self.clone().rref(f).len()
    }

    pub fn select_columns(&self, cols: &[usize]) -> MatrixFq {
        let mut out = MatrixFq::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(i, c));
            }
        }
        out
    }

    /// A nonzero `x` with `self * x = 0`, if the columns are dependent.
    pub fn null_vector(&self, f: &BaseField) -> Option<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut x = vec![0u32; self.cols];
        x[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = f.neg(&m.get(r, free));
        }
        Some(x)
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul(&self, f: &BaseField, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u32; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(o, &f.mul(&c, &g));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let f = BaseField::new(3).unwrap();
        let m = MatrixFq::from_rows(vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]], 3);
        // row 2 = 2 * row 1
        assert_eq!(m.rank(&f), 2);
        let x = m.null_vector(&f).unwrap();
        assert!(x.iter().any(|&v| v != 0));
        let t = MatrixFq::from_rows(vec![x], 3);
        assert!(m.mul_transpose(&f, &t).is_zero());
    }

    #[test]
    fn full_rank_has_no_null_vector() {
        let f = BaseField::new(5).unwrap();
        let m = MatrixFq::from_rows(vec![vec![1, 2], vec![3, 4]], 2);
        assert_eq!(m.rank(&f), 2);
        assert_eq!(m.null_vector(&f), None);
    }
}
