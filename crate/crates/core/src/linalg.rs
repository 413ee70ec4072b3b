//! Dense matrices over a [`Field`] and row reduction.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Elem;

    fn index(&self, (r, c): (usize, usize)) -> &Elem {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Elem {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Ones on the anti-diagonal.
    pub fn anti_identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, n - 1 - i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] ^= field.mul(a, other[(k, c)]);
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows).map(|r| dot(field, self.row(r), v)).collect()
    }

    /// `uᵗ · self · v`.
    pub fn bilinear(&self, field: &Field, u: &[Elem], v: &[Elem]) -> Elem {
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            acc ^= field.mul(ui, dot(field, self.row(i), v));
        }
        acc
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut rows = self.to_rows();
        rref(field, &mut rows).len()
    }

    pub fn inverse(&self, field: &Field) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Usage("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Elem>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| (c == r) as Elem));
                row
            })
            .collect();
        let pivots = rref(field, &mut aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Domain("singular matrix".into()));
        }
        let rows: Vec<Vec<Elem>> = aug.iter().map(|r| r[n..].to_vec()).collect();
        Ok(Matrix::from_rows(&rows))
    }
}

pub fn dot(field: &Field, u: &[Elem], v: &[Elem]) -> Elem {
    u.iter()
        .zip(v)
        .fold(0, |acc, (&a, &b)| acc ^ field.mul(a, b))
}

/// `u + λ v`, in place.
pub fn axpy(field: &Field, u: &mut [Elem], lambda: Elem, v: &[Elem]) {
    if lambda == 0 {
        return;
    }
    for (a, &b) in u.iter_mut().zip(v) {
        *a ^= field.mul(lambda, b);
    }
}

pub fn scale(field: &Field, v: &mut [Elem], lambda: Elem) {
    for a in v.iter_mut() {
        *a = field.mul(*a, lambda);
    }
}

/// Brings `rows` into reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        let Some(p) = (next..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(next, p);
        let lead = rows[next][c];
        let inv = field.inv(lead);
        scale(field, &mut rows[next], inv);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row[c] != 0 {
                let factor = row[c];
                axpy(field, row, factor, &pivot_row);
            }
        }
        pivots.push(c);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

/// Basis (in reduced echelon form) of `{v : r · v = 0 for every row r}`.
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Vec<Vec<Elem>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(field, &mut reduced);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<Elem>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &p) in reduced.iter().zip(&pivots) {
                // char 2: -x = x
                v[p] = row[f];
            }
            v
        })
        .collect();
    rref(field, &mut basis);
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let f = Field::of_order(4).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2, 0], vec![0, 3, 1], vec![1, 0, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(3));
        let singular = Matrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(singular.inverse(&f).is_err());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Field::of_order(8).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![5, 6, 7, 1]];
        let ns = nullspace(&f, &rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert_eq!(dot(&f, r, v), 0);
            }
        }
    }
}
