//! Dense matrices over a tower level, canonical subspaces, and counting.

mod codeword;
mod counting;
mod subspace;

pub use codeword::{expand_codeword, rank_support, rank_support_of_set};
pub use counting::{binomial2, gaussian_binomial, gaussian_binomial_big, matrix_count};
pub use subspace::{Ambient, Subspace, Subspaces};

use crate::error::{input, Result};
use crate::field::Field;

/// Row-major matrix of field-element encodings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return input(format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            ));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds from explicit rows. All rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return input(format!("row {i} has {} entries, expected {cols}", r.len()));
            }
            data.extend_from_slice(r);
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(t, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return input("column counts differ");
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn all_in(&self, f: &Field) -> bool {
        self.data.iter().all(|&x| f.contains(x))
    }
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// The nonzero rows of the reduced row echelon form.
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduces `data` (a `rows x cols` block) in place. Afterwards the first
/// `pivots.len()` rows form the RREF and the remaining rows are zero.
pub(crate) fn rref_in_place(f: &Field, data: &mut [u32], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let lead = data[r * cols + c];
        if lead != 1 {
            let inv = f.inv(lead).expect("pivot is nonzero");
            for j in c..cols {
                data[r * cols + j] = f.mul(data[r * cols + j], inv);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let v = data[r * cols + j];
                if v != 0 {
                    data[i * cols + j] = f.sub(data[i * cols + j], f.mul(factor, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination only; clobbers `data`.
pub(crate) fn rank_in_place(f: &Field, data: &mut [u32], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            let k = f.mul(factor, inv);
            for j in c..cols {
                let v = data[r * cols + j];
                if v != 0 {
                    data[i * cols + j] = f.sub(data[i * cols + j], f.mul(k, v));
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rref(f: &Field, m: &Mat) -> Rref {
    let mut data = m.data.clone();
    let pivots = rref_in_place(f, &mut data, m.rows, m.cols);
    let rank = pivots.len();
    data.truncate(rank * m.cols);
    Rref {
        matrix: Mat {
            rows: rank,
            cols: m.cols,
            data,
        },
        rank,
        pivots,
    }
}

pub fn rank(f: &Field, m: &Mat) -> usize {
    let mut data = m.data.clone();
    rank_in_place(f, &mut data, m.rows, m.cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    fn f2() -> Field {
        FieldTower::prime_field(2).unwrap().top()
    }

    #[test]
    fn rref_basics() {
        let f = f2();
        let id = Mat::identity(3);
        let r = rref(&f, &id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let z = Mat::zeros(2, 3);
        let r = rref(&f, &z);
        assert_eq!(r.rank, 0);
        assert_eq!(r.matrix.rows(), 0);

        let dup = Mat::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let r = rref(&f, &dup);
        assert_eq!(r.matrix, Mat::from_rows(2, &[vec![1, 1]]).unwrap());
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_over_f3_and_rank_agree() {
        let f = FieldTower::prime_field(3).unwrap().top();
        let m = Mat::from_rows(3, &[vec![2, 1, 0], vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let r = rref(&f, &m);
        assert_eq!(r.rank, 2);
        assert_eq!(rank(&f, &m), 2);
        assert_eq!(r.matrix, Mat::from_rows(3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap());
    }

    #[test]
    fn matrix_product() {
        let f = f2();
        let a = Mat::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let p = a.mul(&f, &a).unwrap();
        assert_eq!(p, Mat::from_rows(2, &[vec![1, 0], vec![0, 1]]).unwrap());
        assert!(a.mul(&f, &Mat::zeros(3, 1)).is_err());
    }
}
