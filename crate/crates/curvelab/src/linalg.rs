//! Exact linear algebra over the rationals.
//!
//! Everything the sections oracle needs: rank and a kernel basis of a
//! dense matrix with `BigRational` entries, by Gaussian elimination with
//! exact arithmetic (no tolerances anywhere). Entries are reduced after
//! every operation by the `BigRational` invariants, so the computation
//! is exact by construction; rows are rescaled to keep numbers small.

use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Dense row-major rational matrix.
#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    /// Reduces self to row echelon form in place; returns the pivot
    /// columns (so the rank is their count).
    pub fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // Choose the entry of smallest size as pivot to limit growth.
            let Some(p) = (row..self.rows)
                .filter(|&r| !self.at(r, col).is_zero())
                .min_by_key(|&r| {
                    let v = self.at(r, col);
                    v.numer().abs().bits() + v.denom().bits()
                })
            else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).recip();
            self.scale_row(row, &inv);
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    self.sub_scaled(r, row, &factor, col);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &BigRational) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * factor;
            }
        }
    }

    /// row[r] -= factor * row[src], starting at column `from`.
    fn sub_scaled(&mut self, r: usize, src: usize, factor: &BigRational, from: usize) {
        for c in from..self.cols {
            let s = self.at(src, c).clone();
            if !s.is_zero() {
                let idx = r * self.cols + c;
                self.data[idx] = &self.data[idx] - &(s * factor);
            }
        }
    }

    pub fn rank(mut self) -> usize {
        self.echelonize_forward().len()
    }

    /// Row echelon form without back-substitution: enough for rank, and
    /// roughly half the work of `echelonize`.
    fn echelonize_forward(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows)
                .filter(|&r| !self.at(r, col).is_zero())
                .min_by_key(|&r| {
                    let v = self.at(r, col);
                    v.numer().abs().bits() + v.denom().bits()
                })
            else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).recip();
            self.scale_row(row, &inv);
            for r in row + 1..self.rows {
                if !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    self.sub_scaled(r, row, &factor, col);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// A basis of the right kernel, one vector per free column. The
    /// basis vectors are normalized with 1 in their free coordinate.
    pub fn kernel_basis(mut self) -> Vec<Vec<BigRational>> {
        let pivots = self.echelonize();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![BigRational::zero(); self.cols];
            vec[free] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                // Echelon row r reads x_c + sum(a_j x_j) = 0 over free j.
                vec[c] = -self.at(r, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    pub fn nullity(self) -> usize {
        let cols = self.cols;
        cols - self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn from_rows(rows: &[&[i64]]) -> Matrix {
        let mut m = Matrix::zero(rows.len(), rows[0].len());
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, q(v, 1));
            }
        }
        m
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(from_rows(&[&[1, 0], &[0, 1]]).rank(), 2);
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(from_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]).rank(), 2);
    }

    #[test]
    fn kernel_of_full_rank_map_is_trivial() {
        assert!(from_rows(&[&[1, 1], &[1, -1]]).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let m = from_rows(&[&[1, 2, 3, 4], &[0, 1, 1, 1], &[1, 3, 4, 5]]);
        let basis = m.clone().kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for i in 0..3 {
                let mut acc = q(0, 1);
                for j in 0..4 {
                    acc += m.at(i, j).clone() * v[j].clone();
                }
                assert_eq!(acc, q(0, 1));
            }
        }
    }

    #[test]
    fn rank_plus_nullity_is_columns() {
        let m = from_rows(&[&[2, -1, 0, 7], &[4, -2, 0, 14], &[0, 0, 1, 1]]);
        assert_eq!(m.clone().rank() + m.nullity(), 4);
    }

    #[test]
    fn fractions_stay_exact() {
        let mut m = Matrix::zero(2, 2);
        m.set(0, 0, q(1, 3));
        m.set(0, 1, q(1, 7));
        m.set(1, 0, q(7, 3));
        m.set(1, 1, q(1, 1));
        assert_eq!(m.rank(), 1);
    }
}
