//! Exact dense linear algebra over the Gaussian rationals.
//!
//! Plain Gaussian elimination is enough at desk scale; the field is exact so
//! rank and nullspace computations carry no tolerance.

use crate::scalar::Scalar;

/// A dense matrix stored row-major.
#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Scalar::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].inv().expect("pivot is nonzero");
            for c in col..self.cols {
                self.data[row][c] = &self.data[row][c] * &inv;
            }
            for r in 0..self.rows {
                if r != row && !self.data[r][col].is_zero() {
                    let factor = self.data[r][col].clone();
                    for c in col..self.cols {
                        let sub = &self.data[row][c] * &factor;
                        self.data[r][c] = &self.data[r][c] - &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// A basis of the right nullspace `{v : Mv = 0}`, one vector per free
    /// column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (col, pv) in pivot_set.iter().enumerate() {
                if let Some(r) = pv {
                    v[col] = -&m.data[*r][free];
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rank_and_nullspace() {
        // rows: (1,2,3), (2,4,6), (1,0,1) — rank 2, nullity 1
        let m = Matrix::from_rows(vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(1), s(0), s(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        // check Mv = 0 exactly
        for row in &m.data {
            let mut acc = Scalar::zero();
            for (a, b) in row.iter().zip(&ns[0]) {
                acc += &(a * b);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let m = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(0), s(3)]]);
        assert_eq!(m.rank(), 2);
        assert!(m.nullspace().is_empty());
    }
}
