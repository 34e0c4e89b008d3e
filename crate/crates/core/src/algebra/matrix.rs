#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{denominator_lcm, AlgebraError, Rat};

/// Dense rectangular matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Integer row-echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> RatMatrix {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        RatMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    /// Builds from rows; all rows must have length `cols`. An empty row list
    /// gives a `0 × cols` matrix.
    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Result<RatMatrix, AlgebraError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(AlgebraError::Dimension(format!(
                    "row {i} has length {} but {cols} columns were expected",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(RatMatrix::new(n, cols, data))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        RatMatrix::new(self.cols, self.rows, data)
    }

    /// Submatrix formed by the given rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> RatMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        RatMatrix::new(idx.len(), self.cols, data)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = Rat::from_integer(denominator_lcm(row));
                row.iter().map(|x| (x * &l).to_integer()).collect()
            })
            .collect()
    }

    /// Bareiss elimination on the row-scaled integer matrix. Row scaling
    /// preserves rank, kernel and pivot columns.
    fn echelon(&self) -> Echelon {
        let mut m = self.integer_rows();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                swaps += 1;
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = v / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon {
            rows: m,
            pivots,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel. Each basis vector has a 1 in one free
    /// column and 0 in the others, so the basis is determined by the matrix.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Rat::zero(); self.cols];
            x[f] = Rat::one();
            for (i, &p) in e.pivots.iter().enumerate().rev() {
                let mut s = Rat::zero();
                for j in p + 1..self.cols {
                    if !e.rows[i][j].is_zero() && !x[j].is_zero() {
                        s += Rat::from_integer(e.rows[i][j].clone()) * &x[j];
                    }
                }
                x[p] = -s / Rat::from_integer(e.rows[i][p].clone());
            }
            basis.push(x);
        }
        basis
    }

    pub fn det(&self) -> Result<Rat, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let e = self.echelon();
        if e.pivots.len() < n {
            return Ok(Rat::zero());
        }
        let scale: BigInt = (0..n).map(|i| denominator_lcm(self.row(i))).product();
        let mut d = Rat::new(e.rows[n - 1][n - 1].clone(), scale);
        if e.swaps % 2 == 1 {
            d = -d;
        }
        Ok(d)
    }

    /// Unique solution of `self · x = b`, or `None` if the system is singular
    /// or inconsistent. Requires a square matrix.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        if self.rows != self.cols || b.len() != self.rows {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(p, c);
            let inv = a[c][c].recip();
            for j in c..=n {
                a[c][j] = &a[c][j] * &inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..=n {
                        let v = &a[c][j] * &f;
                        a[i][j] -= v;
                    }
                }
            }
        }
        Some(a.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
    }

    /// Reduced row echelon form with zero rows dropped; equal row spaces give
    /// equal results.
    pub fn rref(&self) -> RatMatrix {
        let mut a = self.row_vecs();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..self.cols {
                        let v = &a[r][j] * &f;
                        a[i][j] -= v;
                    }
                }
            }
            r += 1;
        }
        a.truncate(r);
        RatMatrix::from_rows(a, self.cols).expect("same width")
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.rows;
        if self.cols != n {
            return None;
        }
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            cols.push(self.solve(&e)?);
        }
        let mut out = RatMatrix::zeros(n, n);
        for (j, c) in cols.into_iter().enumerate() {
            for (i, v) in c.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        RatMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(RatMatrix::identity(3).nullspace().is_empty());
        assert_eq!(RatMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn single_row_kernel() {
        assert_eq!(m(&[&[1, -1]]).nullspace(), vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).det().unwrap(), int(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), int(0));
        let r = RatMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(3), rat(2, 3)]], 2).unwrap();
        assert_eq!(r.det().unwrap(), rat(1, 3));
        let a = m(&[&[0, 2, 1], &[3, 0, -1], &[1, 1, 1]]);
        assert_eq!(a.det().unwrap(), int(-5));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(a.solve(&[int(3), int(5)]).unwrap(), vec![rat(4, 5), rat(7, 5)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).solve(&[int(1), int(1)]).is_none());
    }

    #[test]
    fn rank_deficient_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
    }
}
