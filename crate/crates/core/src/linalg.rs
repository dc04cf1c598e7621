//! Dense matrices over a coefficient ring, with Gaussian elimination when
//! the ring is a field. Used as the brute-force oracle behind kernel,
//! rank and duality certificates.

use std::fmt;

use crate::ring::Ring;

#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(proto: &R, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![proto.zero_like(); rows * cols],
        }
    }

    pub fn identity(proto: &R, n: usize) -> Self {
        Self::from_fn(
            proto,
            n,
            n,
            |i, j| {
                if i == j {
                    proto.one_like()
                } else {
                    proto.zero_like()
                }
            },
        )
    }

    pub fn from_fn(_proto: &R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(proto: &R, rows: usize, columns: &[Vec<R>]) -> Self {
        Self::from_fn(proto, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimensions do not agree");
        let zero = self.data.first().or(other.data.first()).map(R::zero_like);
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = zero.clone().expect("nonempty matrix");
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                data.push(acc);
            }
        }
        Self {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "vector length does not match");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a.clone() * b.clone())
                    .reduce(|a, b| a + b)
                    .unwrap_or_else(|| v[0].zero_like())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .reduce(|a, b| a + b)
            .expect("nonempty matrix")
    }

    /// Reduced row echelon form and its pivot columns. Requires every
    /// nonzero entry met during elimination to be invertible, which holds
    /// over a field.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).try_inv().expect("elimination over a field");
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - factor.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : A v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<R>> {
        let Some(proto) = self.data.first() else {
            return Vec::new();
        };
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![proto.zero_like(); self.cols];
                v[f] = proto.one_like();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[R]) -> Option<Vec<R>> {
        assert_eq!(self.rows, b.len(), "right-hand side has the wrong length");
        let proto = b.first()?.clone();
        let augmented = Self::from_fn(&proto, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (m, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![proto.zero_like(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let proto = self.data.first()?.clone();
        let n = self.rows;
        let augmented = Self::from_fn(&proto, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                proto.one_like()
            } else {
                proto.zero_like()
            }
        });
        let (m, pivots) = augmented.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(&proto, n, n, |i, j| m.get(i, n + j).clone()))
    }
}

/// Whether `v` is a nonzero scalar multiple of `w`; returns the scalar.
pub fn proportional<R: Ring>(v: &[R], w: &[R]) -> Option<R> {
    let i = w.iter().position(|x| !x.is_zero())?;
    let c = v[i].clone() * w[i].try_inv()?;
    if c.is_zero() {
        return None;
    }
    v.iter().zip(w).all(|(a, b)| *a == c.clone() * b.clone()).then_some(c)
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Fq, FqElem};

    fn f7(rows: &[&[i64]]) -> Matrix<FqElem> {
        let z = Fq::new(7, 1).unwrap().zero();
        Matrix::from_fn(&z, rows.len(), rows[0].len(), |i, j| z.from_int_like(rows[i][j]))
    }

    #[test]
    fn rank_and_nullspace() {
        let m = f7(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_round_trip() {
        let m = f7(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        let z = m.get(0, 0).zero_like();
        assert_eq!(m.mul(&inv), Matrix::identity(&z, 2));
        assert!(f7(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = f7(&[&[1, 1], &[2, 2]]);
        let z = m.get(0, 0).zero_like();
        let b = vec![z.from_int_like(3), z.from_int_like(6)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        assert!(m.solve(&[z.from_int_like(1), z.from_int_like(1)]).is_none());
    }

    #[test]
    fn proportional_vectors() {
        let z = Fq::new(5, 1).unwrap().zero();
        let v: Vec<_> = [2, 4, 0].iter().map(|&x| z.from_int_like(x)).collect();
        let w: Vec<_> = [1, 2, 0].iter().map(|&x| z.from_int_like(x)).collect();
        assert_eq!(proportional(&v, &w), Some(z.from_int_like(2)));
        let u: Vec<_> = [1, 3, 0].iter().map(|&x| z.from_int_like(x)).collect();
        assert_eq!(proportional(&u, &w), None);
    }
}
