//! Dense matrices over an arbitrary commutative ring, with exact
//! Gauss-Jordan inversion and nullspaces over fields.

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zero(rows: usize, cols: usize) -> Matrix<R> {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix<R> {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Matrix<R> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Matrix<R> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    /// Row-major flattening; the vec(.) used by the isotypic machinery.
    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<R>) -> Matrix<R> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix<R> {
        self.map(|v| v.neg())
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        self.map(|v| v.mul(c))
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix mul");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = R::zero();
            for t in 0..self.cols {
                acc = acc.add(&self.get(i, t).mul(other.get(t, j)));
            }
            acc
        })
    }

    pub fn commutator(&self, other: &Matrix<R>) -> Matrix<R> {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }
}

impl<R: Field> Matrix<R> {
    /// Gauss-Jordan inverse; errors on singular input.
    pub fn inverse(&self) -> Result<Matrix<R>> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Matrix::<R>::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(pivot, j).clone(), a.get(col, j).clone());
                    a.set(pivot, j, y);
                    a.set(col, j, x);
                    let (x, y) = (b.get(pivot, j).clone(), b.get(col, j).clone());
                    b.set(pivot, j, y);
                    b.set(col, j, x);
                }
            }
            let inv = a.get(col, col).inv().ok_or(Error::SingularMatrix)?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&inv));
                b.set(col, j, b.get(col, j).mul(&inv));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let av = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, av);
                    let bv = b.get(r, j).sub(&factor.mul(b.get(col, j)));
                    b.set(r, j, bv);
                }
            }
        }
        Ok(b)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<R>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    let (x, y) = (a.get(p, j).clone(), a.get(r, j).clone());
                    a.set(p, j, y);
                    a.set(r, j, x);
                }
            }
            let inv = a.get(r, c).inv().unwrap();
            for j in 0..cols {
                a.set(r, j, a.get(r, j).mul(&inv));
            }
            for i in 0..rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c).clone();
                for j in 0..cols {
                    let v = a.get(i, j).sub(&factor.mul(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![R::zero(); cols];
            v[free] = R::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = a.get(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}
