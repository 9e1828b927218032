//! Dense exact matrices over a commutative ring, with fraction-free
//! (Bareiss) elimination for ranks.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring operations on borrowed values.
pub trait Ring: Clone + PartialEq + fmt::Debug + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

/// An integral domain where division known to be exact can be carried out.
pub trait Domain: Ring {
    fn div_exact(&self, other: &Self) -> Self;
}

macro_rules! num_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn add_ref(&self, other: &Self) -> Self {
                self + other
            }
            fn sub_ref(&self, other: &Self) -> Self {
                self - other
            }
            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }
            fn neg_ref(&self) -> Self {
                -self
            }
        }
    };
}

num_ring!(BigInt);
num_ring!(BigRational);

impl Domain for BigInt {
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
}

impl Domain for BigRational {
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Matrix<BigRational>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a `rows × cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.mul_ref(c))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m[(ii, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add_ref(&self[(i, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank and pivot columns by Bareiss fraction-free elimination.
///
/// Pivot columns are the first column of each pivot in left-to-right order;
/// the corresponding columns of the input are linearly independent and span
/// its column space over the fraction field.
pub fn bareiss<T: Domain>(m: &Matrix<T>) -> (usize, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = T::one();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..cols {
                a.data.swap(p * cols + j, row * cols + j);
            }
        }
        let piv = a[(row, col)].clone();
        for i in row + 1..rows {
            let lead = a[(i, col)].clone();
            for j in col + 1..cols {
                let v = piv.mul_ref(&a[(i, j)]).sub_ref(&lead.mul_ref(&a[(row, j)]));
                a[(i, j)] = v.div_exact(&prev);
            }
            a[(i, col)] = T::zero();
        }
        prev = piv;
        pivots.push(col);
        row += 1;
    }
    (row, pivots)
}

pub fn rank<T: Domain>(m: &Matrix<T>) -> usize {
    bareiss(m).0
}

/// Scales each row by the lcm of its denominators, giving an integer matrix
/// with the same row space.
pub fn clear_denominators(m: &RationalMatrix) -> Matrix<BigInt> {
    let mut out = Matrix::<BigInt>::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        let l = m
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        for j in 0..m.cols {
            let q = &m[(i, j)];
            out[(i, j)] = q.numer() * (&l / q.denom());
        }
    }
    out
}

/// Exact rank of a rational matrix, fraction-free over the integers.
pub fn rational_rank(m: &RationalMatrix) -> usize {
    rank(&clear_denominators(m))
}

/// Indices of a maximal linearly independent set of columns.
pub fn rational_pivot_columns(m: &RationalMatrix) -> Vec<usize> {
    bareiss(&clear_denominators(m)).1
}

/// Inverse of a square rational matrix by Gauss–Jordan, if invertible.
pub fn rational_inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.hstack(&Matrix::identity(n));
    let w = 2 * n;
    for col in 0..n {
        let p = (col..n).find(|&i| !Zero::is_zero(&a[(i, col)]))?;
        if p != col {
            for j in 0..w {
                a.data.swap(p * w + j, col * w + j);
            }
        }
        let inv = a[(col, col)].recip();
        for j in 0..w {
            a[(col, j)] = &a[(col, j)] * &inv;
        }
        for i in 0..n {
            if i == col || Zero::is_zero(&a[(i, col)]) {
                continue;
            }
            let f = a[(i, col)].clone();
            for j in 0..w {
                let v = &a[(i, j)] - &f * &a[(col, j)];
                a[(i, j)] = v;
            }
        }
    }
    let cols: Vec<usize> = (n..w).collect();
    Some(a.select_columns(&cols))
}

/// A left inverse `L` (with `L·B = I`) of a rational matrix with independent
/// columns, supported on a set of pivot rows of `B`.
pub fn rational_left_inverse(b: &RationalMatrix) -> Option<RationalMatrix> {
    let r = b.cols;
    let pivot_rows = rational_pivot_columns(&b.transpose());
    if pivot_rows.len() != r {
        return None;
    }
    let square = b.select_rows(&pivot_rows);
    let inv = rational_inverse(&square)?;
    let mut l = RationalMatrix::zeros(r, b.rows);
    for i in 0..r {
        for (jj, &j) in pivot_rows.iter().enumerate() {
            l[(i, j)] = inv[(i, jj)].clone();
        }
    }
    Some(l)
}
