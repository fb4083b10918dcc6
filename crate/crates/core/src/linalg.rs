//! Exact linear algebra over the rationals: matrices, reduced row
//! echelon form, kernels, subspaces in canonical form, and membership
//! tests. Every operation is exact; there is no pivoting heuristic to
//! tune and no tolerance anywhere.

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};
use num_traits::{One, Zero};
use std::fmt;

/// Coordinate vector relative to a fixed basis.
pub type Vector = Vec<Rational>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

/// The i-th standard basis vector of an n-dimensional space.
pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch in add");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch in sub");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_neg(a: &[Rational]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn vec_is_zero(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "vector length mismatch in dot");
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from complete rows. Errors if the rows are ragged.
    pub fn from_rows(rows: Vec<Vector>) -> Result<Mat> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    r.len(),
                    ncols
                )));
            }
        }
        Ok(Mat { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    /// Integer-literal constructor for tables and tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Mat {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&n| int(n)).collect::<Vector>())
            .collect::<Vec<_>>();
        Mat::from_rows(data).expect("integer rows are rectangular")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
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

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.at(i, j).clone();
        self.set(i, j, cur + v);
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch in add");
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Mat {
        Mat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| c * x).collect() }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in mul");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, l| acc + self.at(i, l) * other.at(l, j))
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix shape mismatch in apply");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { other.at(i, j - self.cols).clone() }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column count mismatch in vstack");
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self.at(i, j).clone() } else { other.at(i - self.rows, j).clone() }
        })
    }

    /// Reduced row echelon form.
    ///
    /// Returns `(rref, rank, pivot_columns)` where pivot columns are
    /// 0-based and strictly increasing. Pivot entries are 1 with zeros
    /// above and below; the input is not modified.
    pub fn rref(&self) -> (Mat, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // find a row at or below r with a nonzero entry in column c
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = Rational::one() / m.at(r, c).clone();
            for j in 0..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j) - &f * m.at(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Kernel of the matrix as a map `R^cols -> R^rows`, in canonical form.
    pub fn kernel(&self) -> Subspace {
        let (r, _, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().peekable();
        let mut pivot_row_of_col = vec![usize::MAX; self.cols];
        for (row, c) in pivots.iter().copied().enumerate() {
            pivot_row_of_col[c] = row;
        }
        for j in 0..self.cols {
            if piv_iter.peek() == Some(&j) {
                piv_iter.next();
                continue;
            }
            // free column j: back-substitute pivot coordinates
            let mut v = zero_vec(self.cols);
            v[j] = Rational::one();
            for &c in &pivots {
                v[c] = -r.at(pivot_row_of_col[c], j).clone();
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// One solution of `self * x = rhs` with free variables set to zero,
    /// or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vector> {
        assert_eq!(self.rows, rhs.len(), "rhs length mismatch in solve");
        let aug = self.hstack(&Mat::from_rows(rhs.iter().map(|x| vec![x.clone()]).collect()).unwrap());
        let (r, _, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (row, c) in pivots.iter().copied().enumerate() {
            x[c] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let (r, _, pivots) = self.hstack(&Mat::identity(n)).rref();
        // invertible exactly when the left block reduces to the identity
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r.at(i, n + j).clone()))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Linear subspace of `R^ambient`, stored as a basis in reduced row
/// echelon form (rows). The canonical form makes structural equality
/// coincide with equality of subspaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Canonicalizes a spanning set: row-reduce and drop zero rows.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vector>) -> Subspace {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        if vectors.is_empty() {
            return Subspace { ambient, basis: Vec::new() };
        }
        let m = Mat::from_rows(vectors).expect("checked lengths above");
        let (r, rank, _) = m.rref();
        let basis = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::from_vectors(ambient, (0..ambient).map(|i| unit_vec(ambient, i)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v` in the stored (canonical) basis, or `None` if
    /// `v` is not in the subspace. Because the basis is in reduced row
    /// echelon form, the coordinate along basis vector i is just the
    /// entry of `v` at that vector's pivot column; the candidate
    /// combination is then verified exactly.
    pub fn membership(&self, v: &[Rational]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch in membership");
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut residual = v.to_vec();
        for b in &self.basis {
            let pivot = b.iter().position(|x| x.is_one()).expect("canonical basis row has a pivot");
            let c = residual[pivot].clone();
            residual = vec_sub(&residual, &vec_scale(&c, b));
            coords.push(c);
        }
        if vec_is_zero(&residual) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.membership(v).is_some()
    }

    /// Intersection, computed from the kernel of the stacked coefficient
    /// matrix `[A^T | -B^T]`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch in intersect");
        let a = self.dim();
        let b = other.dim();
        if a == 0 || b == 0 {
            return Subspace::zero(self.ambient);
        }
        let m = Mat::from_fn(self.ambient, a + b, |i, j| {
            if j < a { self.basis[j][i].clone() } else { -other.basis[j - a][i].clone() }
        });
        let ker = m.kernel();
        let vectors = ker
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = zero_vec(self.ambient);
                for (j, c) in coeffs[..a].iter().enumerate() {
                    v = vec_add(&v, &vec_scale(c, &self.basis[j]));
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.ambient, vectors)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch in sum");
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.clone());
        Subspace::from_vectors(self.ambient, vectors)
    }
}
