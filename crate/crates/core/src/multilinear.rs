//! Bilinear products, antisymmetric two-forms and the wedge of two
//! covectors, all relative to a fixed basis of `R^n`.
//!
//! A linear map is just its matrix in the column convention: entry
//! `(i, j)` is the coefficient of basis vector i in the image of basis
//! vector j, so matrices act on coordinate columns by `Mat::apply`.

use crate::error::{Error, Result};
use crate::linalg::{dot, vec_add, vec_scale, vec_sub, zero_vec, Mat, Vector};
use crate::scalar::Rational;
use num_traits::Zero;

/// Matrix of a linear map in the column convention.
pub type LinearMap = Mat;

/// Matrix of the dual map on covectors, `gamma -> -gamma . f`, written
/// in the dual basis.
pub fn dual_map(f: &Mat) -> Mat {
    f.transpose().neg()
}

/// Bilinear product on `R^dim`, stored as structure coefficients:
/// `coeffs[i][j][l]` is the coefficient of basis vector l in the
/// product of basis vectors i and j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearProduct {
    dim: usize,
    coeffs: Vec<Vec<Vector>>,
}

impl BilinearProduct {
    pub fn zero(dim: usize) -> BilinearProduct {
        BilinearProduct { dim, coeffs: vec![vec![zero_vec(dim); dim]; dim] }
    }

    /// Builds a product from sparse terms `(i, j, l, c)` meaning the
    /// product of basis vectors i and j contains `c` times basis
    /// vector l. Indices are 0-based; repeated terms accumulate.
    pub fn from_terms(dim: usize, terms: &[(usize, usize, usize, Rational)]) -> Result<BilinearProduct> {
        let mut p = BilinearProduct::zero(dim);
        for (i, j, l, c) in terms {
            for (name, idx) in [("left factor", i), ("right factor", j), ("target", l)] {
                if *idx >= dim {
                    return Err(Error::IndexOutOfRange(format!(
                        "{} index {} in a product term, dimension is {}",
                        name,
                        idx + 1,
                        dim
                    )));
                }
            }
            p.coeffs[*i][*j][*l] += c;
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The product of basis vectors i and j, as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.coeffs[i][j]
    }

    pub fn set_basis_product(&mut self, i: usize, j: usize, v: Vector) {
        assert_eq!(v.len(), self.dim, "basis product has wrong length");
        self.coeffs[i][j] = v;
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        assert_eq!(x.len(), self.dim, "left factor has wrong length");
        assert_eq!(y.len(), self.dim, "right factor has wrong length");
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                out = vec_add(&out, &vec_scale(&c, &self.coeffs[i][j]));
            }
        }
        out
    }

    /// Matrix of left multiplication by basis vector i.
    pub fn left_mult(&self, i: usize) -> Mat {
        Mat::from_fn(self.dim, self.dim, |l, j| self.coeffs[i][j][l].clone())
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_mult_of(&self, a: &[Rational]) -> Mat {
        assert_eq!(a.len(), self.dim, "element has wrong length");
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                m = m.add(&self.left_mult(i).scale(ai));
            }
        }
        m
    }

    /// Matrix of right multiplication by basis vector j.
    pub fn right_mult(&self, j: usize) -> Mat {
        Mat::from_fn(self.dim, self.dim, |l, i| self.coeffs[i][j][l].clone())
    }

    pub fn associator(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        vec_sub(&self.apply(&self.apply(x, y), z), &self.apply(x, &self.apply(y, z)))
    }

    /// The commutator product `x . y - y . x`.
    pub fn commutator_product(&self) -> BilinearProduct {
        let mut p = BilinearProduct::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                p.coeffs[i][j] = vec_sub(&self.coeffs[i][j], &self.coeffs[j][i]);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|v| v.iter().all(|c| c.is_zero()))
    }

    /// Sparse terms `(i, j, l, c)` in lexicographic order, 0-based.
    pub fn terms(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for l in 0..self.dim {
                    let c = &self.coeffs[i][j][l];
                    if !c.is_zero() {
                        out.push((i, j, l, c.clone()));
                    }
                }
            }
        }
        out
    }
}

/// Antisymmetric bilinear form on `R^dim`. The constructor rejects a
/// matrix that is not antisymmetric, so the invariant always holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoForm {
    m: Mat,
}

impl TwoForm {
    pub fn new(m: Mat) -> Result<TwoForm> {
        assert_eq!(m.nrows(), m.ncols(), "two-form matrix must be square");
        for i in 0..m.nrows() {
            for j in i..m.ncols() {
                if !(m.at(i, j) + m.at(j, i)).is_zero() {
                    return Err(Error::NotAntisymmetric { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(TwoForm { m })
    }

    pub fn zero(dim: usize) -> TwoForm {
        TwoForm { m: Mat::zeros(dim, dim) }
    }

    /// The wedge `a* ^ b*` of two covectors given in dual coordinates:
    /// `(a ^ b)(x, y) = a(x) b(y) - a(y) b(x)`.
    pub fn wedge(a: &[Rational], b: &[Rational]) -> TwoForm {
        assert_eq!(a.len(), b.len(), "covector length mismatch in wedge");
        let n = a.len();
        TwoForm { m: Mat::from_fn(n, n, |i, j| &a[i] * &b[j] - &a[j] * &b[i]) }
    }

    /// Builds `sum c . e_i* ^ e_j*` from sparse terms `(i, j, c)`,
    /// 0-based.
    pub fn from_wedge_terms(dim: usize, terms: &[(usize, usize, Rational)]) -> Result<TwoForm> {
        let mut m = Mat::zeros(dim, dim);
        for (i, j, c) in terms {
            for idx in [i, j] {
                if *idx >= dim {
                    return Err(Error::IndexOutOfRange(format!(
                        "index {} in a wedge term, dimension is {}",
                        idx + 1,
                        dim
                    )));
                }
            }
            if i == j {
                continue;
            }
            m.add_at(*i, *j, c);
            m.add_at(*j, *i, &-c);
        }
        Ok(TwoForm { m })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.m.apply(y))
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        TwoForm { m: self.m.add(&other.m) }
    }

    pub fn sub(&self, other: &TwoForm) -> TwoForm {
        TwoForm { m: self.m.sub(&other.m) }
    }

    pub fn scale(&self, c: &Rational) -> TwoForm {
        TwoForm { m: self.m.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// Sparse wedge terms `(i, j, c)` with `i < j`, 0-based.
    pub fn wedge_terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let c = self.m.at(i, j);
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }
}
