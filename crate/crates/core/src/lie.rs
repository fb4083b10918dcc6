//! Lie brackets, finite-dimensional representations, one-cocycles, and
//! the axiom reports the verifiers produce.
//!
//! Checks never abort on the first violation: they collect every
//! failing basis witness so a report shows the full extent of a
//! failure. Witness indices in reports are 1-based.

use crate::error::{Error, Result};
use crate::linalg::{vec_add, vec_is_zero, vec_sub, Mat, Subspace, Vector};
use crate::multilinear::BilinearProduct;
use crate::scalar::Rational;
use num_traits::Zero;

/// One violated axiom instance: which axiom, at which basis witness,
/// with the exact nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub residual: String,
}

/// Outcome of a verification: empty means every axiom held.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn ok() -> AxiomReport {
        AxiomReport::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn push(&mut self, axiom: &str, witness: Vec<usize>, residual: String) {
        self.failures.push(AxiomFailure { axiom: axiom.to_string(), witness, residual });
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.failures.extend(other.failures);
    }
}

pub fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn fmt_mat(m: &Mat) -> String {
    let rows: Vec<String> = (0..m.nrows()).map(|i| fmt_vec(m.row(i)).replace('(', "[").replace(')', "]")).collect();
    format!("[{}]", rows.join(", "))
}

/// Antisymmetry and the Jacobi identity for a raw bilinear product,
/// checked on basis vectors.
pub fn check_lie(p: &BilinearProduct) -> AxiomReport {
    let n = p.dim();
    let mut report = AxiomReport::ok();
    for i in 0..n {
        for j in i..n {
            let s = vec_add(p.basis_product(i, j), p.basis_product(j, i));
            if !vec_is_zero(&s) {
                report.push("antisymmetry", vec![i + 1, j + 1], fmt_vec(&s));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let r = jacobiator(p, i, j, l);
                if !vec_is_zero(&r) {
                    report.push("jacobi", vec![i + 1, j + 1, l + 1], fmt_vec(&r));
                }
            }
        }
    }
    report
}

fn jacobiator(p: &BilinearProduct, i: usize, j: usize, l: usize) -> Vector {
    let n = p.dim();
    let e = |k: usize| crate::linalg::unit_vec(n, k);
    let a = p.apply(p.basis_product(i, j), &e(l));
    let b = p.apply(p.basis_product(j, l), &e(i));
    let c = p.apply(p.basis_product(l, i), &e(j));
    vec_add(&vec_add(&a, &b), &c)
}

/// Lie bracket on `R^dim`. Antisymmetry is enforced at construction;
/// the Jacobi identity is a property to verify, not an invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieBracket {
    product: BilinearProduct,
}

impl LieBracket {
    pub fn new(product: BilinearProduct) -> Result<LieBracket> {
        let n = product.dim();
        for i in 0..n {
            for j in i..n {
                let s = vec_add(product.basis_product(i, j), product.basis_product(j, i));
                if !vec_is_zero(&s) {
                    return Err(Error::NotAntisymmetric { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(LieBracket { product })
    }

    pub fn from_terms(dim: usize, terms: &[(usize, usize, usize, Rational)]) -> Result<LieBracket> {
        LieBracket::new(BilinearProduct::from_terms(dim, terms)?)
    }

    /// Builds the bracket from terms for pairs `i < j` only, filling in
    /// the opposite pairs by antisymmetry.
    pub fn from_upper_terms(dim: usize, terms: &[(usize, usize, usize, Rational)]) -> Result<LieBracket> {
        let mut full = Vec::with_capacity(terms.len() * 2);
        for (i, j, l, c) in terms {
            if i >= j {
                return Err(Error::InvalidInput(format!(
                    "bracket term for pair ({}, {}) is not upper-triangular",
                    i + 1,
                    j + 1
                )));
            }
            full.push((*i, *j, *l, c.clone()));
            full.push((*j, *i, *l, -c.clone()));
        }
        LieBracket::from_terms(dim, &full)
    }

    pub fn abelian(dim: usize) -> LieBracket {
        LieBracket { product: BilinearProduct::zero(dim) }
    }

    pub fn dim(&self) -> usize {
        self.product.dim()
    }

    pub fn product(&self) -> &BilinearProduct {
        &self.product
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.product.apply(x, y)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        self.product.basis_product(i, j)
    }

    /// Adjoint action of basis vector i.
    pub fn ad(&self, i: usize) -> Mat {
        self.product.left_mult(i)
    }

    pub fn ad_of(&self, x: &[Rational]) -> Mat {
        self.product.left_mult_of(x)
    }

    pub fn check_jacobi(&self) -> AxiomReport {
        let n = self.dim();
        let mut report = AxiomReport::ok();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let r = jacobiator(&self.product, i, j, l);
                    if !vec_is_zero(&r) {
                        report.push("jacobi", vec![i + 1, j + 1, l + 1], fmt_vec(&r));
                    }
                }
            }
        }
        report
    }

    /// Checks that a subspace is closed under the bracket.
    pub fn check_subalgebra(&self, s: &Subspace) -> AxiomReport {
        let mut report = AxiomReport::ok();
        for (i, u) in s.basis().iter().enumerate() {
            for (j, v) in s.basis().iter().enumerate().skip(i + 1) {
                let b = self.bracket(u, v);
                if !s.contains(&b) {
                    report.push("subalgebra-closure", vec![i + 1, j + 1], fmt_vec(&b));
                }
            }
        }
        report
    }
}

/// Representation of a Lie algebra on `R^dim_space`, given by one
/// matrix per basis vector of the algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    mats: Vec<Mat>,
}

impl Representation {
    pub fn new(mats: Vec<Mat>) -> Result<Representation> {
        let Some(first) = mats.first() else {
            return Err(Error::InvalidInput("a representation needs at least one matrix".into()));
        };
        let d = first.nrows();
        for (i, m) in mats.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "representation matrix {} is {}x{}, expected {}x{}",
                    i + 1,
                    m.nrows(),
                    m.ncols(),
                    d,
                    d
                )));
            }
        }
        Ok(Representation { mats })
    }

    pub fn dim_algebra(&self) -> usize {
        self.mats.len()
    }

    pub fn dim_space(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn rho(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    pub fn rho_of(&self, x: &[Rational]) -> Mat {
        assert_eq!(x.len(), self.mats.len(), "element has wrong length");
        let d = self.dim_space();
        let mut out = Mat::zeros(d, d);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.mats[i].scale(c));
            }
        }
        out
    }

    /// Checks `rho([x, y]) = rho(x) rho(y) - rho(y) rho(x)` on basis
    /// pairs.
    pub fn check(&self, g: &LieBracket) -> AxiomReport {
        assert_eq!(g.dim(), self.mats.len(), "algebra dimension mismatch");
        let mut report = AxiomReport::ok();
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = self.rho_of(g.basis_bracket(i, j));
                let rhs = self.mats[i].commutator(&self.mats[j]);
                let r = lhs.sub(&rhs);
                if !r.is_zero() {
                    report.push("representation", vec![i + 1, j + 1], fmt_mat(&r));
                }
            }
        }
        report
    }
}

/// Checks that a linear map `theta: g -> V` is a one-cocycle of a
/// representation: `theta([x, y]) = rho(x) theta(y) - rho(y) theta(x)`
/// on basis pairs. `theta` is a `dim_space x dim_algebra` matrix in the
/// column convention.
pub fn check_one_cocycle(g: &LieBracket, rep: &Representation, theta: &Mat) -> AxiomReport {
    assert_eq!(g.dim(), rep.dim_algebra(), "algebra dimension mismatch");
    assert_eq!(theta.ncols(), g.dim(), "cocycle domain mismatch");
    assert_eq!(theta.nrows(), rep.dim_space(), "cocycle target mismatch");
    let mut report = AxiomReport::ok();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let lhs = theta.apply(g.basis_bracket(i, j));
            let rhs = vec_sub(&rep.rho(i).apply(&theta.col(j)), &rep.rho(j).apply(&theta.col(i)));
            let r = vec_sub(&lhs, &rhs);
            if !vec_is_zero(&r) {
                report.push("one-cocycle", vec![i + 1, j + 1], fmt_vec(&r));
            }
        }
    }
    report
}
