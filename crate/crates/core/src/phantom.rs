//! The double of a compatible pair: from a product family on the dual
//! space and a product matrix on the base space, build one bracket on
//! `p + (p*)^k` together with its k canonical two-forms, and check the
//! two cocycle conditions that characterize when that bracket satisfies
//! Jacobi.
//!
//! Basis layout of the double: base vectors `e_1..e_n` first, then copy
//! A of the dual basis at indices `n + A*n .. n + (A+1)*n`.

use crate::error::{Error, Result};
use crate::lie::{check_one_cocycle, AxiomReport, LieBracket, Representation};
use crate::linalg::{unit_vec, zero_vec, Mat, Subspace};
use crate::lsa::{Klsa, KxkLsa};
use crate::multilinear::{BilinearProduct, TwoForm};
use crate::scalar::{int, Rational};

/// Lie-algebra candidate on `p + (p*)^k` with its canonical two-forms
/// `rho^A(a + p, b + q) = <a_A, q> - <b_A, p>`.
#[derive(Clone, Debug)]
pub struct PhantomAlgebra {
    n: usize,
    k: usize,
    bracket: LieBracket,
    rhos: Vec<TwoForm>,
}

impl PhantomAlgebra {
    /// Attaches the canonical forms to a bracket already laid out on
    /// `p` followed by k copies of its dual.
    pub fn from_bracket(n: usize, k: usize, bracket: LieBracket) -> Result<PhantomAlgebra> {
        if bracket.dim() != n * (k + 1) {
            return Err(Error::DimensionMismatch(format!(
                "bracket lives in dimension {}, layout wants {}",
                bracket.dim(),
                n * (k + 1)
            )));
        }
        let rhos = standard_forms(n, k);
        Ok(PhantomAlgebra { n, k, bracket, rhos })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n * (self.k + 1)
    }

    pub fn bracket(&self) -> &LieBracket {
        &self.bracket
    }

    pub fn rhos(&self) -> &[TwoForm] {
        &self.rhos
    }

    pub fn rho(&self, alpha: usize) -> &TwoForm {
        &self.rhos[alpha]
    }

    /// The dual copies, spanned by the last `n * k` basis vectors.
    pub fn h_subspace(&self) -> Subspace {
        let big = self.dim();
        Subspace::from_vectors(big, (self.n..big).map(|i| unit_vec(big, i)).collect())
    }

    /// The base space, spanned by the first n basis vectors.
    pub fn p_subspace(&self) -> Subspace {
        let big = self.dim();
        Subspace::from_vectors(big, (0..self.n).map(|i| unit_vec(big, i)).collect())
    }
}

/// Builds the double bracket
/// `[a, b] = a o b - b o a`, `[p, q]` from the product matrix, and
/// `[a, p] = phi_a^*(p) - psi_p^*(a)`, plus the canonical two-forms.
pub fn build_phantom(family: &Klsa, matrix: &KxkLsa) -> Result<PhantomAlgebra> {
    let (n, k) = check_shapes(family, matrix)?;
    let nk = n * k;
    let big = n * (k + 1);
    let mut prod = BilinearProduct::zero(big);

    for i in 0..n {
        for j in 0..n {
            let mut v = zero_vec(big);
            v[..n].clone_from_slice(matrix.bracket().basis_bracket(i, j));
            prod.set_basis_product(i, j, v);
        }
    }

    let comm = family.build_circ().commutator_product();
    for u in 0..nk {
        for w in 0..nk {
            let mut v = zero_vec(big);
            v[n..].clone_from_slice(comm.basis_product(u, w));
            prod.set_basis_product(n + u, n + w, v);
        }
    }

    let psis: Vec<Mat> = (0..n).map(|j| matrix.psi_of(&unit_vec(n, j))).collect();
    for u in 0..nk {
        let (a, i) = (u / n, u % n);
        let l_ai = family.product(a).left_mult(i);
        for j in 0..n {
            let mut v = zero_vec(big);
            for l in 0..n {
                v[l] = -l_ai.at(j, l).clone();
            }
            for w in 0..nk {
                v[n + w] = psis[j].at(u, w).clone();
            }
            let minus: Vec<Rational> = v.iter().map(|x| -x).collect();
            prod.set_basis_product(n + u, j, v);
            prod.set_basis_product(j, n + u, minus);
        }
    }

    PhantomAlgebra::from_bracket(n, k, LieBracket::new(prod)?)
}

/// The canonical two-forms of the layout: copy A of the dual basis
/// wedged against the matching base vectors.
pub fn standard_forms(n: usize, k: usize) -> Vec<TwoForm> {
    let big = n * (k + 1);
    (0..k)
        .map(|a| {
            let terms: Vec<(usize, usize, Rational)> =
                (0..n).map(|s| (n + a * n + s, s, int(1))).collect();
            TwoForm::from_wedge_terms(big, &terms).expect("indices stay in range")
        })
        .collect()
}

/// Everything the compatibility test looks at, computed on one
/// pair of structures: the axioms of both inputs, the two cocycle
/// conditions, and Jacobi for the double bracket.
#[derive(Clone, Debug)]
pub struct CompatibilityOutcome {
    pub family_axioms: AxiomReport,
    pub matrix_axioms: AxiomReport,
    pub phi_cocycle: AxiomReport,
    pub psi_cocycle: AxiomReport,
    pub double_jacobi: AxiomReport,
}

impl CompatibilityOutcome {
    pub fn structures_valid(&self) -> bool {
        self.family_axioms.passed() && self.matrix_axioms.passed()
    }

    pub fn cocycles_pass(&self) -> bool {
        self.phi_cocycle.passed() && self.psi_cocycle.passed()
    }

    pub fn compatible(&self) -> bool {
        self.structures_valid() && self.cocycles_pass()
    }

    /// For valid structures the cocycle conditions must hold exactly
    /// when the double satisfies Jacobi; invalid structures are outside
    /// that equivalence and trivially consistent.
    pub fn consistent(&self) -> bool {
        !self.structures_valid() || (self.cocycles_pass() == self.double_jacobi.passed())
    }
}

/// Runs all compatibility checks for a family on the dual space and a
/// product matrix on the base space of the same dimension and length.
pub fn check_compatibility(family: &Klsa, matrix: &KxkLsa) -> Result<CompatibilityOutcome> {
    check_shapes(family, matrix)?;
    let phantom = build_phantom(family, matrix)?;
    let (phi_cocycle, psi_cocycle) = cocycle_conditions(family, matrix);
    Ok(CompatibilityOutcome {
        family_axioms: family.check(),
        matrix_axioms: matrix.check(),
        phi_cocycle,
        psi_cocycle,
        double_jacobi: phantom.bracket.check_jacobi(),
    })
}

fn check_shapes(family: &Klsa, matrix: &KxkLsa) -> Result<(usize, usize)> {
    if family.dim() != matrix.dim() {
        return Err(Error::DimensionMismatch(format!(
            "family lives in dimension {}, product matrix in dimension {}",
            family.dim(),
            matrix.dim()
        )));
    }
    if family.k() != matrix.k() {
        return Err(Error::DimensionMismatch(format!(
            "family has {} products, product matrix is {}x{}",
            family.k(),
            matrix.k(),
            matrix.k()
        )));
    }
    Ok((family.dim(), family.k()))
}

/// The two cocycle conditions behind [`check_compatibility`], both
/// phrased through [`check_one_cocycle`] on the tensor-product
/// representations.
pub fn cocycle_conditions(family: &Klsa, matrix: &KxkLsa) -> (AxiomReport, AxiomReport) {
    let n = family.dim();
    let k = family.k();
    let nk = n * k;

    // the dual of phi as a map from the base space into (base^k x base),
    // flattened as (U, X) -> U*n + X
    let theta1 = Mat::from_fn(nk * n, n, |row, j| {
        let (u, x) = (row / n, row % n);
        let (a, i) = (u / n, u % n);
        family.product(a).left_mult(i).at(j, x).clone()
    });
    let psis: Vec<Mat> = (0..n).map(|t| matrix.psi_of(&unit_vec(n, t))).collect();
    let ads1: Vec<Mat> = (0..n).map(|t| matrix.bracket().ad(t)).collect();
    let rep1 = Representation::new(
        (0..n)
            .map(|t| {
                Mat::from_fn(nk * n, nk * n, |r, c| {
                    let (v, y) = (r / n, r % n);
                    let (u, x) = (c / n, c % n);
                    let mut e = Rational::from_integer(0.into());
                    if x == y {
                        e += psis[t].at(v, u);
                    }
                    if u == v {
                        e += ads1[t].at(y, x);
                    }
                    e
                })
            })
            .collect(),
    )
    .expect("square matrices");
    let phi_cocycle = check_one_cocycle(matrix.bracket(), &rep1, &theta1);

    // the dual of psi as a map from the k dual copies into
    // (dual x dual^k), flattened as (X, U) -> X*nk + U
    let theta2 = Mat::from_fn(n * nk, nk, |row, w| {
        let (x, u) = (row / nk, row % nk);
        psis[x].at(w, u).clone()
    });
    let circ = family.circ_bracket();
    let phi = family.build_phi();
    let rep2 = Representation::new(
        (0..nk)
            .map(|w| {
                let ad_w = circ.ad(w);
                Mat::from_fn(n * nk, n * nk, |r, c| {
                    let (y, v) = (r / nk, r % nk);
                    let (x, u) = (c / nk, c % nk);
                    let mut e = Rational::from_integer(0.into());
                    if u == v {
                        e += phi.rho(w).at(y, x);
                    }
                    if x == y {
                        e += ad_w.at(v, u);
                    }
                    e
                })
            })
            .collect(),
    )
    .expect("square matrices");
    let psi_cocycle = check_one_cocycle(&circ, &rep2, &theta2);

    (phi_cocycle, psi_cocycle)
}
