//! Left-symmetric structures: families of left-symmetric products tied
//! together by a mixed identity, square matrices of products with a
//! common commutator bracket, and the derivation-based construction of
//! compatible product families on a commutative associative algebra.

use crate::error::{Error, Result};
use crate::lie::{fmt_mat, fmt_vec, AxiomReport, LieBracket, Representation};
use crate::linalg::{unit_vec, vec_is_zero, vec_sub, Mat, Vector};
use crate::multilinear::BilinearProduct;
use crate::scalar::Rational;

/// Checks `ass(x, y, z) = ass(y, x, z)` on basis triples, where
/// `ass(x, y, z) = (x . y) . z - x . (y . z)`.
pub fn check_left_symmetric(p: &BilinearProduct) -> AxiomReport {
    let n = p.dim();
    let mut report = AxiomReport::ok();
    for i in 0..n {
        for j in i + 1..n {
            for l in 0..n {
                let r = vec_sub(
                    &ls_associator(p, p, i, j, l),
                    &ls_associator(p, p, j, i, l),
                );
                if !vec_is_zero(&r) {
                    report.push("left-symmetric", vec![i + 1, j + 1, l + 1], fmt_vec(&r));
                }
            }
        }
    }
    report
}

/// `(e_i .1 e_j) .2 e_l - e_i .1 (e_j .2 e_l)` for two products on the
/// same space.
fn ls_associator(p1: &BilinearProduct, p2: &BilinearProduct, i: usize, j: usize, l: usize) -> Vector {
    let n = p1.dim();
    let el = unit_vec(n, l);
    vec_sub(
        &p2.apply(p1.basis_product(i, j), &el),
        &p1.apply(&unit_vec(n, i), p2.basis_product(j, l)),
    )
}

/// A family of k products on one space, the candidate structure for
/// the axioms checked by [`Klsa::check`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Klsa {
    dim: usize,
    products: Vec<BilinearProduct>,
}

impl Klsa {
    pub fn new(products: Vec<BilinearProduct>) -> Result<Klsa> {
        let Some(first) = products.first() else {
            return Err(Error::InvalidInput("a product family needs at least one product".into()));
        };
        let dim = first.dim();
        for (a, p) in products.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "product {} lives in dimension {}, expected {}",
                    a + 1,
                    p.dim(),
                    dim
                )));
            }
        }
        Ok(Klsa { dim, products })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.products.len()
    }

    pub fn product(&self, alpha: usize) -> &BilinearProduct {
        &self.products[alpha]
    }

    pub fn products(&self) -> &[BilinearProduct] {
        &self.products
    }

    /// Left-symmetry of each product, then the mixed identity
    /// `a .A (b .B c) - (a .A b) .B c = b .B (a .A c) - (b .B a) .A c`
    /// for every pair of distinct products. Witnesses carry the product
    /// indices first, then the basis triple.
    pub fn check(&self) -> AxiomReport {
        let mut report = AxiomReport::ok();
        for (a, p) in self.products.iter().enumerate() {
            for f in check_left_symmetric(p).failures {
                let mut witness = vec![a + 1];
                witness.extend(f.witness);
                report.push(&f.axiom, witness, f.residual);
            }
        }
        let n = self.dim;
        for a in 0..self.k() {
            for b in a + 1..self.k() {
                let (pa, pb) = (&self.products[a], &self.products[b]);
                for i in 0..n {
                    for j in 0..n {
                        for l in 0..n {
                            let r = vec_sub(
                                &ls_associator(pa, pb, i, j, l),
                                &ls_associator(pb, pa, j, i, l),
                            );
                            if !vec_is_zero(&r) {
                                report.push(
                                    "mixed-left-symmetric",
                                    vec![a + 1, b + 1, i + 1, j + 1, l + 1],
                                    fmt_vec(&r),
                                );
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// The product on `R^(dim * k)` whose left-symmetry is equivalent
    /// to the family axioms: component B of `a o b` is
    /// `sum_A a_A .A b_B`. Basis index `A * dim + i` is basis vector i
    /// in slot A.
    pub fn build_circ(&self) -> BilinearProduct {
        let (n, k) = (self.dim, self.k());
        let mut terms = Vec::new();
        for a in 0..k {
            for i in 0..n {
                for b in 0..k {
                    for j in 0..n {
                        for (l, c) in self.products[a].basis_product(i, j).iter().enumerate() {
                            if !num_traits::Zero::is_zero(c) {
                                terms.push((a * n + i, b * n + j, b * n + l, c.clone()));
                            }
                        }
                    }
                }
            }
        }
        BilinearProduct::from_terms(n * k, &terms).expect("indices stay in range")
    }

    /// The commutator Lie bracket of [`Klsa::build_circ`].
    pub fn circ_bracket(&self) -> LieBracket {
        LieBracket::new(self.build_circ().commutator_product()).expect("commutators are antisymmetric")
    }

    /// The joint left-multiplication action on the underlying space:
    /// the matrix for basis index `A * dim + i` is left multiplication
    /// by basis vector i in product A. When the family axioms hold this
    /// is a representation of [`Klsa::circ_bracket`].
    pub fn build_phi(&self) -> Representation {
        let mut mats = Vec::with_capacity(self.dim * self.k());
        for p in &self.products {
            for i in 0..self.dim {
                mats.push(p.left_mult(i));
            }
        }
        Representation::new(mats).expect("left multiplications are square")
    }

    /// Matrix of `phi_a = sum_A L^A_(a_A)` for `a` in the product space,
    /// indexed as in [`Klsa::build_circ`].
    pub fn phi_of(&self, a: &[Rational]) -> Mat {
        assert_eq!(a.len(), self.dim * self.k(), "element has wrong length");
        let mut m = Mat::zeros(self.dim, self.dim);
        for (alpha, p) in self.products.iter().enumerate() {
            let slice = &a[alpha * self.dim..(alpha + 1) * self.dim];
            m = m.add(&p.left_mult_of(slice));
        }
        m
    }
}

/// A k-by-k matrix of products on one space together with the bracket
/// every diagonal product must have as its commutator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KxkLsa {
    dim: usize,
    k: usize,
    star: Vec<Vec<BilinearProduct>>,
    bracket: LieBracket,
}

impl KxkLsa {
    /// `star[a][b]` is the product with left index a and right index b,
    /// both 0-based; left multiplications of `star[a][b]` sit in block
    /// row b, block column a of the joint action.
    pub fn new(star: Vec<Vec<BilinearProduct>>, bracket: LieBracket) -> Result<KxkLsa> {
        let k = star.len();
        if k == 0 {
            return Err(Error::InvalidInput("a product matrix needs at least one row".into()));
        }
        let dim = bracket.dim();
        for (a, row) in star.iter().enumerate() {
            if row.len() != k {
                return Err(Error::DimensionMismatch(format!(
                    "product matrix row {} has {} entries, expected {}",
                    a + 1,
                    row.len(),
                    k
                )));
            }
            for (b, p) in row.iter().enumerate() {
                if p.dim() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "product ({}, {}) lives in dimension {}, expected {}",
                        a + 1,
                        b + 1,
                        p.dim(),
                        dim
                    )));
                }
            }
        }
        Ok(KxkLsa { dim, k, star, bracket })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn star(&self, a: usize, b: usize) -> &BilinearProduct {
        &self.star[a][b]
    }

    pub fn bracket(&self) -> &LieBracket {
        &self.bracket
    }

    /// Left multiplication by `q` in the product with indices (a, b).
    pub fn left_mult_of(&self, a: usize, b: usize, q: &[Rational]) -> Mat {
        self.star[a][b].left_mult_of(q)
    }

    /// The joint action of `q` on the k-fold product space: block
    /// (b, a) is left multiplication by `q` in the product (a, b).
    pub fn psi_of(&self, q: &[Rational]) -> Mat {
        let (n, k) = (self.dim, self.k);
        let mut m = Mat::zeros(n * k, n * k);
        for a in 0..k {
            for b in 0..k {
                let block = self.star[a][b].left_mult_of(q);
                for r in 0..n {
                    for s in 0..n {
                        m.set(b * n + r, a * n + s, block.at(r, s).clone());
                    }
                }
            }
        }
        m
    }

    pub fn build_psi(&self) -> Representation {
        let mats = (0..self.dim).map(|t| self.psi_of(&unit_vec(self.dim, t))).collect();
        Representation::new(mats).expect("joint actions are square")
    }

    /// All structure axioms: each diagonal commutator equals the
    /// bracket, off-diagonal products are commutative, and the joint
    /// action is a homomorphism, checked product-by-product as
    /// `L^(a,g) of [u,v] = sum_b (L_u^(b,g) L_v^(a,b) - L_v^(b,g) L_u^(a,b))`.
    pub fn check(&self) -> AxiomReport {
        let mut report = AxiomReport::ok();
        let (n, k) = (self.dim, self.k);
        for a in 0..k {
            let comm = self.star[a][a].commutator_product();
            for i in 0..n {
                for j in i + 1..n {
                    let r = vec_sub(comm.basis_product(i, j), self.bracket.basis_bracket(i, j));
                    if !vec_is_zero(&r) {
                        report.push("diagonal-commutator", vec![a + 1, i + 1, j + 1], fmt_vec(&r));
                    }
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                let p = &self.star[a][b];
                for i in 0..n {
                    for j in i + 1..n {
                        let r = vec_sub(p.basis_product(i, j), p.basis_product(j, i));
                        if !vec_is_zero(&r) {
                            report.push(
                                "off-diagonal-commutative",
                                vec![a + 1, b + 1, i + 1, j + 1],
                                fmt_vec(&r),
                            );
                        }
                    }
                }
            }
        }
        report.merge(self.check_psi_blockwise());
        report
    }

    /// The homomorphism condition on the blocks of the joint action.
    pub fn check_psi_blockwise(&self) -> AxiomReport {
        let mut report = AxiomReport::ok();
        let (n, k) = (self.dim, self.k);
        for a in 0..k {
            for g in 0..k {
                for i in 0..n {
                    for j in i + 1..n {
                        let u = unit_vec(n, i);
                        let v = unit_vec(n, j);
                        let lhs = self.star[a][g].left_mult_of(self.bracket.basis_bracket(i, j));
                        let mut rhs = Mat::zeros(n, n);
                        for b in 0..k {
                            let lu_bg = self.star[b][g].left_mult_of(&u);
                            let lv_bg = self.star[b][g].left_mult_of(&v);
                            let lu_ab = self.star[a][b].left_mult_of(&u);
                            let lv_ab = self.star[a][b].left_mult_of(&v);
                            rhs = rhs.add(&lu_bg.mul(&lv_ab)).sub(&lv_bg.mul(&lu_ab));
                        }
                        let r = lhs.sub(&rhs);
                        if !r.is_zero() {
                            report.push(
                                "psi-homomorphism",
                                vec![a + 1, g + 1, i + 1, j + 1],
                                fmt_mat(&r),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// The homomorphism condition computed on the assembled joint
    /// action matrices instead of block by block.
    pub fn check_psi_matrix(&self) -> AxiomReport {
        let mut report = self.build_psi().check(&self.bracket);
        for f in &mut report.failures {
            f.axiom = "psi-homomorphism".into();
        }
        report
    }
}

/// Commutative associative algebra, the input of [`gelfand`]. Both
/// properties are enforced at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommAssocAlgebra {
    product: BilinearProduct,
}

impl CommAssocAlgebra {
    pub fn new(product: BilinearProduct) -> Result<CommAssocAlgebra> {
        let n = product.dim();
        for i in 0..n {
            for j in i + 1..n {
                let r = vec_sub(product.basis_product(i, j), product.basis_product(j, i));
                if !vec_is_zero(&r) {
                    return Err(Error::HypothesisViolation(format!(
                        "product is not commutative at basis pair ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    if !vec_is_zero(&product.associator(&unit_vec(n, i), &unit_vec(n, j), &unit_vec(n, l))) {
                        return Err(Error::HypothesisViolation(format!(
                            "product is not associative at basis triple ({}, {}, {})",
                            i + 1,
                            j + 1,
                            l + 1
                        )));
                    }
                }
            }
        }
        Ok(CommAssocAlgebra { product })
    }

    pub fn dim(&self) -> usize {
        self.product.dim()
    }

    pub fn product(&self) -> &BilinearProduct {
        &self.product
    }
}

/// Builds the product family `a .A b = a . (D_A b)` from commuting
/// derivations of a commutative associative algebra. The derivation
/// and commutation hypotheses are verified; the result always passes
/// [`Klsa::check`].
pub fn gelfand(algebra: &CommAssocAlgebra, derivations: &[Mat]) -> Result<Klsa> {
    let n = algebra.dim();
    let p = algebra.product();
    for (w, d) in derivations.iter().enumerate() {
        if d.nrows() != n || d.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "derivation {} is {}x{}, expected {}x{}",
                w + 1,
                d.nrows(),
                d.ncols(),
                n,
                n
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = d.apply(p.basis_product(i, j));
                let rhs_left = p.apply(&d.col(i), &unit_vec(n, j));
                let rhs_right = p.apply(&unit_vec(n, i), &d.col(j));
                if !vec_is_zero(&vec_sub(&lhs, &crate::linalg::vec_add(&rhs_left, &rhs_right))) {
                    return Err(Error::NotADerivation { which: w + 1, i: i + 1, j: j + 1 });
                }
            }
        }
    }
    for (w1, d1) in derivations.iter().enumerate() {
        for (w2, d2) in derivations.iter().enumerate().skip(w1 + 1) {
            if !d1.commutator(d2).is_zero() {
                return Err(Error::DerivationsDoNotCommute(w1 + 1, w2 + 1));
            }
        }
    }
    let products = derivations
        .iter()
        .map(|d| {
            let mut prod = BilinearProduct::zero(n);
            for i in 0..n {
                for j in 0..n {
                    prod.set_basis_product(i, j, p.apply(&unit_vec(n, i), &d.col(j)));
                }
            }
            prod
        })
        .collect();
    Klsa::new(products)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    // left identity action: e1 . e1 = e1, e1 . e2 = e2
    fn left_identity_product() -> BilinearProduct {
        BilinearProduct::from_terms(2, &[(0, 0, 0, int(1)), (0, 1, 1, int(1))]).unwrap()
    }

    #[test]
    fn left_symmetric_failure_witness() {
        let p = BilinearProduct::from_terms(2, &[(0, 1, 0, int(1)), (1, 0, 1, int(1))]).unwrap();
        let report = check_left_symmetric(&p);
        let first = &report.failures[0];
        assert_eq!(first.axiom, "left-symmetric");
        assert_eq!(first.witness, vec![1, 2, 1]);
        assert_eq!(first.residual, "(-1, -1)");
    }

    #[test]
    fn left_identity_product_is_left_symmetric() {
        assert!(check_left_symmetric(&left_identity_product()).passed());
    }

    #[test]
    fn repeated_product_family_is_valid() {
        let p = left_identity_product();
        let family = Klsa::new(vec![p.clone(), p]).unwrap();
        assert!(family.check().passed());
        assert!(check_left_symmetric(&family.build_circ()).passed());
        assert!(family.build_phi().check(&family.circ_bracket()).passed());
    }

    #[test]
    fn circ_structure_constants() {
        // one-dimensional space, e .1 e = e and e .2 e = 2e
        let p1 = BilinearProduct::from_terms(1, &[(0, 0, 0, int(1))]).unwrap();
        let p2 = BilinearProduct::from_terms(1, &[(0, 0, 0, int(2))]).unwrap();
        let family = Klsa::new(vec![p1, p2]).unwrap();
        let circ = family.build_circ();
        assert_eq!(circ.basis_product(0, 0), &vec![int(1), int(0)]);
        assert_eq!(circ.basis_product(0, 1), &vec![int(0), int(1)]);
        assert_eq!(circ.basis_product(1, 0), &vec![int(2), int(0)]);
        assert_eq!(circ.basis_product(1, 1), &vec![int(0), int(2)]);
    }

    #[test]
    fn family_check_matches_circ_left_symmetry() {
        // a family that is not left symmetric: both views must fail
        let bad = BilinearProduct::from_terms(2, &[(0, 1, 0, int(1)), (1, 0, 1, int(1))]).unwrap();
        let family = Klsa::new(vec![bad, BilinearProduct::zero(2)]).unwrap();
        assert!(!family.check().passed());
        assert!(!check_left_symmetric(&family.build_circ()).passed());
    }

    fn diagonal_pair() -> KxkLsa {
        let p = left_identity_product();
        let bracket = LieBracket::from_upper_terms(2, &[(0, 1, 1, int(1))]).unwrap();
        let z = BilinearProduct::zero(2);
        KxkLsa::new(
            vec![vec![p.clone(), z.clone()], vec![z, p]],
            bracket,
        )
        .unwrap()
    }

    #[test]
    fn diagonal_product_matrix_is_valid() {
        let b = diagonal_pair();
        assert!(b.check().passed());
        assert!(b.check_psi_matrix().passed());
        assert!(b.build_psi().check(b.bracket()).passed());
    }

    #[test]
    fn psi_block_layout() {
        let b = diagonal_pair();
        let e1 = unit_vec(2, 0);
        let psi = b.psi_of(&e1);
        // block (0,0) is left multiplication by e1 in the (1,1) product
        assert_eq!(psi.at(0, 0), &int(1));
        assert_eq!(psi.at(1, 1), &int(1));
        // off-diagonal blocks vanish
        assert_eq!(psi.at(0, 2), &int(0));
        assert_eq!(psi.at(2, 0), &int(0));
    }

    #[test]
    fn diagonal_commutator_mismatch_is_reported() {
        let p = left_identity_product();
        let z = BilinearProduct::zero(2);
        let bracket = LieBracket::from_upper_terms(2, &[(0, 1, 1, int(1))]).unwrap();
        let b = KxkLsa::new(vec![vec![p, z.clone()], vec![z.clone(), z]], bracket).unwrap();
        let report = b.check();
        let tags: Vec<&str> = report.failures.iter().map(|f| f.axiom.as_str()).collect();
        assert!(tags.contains(&"diagonal-commutator"));
    }

    #[test]
    fn off_diagonal_commutativity_is_reported() {
        let z = BilinearProduct::zero(2);
        let asym = BilinearProduct::from_terms(2, &[(0, 1, 0, int(1))]).unwrap();
        let b = KxkLsa::new(
            vec![vec![z.clone(), asym], vec![z.clone(), z]],
            LieBracket::abelian(2),
        )
        .unwrap();
        let report = b.check();
        let f = report
            .failures
            .iter()
            .find(|f| f.axiom == "off-diagonal-commutative")
            .unwrap();
        assert_eq!(f.witness, vec![1, 2, 1, 2]);
    }

    #[test]
    fn blockwise_and_matrix_checks_agree() {
        let good = diagonal_pair();
        assert_eq!(good.check_psi_blockwise().passed(), good.check_psi_matrix().passed());

        let p = left_identity_product();
        let bad = KxkLsa::new(
            vec![vec![p.clone(), p.clone()], vec![p.clone(), p]],
            LieBracket::from_upper_terms(2, &[(0, 1, 1, int(1))]).unwrap(),
        )
        .unwrap();
        assert_eq!(bad.check_psi_blockwise().passed(), bad.check_psi_matrix().passed());
    }

    fn r4_with_unit_first_column() -> CommAssocAlgebra {
        let mut terms = vec![(0, 0, 0, int(1))];
        for i in 1..4 {
            terms.push((0, i, i, int(1)));
            terms.push((i, 0, i, int(1)));
        }
        CommAssocAlgebra::new(BilinearProduct::from_terms(4, &terms).unwrap()).unwrap()
    }

    #[test]
    fn gelfand_products_from_derivations() {
        let algebra = r4_with_unit_first_column();
        let d1 = Mat::from_int_rows(&[
            &[0, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let d2 = Mat::from_int_rows(&[
            &[0, 0, 0, 0],
            &[0, 0, 1, 2],
            &[0, 0, 0, 3],
            &[0, 0, 0, 0],
        ]);
        let family = gelfand(&algebra, &[d1, d2]).unwrap();
        assert!(family.check().passed());
        let p1 = family.product(0);
        for i in 1..4 {
            assert_eq!(p1.basis_product(0, i), &unit_vec(4, i));
        }
        assert!(crate::linalg::vec_is_zero(p1.basis_product(0, 0)));
        let p2 = family.product(1);
        assert_eq!(p2.basis_product(0, 2), &vec![int(0), int(1), int(0), int(0)]);
        assert_eq!(p2.basis_product(0, 3), &vec![int(0), int(2), int(3), int(0)]);
        assert!(crate::linalg::vec_is_zero(p2.basis_product(1, 2)));
    }

    #[test]
    fn gelfand_rejects_non_derivation() {
        let algebra = r4_with_unit_first_column();
        let bad = Mat::from_fn(4, 4, |i, j| if i == 0 && j == 0 { int(1) } else { int(0) });
        match gelfand(&algebra, &[bad]).unwrap_err() {
            Error::NotADerivation { which, i, j } => assert_eq!((which, i, j), (1, 1, 1)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn gelfand_rejects_non_commuting_derivations() {
        // everything is a derivation of the zero product
        let algebra = CommAssocAlgebra::new(BilinearProduct::zero(2)).unwrap();
        let e12 = Mat::from_int_rows(&[&[0, 1], &[0, 0]]);
        let e11 = Mat::from_int_rows(&[&[1, 0], &[0, 0]]);
        match gelfand(&algebra, &[e12, e11]).unwrap_err() {
            Error::DerivationsDoNotCommute(a, b) => assert_eq!((a, b), (1, 2)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn comm_assoc_constructor_rejects_bad_products() {
        let asym = BilinearProduct::from_terms(2, &[(0, 1, 0, int(1))]).unwrap();
        assert!(CommAssocAlgebra::new(asym).is_err());
        // commutative but not associative: e1 . e1 = e2, e2 . e2 = e1
        let nonassoc =
            BilinearProduct::from_terms(2, &[(0, 0, 1, int(1)), (1, 1, 0, int(1))]).unwrap();
        assert!(CommAssocAlgebra::new(nonassoc).is_err());
    }
}
