//! Tensor families on the base space of a product family, the products
//! and brackets they induce on the double, and the exactness conditions
//! under which those brackets are Lie and para-Kähler.
//!
//! Conventions: the product family lives on `p*`, each member `r_A` of a
//! tensor family is a bilinear form on `p`, and `sharp` sends a vector
//! `p` to the covector family `(r_1(p, .), .., r_k(p, .))`.

use crate::error::{Error, Result};
use crate::ksymplectic::{verify_kparakahler, KSymplecticData};
use crate::lie::{fmt_mat, fmt_vec, AxiomReport, LieBracket};
use crate::linalg::{dot, unit_vec, vec_add, vec_is_zero, vec_neg, vec_sub, zero_vec, Mat, Subspace, Vector};
use crate::lsa::{Klsa, KxkLsa};
use crate::multilinear::{BilinearProduct, TwoForm};
use crate::phantom::{standard_forms, PhantomAlgebra};
use crate::scalar::{int, rat, Rational};
use num_traits::Zero;

/// Family of k bilinear forms on `p`, the raw material of the exact
/// construction. Entry `(i, j)` of `mat(A)` is the value of the A-th
/// form on the basis pair `(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixFamily {
    n: usize,
    k: usize,
    mats: Vec<Mat>,
}

impl RMatrixFamily {
    pub fn new(mats: Vec<Mat>) -> Result<RMatrixFamily> {
        if mats.is_empty() {
            return Err(Error::InvalidInput(
                "a tensor family needs at least one form".into(),
            ));
        }
        let n = mats[0].nrows();
        for (a, m) in mats.iter().enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "form {} is {}x{}, expected {}x{}",
                    a + 1,
                    m.nrows(),
                    m.ncols(),
                    n,
                    n
                )));
            }
        }
        let k = mats.len();
        Ok(RMatrixFamily { n, k, mats })
    }

    pub fn zero(n: usize, k: usize) -> RMatrixFamily {
        RMatrixFamily { n, k, mats: vec![Mat::zeros(n, n); k] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mat(&self, alpha: usize) -> &Mat {
        &self.mats[alpha]
    }

    pub fn sym_part(&self, alpha: usize) -> Mat {
        self.mats[alpha].add(&self.mats[alpha].transpose()).scale(&rat(1, 2))
    }

    pub fn antisym_part(&self, alpha: usize) -> Mat {
        self.mats[alpha].sub(&self.mats[alpha].transpose()).scale(&rat(1, 2))
    }

    /// Value of the A-th form on a pair of vectors.
    pub fn eval(&self, alpha: usize, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.mats[alpha].apply(y))
    }

    /// Coordinates of the covector `r_A(p, .)`.
    pub fn sharp_alpha(&self, alpha: usize, p: &[Rational]) -> Vector {
        self.mats[alpha].transpose().apply(p)
    }

    /// All k covectors `r_A(p, .)` flattened into one dual-block vector.
    pub fn sharp(&self, p: &[Rational]) -> Vector {
        let mut out = zero_vec(self.n * self.k);
        for alpha in 0..self.k {
            out[alpha * self.n..(alpha + 1) * self.n]
                .clone_from_slice(&self.sharp_alpha(alpha, p));
        }
        out
    }
}

/// Derivative of a form on `p` along left multiplication by a covector,
/// through the dual convention: `L.F + F.L^T`.
fn form_derivative(l: &Mat, f: &Mat) -> Mat {
    l.mul(f).add(&f.mul(&l.transpose()))
}

/// Matrices of `phi` at the k covector families `sharp(e_u)`.
fn sharp_phi_mats(family: &Klsa, r: &RMatrixFamily) -> Vec<Mat> {
    let n = family.dim();
    (0..n).map(|u| family.phi_of(&r.sharp(&unit_vec(n, u)))).collect()
}

/// The bracket on `p` made of the pairing terms alone:
/// `[p, q] = phi^*_{sharp(p)} q - phi^*_{sharp(q)} p`.
fn display_bracket(family: &Klsa, r: &RMatrixFamily) -> BilinearProduct {
    let n = family.dim();
    let phis = sharp_phi_mats(family, r);
    let mut prod = BilinearProduct::zero(n);
    for u in 0..n {
        for v in 0..n {
            let mut w = zero_vec(n);
            for m in 0..n {
                w[m] = phis[v].at(u, m) - phis[u].at(v, m);
            }
            prod.set_basis_product(u, v, w);
        }
    }
    prod
}

/// The full induced bracket on `p`: the pairing terms plus twice the
/// derivative of the first antisymmetric part.
fn bracket_from_r(family: &Klsa, r: &RMatrixFamily) -> BilinearProduct {
    let n = family.dim();
    let mut prod = display_bracket(family, r);
    let a1 = r.antisym_part(0);
    let ders: Vec<Mat> = (0..n)
        .map(|m| form_derivative(&family.product(0).left_mult(m), &a1))
        .collect();
    for u in 0..n {
        for v in 0..n {
            let mut w = prod.basis_product(u, v).clone();
            for m in 0..n {
                w[m] += int(2) * ders[m].at(u, v);
            }
            prod.set_basis_product(u, v, w);
        }
    }
    prod
}

/// Builds the k x k product matrix on `p` induced by a tensor family,
/// with its bracket, provided the antisymmetric parts act as the
/// construction needs: their derivatives along the other products
/// vanish and the diagonal derivatives all agree.
pub fn psi_from_r(family: &Klsa, r: &RMatrixFamily) -> Result<KxkLsa> {
    let n = family.dim();
    let k = family.k();
    if r.n() != n || r.k() != k {
        return Err(Error::DimensionMismatch(format!(
            "tensor family has n = {}, k = {}, product family has n = {}, k = {}",
            r.n(),
            r.k(),
            n,
            k
        )));
    }
    let asym: Vec<Mat> = (0..k).map(|a| r.antisym_part(a)).collect();
    let lmults: Vec<Vec<Mat>> = (0..k)
        .map(|b| (0..n).map(|m| family.product(b).left_mult(m)).collect())
        .collect();
    for prod in 0..k {
        for form in 0..k {
            if prod == form {
                continue;
            }
            for m in 0..n {
                let der = form_derivative(&lmults[prod][m], &asym[form]);
                if !der.is_zero() {
                    return Err(Error::HypothesisViolation(format!(
                        "antisymmetric part {} moves under product {} at basis covector {}: {}",
                        form + 1,
                        prod + 1,
                        m + 1,
                        fmt_mat(&der)
                    )));
                }
            }
        }
    }
    for m in 0..n {
        let base = form_derivative(&lmults[0][m], &asym[0]);
        for alpha in 1..k {
            let der = form_derivative(&lmults[alpha][m], &asym[alpha]);
            if der != base {
                return Err(Error::HypothesisViolation(format!(
                    "diagonal derivatives of the antisymmetric parts disagree between \
                     forms 1 and {} at basis covector {}: {} vs {}",
                    alpha + 1,
                    m + 1,
                    fmt_mat(&base),
                    fmt_mat(&der)
                )));
            }
        }
    }

    let phis = sharp_phi_mats(family, r);
    let mut star = Vec::with_capacity(k);
    for alpha in 0..k {
        let mut row = Vec::with_capacity(k);
        for beta in 0..k {
            let ders: Vec<Mat> = (0..n)
                .map(|m| form_derivative(&lmults[beta][m], r.mat(alpha)))
                .collect();
            let mut prod = BilinearProduct::zero(n);
            for u in 0..n {
                for v in 0..n {
                    let mut w = zero_vec(n);
                    for m in 0..n {
                        w[m] = ders[m].at(u, v).clone();
                        if alpha == beta {
                            w[m] -= phis[u].at(v, m);
                        }
                    }
                    prod.set_basis_product(u, v, w);
                }
            }
            row.push(prod);
        }
        star.push(row);
    }
    KxkLsa::new(star, LieBracket::new(bracket_from_r(family, r))?)
}

/// Checks that each form is symmetric and that `sharp` intertwines the
/// induced bracket on `p` with the commutator of left multiplications
/// of the image covectors.
pub fn check_sk_matrix(family: &Klsa, r: &RMatrixFamily) -> AxiomReport {
    let n = family.dim();
    let k = family.k();
    assert!(
        r.n() == n && r.k() == k,
        "tensor family shape does not match the product family"
    );
    let mut report = AxiomReport::ok();
    for alpha in 0..k {
        for i in 0..n {
            for j in i + 1..n {
                if r.mat(alpha).at(i, j) != r.mat(alpha).at(j, i) {
                    report.push(
                        "symmetric",
                        vec![alpha + 1, i + 1, j + 1],
                        fmt_vec(&[r.mat(alpha).at(i, j) - r.mat(alpha).at(j, i)]),
                    );
                }
            }
        }
    }

    let rows: Vec<Vec<Vector>> = (0..k)
        .map(|b| (0..n).map(|u| r.sharp_alpha(b, &unit_vec(n, u))).collect())
        .collect();
    let lmults: Vec<Vec<Mat>> = (0..k)
        .map(|b| (0..n).map(|u| family.product(b).left_mult_of(&rows[b][u])).collect())
        .collect();
    for u in 0..n {
        for v in u + 1..n {
            let mut pq = zero_vec(n);
            for beta in 0..k {
                for x in 0..n {
                    pq[x] += lmults[beta][v].at(u, x) - lmults[beta][u].at(v, x);
                }
            }
            for alpha in 0..k {
                let lhs = r.sharp_alpha(alpha, &pq);
                let mut rhs = zero_vec(n);
                for beta in 0..k {
                    let fwd = family.product(beta).apply(&rows[beta][u], &rows[alpha][v]);
                    let bwd = family.product(beta).apply(&rows[beta][v], &rows[alpha][u]);
                    rhs = vec_add(&rhs, &vec_sub(&fwd, &bwd));
                }
                if lhs != rhs {
                    report.push(
                        "s-matrix",
                        vec![alpha + 1, u + 1, v + 1],
                        fmt_vec(&vec_sub(&lhs, &rhs)),
                    );
                }
            }
        }
    }
    report
}

fn delta_with(
    circ: &BilinearProduct,
    bracket_p: &BilinearProduct,
    r: &RMatrixFamily,
    p: &[Rational],
    q: &[Rational],
) -> Vector {
    let rp = r.sharp(p);
    let rq = r.sharp(q);
    let comm = vec_sub(&circ.apply(&rp, &rq), &circ.apply(&rq, &rp));
    vec_sub(&r.sharp(&bracket_p.apply(p, q)), &comm)
}

/// The defect of `sharp`: the induced bracket pushed through `sharp`
/// minus the circle commutator of the image covector families.
pub fn delta(family: &Klsa, r: &RMatrixFamily, p: &[Rational], q: &[Rational]) -> Vector {
    delta_with(&family.build_circ(), &display_bracket(family, r), r, p, q)
}

/// Checks the conditions under which the exact bracket construction
/// goes through: every derivative of every antisymmetric part vanishes,
/// and the defect is invariant under the dual action. With `weak` the
/// vanishing is only demanded off the diagonal, the diagonal
/// derivatives must agree, and the common diagonal derivative must
/// satisfy its own invariance condition.
pub fn check_quasi_sk(family: &Klsa, r: &RMatrixFamily, weak: bool) -> AxiomReport {
    let n = family.dim();
    let k = family.k();
    assert!(
        r.n() == n && r.k() == k,
        "tensor family shape does not match the product family"
    );
    let nk = n * k;
    let mut report = AxiomReport::ok();
    let asym: Vec<Mat> = (0..k).map(|a| r.antisym_part(a)).collect();
    let lmults: Vec<Vec<Mat>> = (0..k)
        .map(|b| (0..n).map(|m| family.product(b).left_mult(m)).collect())
        .collect();
    for prod in 0..k {
        for form in 0..k {
            if weak && prod == form {
                continue;
            }
            for m in 0..n {
                let der = form_derivative(&lmults[prod][m], &asym[form]);
                if !der.is_zero() {
                    report.push(
                        "a-part-vanishing",
                        vec![prod + 1, form + 1, m + 1],
                        fmt_mat(&der),
                    );
                }
            }
        }
    }
    if weak {
        for m in 0..n {
            let base = form_derivative(&lmults[0][m], &asym[0]);
            for alpha in 1..k {
                let der = form_derivative(&lmults[alpha][m], &asym[alpha]);
                if der != base {
                    report.push(
                        "a-part-diagonal",
                        vec![alpha + 1, m + 1],
                        fmt_mat(&der.sub(&base)),
                    );
                }
            }
        }
    }

    let circ = family.build_circ();
    let bracket_p = if weak {
        bracket_from_r(family, r)
    } else {
        display_bracket(family, r)
    };
    let phi_basis: Vec<Mat> = (0..nk)
        .map(|w| family.product(w / n).left_mult(w % n))
        .collect();
    let deltas: Vec<Vec<Vector>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    delta_with(&circ, &bracket_p, r, &unit_vec(n, u), &unit_vec(n, v))
                })
                .collect()
        })
        .collect();
    for w in 0..nk {
        let ew = unit_vec(nk, w);
        for u in 0..n {
            for v in u + 1..n {
                let held = vec_sub(&circ.apply(&ew, &deltas[u][v]), &circ.apply(&deltas[u][v], &ew));
                let xu = vec_neg(phi_basis[w].row(u));
                let xv = vec_neg(phi_basis[w].row(v));
                let moved = vec_add(
                    &delta_with(&circ, &bracket_p, r, &xu, &unit_vec(n, v)),
                    &delta_with(&circ, &bracket_p, r, &unit_vec(n, u), &xv),
                );
                let residual = vec_sub(&held, &moved);
                if !vec_is_zero(&residual) {
                    report.push(
                        "delta-invariance",
                        vec![w + 1, u + 1, v + 1],
                        fmt_vec(&residual),
                    );
                }
            }
        }
    }

    if weak {
        let a1 = r.antisym_part(0);
        let der_form = |c: &[Rational]| form_derivative(&family.product(0).left_mult_of(c), &a1);
        let basis_forms: Vec<Mat> = (0..n).map(|m| der_form(&unit_vec(n, m))).collect();
        for w in 0..nk {
            let phi_w = &phi_basis[w];
            for m in 0..n {
                let m_moved = der_form(&phi_w.col(m));
                for u in 0..n {
                    for v in u + 1..n {
                        let xu = vec_neg(phi_w.row(u));
                        let xv = vec_neg(phi_w.row(v));
                        let residual = m_moved.at(u, v)
                            + dot(&xu, &basis_forms[m].col(v))
                            + dot(basis_forms[m].row(u), &xv);
                        if !residual.is_zero() {
                            report.push(
                                "l-part-invariance",
                                vec![w + 1, m + 1, u + 1, v + 1],
                                fmt_vec(&[residual]),
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

fn require_quasi(family: &Klsa, r: &RMatrixFamily) -> Result<()> {
    let quasi = check_quasi_sk(family, r, false);
    if let Some(f) = quasi.failures.first() {
        return Err(Error::HypothesisViolation(format!(
            "not quasi-exact: {} fails at witness {:?} with residual {}",
            f.axiom, f.witness, f.residual
        )));
    }
    Ok(())
}

/// Product table shared by the semidirect brackets: dual copies bracket
/// by the circle commutator and act on `p` through the duals of phi;
/// the pure `p` rows are left to the caller.
fn semidirect_product(family: &Klsa) -> BilinearProduct {
    let n = family.dim();
    let k = family.k();
    let nk = n * k;
    let big = n * (k + 1);
    let mut prod = BilinearProduct::zero(big);
    let comm = family.build_circ().commutator_product();
    for u in 0..nk {
        for w in 0..nk {
            let mut v = zero_vec(big);
            v[n..].clone_from_slice(comm.basis_product(u, w));
            prod.set_basis_product(n + u, n + w, v);
        }
    }
    for w in 0..nk {
        let phi_w = family.product(w / n).left_mult(w % n);
        for j in 0..n {
            let mut v = zero_vec(big);
            v[..n].clone_from_slice(&vec_neg(phi_w.row(j)));
            let minus = vec_neg(&v);
            prod.set_basis_product(n + w, j, v);
            prod.set_basis_product(j, n + w, minus);
        }
    }
    prod
}

/// The semidirect bracket on the double, with `p` abelian.
pub fn triangular_bracket(family: &Klsa) -> LieBracket {
    LieBracket::new(semidirect_product(family)).expect("the table is antisymmetric")
}

/// The semidirect bracket twisted by the defect of `r` on `p`-pairs.
pub fn twisted_triangular_bracket(family: &Klsa, r: &RMatrixFamily) -> LieBracket {
    let n = family.dim();
    let big = n * (family.k() + 1);
    let mut prod = semidirect_product(family);
    let circ = family.build_circ();
    let bracket_p = display_bracket(family, r);
    for u in 0..n {
        for v in u + 1..n {
            let mut w = zero_vec(big);
            w[n..].clone_from_slice(&delta_with(&circ, &bracket_p, r, &unit_vec(n, u), &unit_vec(n, v)));
            let minus = vec_neg(&w);
            prod.set_basis_product(u, v, w);
            prod.set_basis_product(v, u, minus);
        }
    }
    LieBracket::new(prod).expect("the table is antisymmetric")
}

/// Assembles the full double bracket induced by a quasi-exact tensor
/// family, with the canonical forms attached.
pub fn build_bracket_r(family: &Klsa, r: &RMatrixFamily) -> Result<PhantomAlgebra> {
    require_quasi(family, r)?;
    let n = family.dim();
    let k = family.k();
    let nk = n * k;
    let big = n * (k + 1);
    let mut prod = semidirect_product(family);

    let bp = bracket_from_r(family, r);
    for u in 0..n {
        for v in 0..n {
            let mut w = zero_vec(big);
            w[..n].clone_from_slice(bp.basis_product(u, v));
            prod.set_basis_product(u, v, w);
        }
    }

    let comm = family.build_circ().commutator_product();
    for w in 0..nk {
        let phi_w = family.product(w / n).left_mult(w % n);
        for j in 0..n {
            let x = vec_neg(phi_w.row(j));
            let twist = vec_add(
                &r.sharp(&x),
                &comm.apply(&r.sharp(&unit_vec(n, j)), &unit_vec(nk, w)),
            );
            let mut v = zero_vec(big);
            v[..n].clone_from_slice(&x);
            v[n..].clone_from_slice(&vec_neg(&twist));
            let minus = vec_neg(&v);
            prod.set_basis_product(n + w, j, v);
            prod.set_basis_product(j, n + w, minus);
        }
    }
    PhantomAlgebra::from_bracket(n, k, LieBracket::new(prod)?)
}

/// The shear sending each `e_u` to `e_u - sharp(e_u)` and fixing the
/// dual copies.
pub fn shear_matrix(r: &RMatrixFamily) -> Mat {
    let n = r.n();
    let nk = n * r.k();
    let mut m = Mat::identity(n + nk);
    for u in 0..n {
        let s = r.sharp(&unit_vec(n, u));
        for w in 0..nk {
            m.set(n + w, u, -s[w].clone());
        }
    }
    m
}

/// The subalgebra complementary to the dual block in the twisted
/// semidirect structure: the graph of `sharp`.
pub fn sharp_graph(r: &RMatrixFamily) -> Subspace {
    let n = r.n();
    let big = n * (r.k() + 1);
    let basis = (0..n)
        .map(|u| {
            let mut v = unit_vec(big, u);
            v[n..].clone_from_slice(&r.sharp(&unit_vec(n, u)));
            v
        })
        .collect();
    Subspace::from_vectors(big, basis)
}

/// The canonical forms corrected on `p`-pairs by twice the
/// antisymmetric part of the matching form.
pub fn twisted_forms(r: &RMatrixFamily) -> Vec<TwoForm> {
    let n = r.n();
    standard_forms(n, r.k())
        .into_iter()
        .enumerate()
        .map(|(alpha, form)| {
            let asym = r.antisym_part(alpha);
            let mut m = form.matrix().clone();
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, -(int(2) * asym.at(i, j)));
                }
            }
            TwoForm::new(m).expect("the correction is antisymmetric")
        })
        .collect()
}

/// Verifies that the shear intertwines the twisted semidirect bracket
/// with the full induced bracket and pulls the canonical forms back to
/// the twisted ones.
pub fn verify_k_iso(family: &Klsa, r: &RMatrixFamily) -> Result<AxiomReport> {
    let full = build_bracket_r(family, r)?;
    let twisted = twisted_triangular_bracket(family, r);
    let shear = shear_matrix(r);
    let big = full.dim();
    let mut report = AxiomReport::ok();
    for i in 0..big {
        for j in i + 1..big {
            let lhs = shear.apply(twisted.basis_bracket(i, j));
            let rhs = full.bracket().bracket(&shear.col(i), &shear.col(j));
            if lhs != rhs {
                report.push("shear-intertwines", vec![i + 1, j + 1], fmt_vec(&vec_sub(&lhs, &rhs)));
            }
        }
    }
    let forms = twisted_forms(r);
    for alpha in 0..r.k() {
        let pulled = shear.transpose().mul(full.rho(alpha).matrix()).mul(&shear);
        if pulled != *forms[alpha].matrix() {
            report.push(
                "form-pullback",
                vec![alpha + 1],
                fmt_mat(&pulled.sub(forms[alpha].matrix())),
            );
        }
    }
    let n = r.n();
    let duals = Subspace::from_vectors(big, (n..big).map(|i| unit_vec(big, i)).collect());
    let data = KSymplecticData::new(r.k(), n, twisted, duals, Some(sharp_graph(r)), forms)?;
    report.merge(verify_kparakahler(&data)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsa::{gelfand, CommAssocAlgebra};
    use crate::multilinear::dual_map;
    use crate::phantom::build_phantom;

    fn left_identity_family(dim: usize) -> Klsa {
        let mut terms = Vec::new();
        for j in 0..dim {
            terms.push((0, j, j, int(1)));
        }
        Klsa::new(vec![BilinearProduct::from_terms(dim, &terms).unwrap()]).unwrap()
    }

    fn example_family(a: i64, b: i64, c: i64) -> Klsa {
        let mut terms = vec![(0, 0, 0, int(1))];
        for i in 1..4 {
            terms.push((0, i, i, int(1)));
            terms.push((i, 0, i, int(1)));
        }
        let alg =
            CommAssocAlgebra::new(BilinearProduct::from_terms(4, &terms).unwrap()).unwrap();
        let d1 = Mat::from_fn(4, 4, |i, j| if i == j && i > 0 { int(1) } else { int(0) });
        let mut d2 = Mat::zeros(4, 4);
        d2.set(1, 2, int(a));
        d2.set(1, 3, int(b));
        d2.set(2, 3, int(c));
        gelfand(&alg, &[d1, d2]).unwrap()
    }

    fn example_r(r22: i64, r24: i64, r44: i64, s11: i64, s12: i64) -> RMatrixFamily {
        let mut m1 = Mat::zeros(4, 4);
        m1.set(1, 1, int(r22));
        m1.set(1, 3, int(r24));
        m1.set(3, 1, int(r24));
        m1.set(3, 3, int(r44));
        let mut m2 = Mat::zeros(4, 4);
        m2.set(0, 0, int(s11));
        m2.set(0, 1, int(s12));
        m2.set(1, 0, int(s12));
        RMatrixFamily::new(vec![m1, m2]).unwrap()
    }

    fn trivial_matrix(n: usize, k: usize) -> KxkLsa {
        KxkLsa::new(
            vec![vec![BilinearProduct::zero(n); k]; k],
            LieBracket::abelian(n),
        )
        .unwrap()
    }

    #[test]
    fn zero_family_gives_the_semidirect_bracket() {
        let family = example_family(1, 2, 3);
        let r = RMatrixFamily::zero(4, 2);
        assert!(check_sk_matrix(&family, &r).passed());
        assert!(check_quasi_sk(&family, &r, false).passed());
        assert!(check_quasi_sk(&family, &r, true).passed());
        let built = build_bracket_r(&family, &r).unwrap();
        let phantom = build_phantom(&family, &trivial_matrix(4, 2)).unwrap();
        assert_eq!(built.bracket().product(), phantom.bracket().product());
        assert_eq!(built.rhos(), phantom.rhos());
        assert_eq!(
            triangular_bracket(&family).product(),
            built.bracket().product()
        );
    }

    #[test]
    fn one_dimensional_symmetric_family() {
        let family = left_identity_family(1);
        let r = RMatrixFamily::new(vec![Mat::from_int_rows(&[&[3]])]).unwrap();
        assert!(check_sk_matrix(&family, &r).passed());
        let cand = psi_from_r(&family, &r).unwrap();
        assert_eq!(cand.star(0, 0).basis_product(0, 0), &[int(3)]);
        let built = build_bracket_r(&family, &r).unwrap();
        assert_eq!(built.bracket().basis_bracket(1, 0), &[int(-1), int(3)]);
        let shear = shear_matrix(&r);
        assert_eq!(shear.at(1, 0), &int(-3));
        assert!(verify_k_iso(&family, &r).unwrap().passed());
        assert_eq!(twisted_forms(&r), standard_forms(1, 1));
    }

    #[test]
    fn left_identity_probe_is_not_an_s_matrix() {
        let family = left_identity_family(2);
        let r = RMatrixFamily::new(vec![Mat::identity(2)]).unwrap();
        let report = check_sk_matrix(&family, &r);
        assert_eq!(report.failures[0].axiom, "s-matrix");
        assert_eq!(report.failures[0].witness, vec![1, 1, 2]);
        assert_eq!(report.failures[0].residual, "(0, -2)");
    }

    #[test]
    fn antisymmetric_probe_fails_the_vanishing_condition() {
        let family = left_identity_family(2);
        let mut m = Mat::zeros(2, 2);
        m.set(0, 1, int(1));
        m.set(1, 0, int(-1));
        let r = RMatrixFamily::new(vec![m]).unwrap();
        let report = check_quasi_sk(&family, &r, false);
        assert_eq!(report.failures[0].axiom, "a-part-vanishing");
        assert_eq!(report.failures[0].witness, vec![1, 1, 1]);
        assert_eq!(report.failures[0].residual, "[[0, 2], [-2, 0]]");
        let cand = psi_from_r(&family, &r).unwrap();
        let outcome = crate::phantom::check_compatibility(&family, &cand).unwrap();
        assert!(outcome.consistent());
    }

    #[test]
    fn example_instance_passes_the_whole_pipeline() {
        let family = example_family(1, 0, 0);
        let r = example_r(1, 1, 1, 1, 1);
        assert!(check_sk_matrix(&family, &r).passed());
        assert!(check_quasi_sk(&family, &r, false).passed());
        assert!(check_quasi_sk(&family, &r, true).passed());
        for u in 0..4 {
            for v in u + 1..4 {
                assert!(vec_is_zero(&delta(
                    &family,
                    &r,
                    &unit_vec(4, u),
                    &unit_vec(4, v)
                )));
            }
        }
        let cand = psi_from_r(&family, &r).unwrap();
        assert!(cand.check().passed());
        let outcome = crate::phantom::check_compatibility(&family, &cand).unwrap();
        assert!(outcome.compatible());
        let built = build_bracket_r(&family, &r).unwrap();
        assert!(built.bracket().check_jacobi().passed());
        assert!(verify_k_iso(&family, &r).unwrap().passed());
    }

    #[test]
    fn reduced_support_frees_the_structure_parameters() {
        let family = example_family(1, 2, 3);
        let r = example_r(7, 0, 0, 2, 5);
        assert!(check_sk_matrix(&family, &r).passed());
        assert!(check_quasi_sk(&family, &r, false).passed());
        assert!(build_bracket_r(&family, &r).unwrap().bracket().check_jacobi().passed());
        assert!(verify_k_iso(&family, &r).unwrap().passed());
    }

    #[test]
    fn full_support_needs_the_parameter_constraints() {
        let family = example_family(0, 1, 0);
        let r = example_r(1, 1, 1, 1, 1);
        let report = check_sk_matrix(&family, &r);
        assert_eq!(report.failures[0].axiom, "s-matrix");
        assert_eq!(report.failures[0].witness, vec![1, 1, 2]);
        assert_eq!(report.failures[0].residual, "(0, -2, 0, -1)");
    }

    #[test]
    fn both_bracket_routes_agree() {
        let family = example_family(1, 0, 0);
        let r = example_r(2, 3, 5, 7, 11);
        let direct = build_bracket_r(&family, &r).unwrap();
        let cand = psi_from_r(&family, &r).unwrap();
        let doubled = build_phantom(&family, &cand).unwrap();
        assert_eq!(direct.bracket().product(), doubled.bracket().product());
        assert_eq!(direct.rhos(), doubled.rhos());
    }

    #[test]
    fn sharp_satisfies_the_derivative_identity() {
        let family = example_family(2, -1, 3);
        let m1 = Mat::from_int_rows(&[
            &[1, 2, 0, -1],
            &[0, 3, 1, 0],
            &[-2, 0, 0, 5],
            &[1, 1, -1, 0],
        ]);
        let m2 = Mat::from_int_rows(&[
            &[0, 1, 2, 3],
            &[-1, 0, 4, -2],
            &[5, 1, 0, 0],
            &[2, -3, 1, 7],
        ]);
        let r = RMatrixFamily::new(vec![m1, m2]).unwrap();
        let a: Vector = vec![
            int(1),
            int(-2),
            int(3),
            rat(1, 2),
            int(0),
            int(5),
            int(-1),
            rat(2, 3),
        ];
        let p: Vector = vec![int(2), int(-1), rat(1, 3), int(4)];
        let phi_star = dual_map(&family.phi_of(&a));
        let moved = phi_star.apply(&p);
        let mut lhs = r.sharp(&moved);
        for alpha in 0..2 {
            for j in 0..4 {
                let ej = unit_vec(4, j);
                lhs[alpha * 4 + j] +=
                    -r.eval(alpha, &moved, &ej) - r.eval(alpha, &p, &phi_star.apply(&ej));
            }
        }
        let rhs = family.build_circ().apply(&a, &r.sharp(&p));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        assert!(RMatrixFamily::new(vec![]).is_err());
        assert!(RMatrixFamily::new(vec![Mat::zeros(2, 3)]).is_err());
        assert!(RMatrixFamily::new(vec![Mat::zeros(2, 2), Mat::zeros(3, 3)]).is_err());
        let family = example_family(1, 0, 0);
        assert!(matches!(
            psi_from_r(&family, &RMatrixFamily::zero(3, 2)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            psi_from_r(&family, &RMatrixFamily::zero(4, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn hypothesis_violation_reports_the_moving_part() {
        let mut terms = Vec::new();
        for j in 0..2 {
            terms.push((0, j, j, int(1)));
        }
        let p1 = BilinearProduct::from_terms(2, &terms).unwrap();
        let p2 = BilinearProduct::zero(2);
        let family = Klsa::new(vec![p1, p2]).unwrap();
        let mut m = Mat::zeros(2, 2);
        m.set(0, 1, int(1));
        m.set(1, 0, int(-1));
        let r = RMatrixFamily::new(vec![Mat::zeros(2, 2), m]).unwrap();
        assert!(matches!(
            psi_from_r(&family, &r),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            build_bracket_r(&family, &r),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
