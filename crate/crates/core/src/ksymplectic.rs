//! k-symplectic and k-para-Kähler data given explicitly: a bracket, a
//! distinguished subalgebra, a family of two-forms and optionally an
//! isotropic complement. Provides the axiom checkers, the splitting of
//! the subalgebra into the common kernels of the forms, extraction of
//! the induced products, and the isomorphism onto the double built from
//! those products.

use crate::error::{Error, Result};
use crate::lie::{fmt_vec, AxiomReport, LieBracket};
use crate::linalg::{unit_vec, zero_vec, Mat, Subspace, Vector};
use crate::lsa::{check_left_symmetric, Klsa, KxkLsa};
use crate::multilinear::{BilinearProduct, TwoForm};
use crate::phantom::build_phantom;
use num_traits::Zero;

/// A bracket with a distinguished subalgebra and k two-forms; `p`, when
/// present, is the candidate isotropic complement. Dimensions of the
/// pieces are axioms to check, not constructor requirements; only the
/// ambient dimensions must agree.
#[derive(Clone, Debug)]
pub struct KSymplecticData {
    pub k: usize,
    pub n: usize,
    pub bracket: LieBracket,
    pub h: Subspace,
    pub p: Option<Subspace>,
    pub thetas: Vec<TwoForm>,
}

impl KSymplecticData {
    pub fn new(
        k: usize,
        n: usize,
        bracket: LieBracket,
        h: Subspace,
        p: Option<Subspace>,
        thetas: Vec<TwoForm>,
    ) -> Result<KSymplecticData> {
        let dim = bracket.dim();
        if thetas.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "{} forms supplied, k = {}",
                thetas.len(),
                k
            )));
        }
        for (i, t) in thetas.iter().enumerate() {
            if t.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "form {} lives in dimension {}, the bracket in {}",
                    i + 1,
                    t.dim(),
                    dim
                )));
            }
        }
        if h.ambient_dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "h lives in dimension {}, the bracket in {}",
                h.ambient_dim(),
                dim
            )));
        }
        if let Some(ref p) = p {
            if p.ambient_dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "p lives in dimension {}, the bracket in {}",
                    p.ambient_dim(),
                    dim
                )));
            }
        }
        Ok(KSymplecticData { k, n, bracket, h, p, thetas })
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }
}

fn retag(report: AxiomReport, name: &str) -> AxiomReport {
    let mut out = AxiomReport::ok();
    for f in report.failures {
        out.push(name, f.witness, f.residual);
    }
    out
}

/// Checks the defining axioms: dimension bookkeeping, Jacobi, joint
/// nondegeneracy of the forms, closedness of each form, and that `h` is
/// a totally isotropic subalgebra.
pub fn verify_ksymplectic(d: &KSymplecticData) -> AxiomReport {
    let dim = d.dim();
    let mut report = AxiomReport::ok();
    if dim != (d.k + 1) * d.n {
        report.push(
            "dimension",
            vec![],
            format!("ambient dimension {} is not (k+1)n = {}", dim, (d.k + 1) * d.n),
        );
    }
    if d.h.dim() != d.k * d.n {
        report.push(
            "dimension",
            vec![],
            format!("h has dimension {}, expected nk = {}", d.h.dim(), d.k * d.n),
        );
    }
    report.merge(d.bracket.check_jacobi());

    let stacked = Mat::from_fn(d.k * dim, dim, |r, c| {
        d.thetas[r / dim].matrix().at(r % dim, c).clone()
    });
    let joint_kernel = stacked.kernel();
    if joint_kernel.dim() != 0 {
        report.push(
            "nondegenerate",
            vec![],
            fmt_vec(&joint_kernel.basis()[0]),
        );
    }

    for (i, theta) in d.thetas.iter().enumerate() {
        for u in 0..dim {
            for v in u + 1..dim {
                for w in v + 1..dim {
                    let r = theta.eval(d.bracket.basis_bracket(u, v), &unit_vec(dim, w))
                        + theta.eval(d.bracket.basis_bracket(v, w), &unit_vec(dim, u))
                        + theta.eval(d.bracket.basis_bracket(w, u), &unit_vec(dim, v));
                    if !r.is_zero() {
                        report.push(
                            "closed",
                            vec![i + 1, u + 1, v + 1, w + 1],
                            fmt_vec(&[r]),
                        );
                    }
                }
            }
        }
    }

    let hb = d.h.basis();
    for (i, theta) in d.thetas.iter().enumerate() {
        for a in 0..hb.len() {
            for b in a + 1..hb.len() {
                let r = theta.eval(&hb[a], &hb[b]);
                if !r.is_zero() {
                    report.push("h-isotropic", vec![i + 1, a + 1, b + 1], fmt_vec(&[r]));
                }
            }
        }
    }
    report.merge(retag(d.bracket.check_subalgebra(&d.h), "h-subalgebra"));
    report
}

/// Checks the k-symplectic axioms plus the complement: `p` must be an
/// isotropic subalgebra transverse to `h`.
pub fn verify_kparakahler(d: &KSymplecticData) -> Result<AxiomReport> {
    let p = d.p.as_ref().ok_or_else(|| {
        Error::InvalidInput("no isotropic complement supplied".into())
    })?;
    let dim = d.dim();
    let mut report = verify_ksymplectic(d);
    report.merge(retag(d.bracket.check_subalgebra(p), "p-subalgebra"));
    let pb = p.basis();
    for (i, theta) in d.thetas.iter().enumerate() {
        for a in 0..pb.len() {
            for b in a + 1..pb.len() {
                let r = theta.eval(&pb[a], &pb[b]);
                if !r.is_zero() {
                    report.push("p-isotropic", vec![i + 1, a + 1, b + 1], fmt_vec(&[r]));
                }
            }
        }
    }
    if d.h.dim() + p.dim() != dim || d.h.intersect(p).dim() != 0 {
        report.push(
            "complement",
            vec![],
            format!(
                "dim h = {}, dim p = {}, dim(h meet p) = {}, ambient {}",
                d.h.dim(),
                p.dim(),
                d.h.intersect(p).dim(),
                dim
            ),
        );
    }
    Ok(report)
}

/// Splits `h` into the k subspaces on which all forms but one vanish
/// against the whole space.
pub fn split_h_alpha(d: &KSymplecticData) -> Result<Vec<Subspace>> {
    let dim = d.dim();
    let hb = d.h.basis();
    let nh = hb.len();
    let hmat = Mat::from_fn(dim, nh, |i, j| hb[j][i].clone());
    let mut out = Vec::with_capacity(d.k);
    for alpha in 0..d.k {
        let mut rows = Vec::new();
        for beta in 0..d.k {
            if beta == alpha {
                continue;
            }
            for x in 0..dim {
                let row: Vector = (0..nh)
                    .map(|i| d.thetas[beta].eval(&hb[i], &unit_vec(dim, x)))
                    .collect();
                rows.push(row);
            }
        }
        let conditions = Mat::from_rows(if rows.is_empty() {
            vec![zero_vec(nh)]
        } else {
            rows
        })?;
        let kernel = conditions.kernel();
        if kernel.dim() != d.n {
            return Err(Error::DegenerateStructure(format!(
                "component {} of h has dimension {}, expected {}",
                alpha + 1,
                kernel.dim(),
                d.n
            )));
        }
        let ambient_basis: Vec<Vector> =
            kernel.basis().iter().map(|w| hmat.apply(w)).collect();
        out.push(Subspace::from_vectors(dim, ambient_basis));
    }
    let mut sum = Subspace::zero(dim);
    for s in &out {
        sum = sum.sum(s);
    }
    if sum != d.h {
        return Err(Error::DegenerateStructure(
            "the component subspaces do not span h".into(),
        ));
    }
    Ok(out)
}

/// Everything extraction recovers from verified k-para-Kähler data: the
/// left-symmetric product on `h`, the k x k structure on `p` with its
/// bracket, the product family on `p*`, the pairing maps identifying
/// each component of `h` with `p*`, and the components themselves.
/// Products on `h` use coordinates in the canonical basis of `h`; each
/// `i_maps[alpha]` goes from coordinates in the canonical basis of
/// `h_alpha[alpha]` to dual coordinates on `p`.
#[derive(Clone, Debug)]
pub struct ExtractedStructures {
    pub h_product: BilinearProduct,
    pub matrix: KxkLsa,
    pub family: Klsa,
    pub i_maps: Vec<Mat>,
    pub h_alpha: Vec<Subspace>,
}

/// Recovers the product structures that characterize the input: the
/// product on `h` dual to the action on `p`, the k x k products on `p`,
/// and the transported family on `p*`.
pub fn extract_products(d: &KSymplecticData) -> Result<ExtractedStructures> {
    let p = d.p.as_ref().ok_or_else(|| {
        Error::InvalidInput("extraction needs the complement subspace".into())
    })?;
    let dim = d.dim();
    let (n, k) = (d.n, d.k);
    let nk = n * k;
    let hb = d.h.basis();
    let pb = p.basis();
    if hb.len() != nk || pb.len() != n || dim != nk + n {
        return Err(Error::DegenerateStructure(format!(
            "extraction needs dim h = {}, dim p = {} in ambient {}, got {} and {}",
            nk,
            n,
            nk + n,
            hb.len(),
            pb.len()
        )));
    }
    for (i, theta) in d.thetas.iter().enumerate() {
        for a in 0..nk {
            for b in a + 1..nk {
                if !theta.eval(&hb[a], &hb[b]).is_zero() {
                    return Err(Error::HypothesisViolation(format!(
                        "form {} does not vanish on h at basis pair ({}, {})",
                        i + 1,
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
    }

    let hmat = Mat::from_fn(dim, nk, |i, j| hb[j][i].clone());
    let pairing = Mat::from_fn(nk, nk, |r, i| {
        d.thetas[r / n].eval(&hb[i], &pb[r % n])
    });
    let pairing_inv = pairing.inverse().ok_or_else(|| {
        Error::DegenerateStructure(
            "the pairing of h against the complement is singular".into(),
        )
    })?;

    let mut h_product = BilinearProduct::zero(nk);
    for u in 0..nk {
        for v in 0..nk {
            let mut rhs = zero_vec(nk);
            for alpha in 0..k {
                for m in 0..n {
                    rhs[alpha * n + m] =
                        -d.thetas[alpha].eval(&hb[v], &d.bracket.bracket(&hb[u], &pb[m]));
                }
            }
            h_product.set_basis_product(u, v, pairing_inv.apply(&rhs));
        }
    }

    let h_alpha = split_h_alpha(d)?;
    let ha_coords: Vec<Vec<Vector>> = h_alpha
        .iter()
        .map(|s| {
            s.basis()
                .iter()
                .map(|v| hmat.solve(v).expect("component basis lies in h"))
                .collect()
        })
        .collect();
    let mut i_maps = Vec::with_capacity(k);
    let mut g_invs = Vec::with_capacity(k);
    for alpha in 0..k {
        let imap = Mat::from_fn(n, n, |m, l| {
            d.thetas[alpha].eval(&h_alpha[alpha].basis()[l], &pb[m])
        });
        if imap.inverse().is_none() {
            return Err(Error::SingularPairing(format!(
                "component {} does not pair invertibly with the complement",
                alpha + 1
            )));
        }
        let g = imap.transpose().neg();
        g_invs.push(g.inverse().expect("transpose of an invertible matrix"));
        i_maps.push(imap);
    }

    // The product solved against the component h^alpha and paired through
    // theta^beta is the one the double consumes at slot (beta, alpha): only
    // that placement makes the assembled map below intertwine the brackets.
    let mut star = vec![vec![BilinearProduct::zero(n); k]; k];
    for alpha in 0..k {
        for beta in 0..k {
            for u in 0..n {
                for v in 0..n {
                    let rhs: Vector = (0..n)
                        .map(|l| {
                            -d.thetas[beta].eval(
                                &pb[v],
                                &d.bracket.bracket(&pb[u], &h_alpha[alpha].basis()[l]),
                            )
                        })
                        .collect();
                    star[beta][alpha].set_basis_product(u, v, g_invs[alpha].apply(&rhs));
                }
            }
        }
    }

    let mut p_bracket = BilinearProduct::zero(n);
    for u in 0..n {
        for v in 0..n {
            let w = d.bracket.bracket(&pb[u], &pb[v]);
            let coords = p.membership(&w).ok_or_else(|| {
                Error::HypothesisViolation(format!(
                    "the complement is not closed at basis pair ({}, {})",
                    u + 1,
                    v + 1
                ))
            })?;
            p_bracket.set_basis_product(u, v, coords);
        }
    }
    let matrix = KxkLsa::new(star, LieBracket::new(p_bracket)?)?;

    let hamats: Vec<Mat> = (0..k)
        .map(|alpha| Mat::from_fn(nk, n, |i, l| ha_coords[alpha][l][i].clone()))
        .collect();
    let i_invs: Vec<Mat> = i_maps
        .iter()
        .map(|m| m.inverse().expect("checked invertible above"))
        .collect();
    let mut pstar = Vec::with_capacity(k);
    for alpha in 0..k {
        let mut prod = BilinearProduct::zero(n);
        let mut fixed: Vec<Option<Vector>> = vec![None; n * n];
        for beta in 0..k {
            for u in 0..n {
                for v in 0..n {
                    let x = hamats[alpha].apply(&i_invs[alpha].col(u));
                    let y = hamats[beta].apply(&i_invs[beta].col(v));
                    let prod_h = h_product.apply(&x, &y);
                    let z = hamats[beta].solve(&prod_h).ok_or_else(|| {
                        Error::HypothesisViolation(format!(
                            "product of h into component {} leaves the component at \
                             basis pair ({}, {})",
                            beta + 1,
                            u + 1,
                            v + 1
                        ))
                    })?;
                    let value = i_maps[beta].apply(&z);
                    match &fixed[u * n + v] {
                        None => {
                            fixed[u * n + v] = Some(value.clone());
                            prod.set_basis_product(u, v, value);
                        }
                        Some(first) => {
                            if *first != value {
                                return Err(Error::HypothesisViolation(format!(
                                    "transported product at basis pair ({}, {}) depends \
                                     on the second label ({} vs {})",
                                    u + 1,
                                    v + 1,
                                    fmt_vec(first),
                                    fmt_vec(&value)
                                )));
                            }
                        }
                    }
                }
            }
        }
        pstar.push(prod);
    }
    let family = Klsa::new(pstar)?;

    Ok(ExtractedStructures { h_product, matrix, family, i_maps, h_alpha })
}

/// Verifies the structural identities the extracted products must
/// satisfy: the product on `h` is left-symmetric, Lie-admissible and
/// preserves each component; the diagonal products on `p` have the
/// bracket as commutator and the off-diagonal ones are commutative; the
/// transported family satisfies its own axioms.
pub fn check_extraction(d: &KSymplecticData, e: &ExtractedStructures) -> AxiomReport {
    let mut report = retag(check_left_symmetric(&e.h_product), "h-left-symmetric");
    let hb = d.h.basis();
    let nk = hb.len();
    let dim = d.dim();
    let hmat = Mat::from_fn(dim, nk, |i, j| hb[j][i].clone());
    for u in 0..nk {
        for v in u + 1..nk {
            let amb = d.bracket.bracket(&hb[u], &hb[v]);
            let lie = match hmat.solve(&amb) {
                Some(w) => w,
                None => {
                    report.push("h-lie-admissible", vec![u + 1, v + 1], fmt_vec(&amb));
                    continue;
                }
            };
            let comm = crate::linalg::vec_sub(
                &e.h_product.apply(&unit_vec(nk, u), &unit_vec(nk, v)),
                &e.h_product.apply(&unit_vec(nk, v), &unit_vec(nk, u)),
            );
            if lie != comm {
                report.push(
                    "h-lie-admissible",
                    vec![u + 1, v + 1],
                    fmt_vec(&crate::linalg::vec_sub(&comm, &lie)),
                );
            }
        }
    }
    for (alpha, component) in e.h_alpha.iter().enumerate() {
        let ha: Vec<Vector> = component
            .basis()
            .iter()
            .map(|v| hmat.solve(v).expect("component basis lies in h"))
            .collect();
        let hamat = Mat::from_fn(nk, ha.len(), |i, l| ha[l][i].clone());
        for u in 0..nk {
            for (l, b) in ha.iter().enumerate() {
                let prod = e.h_product.apply(&unit_vec(nk, u), b);
                if hamat.solve(&prod).is_none() {
                    report.push(
                        "h-component-invariant",
                        vec![alpha + 1, u + 1, l + 1],
                        fmt_vec(&prod),
                    );
                }
            }
        }
    }

    let n = d.n;
    for alpha in 0..d.k {
        let diag = e.matrix.star(alpha, alpha);
        for u in 0..n {
            for v in u + 1..n {
                let comm = crate::linalg::vec_sub(
                    diag.basis_product(u, v),
                    diag.basis_product(v, u),
                );
                let lie = e.matrix.bracket().basis_bracket(u, v);
                if &comm != lie {
                    report.push(
                        "star-commutator",
                        vec![alpha + 1, u + 1, v + 1],
                        fmt_vec(&crate::linalg::vec_sub(&comm, lie)),
                    );
                }
            }
        }
        for beta in 0..d.k {
            if alpha == beta {
                continue;
            }
            let off = e.matrix.star(alpha, beta);
            for u in 0..n {
                for v in u + 1..n {
                    if off.basis_product(u, v) != off.basis_product(v, u) {
                        report.push(
                            "star-commutative",
                            vec![alpha + 1, beta + 1, u + 1, v + 1],
                            fmt_vec(&crate::linalg::vec_sub(
                                off.basis_product(u, v),
                                off.basis_product(v, u),
                            )),
                        );
                    }
                }
            }
        }
    }
    report.merge(e.family.check());
    report
}

/// Builds the isomorphism onto the double of the extracted structures:
/// the complement part keeps its coordinates, each component of `h`
/// lands in the matching dual copy through its pairing map. The report
/// verifies bijectivity, that the map intertwines the brackets, and
/// that it pulls the canonical forms back to the given ones.
pub fn build_f_iso(
    d: &KSymplecticData,
    e: &ExtractedStructures,
) -> Result<(Mat, AxiomReport)> {
    let p = d.p.as_ref().ok_or_else(|| {
        Error::InvalidInput("the isomorphism needs the complement subspace".into())
    })?;
    let dim = d.dim();
    let (n, k) = (d.n, d.k);
    let nk = n * k;
    let hb = d.h.basis();
    let pb = p.basis();
    let hmat = Mat::from_fn(dim, nk, |i, j| hb[j][i].clone());
    let pmat = Mat::from_fn(dim, n, |i, j| pb[j][i].clone());
    let decomp = hmat.hstack(&pmat).inverse().ok_or_else(|| {
        Error::DegenerateStructure("h and the complement do not span".into())
    })?;
    let split = Mat::from_fn(nk, nk, |i, col| {
        let alpha = col / n;
        let l = col % n;
        let b = &e.h_alpha[alpha].basis()[l];
        hmat.solve(b).expect("component basis lies in h")[i].clone()
    })
    .inverse()
    .ok_or_else(|| {
        Error::DegenerateStructure("the components do not decompose h".into())
    })?;

    let mut f = Mat::zeros(dim, dim);
    for x in 0..dim {
        let coords = decomp.col(x);
        let wp = &coords[nk..];
        let z = split.apply(&coords[..nk]);
        for m in 0..n {
            f.set(m, x, wp[m].clone());
        }
        for alpha in 0..k {
            let za = &z[alpha * n..(alpha + 1) * n];
            let image = e.i_maps[alpha].apply(za);
            for s in 0..n {
                f.set(n + alpha * n + s, x, image[s].clone());
            }
        }
    }

    let mut report = AxiomReport::ok();
    if f.inverse().is_none() {
        report.push("bijective", vec![], "the assembled map is singular".into());
    }
    let phantom = build_phantom(&e.family, &e.matrix)?;
    for i in 0..dim {
        for j in i + 1..dim {
            let lhs = f.apply(d.bracket.basis_bracket(i, j));
            let rhs = phantom.bracket().bracket(&f.col(i), &f.col(j));
            if lhs != rhs {
                report.push(
                    "bracket-intertwines",
                    vec![i + 1, j + 1],
                    fmt_vec(&crate::linalg::vec_sub(&lhs, &rhs)),
                );
            }
        }
    }
    for alpha in 0..k {
        let pulled = f.transpose().mul(phantom.rho(alpha).matrix()).mul(&f);
        if pulled != *d.thetas[alpha].matrix() {
            report.push(
                "form-matches",
                vec![alpha + 1],
                crate::lie::fmt_mat(&pulled.sub(d.thetas[alpha].matrix())),
            );
        }
    }
    Ok((f, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn span(ambient: usize, indices: &[usize]) -> Subspace {
        Subspace::from_vectors(
            ambient,
            indices.iter().map(|&i| unit_vec(ambient, i)).collect(),
        )
    }

    fn abelian_toy() -> KSymplecticData {
        let thetas = vec![
            TwoForm::from_wedge_terms(3, &[(0, 2, int(1))]).unwrap(),
            TwoForm::from_wedge_terms(3, &[(1, 2, int(1))]).unwrap(),
        ];
        KSymplecticData::new(
            2,
            1,
            LieBracket::abelian(3),
            span(3, &[0, 1]),
            Some(span(3, &[2])),
            thetas,
        )
        .unwrap()
    }

    fn sl2_data(b: i64) -> KSymplecticData {
        let bracket = LieBracket::from_upper_terms(
            3,
            &[
                (0, 1, 1, int(2)),
                (0, 2, 2, int(-2)),
                (1, 2, 0, int(1)),
            ],
        )
        .unwrap();
        let thetas = vec![
            TwoForm::from_wedge_terms(3, &[(0, 2, int(1)), (1, 2, int(b))]).unwrap(),
            TwoForm::from_wedge_terms(3, &[(1, 2, int(1))]).unwrap(),
        ];
        KSymplecticData::new(2, 1, bracket, span(3, &[0, 1]), Some(span(3, &[2])), thetas)
            .unwrap()
    }

    #[test]
    fn abelian_toy_passes_and_extracts_zero() {
        let d = abelian_toy();
        assert!(verify_ksymplectic(&d).passed());
        assert!(verify_kparakahler(&d).unwrap().passed());
        let parts = split_h_alpha(&d).unwrap();
        assert_eq!(parts[0], span(3, &[0]));
        assert_eq!(parts[1], span(3, &[1]));
        let e = extract_products(&d).unwrap();
        assert!(e.h_product.is_zero());
        assert!(e.family.product(0).is_zero());
        assert!(e.family.product(1).is_zero());
        assert!(check_extraction(&d, &e).passed());
        let (f, report) = build_f_iso(&d, &e).unwrap();
        assert!(report.passed());
        assert_eq!(f.col(2), unit_vec(3, 0));
        assert_eq!(f.col(0), unit_vec(3, 1));
        assert_eq!(f.col(1), unit_vec(3, 2));
    }

    #[test]
    fn sl2_structure_is_two_para_kahler() {
        let d = sl2_data(1);
        assert!(verify_ksymplectic(&d).passed());
        assert!(verify_kparakahler(&d).unwrap().passed());
        let parts = split_h_alpha(&d).unwrap();
        assert_eq!(parts[0].dim(), 1);
        assert_eq!(parts[1].dim(), 1);
        assert!(parts[0].contains(&unit_vec(3, 0)));
        let mut second = unit_vec(3, 1);
        second[0] = int(-1);
        assert!(parts[1].contains(&second));
        let e = extract_products(&d).unwrap();
        assert!(check_extraction(&d, &e).passed());
        assert_eq!(e.matrix.star(0, 1).basis_product(0, 0), &[int(1)]);
        assert!(e.matrix.star(1, 0).is_zero());
        assert!(e.matrix.star(0, 0).is_zero());
        assert!(e.matrix.star(1, 1).is_zero());
        let (_, report) = build_f_iso(&d, &e).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn repeated_forms_are_degenerate() {
        let bracket = LieBracket::from_upper_terms(
            3,
            &[
                (0, 1, 1, int(2)),
                (0, 2, 2, int(-2)),
                (1, 2, 0, int(1)),
            ],
        )
        .unwrap();
        let theta = TwoForm::from_wedge_terms(3, &[(1, 2, int(1))]).unwrap();
        let d = KSymplecticData::new(
            2,
            1,
            bracket,
            span(3, &[0, 1]),
            None,
            vec![theta.clone(), theta],
        )
        .unwrap();
        let report = verify_ksymplectic(&d);
        assert!(report.failures.iter().any(|f| f.axiom == "nondegenerate"));
    }

    #[test]
    fn complement_must_be_transverse() {
        let theta = TwoForm::from_wedge_terms(2, &[(1, 0, int(1))]).unwrap();
        let mut skew = unit_vec(2, 0);
        skew[1] = int(1);
        let d = KSymplecticData::new(
            1,
            1,
            LieBracket::abelian(2),
            span(2, &[1]),
            Some(Subspace::from_vectors(2, vec![unit_vec(2, 0), skew])),
            vec![theta],
        )
        .unwrap();
        let report = verify_kparakahler(&d).unwrap();
        assert!(report.failures.iter().any(|f| f.axiom == "complement"));
        let without = KSymplecticData { p: None, ..d };
        assert!(verify_kparakahler(&without).is_err());
    }

    #[test]
    fn wrong_bookkeeping_is_reported() {
        let theta = TwoForm::from_wedge_terms(3, &[(0, 2, int(1))]).unwrap();
        let d = KSymplecticData::new(
            2,
            1,
            LieBracket::abelian(3),
            span(3, &[0]),
            None,
            vec![theta.clone(), theta],
        )
        .unwrap();
        let report = verify_ksymplectic(&d);
        assert!(report.failures.iter().any(|f| f.axiom == "dimension"));
    }

    #[test]
    fn double_of_a_compatible_pair_extracts_back() {
        let family = Klsa::new(vec![
            BilinearProduct::from_terms(1, &[(0, 0, 0, int(2))]).unwrap(),
            BilinearProduct::from_terms(1, &[(0, 0, 0, int(3))]).unwrap(),
        ])
        .unwrap();
        let mut star = vec![vec![BilinearProduct::zero(1); 2]; 2];
        star[0][0] = BilinearProduct::from_terms(1, &[(0, 0, 0, int(1))]).unwrap();
        star[1][1] = BilinearProduct::from_terms(1, &[(0, 0, 0, int(-1))]).unwrap();
        let matrix = KxkLsa::new(star, LieBracket::abelian(1)).unwrap();
        let outcome = crate::phantom::check_compatibility(&family, &matrix).unwrap();
        assert!(outcome.compatible());

        let phantom = build_phantom(&family, &matrix).unwrap();
        let d = KSymplecticData::new(
            2,
            1,
            phantom.bracket().clone(),
            phantom.h_subspace(),
            Some(phantom.p_subspace()),
            phantom.rhos().to_vec(),
        )
        .unwrap();
        assert!(verify_kparakahler(&d).unwrap().passed());
        let e = extract_products(&d).unwrap();
        for a in 0..2 {
            assert_eq!(e.family.product(a), family.product(a));
            for b in 0..2 {
                assert_eq!(e.matrix.star(a, b), matrix.star(a, b));
            }
        }
        assert_eq!(e.matrix.bracket().product(), matrix.bracket().product());
        assert_eq!(&e.h_product, &family.build_circ());
        assert!(check_extraction(&d, &e).passed());
        let (f, report) = build_f_iso(&d, &e).unwrap();
        assert!(report.passed());
        assert_eq!(f, Mat::identity(3));
    }
}
