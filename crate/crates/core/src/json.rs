//! JSON mirrors of the core types. Files use 1-based indices and
//! stringly rationals ("p" or "p/q"); conversion to the 0-based
//! in-memory types validates indices, shapes, and number syntax so
//! malformed input surfaces as an error instead of a panic.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::catalog::VerificationRun;
use crate::error::{Error, Result};
use crate::ksymplectic::KSymplecticData;
use crate::lie::{AxiomReport, LieBracket};
use crate::linalg::{Mat, Subspace, Vector};
use crate::lowdim::{ClassificationResult, LowDimSpec};
use crate::lsa::{Klsa, KxkLsa};
use crate::multilinear::{BilinearProduct, TwoForm};
use crate::rmatrix::RMatrixFamily;
use crate::scalar::{format_rational, parse_rational, Rational};

fn idx(i: usize, dim: usize, what: &str) -> Result<usize> {
    if i == 0 || i > dim {
        return Err(Error::IndexOutOfRange(format!(
            "{} index {} outside 1..={}",
            what, i, dim
        )));
    }
    Ok(i - 1)
}

fn parse_vector(row: &[String]) -> Result<Vector> {
    row.iter().map(|s| parse_rational(s)).collect()
}

fn format_vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MatrixJson {
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_mat(m: &Mat) -> MatrixJson {
        MatrixJson {
            rows: (0..m.nrows()).map(|i| format_vector(m.row(i))).collect(),
        }
    }

    pub fn to_mat(&self) -> Result<Mat> {
        if self.rows.is_empty() {
            return Err(Error::InvalidInput("a matrix needs at least one row".into()));
        }
        let ncols = self.rows[0].len();
        let mut rows = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    ncols
                )));
            }
            rows.push(parse_vector(row)?);
        }
        Mat::from_rows(rows)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ProductJson {
    pub dim: usize,
    pub terms: Vec<(usize, usize, usize, String)>,
}

impl ProductJson {
    pub fn from_product(p: &BilinearProduct) -> ProductJson {
        let n = p.dim();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (l, c) in p.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        terms.push((i + 1, j + 1, l + 1, format_rational(c)));
                    }
                }
            }
        }
        ProductJson { dim: n, terms }
    }

    pub fn from_bracket(b: &LieBracket) -> ProductJson {
        ProductJson::from_product(b.product())
    }

    pub fn to_product(&self) -> Result<BilinearProduct> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, j, l, c) in &self.terms {
            terms.push((
                idx(*i, self.dim, "product")?,
                idx(*j, self.dim, "product")?,
                idx(*l, self.dim, "product")?,
                parse_rational(c)?,
            ));
        }
        BilinearProduct::from_terms(self.dim, &terms)
    }

    pub fn to_bracket(&self) -> Result<LieBracket> {
        LieBracket::new(self.to_product()?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TwoFormJson {
    pub dim: usize,
    pub wedge_terms: Vec<(usize, usize, String)>,
}

impl TwoFormJson {
    pub fn from_form(t: &TwoForm) -> TwoFormJson {
        let n = t.dim();
        let m = t.matrix();
        let mut wedge_terms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !m.at(i, j).is_zero() {
                    wedge_terms.push((i + 1, j + 1, format_rational(&m.at(i, j))));
                }
            }
        }
        TwoFormJson { dim: n, wedge_terms }
    }

    pub fn to_form(&self) -> Result<TwoForm> {
        let mut terms = Vec::with_capacity(self.wedge_terms.len());
        for (i, j, c) in &self.wedge_terms {
            terms.push((
                idx(*i, self.dim, "wedge")?,
                idx(*j, self.dim, "wedge")?,
                parse_rational(c)?,
            ));
        }
        TwoForm::from_wedge_terms(self.dim, &terms)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct KlsaJson {
    pub dim: usize,
    pub k: usize,
    pub products: Vec<ProductJson>,
}

impl KlsaJson {
    pub fn from_klsa(f: &Klsa) -> KlsaJson {
        KlsaJson {
            dim: f.dim(),
            k: f.k(),
            products: f.products().iter().map(ProductJson::from_product).collect(),
        }
    }

    pub fn to_klsa(&self) -> Result<Klsa> {
        if self.products.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "{} products listed but k = {}",
                self.products.len(),
                self.k
            )));
        }
        let mut products = Vec::with_capacity(self.k);
        for p in &self.products {
            if p.dim != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "product of dimension {} in a family of dimension {}",
                    p.dim, self.dim
                )));
            }
            products.push(p.to_product()?);
        }
        Klsa::new(products)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct KxkJson {
    pub dim: usize,
    pub k: usize,
    pub star: Vec<Vec<ProductJson>>,
    pub bracket: ProductJson,
}

impl KxkJson {
    pub fn from_kxk(m: &KxkLsa) -> KxkJson {
        let k = m.k();
        KxkJson {
            dim: m.dim(),
            k,
            star: (0..k)
                .map(|a| (0..k).map(|b| ProductJson::from_product(m.star(a, b))).collect())
                .collect(),
            bracket: ProductJson::from_bracket(m.bracket()),
        }
    }

    pub fn to_kxk(&self) -> Result<KxkLsa> {
        if self.star.len() != self.k || self.star.iter().any(|row| row.len() != self.k) {
            return Err(Error::DimensionMismatch(format!(
                "the star grid must be {} by {}",
                self.k, self.k
            )));
        }
        let mut star = Vec::with_capacity(self.k);
        for row in &self.star {
            let mut out = Vec::with_capacity(self.k);
            for p in row {
                if p.dim != self.dim {
                    return Err(Error::DimensionMismatch(format!(
                        "star product of dimension {} in a grid of dimension {}",
                        p.dim, self.dim
                    )));
                }
                out.push(p.to_product()?);
            }
            star.push(out);
        }
        if self.bracket.dim != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "bracket of dimension {} under a grid of dimension {}",
                self.bracket.dim, self.dim
            )));
        }
        KxkLsa::new(star, self.bracket.to_bracket()?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SubspaceJson {
    pub basis: Vec<Vec<String>>,
}

impl SubspaceJson {
    pub fn from_subspace(s: &Subspace) -> SubspaceJson {
        SubspaceJson {
            basis: s.basis().iter().map(|v| format_vector(v)).collect(),
        }
    }

    pub fn to_subspace(&self, ambient: usize) -> Result<Subspace> {
        let mut vectors = Vec::with_capacity(self.basis.len());
        for (i, row) in self.basis.iter().enumerate() {
            if row.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "basis vector {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    ambient
                )));
            }
            vectors.push(parse_vector(row)?);
        }
        Ok(Subspace::from_vectors(ambient, vectors))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct KSymplecticJson {
    pub k: usize,
    pub n: usize,
    pub bracket: ProductJson,
    pub h: SubspaceJson,
    pub thetas: Vec<TwoFormJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<SubspaceJson>,
}

impl KSymplecticJson {
    pub fn from_data(d: &KSymplecticData) -> KSymplecticJson {
        KSymplecticJson {
            k: d.k,
            n: d.n,
            bracket: ProductJson::from_bracket(&d.bracket),
            h: SubspaceJson::from_subspace(&d.h),
            thetas: d.thetas.iter().map(TwoFormJson::from_form).collect(),
            p: d.p.as_ref().map(SubspaceJson::from_subspace),
        }
    }

    pub fn to_data(&self) -> Result<KSymplecticData> {
        let bracket = self.bracket.to_bracket()?;
        let ambient = bracket.dim();
        let h = self.h.to_subspace(ambient)?;
        let p = match &self.p {
            Some(s) => Some(s.to_subspace(ambient)?),
            None => None,
        };
        let thetas = self
            .thetas
            .iter()
            .map(|t| {
                if t.dim != ambient {
                    return Err(Error::DimensionMismatch(format!(
                        "form of dimension {} on a bracket of dimension {}",
                        t.dim, ambient
                    )));
                }
                t.to_form()
            })
            .collect::<Result<Vec<_>>>()?;
        KSymplecticData::new(self.k, self.n, bracket, h, p, thetas)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RFamilyJson {
    pub n: usize,
    pub k: usize,
    pub r: Vec<MatrixJson>,
}

impl RFamilyJson {
    pub fn from_family(f: &RMatrixFamily) -> RFamilyJson {
        RFamilyJson {
            n: f.n(),
            k: f.k(),
            r: (0..f.k()).map(|a| MatrixJson::from_mat(f.mat(a))).collect(),
        }
    }

    pub fn to_family(&self) -> Result<RMatrixFamily> {
        if self.r.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices listed but k = {}",
                self.r.len(),
                self.k
            )));
        }
        let mats = self.r.iter().map(|m| m.to_mat()).collect::<Result<Vec<_>>>()?;
        for m in &mats {
            if m.nrows() != self.n || m.ncols() != self.n {
                return Err(Error::DimensionMismatch(format!(
                    "matrix is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    self.n,
                    self.n
                )));
            }
        }
        RMatrixFamily::new(mats)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LowDimJson {
    pub k: usize,
    pub a: Vec<String>,
    #[serde(rename = "D")]
    pub d: MatrixJson,
}

impl LowDimJson {
    pub fn from_spec(s: &LowDimSpec) -> LowDimJson {
        LowDimJson {
            k: s.k(),
            a: format_vector(s.a()),
            d: MatrixJson::from_mat(s.d()),
        }
    }

    pub fn to_spec(&self) -> Result<LowDimSpec> {
        if self.a.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "{} covector entries listed but k = {}",
                self.a.len(),
                self.k
            )));
        }
        LowDimSpec::new(parse_vector(&self.a)?, self.d.to_mat()?)
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct FailureJson {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub residual: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ReportJson {
    pub passed: bool,
    pub failures: Vec<FailureJson>,
}

/// Splits a "(a, b, c)" residual into its components; diagnostics that
/// are not in vector shape stay as a single entry.
fn split_residual(residual: &str) -> Vec<String> {
    let inner = match residual.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner,
        None => return vec![residual.to_string()],
    };
    if inner.contains('(') || inner.contains('[') {
        return vec![residual.to_string()];
    }
    inner.split(", ").map(|s| s.to_string()).collect()
}

impl ReportJson {
    pub fn from_report(r: &AxiomReport) -> ReportJson {
        ReportJson {
            passed: r.passed(),
            failures: r
                .failures
                .iter()
                .map(|f| FailureJson {
                    axiom: f.axiom.clone(),
                    witness: f.witness.clone(),
                    residual: split_residual(&f.residual),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct RunJson {
    pub entry: String,
    pub sample: usize,
    pub assignment: BTreeMap<String, String>,
    pub passed: bool,
    pub report: ReportJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention_note: Option<String>,
}

impl RunJson {
    pub fn from_run(r: &VerificationRun) -> RunJson {
        RunJson {
            entry: r.entry.to_string(),
            sample: r.sample,
            assignment: r
                .assignment
                .iter()
                .map(|(k, v)| (k.clone(), format_rational(v)))
                .collect(),
            passed: r.passed(),
            report: ReportJson::from_report(&r.report),
            discrepancy: r.discrepancy.clone(),
            convention_note: r.convention_note.clone(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ClassificationJson {
    pub case_tag: String,
    pub parameters: Vec<(String, String)>,
    pub witness: MatrixJson,
    pub report: ReportJson,
}

impl ClassificationJson {
    pub fn from_result(r: &ClassificationResult) -> ClassificationJson {
        ClassificationJson {
            case_tag: r.case_tag.clone(),
            parameters: r
                .parameters
                .iter()
                .map(|(k, v)| (k.clone(), format_rational(v)))
                .collect(),
            witness: MatrixJson::from_mat(&r.witness),
            report: ReportJson::from_report(&r.verified),
        }
    }
}
