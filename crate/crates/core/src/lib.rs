//! Exact-arithmetic construction and verification of k-para-Kahler Lie
//! algebras, k-symplectic Lie algebras, and the two left-symmetric
//! structures they decompose into (k-left-symmetric algebras on a dual
//! space and (k x k)-left-symmetric algebras on the space itself).
//!
//! Everything is computed over the rationals with arbitrary precision;
//! there is no floating point anywhere. All checks are exact: a verdict
//! of "passed" means every defining identity holds identically on basis
//! tuples, and a failure carries a witness tuple plus the exact residual.
//!
//! Internally all indices are 0-based; file formats and reports use
//! 1-based indices.

pub mod catalog;
pub mod error;
pub mod json;
pub mod ksymplectic;
pub mod lie;
pub mod linalg;
pub mod lowdim;
pub mod lsa;
pub mod multilinear;
pub mod phantom;
pub mod rmatrix;
pub mod scalar;

pub use error::{Error, Result};
pub use ksymplectic::KSymplecticData;
pub use lie::{AxiomFailure, AxiomReport, LieBracket, Representation};
pub use linalg::{Mat, Subspace, Vector};
pub use lowdim::{ClassificationResult, LowDimSpec};
pub use lsa::{CommAssocAlgebra, Klsa, KxkLsa};
pub use multilinear::{BilinearProduct, LinearMap, TwoForm};
pub use phantom::PhantomAlgebra;
pub use rmatrix::RMatrixFamily;
pub use scalar::Rational;
