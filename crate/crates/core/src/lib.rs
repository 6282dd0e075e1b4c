//! Exact-arithmetic engine for finite-dimensional Poisson (2-3)-algebras.
//!
//! A Poisson (2-3)-algebra is a vector space with a commutative associative
//! product and an alternating ternary bracket forming a Lie 3-algebra, the
//! two linked by the Leibniz (2-3)-identity `[ab, c, d] = b[a,c,d] + a[b,c,d]`.
//! This crate represents such algebras by structure constants over `Q` or
//! `F_p`, verifies the defining axioms exactly, and carries out the standard
//! constructions: unitalization, center, derived subspace, generated ideals,
//! quotients, and the Schur-type analysis bounding the ideal generated by
//! `[P, P, P]` in terms of the codimension of the center.
//!
//! ```
//! use poisson23::{analysis, fixtures, FieldDesc};
//!
//! let algebra = fixtures::make_nambu4(FieldDesc::Rationals);
//! assert!(algebra.check_axioms().unwrap().passed());
//!
//! let report = analysis::schur_analysis(&algebra);
//! assert_eq!((report.codim_d, report.dim_k, report.bound), (4, 4, 20));
//! assert!(report.bound_ok && report.k_is_lie_ideal && report.quotient_abelian);
//!
//! let unital = algebra.unitalize().algebra;
//! assert_eq!(analysis::center(&unital).dim(), 1);
//! ```

pub mod algebra;
pub mod analysis;
pub mod cli;
pub mod fixtures;
pub mod format;
pub mod report;
pub mod scalar;
pub mod subspace;

pub use algebra::{Algebra, AlgebraBuilder, AlgebraError, AxiomKind, AxiomReport, Element};
pub use analysis::{schur_analysis, AnalysisError, QuotientResult, SchurReport};
pub use scalar::{FieldDesc, Scalar, ScalarError};
pub use subspace::Subspace;
