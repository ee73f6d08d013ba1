//! Exact Laplacian spectra of conjugacy super graphs on finite groups.
//!
//! The crate builds the dihedral (`D_2n`), generalized quaternion (`Q_4n`),
//! semidihedral (`SD_8n`) and cyclic groups as multiplication tables, forms
//! power, enhanced power and commuting graphs on them, and lifts those to
//! super graphs over a partition of the group (equality, conjugacy or element
//! order). Laplacian characteristic polynomials, integral spectra and
//! spanning-tree counts are computed in exact integer arithmetic and can be
//! checked against known closed forms.
//!
//! ```
//! use supergraph::{analyze, build_group, named_super_graph, BaseGraph, Family, Relation};
//!
//! let g = build_group(Family::Dihedral, 3).unwrap();
//! let csep = named_super_graph(&g, BaseGraph::Enhanced, Relation::Conjugacy);
//! let summary = analyze(&csep).unwrap();
//! assert_eq!(summary.spectrum.factored(), "x(x-1)(x-3)(x-4)^2(x-6)");
//! assert_eq!(summary.trees.by_cofactor, 48u32.into());
//! ```

pub mod closed_form;
pub mod compose;
pub mod error;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod spectral;

pub use closed_form::{
    predicted_spectrum, predicted_tree_count, verify, verify_case, CaseRecord, Prediction, Source,
    VerificationReport,
};
pub use compose::{compose, structural_graph, CompositionSpec, GraphKind};
pub use error::{Error, Result};
pub use graph::{
    commuting_graph, enhanced_power_graph, hierarchy_report, named_super_graph,
    named_super_graph_with, power_graph, super_graph, BaseGraph, Relation, SimpleGraph,
};
pub use group::{build_group, Family, GroupTable, Partition};
pub use linalg::{IntegerPolynomial, Matrix};
pub use spectral::{
    analyze, char_poly, integral_spectrum, laplacian, nullity, spanning_tree_count,
    SpectralSummary, SpectrumMultiset, TreeCounts,
};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision count (spanning trees).
pub type BigCount = num_bigint::BigUint;
/// Exact rational number.
pub type Rational = num_rational::BigRational;
/// Dense matrix over arbitrary-precision integers.
pub type IntegerMatrix = Matrix<Integer>;
/// Dense matrix over exact rationals.
pub type RationalMatrix = Matrix<Rational>;
/// Dense floating-point matrix, for diagnostics only.
pub type FloatMatrix = Matrix<f64>;
