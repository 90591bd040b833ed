//! Finite-scale toolkit for Clifford semigroups.
//!
//! All semigroups are given by explicit Cayley tables over dense indices
//! `0..size`, validated for associativity at construction. On top of that
//! base the crate provides:
//!
//! * structural classification (semilattice / group / regular / inverse /
//!   Clifford), inverses, the idempotent projection and the maximal-subgroup
//!   decomposition ([`semigroup`]);
//! * the natural partial order of a semilattice, cones, ideal enumeration
//!   and U-density ([`order`]);
//! * complete enumeration of semigroup homomorphisms and canonical
//!   separation maps ([`hom`]);
//! * direct products, reduced products `E ×_I H`, chains, cones over groups
//!   and 0-extensions ([`construct`]);
//! * the two canonical embeddings of a Clifford semigroup into products of
//!   reduced products, respectively cones over its maximal subgroups
//!   ([`embed`]);
//! * exact-rational metric machinery: subinvariance flags, the subinvariant
//!   closure of a metric, the cone metric, and a refutation procedure for
//!   subinvariant metrizability of the reciprocal semilattice ([`metric`]).
//!
//! # The finite-discrete convention
//!
//! Every finite Hausdorff space is discrete, so the topological notions the
//! API mirrors collapse in a definite way: the interior of an upper cone is
//! the cone itself (`⇑e = ↑e`, hence `y ≪ x` iff `y ≤ x`), every subset is
//! clopen, every ideal of a semilattice is closed, every point is locally
//! minimal, and the only U-dense subset of a semilattice is the whole
//! semilattice. Operations keep their topology-shaped signatures so that a
//! non-discrete backend could be added, but this crate hard-codes the
//! discrete reading and the tests assert its consequences rather than
//! assuming them.

pub mod catalog;
pub mod construct;
pub mod embed;
pub mod error;
pub mod hom;
pub mod io;
pub mod limits;
pub mod metric;
pub mod order;
pub mod semigroup;

pub use error::Error;
pub use semigroup::{
    classify, clifford_structure, ideal_check, is_ideal, maximal_subgroups, right_division_set,
    Classification, CliffordStructure, FiniteSemigroup, SubSemigroup, SubgroupDecomposition,
};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
