//! Exact construction and verification of the semisimple Hopf algebras that
//! cover twisted group algebras, abelian field extensions, and crossed
//! products.
//!
//! The library builds three families of objects over Q or GF(p):
//!
//! * `A`, a cocommutative Hopf algebra of dimension `m|G|` projecting onto a
//!   twisted group algebra `k^alpha G`;
//! * `H`, a commutative Hopf algebra of dimension `2[L:k]` projecting onto an
//!   abelian Galois extension `L/k`;
//! * `X`, the amalgam of the two, of dimension `2m|G|[L:k]`, projecting onto
//!   the crossed product `L^alpha_t G` — a cyclic algebra when `G` is cyclic.
//!
//! Every Hopf axiom, dimension formula, and quotient map is re-verified in
//! exact arithmetic; nothing is assumed from the construction.

pub mod algebra;
pub mod cocycle;
pub mod constructions;
pub mod error;
pub mod field;
pub mod galois;
pub mod group;
pub mod hopf;
pub mod json;
pub mod linalg;
pub mod report;

pub use algebra::{LinearMap, SparseVec, StructureAlgebra};
pub use cocycle::{CoboundaryWitness, TwoCocycle, ValueSubgroup};
pub use error::{Error, Result};
pub use field::{BaseKind, BaseScalar, Field, FieldElement};
pub use galois::{GaloisExtension, IdempotentFamily};
pub use group::{CentralExtensionGroup, FiniteGroup};
pub use hopf::{AxiomCertificate, HopfStructure, VerifyOptions};
pub use report::{Check, Status};

#[cfg(test)]
pub(crate) mod testutil;
