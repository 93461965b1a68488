//! Exact-arithmetic workbench for finite-dimensional Leibniz algebras:
//! structure tables, structural invariants, subalgebra lattices over prime
//! fields, lattice isomorphism, named algebra families and a small-algebra
//! atlas with property reports.

pub mod algebra;
pub mod atlas;
pub mod error;
pub mod families;
pub mod field;
pub mod invariants;
pub mod lattice;
pub mod lbz;
pub mod linalg;
pub mod subspace;

pub use algebra::{Convention, IdentityReport, IdentityVariant, Quotient, StructureTable, SubspaceKind};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, Scalar};
pub use subspace::Subspace;
