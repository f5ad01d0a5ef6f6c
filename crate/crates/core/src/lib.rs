//! Directed Deza graphs: exact integer matrices, finite fields, Hadamard
//! matrices, association schemes, classifiers, constructions, decomposition
//! and exhaustive search.

pub mod construct;
pub mod decompose;
pub mod error;
pub mod field;
pub mod hadamard;
pub mod io;
pub mod matrix;
pub mod scheme;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldElement, FiniteField};
pub use hadamard::HadamardMatrix;
pub use matrix::{Digraph, IntMatrix};
pub use scheme::AssociationScheme;
pub use verify::{
    Classification, DddParams, DesignParams, DezaParams, DsrgParams, Params, TypeIIParams,
    VerificationReport,
};
