//! Lie algebras over the rationals: validation, series, radicals, Cartan
//! subalgebras, growth type, triangulability and the nilshadow.

mod algebra;
mod cartan;
mod nilshadow;
pub(crate) mod subspace;
mod structure;

pub use algebra::{is_derivation, validate, BracketEntry, LieAlgebra, RawStructureConstants, StructuralAnnotations};
pub use cartan::{
    cartan_subalgebra, cartan_subalgebra_seeded, growth_class, is_triangulable, is_type_r, restrict,
    triangulable_from, CartanData, GrowthClass, GrowthVariant, GrowthWitness, WeightComponent,
    REGULAR_ELEMENT_BUDGET,
};
pub use nilshadow::nilshadow;
pub use structure::{
    basic_invariants, ideal_closure, is_nilpotent, is_nilpotent_subalgebra, is_solvable, killing_form,
    nilpotency_class, nilradical, quotient_algebra, series, solvable_radical, subalgebra_lower_central,
    BasicInvariants, QuotientMap, Series,
};
pub use subspace::{unit, Subspace};

use thiserror::Error;

use crate::exactmath::{MathError, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails on ({}, {}, {}): residual {residual}", triple[0], triple[1], triple[2])]
    JacobiViolation {
        triple: [String; 3],
        residual: String,
        residual_vector: Vec<Q>,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not an ideal: {witness}")]
    NotAnIdeal { witness: String },
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("no regular element found after {attempts} attempts")]
    RegularElementNotFound { attempts: usize },
    #[error("algebra is not of type R")]
    NotTypeR,
    #[error("invalid annotation: {0}")]
    InvalidAnnotation(String),
    #[error("annotation required: {0}")]
    AnnotationRequired(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Math(#[from] MathError),
}
