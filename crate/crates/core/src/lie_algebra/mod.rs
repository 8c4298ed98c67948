//! Graded Lie algebras built from input data.

mod graded;
mod grading;
mod morphism;
mod table;

use thiserror::Error;

use crate::epsilon::ValidationReport;

pub use graded::{root_label, GradedLieAlgebra};
pub use grading::{
    graded_bracket_check, killing_orthogonality, orbits, projector_dims, z_bracket_check, z_vector, Grading,
};
pub use morphism::{apply_datum_isomorphism, find_conjugator, inner_automorphism, DatumIsomorphism, IsoError, LinearMap};
pub use table::{JacobiMode, JacobiReport, StructureTable};

#[derive(Debug, Error)]
pub enum LieError {
    #[error("not an input datum: {0:?}")]
    InvalidDatum(ValidationReport),
    #[error("the Z-bracket identity needs ε = ε_w")]
    EpsilonNotEpsW,
}
