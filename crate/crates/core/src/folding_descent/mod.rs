//! Folding by diagram automorphisms and Galois descent to smaller fields.

mod descent;
mod folding;
pub mod rootsys;

use thiserror::Error;

use crate::datum::DatumError;
use crate::lattice::LatticeError;
use crate::lie_algebra::{IsoError, LieError};

pub use descent::{
    check_conditions, fixed_part, galois_descend, is_equivariant, killing_comparison, rational_table, DescentConditions,
    Form, GaloisAction, SemilinearMap,
};
pub use folding::{fold, pairing_is_trivial, FoldSummary, Folded, FoldingCase};

#[derive(Debug, Error)]
pub enum FoldError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error("the diagram automorphism does not commute with w")]
    NonCommutingPair,
    #[error("the pairing of w is nontrivial")]
    PairingNotTrivial,
    #[error("the fixed subspace is not closed under the bracket")]
    NotClosed,
    #[error("expected type {expected}, found {found:?}")]
    UnexpectedType { expected: String, found: Option<String> },
    #[error("a fixed basis vector is not a weight vector for the Cartan subalgebra")]
    NotEigenvector,
    #[error("degenerate Cartan data")]
    DegenerateCartan,
}

#[derive(Debug, Error)]
pub enum DescentError {
    #[error("action conditions violated: {0:?}")]
    ActionConditionsViolated(DescentConditions),
    #[error("⟨s⟩ has order {order}, the Galois group has order {degree}")]
    NotFullGaloisGroup { order: usize, degree: usize },
    #[error("fixed space has dimension {found}, expected {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("the span is not closed under the bracket")]
    NotClosed,
    #[error("structure constants are not rational")]
    NotRational,
}
