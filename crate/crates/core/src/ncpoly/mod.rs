//! Noncommutative graded polynomial kernel.
//!
//! Every algebra in the crate is a [`Presentation`]: ordered generators,
//! quadratic exchange rules oriented towards the canonical order, power caps
//! and eliminated generators. Elements are combinations of canonical
//! [`Monomial`]s with coefficients in [`crate::field::Scalar`].

mod element;
pub mod linalg;
mod monomial;
mod presentation;
pub mod rewrite;
mod tensor;

pub use element::Element;
pub use monomial::{Monomial, MAX_GENS};
pub use presentation::{Generator, PowerCap, Presentation, PresentationBuilder, RawWords};
pub use rewrite::{check_associativity, check_local_confluence, AssocMode, AssocReport, ConfluenceReport};
pub use tensor::TensorElement;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("unknown generator `{name}` in presentation {presentation}")]
    UnknownGenerator { name: String, presentation: String },
    #[error("generator `{generator}` has no power cap; the basis is infinite")]
    InfiniteBasis { generator: String },
    #[error("{presentation}: no rule for the out-of-order pair {hi} {lo}")]
    MissingRule { presentation: String, hi: String, lo: String },
    #[error("{presentation}: rule for {hi} {lo} does not preserve grade")]
    GradeViolation { presentation: String, hi: String, lo: String },
    #[error("relation {relation} reduces to a relation among canonical words")]
    InconsistentRelation { relation: String },
    #[error("relation {relation} is not quadratic")]
    UnsupportedRelation { relation: String },
    #[error("could not orient relations: {}", relations.join("; "))]
    UnresolvedRelations { relations: Vec<String> },
}
