//! Graded Lie algebras given by index-polynomial structure constants.

mod checks;
mod element;
mod poly;
mod spec;
mod symbol;
mod window;

pub use checks::{check_grading, check_jacobi, check_skew, Report, Violation};
pub use element::Element;
pub use poly::CoeffPoly;
pub use spec::{AlgebraBuilder, AlgebraSpec, BracketRule, BracketTerm, DeltaCondition, TermSpec};
pub use symbol::{BasisSymbol, Family, FamilyId, Index, Lattice};
pub use window::Window;

pub(crate) use spec::{canonical_terms, eval_terms, term_offset, term_shift};
