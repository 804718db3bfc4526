//! Typed string-diagram terms and their evaluation in dense or graded matrices.

mod eval;
mod graded;
mod term;

pub use eval::{evaluate, EvalAssignment, GradedAssignment, Interpretation};
pub use graded::{GradedMatrix, GradedSpace};
pub use term::{DiagTerm, ObjectWord, Signature, TermJson, TermKind};
