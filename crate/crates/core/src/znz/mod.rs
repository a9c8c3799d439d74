//! Exact linear algebra over Z/mZ for composite m.

pub mod arith;
pub mod howell;
pub mod matrix;
pub mod smith;
pub mod subquotient;

pub use arith::GroupOrder;
pub use howell::{
    howell, howell_and_kernel, kernel, same_span, solve, span_intersection, HowellForm,
};
pub use matrix::MatrixZn;
pub use smith::{quotient_invariants, smith_form, SmithForm};
pub use subquotient::{free_rank, span_invariants, subquotient, SubquotientPresentation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("no solution: vector is not in the row span")]
    NoSolution,
    #[error("denominator span is not contained in the numerator span")]
    NotContained,
    #[error("matrix parse error: {0}")]
    Parse(String),
}
