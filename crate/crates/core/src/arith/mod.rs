//! Exact arithmetic in `v = q^{1/2}`: Laurent polynomials, reduced rational
//! functions, truncated graded power series and q-Pochhammer factors.

mod intpoly;
mod laurent;
mod pochhammer;
mod ratfunc;
mod serde_impls;
mod series;

pub use laurent::LaurentPoly;
pub use pochhammer::pochhammer_power;
pub use ratfunc::{NotPolynomial, RationalFunc};
pub use series::{GradedSeries, Grading};

use crate::dimvec::DimVector;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution v -> v^{0} needs a positive power")]
    NonPositiveAdams(i64),
    #[error("constant term must be {expected}, found {found}")]
    ConstantTerm { expected: &'static str, found: String },
    #[error("grading mismatch: {0:?} vs {1:?}")]
    GradingMismatch(Grading, Grading),
    #[error("degree {0} does not fit grading {1:?}")]
    DegreeShape(DimVector, Grading),
    #[error("q-Pochhammer factor at degree zero")]
    PochhammerZeroDegree,
    #[error("pochhammer step must be 1 or 2, got {0}")]
    PochhammerStep(i64),
}
