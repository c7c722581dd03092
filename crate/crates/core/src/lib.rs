//! Exact computation of motivic Donaldson-Thomas invariants of symmetric
//! quivers and orientifold invariants of quivers with duality.

pub mod arith;
pub mod dimvec;
pub mod dt;
pub mod hn;
pub mod quiver;

pub use arith::{ArithError, GradedSeries, Grading, LaurentPoly, RationalFunc};
pub use dimvec::DimVector;
