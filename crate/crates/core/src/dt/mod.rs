//! Donaldson-Thomas invariants by q-Pochhammer factorization: the ordinary
//! case for symmetric quivers and the orientifold case for loop quivers.

mod ordinary;
mod orientifold;

pub use ordinary::{
    extract_dt_invariants, loop_stack_series, mobius, rebuild_series, stack_series, DTInvariant,
};
pub use orientifold::{
    build_tilde_omega, build_tilde_series, check_bc_duality, check_variant_dualities,
    closed_form_from_groups, extract_orientifold_dt, orientifold_pipeline, sigma_loop_series,
    DualityReport, DualityRow, LieType, LoopDuality, OrientifoldDTResult, ParitySign,
    TildeInvariant,
};

use crate::arith::{ArithError, LaurentPoly};
use crate::dimvec::DimVector;
use crate::quiver::QuiverError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DtError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("integrality violation at degree {degree}: denominator {denominator} survives reduction")]
    NotPolynomial { degree: DimVector, denominator: LaurentPoly },
    #[error("integrality violation at degree {degree}: non-integer coefficients in {value}")]
    NonInteger { degree: DimVector, value: LaurentPoly },
    #[error("parity argument is a half-integer at (d, k) = ({d}, {k})")]
    HalfIntegerParity { d: i64, k: i64 },
    #[error("normalized invariant at degree {e} has odd powers of v: {value}")]
    OddNormalized { e: i64, value: LaurentPoly },
    #[error("invalid loop duality: {0}")]
    InvalidDuality(String),
}
