//! Truncated power series and formal group laws: n-series, p-adic
//! a-series, the multiplicative law `x + y + t x y`, and normalization of
//! the periodic Honda p-series.

mod fgl;
mod honda;
mod multi;
mod trunc;

pub use fgl::{additive_fgl, fgl_validate, mult_fgl, scale_iso, Axiom, FormalGroupLaw, ScaleIsoReport, DEFAULT_CAP};
pub use honda::{
    homogeneous_vn_exponent, honda_normalize, honda_normalize_with_exponent, GradedSeries, GradedTerm, HondaReport,
};
pub use multi::{BiSeries, MvSeries};
pub use trunc::{series_ops, SeriesOp, TruncSeries};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("composition requires an argument without constant term")]
    NonCompositionalArgument,
    #[error("leading coefficient is not a unit")]
    NonUnitLeadingTerm,
    #[error("series has a nonzero constant term and is not divisible by y")]
    NotDivisibleByVar,
    #[error("{axiom} fails at exponent {degree:?}")]
    AxiomFailure { axiom: Axiom, degree: Vec<u32> },
    #[error("iteration did not converge within {iterations} steps")]
    NonConvergent { iterations: usize },
    #[error("parameter of the multiplicative law is not a unit")]
    NonUnitParameter,
    #[error("normalized p-series is not y^p; residual terms {residual:?}")]
    NormalizationFailure { residual: Vec<GradedTerm> },
    #[error("series over p = {left} applied to a {right}-adic integer")]
    PrimeMismatch { left: u64, right: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[cfg(test)]
mod tests;
