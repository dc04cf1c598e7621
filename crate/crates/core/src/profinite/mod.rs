//! Finite-level models of continuous functions on `Z_p` and `Z_p^x`, the
//! completed group ring `R[[Z_p]]`, their pairing, and the isomorphism
//! `h -> 1 + y` onto truncated power series.
//!
//! Everything lives at a fixed level `N`, i.e. on `Z/p^N`, with explicit
//! maps between neighbouring levels.

mod checks;
mod func;
mod group_ring;

pub use checks::{
    c_normalization_check, level_compat_check, localization_check, localize_units, pairing_matrix, phi_dual_check,
    CNormEntry, CNormReport, DualReport, LevelCompatReport, LocalizationReport,
};
pub use func::{digits_of, domain_points, fn_arith, monomial_convert, Domain, FnOp, FnRepr, LevelFn, MonomialForm};
pub use group_ring::{c_k, dual_functional, pairing, phi_inverse, phi_iso, GroupRingElem};

#[cfg(test)]
use checks::pascal_mod_p;

use thiserror::Error;

use crate::arith::ArithError;

/// Largest table size accepted at any level.
pub const MAX_LEVEL_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfiniteError {
    #[error("objects live at different levels ({left} and {right})")]
    LevelMismatch { left: u32, right: u32 },
    #[error("objects over different primes ({left} and {right})")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("functions are defined on different domains")]
    DomainMismatch,
    #[error("coefficient ring is not an F_p-algebra (p^{exponent} annihilates it)")]
    CharacteristicMismatch { exponent: u32 },
    #[error("table has {found} entries, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("digit function f_{k} does not exist at level {level}")]
    DigitOutOfRange { k: u32, level: u32 },
    #[error("monomial exponents must lie in [0, p) with one per digit")]
    ExponentOutOfRange,
    #[error("level {level} is unsupported for p = {p}")]
    LevelTooLarge { p: u64, level: u32 },
    #[error("series cap {found} does not match p^N - 1 = {expected}")]
    CapMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `p^N` for a supported level `N >= 1`.
pub(crate) fn level_size(p: u64, level: u32) -> Result<usize, ProfiniteError> {
    crate::arith::check_odd_prime(p)?;
    match p.checked_pow(level) {
        Some(size) if level >= 1 && size <= MAX_LEVEL_SIZE => Ok(size as usize),
        _ => Err(ProfiniteError::LevelTooLarge { p, level }),
    }
}
