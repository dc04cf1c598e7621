//! Exact fixed-precision arithmetic: `Z/p^M` read as truncated p-adics,
//! the finite fields `F_{p^n}`, truncated Witt vectors `W(F_{p^n})/p^M`, and
//! homogeneous elements of the graded ring `F_{p^n}[u^{+-1}]`.

mod field;
mod graded;
mod padic;
mod witt;

pub use field::{is_irreducible, least_irreducible, xi_select, Fq, FqElem};
pub use graded::{g_of, graded_ops, GradedKElem, GradedOp};
pub use padic::{
    check_odd_prime, generator_g, is_prime, modulus_for, padic_arith, prime_factors, smallest_primitive_root,
    teichmuller, zeta, PadicInt, PadicOp, PadicUnit, Valuation, DEFAULT_PRECISION, MAX_MODULUS,
};
pub use witt::{Witt, WittTrunc};

pub(crate) use padic::pow_mod;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision must be at least one digit")]
    ZeroPrecision,
    #[error("p^M overflows the fixed-width representation (p = {p}, M = {precision})")]
    PrecisionOverflow { p: u64, precision: u32 },
    #[error("digit {digit} at index {index} is out of range for p = {p}")]
    DigitOutOfRange { digit: u64, index: usize, p: u64 },
    #[error("inverse of a non-unit")]
    NonUnitInverse,
    #[error("{0} is not a unit")]
    NonUnit(u64),
    #[error("operands over different primes ({left} and {right})")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("Teichmuller lift of a residue divisible by p")]
    ZeroResidue,
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("F_{{{p}^{n}}} is too large to enumerate")]
    FieldTooLarge { p: u64, n: usize },
    #[error("sum of homogeneous elements of u-weights {left} and {right}")]
    InhomogeneousSum { left: i64, right: i64 },
}
