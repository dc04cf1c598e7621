//! The coefficient-ring abstraction shared by series, function tables and
//! group rings.
//!
//! Every ring used here is a finite `Z_p`-algebra whose elements carry their
//! own context (prime, precision, field modulus), so a single element is
//! enough to manufacture zeros, ones and integer constants of the same ring.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::PadicInt;

pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The additive identity of the ring `self` lives in.
    fn zero_like(&self) -> Self;

    fn one_like(&self) -> Self;

    /// Image of an integer under `Z -> R`.
    #[allow(clippy::wrong_self_convention)]
    fn from_int_like(&self, n: i64) -> Self;

    /// Image of a p-adic integer under `Z_p -> R`, using its canonical
    /// representative when the ring has more precision than `a`.
    #[allow(clippy::wrong_self_convention)]
    fn from_padic_like(&self, a: &PadicInt) -> Self;

    fn is_zero(&self) -> bool;

    fn try_inv(&self) -> Option<Self>;

    /// The residue characteristic `p`.
    fn prime(&self) -> u64;

    /// `M` such that `p^M` annihilates the ring. Fields of characteristic
    /// `p` return 1.
    fn char_exponent(&self) -> u32;

    fn is_fp_algebra(&self) -> bool {
        self.char_exponent() == 1
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents on units.
    fn pow_signed(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.try_inv().map(|inv| inv.pow(e.unsigned_abs()))
        }
    }
}
